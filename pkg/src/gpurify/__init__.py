"""Simulation and threshold analysis for purifying noisy graph states."""

__version__ = "0.1.0"
