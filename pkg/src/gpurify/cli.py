"""Command-line front end.

Every subcommand prints JSON (or CSV where a table makes sense) to stdout or
to ``--output``. Exit status is 0 on success, 1 when the computation rejects
its input and 2 for malformed command lines or spec strings.

A ``--config FILE`` of ``key = value`` lines supplies defaults for any option
the command line leaves unset. The ``THREADS`` environment variable sets the
default thread count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path
from typing import Sequence

from . import census, drpp, fixedpoint, gmpp, thresholds, vbs
from .diag_state import Depol, GlobalNoise, LocalPauli, NoiseSpec, Pattern, StateError, Thermal, ZNoise, from_noise
from .graph_core import Bipartition, Graph, GraphError, GraphSpecError, OrbitLimitError, is_lr, lc_orbit, make_named

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2
DOMAIN_ERRORS = (
    GraphError,
    StateError,
    OrbitLimitError,
    gmpp.GmppError,
    drpp.DrppError,
    thresholds.ThresholdError,
    census.CensusError,
    fixedpoint.FixedPointError,
    vbs.VbsError,
)


class SpecError(ValueError):
    """Malformed spec string; ``position`` is a character offset into ``text``."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        super().__init__(f"{message} (at column {position + 1} of {text!r})" if text else message)
        self.text = text
        self.position = position


# ---------------------------------------------------------------------------
# spec mini-languages


def parse_graph_spec(text: str) -> Graph:
    """``name[:params]`` or ``file:PATH``; see :func:`graph_core.make_named`."""
    try:
        return make_named(text)
    except GraphSpecError as exc:
        raise SpecError(exc.reason, exc.text or text, exc.position) from None


def _prob(text: str, spec: str, offset: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise SpecError(f"expected a number, got {text!r}", spec, offset) from None
    if not math.isfinite(value):
        raise SpecError("value must be finite", spec, offset)
    return value


def _numbers(param: str, spec: str, offset: int, count: int) -> list[float]:
    parts = param.split(",")
    if len(parts) != count:
        raise SpecError(f"expected {count} comma-separated numbers", spec, offset)
    out, pos = [], offset
    for part in parts:
        out.append(_prob(part, spec, pos))
        pos += len(part) + 1
    return out


_LETTER_RATES = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}


def parse_noise_spec(text: str, n: int | None = None, p: float | None = None) -> NoiseSpec:
    """Parse a noise model.

    Forms: ``z:P``, ``depol:P``, ``global:X``, ``thermal:BETA,DELTA``,
    ``pauli:PX,PY,PZ`` and ``pattern:L@Q,...`` where ``L`` is one of
    ``x, y, z, d`` (``d`` is depolarizing) acting on qubit ``Q``. A pattern
    item may carry its own rate as ``z@0=0.1``; otherwise ``p`` applies,
    given either as the argument or as a trailing ``;p=VALUE``.
    """
    spec = text.strip()
    name, sep, param = spec.partition(":")
    name = name.lower()
    offset = len(name) + len(sep)
    if not sep or not param:
        raise SpecError("noise spec needs the form name:params", spec, len(name))
    if name == "z":
        return ZNoise(_prob(param, spec, offset))
    if name == "depol":
        return Depol(_prob(param, spec, offset))
    if name == "global":
        return GlobalNoise(_prob(param, spec, offset))
    if name == "thermal":
        beta, delta = _numbers(param, spec, offset, 2)
        return Thermal(beta, delta)
    if name == "pauli":
        return LocalPauli(*_numbers(param, spec, offset, 3))
    if name == "pattern":
        body, _, tail = param.partition(";")
        if tail:
            key, eq, val = tail.partition("=")
            if key.strip().lower() != "p" or not eq:
                raise SpecError("pattern suffix must be ;p=VALUE", spec, offset + len(body) + 1)
            p = _prob(val, spec, offset + len(body) + 3)
        if n is None:
            raise SpecError("pattern noise needs the graph size", spec, 0)
        rates = [[0.0, 0.0, 0.0] for _ in range(n)]
        pos = offset
        for item in body.split(","):
            here = pos
            pos += len(item) + 1
            item_spec, eq, rate_text = item.partition("=")
            letter, at, qubit = item_spec.strip().partition("@")
            letter = letter.lower()
            if not at or letter not in ("x", "y", "z", "d"):
                raise SpecError(f"bad pattern item {item!r}; expected L@Q", spec, here)
            try:
                q = int(qubit)
            except ValueError:
                raise SpecError(f"bad qubit index {qubit!r}", spec, here) from None
            if not 0 <= q < n:
                raise SpecError(f"qubit {q} out of range for {n} qubits", spec, here)
            rate = _prob(rate_text, spec, here) if eq else p
            if rate is None:
                raise SpecError("pattern rate missing; pass p or use ;p=VALUE", spec, here)
            weights = (1 / 3, 1 / 3, 1 / 3) if letter == "d" else _LETTER_RATES[letter]
            for k in range(3):
                rates[q][k] += rate * weights[k]
        return Pattern(tuple(tuple(r) for r in rates))
    raise SpecError(f"unknown noise model {name!r}", spec, 0)


def parse_partition(text: str, n: int) -> Bipartition:
    """A vertex mask (``5``, ``0b101``) or a comma list of side-A vertices (``0,2``)."""
    text = text.strip()
    try:
        if "," in text or text.startswith("{"):
            verts = [int(v) for v in text.strip("{}").split(",") if v.strip()]
            mask = sum(1 << v for v in verts)
        else:
            mask = int(text, 0)
    except ValueError:
        raise SpecError("partition must be a mask or a vertex list", text, 0) from None
    if not 0 < mask < (1 << n) - 1:
        raise SpecError(f"partition {text!r} is not a proper nonempty subset", text, 0)
    return Bipartition(n, mask)


def _coloring(text: str) -> tuple[list[int], list[int]]:
    a, sep, b = text.partition("/")
    if not sep:
        raise SpecError("coloring must look like 0,2/1,3", text, 0)
    try:
        return [int(v) for v in a.split(",") if v], [int(v) for v in b.split(",") if v]
    except ValueError:
        raise SpecError("coloring lists must hold integers", text, 0) from None


def read_config(path: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment. Keys use option names."""
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise SpecError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        if not eq or not key.strip():
            raise SpecError(f"{path}:{lineno}: expected key = value")
        out[key.strip().replace("_", "-")] = value.strip()
    return out


# ---------------------------------------------------------------------------
# output helpers


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _matrix_json(m) -> list:
    return [[_complex_pair(complex(v)) for v in row] for row in m]


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def to_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in r])
    return buf.getvalue()


def _noise_json(spec: NoiseSpec) -> dict:
    d = {"model": type(spec).__name__}
    d.update({k: (list(map(list, v)) if k == "rates" else v) for k, v in vars(spec).items()})
    return d


# ---------------------------------------------------------------------------
# subcommands


def cmd_gmpp(a) -> str:
    g = parse_graph_spec(a.graph)
    spec = parse_noise_spec(a.noise, g.n, a.p)
    state = from_noise(g, spec)
    cs = gmpp.color_graph_state(g, state, _coloring(a.coloring) if a.coloring else None)
    seq = a.sequence.lower()
    verdict = None
    if seq in ("auto", "greedy", "beam", "random", "alt12", "alt21"):
        strategies = gmpp.DEFAULT_STRATEGIES if seq == "auto" else (seq,)
        verdict = gmpp.search_regime(cs, a.max_steps, strategies, seed=a.seed)
        steps = list(verdict.best_sequence)
    else:
        try:
            steps = gmpp.parse_sequence(a.sequence)
        except gmpp.GmppError as exc:
            raise SpecError(str(exc), a.sequence, 0) from None
    trace = gmpp.run_sequence(cs, steps) if steps else gmpp.GmppTrace(cs.fidelity)
    if a.out == "csv":
        return trace.to_csv()
    out = {
        "graph": a.graph,
        "noise": _noise_json(spec),
        "side_a": list(cs.side_a),
        "side_b": list(cs.side_b),
        "initial_fidelity": cs.fidelity,
        "final_fidelity": trace.final_fidelity,
        "steps": len(steps),
        "sequence": "".join(s[1] for s in steps),
    }
    if verdict is not None:
        out.update(
            {
                "purifiable": verdict.purifiable,
                "best_strategy": verdict.best_strategy,
                "attractor_estimate": verdict.attractor_estimate,
                "strategies": {r.strategy: r.final_fidelity for r in verdict.results},
            }
        )
    return to_json(out)


def cmd_drpp(a) -> str:
    g = parse_graph_spec(a.graph)
    spec = parse_noise_spec(a.noise, g.n, a.p)
    v = drpp.drpp_verdict(g, spec)
    bound = drpp.n_geo_bound(g)
    worst = v.worst_edge
    return to_json(
        {
            "graph": a.graph,
            "noise": _noise_json(spec),
            "purifiable": v.overall,
            "worst_edge": {"edge": list(worst.edge), "max_element": worst.max_element},
            "edges": [{"edge": list(e.edge), "max_element": e.max_element, "purifiable": e.purifiable} for e in v.edges],
            "n_geo": bound.n_geo,
            "n_geo_source": bound.source,
        }
    )


def cmd_drpp_critical(a) -> str:
    p = drpp.critical_depol(a.degree)
    return to_json({"degree": a.degree, "p_critical": p, "x_root": 1 - 4 * p / 3})


def cmd_threshold(a) -> str:
    if a.model == "z":
        r = thresholds.z_general_threshold(a.dmin) if a.dmin is not None else thresholds.z_lr_threshold(a.n)
        return to_json(_result_json(r))
    if a.model == "global":
        f = thresholds.global_depol_threshold(a.n)
        return to_json({"model": "global", "n": a.n, "threshold": float(f), "exact": str(f), "x": 2})
    g = parse_graph_spec(a.graph)
    family = thresholds.last_qubit_clean(g.n) if a.clean_last else Depol
    if a.partition is None:
        r = thresholds.best_partition_threshold(g, family, a.method, tol=a.tol)
    else:
        r = thresholds.partition_threshold(g, parse_partition(a.partition, g.n), family, a.method, tol=a.tol)
    return to_json(_result_json(r) | {"graph": a.graph})


def _result_json(r: thresholds.ThresholdResult) -> dict:
    d = {"model": r.model, "parameter": r.parameter, "threshold": r.value, "witness": r.witness, "tolerance": r.tolerance}
    if r.fidelity is not None:
        d["fidelity"] = r.fidelity
    return d


def cmd_census(a) -> str:
    if a.kind == "lr":
        rep = census.count_lr(a.n, a.threads, allow_large=a.allow_large)
        return to_json(rep.as_dict())
    if a.kind == "coverage":
        rep = census.lc_lr_coverage(a.n)
        return to_json(
            {
                "max_n": rep.max_n,
                "classes": rep.classes,
                "per_n": {str(k): v for k, v in sorted(rep.per_n.items())},
                "violators": [{"n": f.n, "edges": [list(e) for e in f.edges]} for f in rep.violators],
                "wall_time_s": rep.wall_time,
            }
        )
    cat = census.degree3_nonlr_catalog(a.n)
    return to_json(
        {"max_n": a.n, "count": len(cat), "graphs": [{"n": f.n, "edges": [list(e) for e in f.edges]} for f in cat]}
    )


def cmd_lc_orbit(a) -> str:
    g = parse_graph_spec(a.graph)
    orb = lc_orbit(g, up_to_iso=not a.labeled, cap=a.cap)
    lr_classes = sum(1 for c in orb.classes if c.n >= 2 and is_lr(c.to_graph()))
    return to_json(
        {
            "graph": a.graph,
            "iso_classes": orb.class_count,
            "labeled_size": orb.labeled_size,
            "lr_classes": lr_classes,
        }
    )


def cmd_fixedpoint(a) -> str:
    rep = fixedpoint.fixed_point_report(a.d, a.x, a.rounds)
    if a.out == "csv":
        return to_csv(
            ["n", "lambda00_iterated", "lambda00_closed_form"], [(r.n, r.iterated, r.closed_form) for r in rep.rows]
        )
    return to_json(
        {
            "d": rep.d,
            "x": rep.x,
            "rows": [{"n": r.n, "iterated": r.iterated, "closed_form": r.closed_form} for r in rep.rows],
            "limit": rep.limit,
            "trend": rep.trend,
            "max_abs_diff": rep.max_abs_diff,
        }
    )


def _load_alpha(path: str) -> vbs.ValenceProjector:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise vbs.VbsError(f"cannot read projector file {path}: {exc}") from None

    def entry(v):
        if isinstance(v, (int, float)):
            return complex(v)
        if isinstance(v, list) and len(v) == 2:
            return complex(v[0], v[1])
        raise vbs.VbsError(f"matrix entries must be numbers or [re, im] pairs, got {v!r}")

    try:
        mats = [[[entry(v) for v in row] for row in data[key]] for key in ("alpha0", "alpha1")]
    except (KeyError, TypeError):
        raise vbs.VbsError("projector file needs alpha0 and alpha1 matrices") from None
    return vbs.ValenceProjector(*mats)


def _vbs_json(p: vbs.ValenceProjector) -> dict:
    rep = vbs.optimality_report(p)
    pair = vbs.z_measure_pair(p)
    out = {
        "alpha0": _matrix_json(p.alpha0),
        "alpha1": _matrix_json(p.alpha1),
        "rank": p.rank,
        "rank_deficient": p.rank_deficient,
        "optimal": rep.satisfied,
        "optimal_both_edges": vbs.optimal_on_both_edges(p),
        "method": rep.method,
        "commutator_norm": None if math.isnan(rep.commutator_norm) else rep.commutator_norm,
        "diagonal_check": rep.diagonal_check,
        "pair_schmidt": list(pair.schmidt),
        "pair_entangled": pair.entangled,
    }
    betas = vbs.solve_beta(p)
    out["beta"] = None if betas is None else [_matrix_json(b) for b in betas]
    out["reconstruction"] = betas is not None and vbs.reconstruction_check(p, vbs.ValenceProjector(*betas))
    return out


def cmd_vbs(a) -> str:
    if a.kind == "check":
        return to_json(_vbs_json(_load_alpha(a.alpha)))
    p = vbs.weighted_graph_projector(a.theta1, a.theta2)
    out = _vbs_json(p)
    out.update({"theta1": a.theta1, "theta2": a.theta2, "cluster_fidelity": vbs.build_initial(p).fidelity(vbs.cluster_state())})
    return to_json(out)


def cmd_sweep(a) -> str:
    rows = thresholds.depol_chain_sweep(a.n_from, a.n_to, tol=a.tol)
    if a.out == "json":
        return to_json(
            [{"n": r.n, "noisy_threshold": r.noisy_threshold, "general_bound": r.general_bound, "witness": r.witness} for r in rows]
        )
    return to_csv(
        ["n", "noisy_threshold", "general_bound"],
        [(r.n, r.noisy_threshold, "" if r.general_bound is None else r.general_bound) for r in rows],
    )


# ---------------------------------------------------------------------------
# parser


def _default_threads() -> int:
    raw = os.environ.get("THREADS")
    if raw is None:
        return census.DEFAULT_THREADS
    try:
        value = int(raw)
    except ValueError:
        return census.DEFAULT_THREADS
    return max(1, value)


OUT_HELP = "output format, or a file name whose extension picks the format"


def _out_format(formats: tuple[str, ...]):
    """Accept a format name or a ``*.json``/``*.csv`` path; the result is ``(format, path)``."""

    def parse(text: str) -> tuple[str, str | None]:
        if text in formats:
            return text, None
        ext = Path(text).suffix.lower().lstrip(".")
        if ext in formats:
            return ext, text
        raise argparse.ArgumentTypeError(f"expected one of {', '.join(formats)} or a file ending in one")

    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file supplying defaults")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=_default_threads())

    parser = argparse.ArgumentParser(prog="gpurify", description="Graph-state purification analysis.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(subs, name, func, **kw):
        p = subs.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func, _leaf=p)
        return p

    p = add(sub, "gmpp", cmd_gmpp, help="run the two-colour multipartite protocol")
    p.add_argument("--graph", required=True)
    p.add_argument("--noise", required=True)
    p.add_argument("--p", type=float, help="rate for pattern noise")
    p.add_argument("--coloring", help="explicit colouring A/B, e.g. 0,2/1,3")
    p.add_argument("--sequence", default="auto", help="auto, a strategy name, or e.g. P1P2P1")
    p.add_argument("--max-steps", type=int, default=gmpp.DEFAULT_MAX_STEPS)
    p.add_argument("--out", type=_out_format(("json", "csv")), default="json", help=OUT_HELP)

    p = add(sub, "drpp", cmd_drpp, help="per-edge divide-and-rebuild verdict")
    p.add_argument("--graph", required=True)
    p.add_argument("--noise", required=True)
    p.add_argument("--p", type=float, help="rate for pattern noise")
    p.add_argument("--out", type=_out_format(("json",)), default="json", help=OUT_HELP)

    p = add(sub, "drpp-critical", cmd_drpp_critical, help="critical local depolarizing rate for a degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--out", type=_out_format(("json",)), default="json", help=OUT_HELP)

    p = sub.add_parser("threshold", help="threshold bounds")
    tsub = p.add_subparsers(dest="model", required=True)
    q = add(tsub, "z", cmd_threshold)
    q.add_argument("--dmin", type=int)
    q.add_argument("--n", type=int, help="also report the fidelity form for N qubits")
    q.add_argument("--out", type=_out_format(("json",)), default="json", help=OUT_HELP)
    q = add(tsub, "global", cmd_threshold)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--out", type=_out_format(("json",)), default="json", help=OUT_HELP)
    q = add(tsub, "depol", cmd_threshold)
    q.add_argument("--graph", required=True)
    q.add_argument("--partition", help="side-A mask or vertex list; default scans all cuts")
    q.add_argument("--method", choices=("pairwise", "joint"), default="pairwise")
    q.add_argument("--clean-last", action="store_true", help="leave the last qubit noiseless")
    q.add_argument("--tol", type=float, default=thresholds.PREDICATE_TOL)
    q.add_argument("--out", type=_out_format(("json",)), default="json", help=OUT_HELP)

    p = sub.add_parser("census", help="LR graph statistics")
    csub = p.add_subparsers(dest="kind", required=True)
    q = add(csub, "lr", cmd_census)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--allow-large", action="store_true")
    q.add_argument("--out", type=_out_format(("json",)), default="json", help=OUT_HELP)
    q = add(csub, "coverage", cmd_census)
    q.add_argument("--n", type=int, default=7)
    q.add_argument("--out", type=_out_format(("json",)), default="json", help=OUT_HELP)
    q = add(csub, "degree3", cmd_census)
    q.add_argument("--n", "--max-n", dest="n", type=int, default=7)
    q.add_argument("--out", type=_out_format(("json",)), default="json", help=OUT_HELP)

    p = add(sub, "lc-orbit", cmd_lc_orbit, help="local complementation orbit")
    p.add_argument("--graph", required=True)
    p.add_argument("--labeled", action="store_true", help="also count the labeled orbit")
    p.add_argument("--cap", type=int, default=10**6)
    p.add_argument("--out", type=_out_format(("json",)), default="json", help=OUT_HELP)

    p = add(sub, "fixedpoint", cmd_fixedpoint, help="bipartite recurrence map")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--rounds", type=int, default=10)
    p.add_argument("--out", type=_out_format(("json", "csv")), default="json", help=OUT_HELP)

    p = sub.add_parser("vbs", help="valence bond example")
    vsub = p.add_subparsers(dest="kind", required=True)
    q = add(vsub, "check", cmd_vbs)
    q.add_argument("--alpha", required=True, help="JSON file with alpha0 and alpha1")
    q.add_argument("--out", type=_out_format(("json",)), default="json", help=OUT_HELP)
    q = add(vsub, "weighted", cmd_vbs)
    q.add_argument("--theta1", type=float, default=math.pi)
    q.add_argument("--theta2", type=float, default=math.pi)
    q.add_argument("--out", type=_out_format(("json",)), default="json", help=OUT_HELP)

    p = sub.add_parser("sweep", help="parameter sweeps")
    ssub = p.add_subparsers(dest="kind", required=True)
    q = add(ssub, "depol-chain", cmd_sweep)
    q.add_argument("--n-from", type=int, default=2)
    q.add_argument("--n-to", type=int, default=10)
    q.add_argument("--tol", type=float, default=thresholds.PREDICATE_TOL)
    q.add_argument("--out", type=_out_format(("csv", "json")), default="csv", help=OUT_HELP)
    return parser


def _explicit(argv: Sequence[str], opts: Sequence[str]) -> bool:
    return any(tok == o or tok.startswith(o + "=") for tok in argv for o in opts)


def _config_path(argv: Sequence[str]) -> str | None:
    for k, tok in enumerate(argv):
        if tok == "--config" and k + 1 < len(argv):
            return argv[k + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def _leaf_parser(parser: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.ArgumentParser | None:
    """Follow the subcommand words in ``argv`` down to the parser that owns the options."""
    for tok in argv:
        subs = [a for a in parser._actions if isinstance(a, argparse._SubParsersAction)]
        if not subs:
            return parser
        if tok in subs[0].choices:
            parser = subs[0].choices[tok]
    subs = [a for a in parser._actions if isinstance(a, argparse._SubParsersAction)]
    return None if subs else parser


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    """Parse ``argv`` after filling options it leaves unset from ``--config``."""
    parser = build_parser()
    path = _config_path(argv)
    leaf = _leaf_parser(parser, argv) if path else None
    extra = []
    if path and leaf is not None:
        for key, value in read_config(path).items():
            action = leaf._option_string_actions.get("--" + key)
            if action is None or key == "config":
                raise SpecError(f"config key {key!r} is not an option of this command")
            if _explicit(argv, action.option_strings):
                continue
            if action.nargs == 0:
                if value.lower() in ("1", "true", "yes", "on"):
                    extra.append("--" + key)
            else:
                extra += ["--" + key, value]
    return parser.parse_args(list(argv) + extra)


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = getattr(args, "out", None)
    if isinstance(out, tuple):
        args.out, path = out
        args.output = args.output or path
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        text = args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
