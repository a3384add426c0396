"""Command line entry point: the `eps` tool.

Subcommands: h0, newton, epsilon, mixed, family (eval|check|growth|run),
delta, repro.  Output is canonical JSON by default (sorted keys, rationals
as "p/q" strings) or CSV via --csv [PATH].  Exit codes: 0 success, 1 parse
or usage error, 2 precondition violation, 3 mathematically inconclusive
(no fit, method disagreement, failed reproduction, timeout).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import signal
import sys
from contextlib import contextmanager
from itertools import product as iter_product

from .asymptotics import convergence_report, extract_epsilons, fit_quasi_polynomial, length_table
from .cohomology import delta_complex, h0_length, reduced_betti
from .errors import NoFitError, ParseError, PreconditionError, TheoremViolationError
from .families import (check_structure, eval_family, family_from_json,
                       family_to_json, growth_constants)
from .ideal_core import format_ideal, parse_ideal
from .polyhedra import analytic_spread, newton_polyhedron, out_region
from .repro import fit_epsilon, rat, run_case


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _common() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output (default)")
    common.add_argument("--csv", nargs="?", const="-", default=None, metavar="PATH",
                        help="CSV output to stdout or PATH")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=None,
                        help="seed for randomized reproduction cases")
    common.add_argument("--timeout", type=int, default=0, metavar="SECS")
    return common


def build_parser() -> _Parser:
    common = _common()
    parser = _Parser(prog="eps", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("h0", parents=[common], help="H^0 length of R/I")
    p.add_argument("--ideal", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--method", choices=["auto", "box", "staircase", "takayama"],
                   default="auto")
    p.add_argument("--witnesses", action="store_true")

    p = sub.add_parser("newton", parents=[common], help="Newton polyhedron data")
    p.add_argument("--ideal", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--facets", action="store_true")
    p.add_argument("--vertices", action="store_true")
    p.add_argument("--spread", action="store_true")
    p.add_argument("--epsilon", action="store_true")

    p = sub.add_parser("epsilon", parents=[common], help="epsilon multiplicity")
    p.add_argument("--ideal", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--method", choices=["fit", "volume", "both"], default="both")
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--period-max", type=int, default=6)
    p.add_argument("--start", type=int, default=None)
    p.add_argument("--holdout", type=int, default=2)

    p = sub.add_parser("mixed", parents=[common], help="mixed epsilon multiplicities")
    p.add_argument("--ideals", required=True, help="semicolon-separated ideal specs")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--grid", required=True, metavar="A:B")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--period-max", type=int, default=6)
    p.add_argument("--start", type=int, default=None)
    p.add_argument("--holdout", type=int, default=4)

    p = sub.add_parser("family", parents=[common], help="graded family operations")
    fam = p.add_subparsers(dest="family_cmd", required=True)
    f = fam.add_parser("eval", parents=[common])
    f.add_argument("--spec", required=True)
    f.add_argument("--n", default=None)
    f.add_argument("--range", dest="index_range", default=None, metavar="A:B")
    f = fam.add_parser("check", parents=[common])
    f.add_argument("--spec", required=True)
    f.add_argument("--N", type=int, required=True)
    f.add_argument("--mode", choices=["graded", "filtration"], default="graded")
    f = fam.add_parser("growth", parents=[common])
    f.add_argument("--spec", required=True)
    f.add_argument("--n", type=int, default=None)
    f.add_argument("--range", dest="index_range", default=None, metavar="A:B")
    f = fam.add_parser("run", parents=[common])
    f.add_argument("--spec", required=True)
    f.add_argument("--range", required=True, metavar="A:B")
    f.add_argument("--normalizer", default=None)

    p = sub.add_parser("delta", parents=[common],
                       help="inverted-variable complex of a lattice point")
    p.add_argument("--ideal", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--point", required=True, help="comma-separated exponents")
    p.add_argument("--q", type=int, default=None)

    p = sub.add_parser("repro", parents=[common], help="bundled reproduction cases")
    p.add_argument("--case", required=True,
                   choices=["example-counter", "example-limit", "jm-volume",
                            "mixed-grid", "irrational"])
    return parser


def _parse_range(text: str) -> range:
    try:
        a, b = text.split(":")
        lo, hi = int(a), int(b)
    except ValueError as exc:
        raise ParseError(f"bad range {text!r}; expected A:B") from exc
    if lo > hi:
        raise ParseError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _parse_index(text: str):
    parts = [p for p in text.split(",") if p.strip()]
    try:
        values = [int(p) for p in parts]
    except ValueError as exc:
        raise ParseError(f"bad index {text!r}") from exc
    return values[0] if len(values) == 1 else tuple(values)


def _load_family(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return family_from_json(json.load(fh))
    except OSError as exc:
        raise ParseError(f"cannot read family spec {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON in {path}: {exc}") from exc


_METHOD_NAMES = {"auto": "auto", "box": "box-enumeration",
                 "staircase": "staircase-2d", "takayama": "takayama"}


def cmd_h0(args):
    ideal = parse_ideal(args.ideal, args.dim)
    count = h0_length(ideal, method=_METHOD_NAMES[args.method],
                      witnesses=args.witnesses, threads=args.threads)
    payload = {"length": count.length, "method": count.method}
    if count.witnesses is not None:
        payload["witnesses"] = [list(w) for w in count.witnesses]
    return payload, 0


def cmd_newton(args):
    ideal = parse_ideal(args.ideal, args.dim)
    np_ = newton_polyhedron(ideal)
    wanted = [k for k in ("facets", "vertices", "spread", "epsilon") if getattr(args, k)]
    if not wanted:
        wanted = ["facets", "vertices", "spread", "epsilon"]
    payload = {}
    if "facets" in wanted:
        payload["facets"] = [{"normal": list(nu), "offset": int(c)}
                             for nu, c in np_.facets]
    if "vertices" in wanted:
        payload["vertices"] = [[rat(x) for x in v] for v in np_.vertices]
    if "spread" in wanted:
        payload["spread"] = analytic_spread(ideal)
    if "epsilon" in wanted:
        report = out_region(ideal)
        payload["epsilon"] = rat(report.epsilon)
        payload["volume"] = rat(report.volume)
        payload["box_bound"] = rat(report.box_bound) if report.box_bound is not None else None
    return payload, 0


def cmd_epsilon(args):
    ideal = parse_ideal(args.ideal, args.dim)
    start = args.start if args.start is not None else ideal.d + 1
    payload = {"d": ideal.d, "method": args.method}
    code = 0
    if args.method in ("fit", "both"):
        eps_fit, quasi = fit_epsilon(ideal, n_max=args.nmax, start=start,
                                     period_max=args.period_max, holdout=args.holdout)
        payload["epsilon_fit"] = rat(eps_fit)
        payload["raw_limit"] = rat(eps_fit / _factorial(ideal.d))
        payload["fit_period"] = quasi.period
        payload["epsilon"] = rat(eps_fit)
    if args.method in ("volume", "both"):
        report = out_region(ideal)
        payload["epsilon_volume"] = rat(report.epsilon)
        payload["volume"] = rat(report.volume)
        payload["epsilon"] = rat(report.epsilon)
    if args.method == "both":
        agree = payload["epsilon_fit"] == payload["epsilon_volume"]
        payload["methods_agree"] = agree
        if not agree:
            code = 3
    return payload, code


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def cmd_mixed(args):
    specs = [s for s in args.ideals.split(";") if s.strip()]
    if not specs:
        raise ParseError("no ideals given")
    ideals = [parse_ideal(s, args.dim) for s in specs]
    from .families import product_grid_family

    family = product_grid_family(ideals)
    rng = _parse_range(args.grid)
    indices = list(iter_product(rng, repeat=len(ideals)))
    table = length_table(family, indices, threads=args.threads)
    d = ideals[0].d
    degree = args.degree if args.degree is not None else d
    start = args.start if args.start is not None else d + 1
    quasi = fit_quasi_polynomial(table, degree=degree, period_max=args.period_max,
                                 holdout=args.holdout, start=start)
    report = extract_epsilons(quasi, d)
    payload = {
        "degree": d,
        "period": quasi.period,
        "mixed": {",".join(map(str, e)): rat(v) for e, v in sorted(report.mixed.items())},
        "leading_form": {",".join(map(str, e)): rat(v)
                         for e, v in sorted(report.leading_form.items())},
    }
    return payload, 0


def _indices_from(args):
    if (args.n is None) == (args.index_range is None):
        raise ParseError("give exactly one of --n or --range")
    if args.n is not None:
        return [_parse_index(str(args.n))]
    return list(_parse_range(args.index_range))


def _eval_payload(spec, idx):
    ideal = eval_family(spec, idx)
    return {"n": list(idx) if isinstance(idx, tuple) else idx,
            "ideal": [list(g) for g in ideal.gens],
            "text": format_ideal(ideal)}


def _growth_payload(spec, n):
    report = growth_constants(spec, n)
    return {"n": report.n, "max_socle_degree": report.max_socle_degree,
            "minimal_c_linear": report.minimal_c_linear,
            "minimal_c_quadratic": report.minimal_c_quadratic}


def cmd_family(args):
    spec = _load_family(args.spec)
    if args.family_cmd == "eval":
        rows = [_eval_payload(spec, idx) for idx in _indices_from(args)]
        return (rows[0] if args.index_range is None else {"entries": rows}), 0
    if args.family_cmd == "check":
        report = check_structure(spec, args.N, args.mode)
        return {"passed": report.passed, "mode": report.mode, "N": report.upto,
                "violation": report.violation}, 0
    if args.family_cmd == "growth":
        rows = [_growth_payload(spec, n) for n in _indices_from(args)]
        return (rows[0] if args.index_range is None else {"entries": rows}), 0
    if args.family_cmd == "run":
        rng = _parse_range(args.range)
        table = length_table(spec, rng, threads=args.threads)
        entries = [{"index": i[0], "length": v} for i, v in table.series()]
        payload = {"spec": family_to_json(spec), "entries": entries}
        if args.normalizer:
            conv = convergence_report(table, args.normalizer)
            normalized = dict(conv.values)
            for row in entries:
                row["normalized"] = normalized.get(row["index"])
            payload["normalizer"] = conv.normalizer
            payload["trend"] = conv.trend
            payload["window_max"] = conv.window_max
        return payload, 0
    raise ParseError(f"unknown family subcommand {args.family_cmd!r}")


def cmd_delta(args):
    ideal = parse_ideal(args.ideal, args.dim)
    point = _parse_index(args.point)
    point = (point,) if isinstance(point, int) else point
    complex_ = delta_complex(ideal, point)
    faces = sorted((sorted(f) for f in complex_.faces), key=lambda f: (len(f), f))
    payload = {"point": list(point), "void": complex_.is_void,
               "faces": [list(f) for f in faces]}
    qs = [args.q] if args.q is not None else list(range(-1, ideal.d))
    payload["betti"] = {str(q): reduced_betti(complex_, q) for q in qs}
    return payload, 0


def cmd_repro(args):
    payload = run_case(args.case, seed=args.seed)
    return payload, 0 if payload["pass"] else 3


_DISPATCH = {
    "h0": cmd_h0,
    "newton": cmd_newton,
    "epsilon": cmd_epsilon,
    "mixed": cmd_mixed,
    "family": cmd_family,
    "delta": cmd_delta,
    "repro": cmd_repro,
}


@contextmanager
def _alarm(seconds: int):
    if seconds <= 0 or not hasattr(signal, "SIGALRM"):
        yield
        return

    def _raise(signum, frame):
        raise TimeoutError(f"timed out after {seconds}s")

    old = signal.signal(signal.SIGALRM, _raise)
    signal.alarm(seconds)
    try:
        yield
    finally:
        signal.alarm(0)
        signal.signal(signal.SIGALRM, old)


def _flatten(payload, prefix=""):
    rows = []
    if isinstance(payload, dict):
        for k in sorted(payload):
            rows.extend(_flatten(payload[k], f"{prefix}{k}." if prefix else f"{k}."))
    elif isinstance(payload, list):
        for i, v in enumerate(payload):
            rows.extend(_flatten(v, f"{prefix}{i}."))
    else:
        rows.append((prefix[:-1], payload))
    return rows


def _emit(payload, args) -> None:
    if getattr(args, "csv", None) is not None:
        buf = io.StringIO()
        writer = csv.writer(buf)
        entries = payload.get("entries") if isinstance(payload, dict) else None
        if entries and all(isinstance(e, dict) for e in entries):
            keys = list(entries[0])
            writer.writerow(keys)
            for e in entries:
                writer.writerow([e.get(k, "") for k in keys])
        else:
            writer.writerow(["key", "value"])
            for k, v in _flatten(payload):
                writer.writerow([k, json.dumps(v) if isinstance(v, (dict, list)) else v])
        text = buf.getvalue()
        if args.csv == "-":
            sys.stdout.write(text)
        else:
            with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    else:
        print(json.dumps(payload, sort_keys=True))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ParseError as exc:
        print(f"eps: error: {exc}", file=sys.stderr)
        return 1
    try:
        with _alarm(args.timeout):
            payload, code = _DISPATCH[args.command](args)
    except ParseError as exc:
        print(f"eps: error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"eps: precondition violated: {exc}", file=sys.stderr)
        return 2
    except (NoFitError, TheoremViolationError) as exc:
        print(f"eps: inconclusive: {exc}", file=sys.stderr)
        return 3
    except TimeoutError as exc:
        print(f"eps: {exc}", file=sys.stderr)
        return 3
    _emit(payload, args)
    return code


def console_main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
