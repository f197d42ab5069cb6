"""Command-line interface. JSON goes to stdout, human-readable notes to stderr.

Exit codes: 0 ok, 1 verification failed, 2 bad input, 3 internal invariant
violation. Set ``CIRCLEPAINT_LOG`` (e.g. ``DEBUG``) for verbose logging.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from ._errors import InvariantViolation
from .core import (
    FIG1,
    FIG1_PILLAR_GAP,
    FIG1_RAW,
    FIG2,
    FIG2_PILLAR_GAPS,
    FIG2_RAW,
    canonicalize,
    chords_to_intervals,
    diagram_from_json,
    diagram_to_json,
    load_json,
    overlap_graph,
    system_from_json,
    system_to_json,
)
from .dominance import omega
from .lowerbound import generate_D, verify_lower_bound_instance
from .oracle import Exhausted, exact_chi, random_system, verify_colouring
from .pillar import build_colouring, permutation_colouring, verify_assignment
from .solver import colour

log = logging.getLogger("circlepaint")

EXIT_OK, EXIT_FAILED, EXIT_BAD_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class BadInput(Exception):
    pass


def _emit(obj):
    json.dump(obj, sys.stdout, indent=None, sort_keys=False)
    sys.stdout.write("\n")


def _load_system(path):
    try:
        obj = load_json(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read {path}: {exc}") from exc
    try:
        if isinstance(obj, dict) and "chords" in obj:
            return chords_to_intervals(diagram_from_json(obj))
        if isinstance(obj, dict) and "intervals" in obj:
            return system_from_json(obj)
    except ValueError as exc:
        raise BadInput(str(exc)) from exc
    raise BadInput(f"{path}: expected an interval-system or chord-diagram JSON object")


def cmd_color(args):
    system = _load_system(args.input)
    try:
        result = colour(system, check=not args.no_check)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        _emit({"error": str(exc), "report": _jsonable(exc.report)})
        return EXIT_INVARIANT
    stats = result.stats
    if args.assert_bounds and stats.omega >= 2 and stats.colors_used > stats.bound:
        print(f"bound violated: {stats.colors_used} > {stats.bound}", file=sys.stderr)
        _emit(result.to_json())
        return EXIT_INVARIANT
    print(f"m={system.m} omega={stats.omega} colours={stats.colors_used} bound={stats.bound}", file=sys.stderr)
    _emit(result.to_json())
    return EXIT_OK


def cmd_omega(args):
    system = _load_system(args.input)
    w, witness = omega(system)
    _emit({"omega": w, "witness": [str(iv.id) for iv in witness]})
    return EXIT_OK


def cmd_verify(args):
    system = _load_system(args.input)
    try:
        obj = load_json(args.colors)
    except (OSError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read {args.colors}: {exc}") from exc
    colors = obj.get("colors", obj) if isinstance(obj, dict) else None
    if not isinstance(colors, dict) or not all(isinstance(v, int) for v in colors.values()):
        raise BadInput("colouring JSON must map ids to integers")
    ok = verify_colouring(overlap_graph(system), {str(k): v for k, v in colors.items()})
    print("valid" if ok else "INVALID", file=sys.stderr)
    _emit({"valid": ok})
    return EXIT_OK if ok else EXIT_FAILED


def cmd_exact_chi(args):
    system = _load_system(args.input)
    w, _ = omega(system)
    result = exact_chi(overlap_graph(system), node_budget=args.budget, lower_bound=w)
    if isinstance(result, Exhausted):
        _emit({"chi": "exhausted", "nodes": result.nodes, "omega": w})
    else:
        _emit({"chi": result, "omega": w})
    return EXIT_OK


def cmd_gen_lower(args):
    try:
        diagram = generate_D(args.n, args.omega)
        report = verify_lower_bound_instance(args.n, args.omega, args.brute_limit if args.verify else 0)
    except ValueError as exc:
        raise BadInput(str(exc)) from exc
    out = {"diagram": diagram_to_json(diagram), "report": report.to_json()}
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(out["diagram"], fh)
    _emit(out)
    print(f"chords={report.chord_count} clique<={report.clique_checked} ok={report.ok}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_gen_random(args):
    if args.m < 0:
        raise BadInput("--m must be non-negative")
    _emit(system_to_json(random_system(args.m, args.seed)))
    return EXIT_OK


def selftest_report() -> dict:
    checks = []

    def record(name, passed, **extra):
        checks.append({"name": name, "passed": bool(passed), **extra})

    record("fig1_ranks", canonicalize(FIG1_RAW) == FIG1)
    record("fig2_ranks", canonicalize(FIG2_RAW) == FIG2)
    fig1 = permutation_colouring(FIG1.containing(FIG1_PILLAR_GAP), {1, 2, 3})
    record("fig1_colours", fig1 == {"A": 1, "B": 2, "C": 2, "D": 1, "E": 3})
    state = build_colouring(FIG2, FIG2_PILLAR_GAPS)
    sets = [sorted(c) for c in state.colour_set_list]
    record("fig2_colour_sets", sets == [[1, 2, 3], [4], [5], [2, 6], [1, 3]])
    expected_psi = {"I1": 1, "I2": 1, "I3": 2, "I4": 3, "I5": 5, "I6": 2, "I7": 2,
                    "I8": 6, "I9": 1, "I10": 3, "I11": 4}
    record("fig2_colours", state.psi == expected_psi)
    record("fig2_degree_p3_p4", state.degree((7, 13)) == 5)
    record("fig2_structure", verify_assignment(state).ok)
    solved = colour(FIG2)
    record("fig2_solver", verify_colouring(overlap_graph(FIG2), solved.colors)
           and solved.stats.colors_used <= solved.stats.bound)
    return {
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
        "fig1_colors": fig1,
        "fig2_colour_sets": sets,
        "fig2_colors": state.psi,
    }


def cmd_selftest(args):
    report = selftest_report()
    for c in report["checks"]:
        print(f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}", file=sys.stderr)
    _emit(report)
    return EXIT_OK if report["passed"] else EXIT_FAILED


def _bench_one(job):
    m, seed, check = job
    system = random_system(m, seed)
    t0 = time.perf_counter()
    result = colour(system, check=check)
    elapsed = time.perf_counter() - t0
    s = result.stats
    return {"m": m, "seed": seed, "omega": s.omega, "colors_used": s.colors_used,
            "bound": s.bound, "pillars": s.pillar_count, "seconds": round(elapsed, 4)}


def cmd_bench(args):
    try:
        sizes = [int(x) for x in args.sizes.split(",") if x.strip()]
    except ValueError as exc:
        raise BadInput(f"bad --sizes: {exc}") from exc
    jobs = [(m, seed, not args.no_check) for m in sizes for seed in range(args.seeds)]
    omega(FIG1)  # compile the clique kernel outside the timed region
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            rows = list(pool.map(_bench_one, jobs))
    else:
        rows = [_bench_one(j) for j in jobs]
    for r in rows:
        print(f"m={r['m']:>7} seed={r['seed']:>3} omega={r['omega']:>4} "
              f"colours={r['colors_used']:>5} bound={r['bound']:>6} {r['seconds']:.3f}s", file=sys.stderr)
    _emit({"rows": rows})
    return EXIT_OK


def _jsonable(obj):
    return json.loads(json.dumps(obj, default=str))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circlepaint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("color", help="colour an interval system or chord diagram")
    p.add_argument("--input", required=True)
    p.add_argument("--assert-bounds", action="store_true", help="exit 3 if the colour bound is exceeded")
    p.add_argument("--no-check", action="store_true", help="skip runtime invariant checks")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("omega", help="clique number with a witness clique")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("verify", help="check a colouring against an instance")
    p.add_argument("--input", required=True)
    p.add_argument("--colors", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exact-chi", help="exact chromatic number by branch and bound")
    p.add_argument("--input", required=True)
    p.add_argument("--budget", type=int, default=10**7)
    p.set_defaults(func=cmd_exact_chi)

    p = sub.add_parser("gen-lower", help="lower-bound chord diagram D(n, omega)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--omega", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="run the brute-force checks")
    p.add_argument("--brute-limit", type=int, default=64)
    p.add_argument("--output", help="also write the diagram JSON here")
    p.set_defaults(func=cmd_gen_lower)

    p = sub.add_parser("gen-random", help="random interval system (splitmix64 matching)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_gen_random)

    p = sub.add_parser("selftest", help="reproduce the two worked figures exactly")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("bench", help="runtime and colours-used table on random systems")
    p.add_argument("--sizes", default="1000,10000")
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-check", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    level = os.environ.get("CIRCLEPAINT_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BadInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
