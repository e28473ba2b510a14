"""Command-line interface.

Subcommands: conway, lkmatrix, lift, classify, gen, verify.  Text output by
default; --json switches to (or, for verify, writes) machine-readable JSON
with sorted keys, so identical inputs and seeds produce byte-identical
output.  Exit codes: 0 success / no failures, 1 verification failures,
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from conwaylab.diagram import (
    LinkDiagram,
    ParseError,
    ValidationError,
    components,
    parse_pd,
    render_pd,
)
from conwaylab.linking import a0_from_matrix, linking_matrix
from conwaylab.periodic import (
    GenerationError,
    PatternConfig,
    PatternError,
    QuotientPattern,
    classify_type_m,
    lift,
    quotient_diagram,
    random_pattern,
    winding_numbers,
)
from conwaylab.polynomial import ParityError, to_normal_form
from conwaylab.skein import (
    DEFAULT_MAX_CROSSINGS,
    DEFAULT_TIME_LIMIT,
    MemoCache,
    ResourceLimitError,
    conway,
)
from conwaylab.verify import SUITE_ORDER, SuiteConfig, run_suite

_CACHE_DIR_ENV = "CONWAYLAB_CACHE_DIR"


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_diagram(path: str) -> LinkDiagram:
    try:
        return parse_pd(_read_text(path))
    except (ParseError, ValidationError) as exc:
        raise exc.__class__(f"{path}: {exc}") from exc


def _load_pattern(path: str) -> QuotientPattern:
    try:
        data = json.loads(_read_text(path))
        return QuotientPattern.from_json_dict(data)
    except (PatternError, json.JSONDecodeError) as exc:
        raise PatternError(f"{path}: {exc}") from exc


def _limit_kwargs(args) -> dict:
    time_limit = args.time_limit
    if time_limit is not None and time_limit <= 0:
        time_limit = None
    return {"max_crossings": args.max_crossings, "time_limit": time_limit}


def _conway_cache(args):
    """Per-call memo by default; a persistent store when the environment
    names a cache directory; disabled entirely under --no-cache."""
    if args.no_cache:
        return False, None
    directory = os.environ.get(_CACHE_DIR_ENV)
    if not directory:
        return True, None
    path = os.path.join(directory, "memo.json")
    memo = MemoCache.load(path) if os.path.exists(path) else MemoCache()
    return memo, path


def cmd_conway(args) -> int:
    d = _load_diagram(args.pd_file)
    cache, persist_path = _conway_cache(args)
    nabla = conway(d, cache=cache, **_limit_kwargs(args))
    if persist_path is not None:
        os.makedirs(os.path.dirname(persist_path), exist_ok=True)
        cache.save(persist_path)
    n = components(d).count
    a0 = to_normal_form(nabla, n).a0 if n else 0
    if args.json:
        print(_dump({
            "schema": 1,
            "nabla": str(nabla),
            "coefficients": list(nabla.coeffs),
            "components": n,
            "a0": a0,
        }))
    else:
        print(f"∇ = {nabla} ; n={n} ; a_0 = {a0}")
    return 0


def cmd_lkmatrix(args) -> int:
    d = _load_diagram(args.pd_file)
    mat = linking_matrix(d)
    n = mat.size
    a0_matrix = a0_from_matrix(mat)
    cache, _ = _conway_cache(args)
    nabla = conway(d, cache=cache, **_limit_kwargs(args))
    a0_engine = to_normal_form(nabla, n).a0 if n else 0
    agree = a0_engine == a0_matrix
    cof = mat.cofactor(0, 0) if n else 1
    if args.json:
        print(_dump({
            "schema": 1,
            "matrix": [list(row) for row in mat.entries],
            "cofactor_0_0": cof,
            "a0_matrix": a0_matrix,
            "a0_engine": a0_engine,
            "agree": agree,
        }))
    else:
        print(f"linking matrix (n={n}):")
        for row in mat.entries:
            print("  " + " ".join(f"{x:3d}" for x in row))
        print(f"cofactor(0,0) = {cof}")
        print(f"a_0 matrix route = {a0_matrix}")
        print(f"a_0 skein engine = {a0_engine}")
        print(f"agreement: {'ok' if agree else 'MISMATCH'}")
    return 0 if agree else 1


def cmd_lift(args) -> int:
    q = _load_pattern(args.pattern)
    d, lab = lift(q, args.p)
    n = components(d).count
    if args.json:
        print(_dump({
            "schema": 1,
            "p": args.p,
            "pd": render_pd(d),
            "free_loops": d.free_loops,
            "components": n,
            "orbit_of": list(lab.orbit_of),
            "position_of": list(lab.position_of),
            "rotation": list(lab.rotation),
            "arc_rotation": {str(k): v for k, v in sorted(lab.arc_rotation.items())},
            "quotient_components": lab.quotient_count,
            "quotient_windings": list(winding_numbers(q)),
        }))
    else:
        print(f"p = {args.p}")
        print(f"pd: {render_pd(d) or '(no crossings)'}")
        if d.free_loops:
            print(f"free loops: {d.free_loops}")
        print(f"components: {n}")
        orbits = " ".join(
            f"{c}:(orbit {o}, copy {t})"
            for c, (o, t) in enumerate(zip(lab.orbit_of, lab.position_of))
        )
        print(f"orbits: {orbits or '(none)'}")
        rot = " ".join(f"{c}->{r}" for c, r in enumerate(lab.rotation))
        print(f"rotation: {rot or '(none)'}")
    return 0


def cmd_classify(args) -> int:
    q = _load_pattern(args.pattern)
    decomp = classify_type_m(q, args.p)
    if args.json:
        if decomp is None:
            print(_dump({"schema": 1, "classifiable": False, "p": args.p}))
        else:
            print(_dump({
                "schema": 1,
                "classifiable": True,
                "p": decomp.p,
                "m": decomp.m,
                "invariant_pairs": [list(pair) for pair in decomp.invariant_pairs],
                "periodic_part": list(decomp.periodic_part),
                "quotient_pairs": [list(pair) for pair in decomp.quotient_pairs],
                "quotient_periodic": list(decomp.quotient_periodic),
            }))
        return 0
    if decomp is None:
        print("classification: none")
        return 0
    print(f"type m = {decomp.m}")
    if decomp.invariant_pairs:
        pairs = " ".join(f"({a},{b})" for a, b in decomp.invariant_pairs)
        print(f"invariant pairs (lift components): {pairs}")
    print(f"periodic part (lift components): {list(decomp.periodic_part)}")
    return 0


def cmd_gen(args) -> int:
    if args.strong and args.p is None:
        raise PatternError("--strong requires -p")
    config = PatternConfig(
        boundary_width=args.width,
        event_count=args.events,
        p=args.p,
        require_os=args.os,
        require_strong=args.strong,
    )
    for i in range(args.count):
        q = random_pattern(config, seed=f"{args.seed}:{i}")
        print(json.dumps(q.to_json_dict(), sort_keys=True, separators=(",", ":")))
    return 0


def cmd_verify(args) -> int:
    suites = tuple(args.suite) if args.suite else ("all",)
    primes = tuple(int(tok) for tok in args.p.split(",") if tok.strip())
    time_limit = args.time_limit
    if time_limit is not None and time_limit <= 0:
        time_limit = None
    config = SuiteConfig(
        suites=suites,
        primes=primes,
        count=args.count,
        seed=args.seed,
        workers=args.workers,
        max_crossings=args.max_crossings,
        time_limit=time_limit,
        cache=not args.no_cache,
        witness_dir=args.witness_dir,
    )
    result = run_suite(config)
    by_statement: dict[str, dict[str, int]] = {}
    for r in result.reports:
        row = by_statement.setdefault(
            r.statement, {"pass": 0, "fail": 0, "not_applicable": 0, "skipped": 0}
        )
        row[r.outcome] += 1
    for statement, row in sorted(by_statement.items()):
        print(
            f"{statement}: {row['pass']} pass / {row['fail']} fail"
            f" / {row['not_applicable']} n.a. / {row['skipped']} skipped"
        )
    counts = result.counts
    print(
        f"total: {counts['pass']} pass / {counts['fail']} fail"
        f" / {counts['not_applicable']} n.a. / {counts['skipped']} skipped"
    )
    if args.json:
        payload = _dump(result.to_json_dict(include_timing=args.timing)) + "\n"
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(payload)
        print(f"report written to {args.json}")
    return 1 if result.failed else 0


def build_parser() -> argparse.ArgumentParser:
    limits = argparse.ArgumentParser(add_help=False)
    limits.add_argument(
        "--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS,
        help="refuse diagrams beyond this many crossings (default %(default)s)",
    )
    limits.add_argument(
        "--time-limit", type=float, default=DEFAULT_TIME_LIMIT,
        help="seconds per polynomial computation; <= 0 disables (default %(default)s)",
    )
    limits.add_argument(
        "--no-cache", action="store_true",
        help="disable memoization of skein subresults",
    )
    as_json = argparse.ArgumentParser(add_help=False)
    as_json.add_argument(
        "--json", action="store_true", help="machine-readable output"
    )

    parser = argparse.ArgumentParser(
        prog="conwaylab",
        description="Conway polynomials, linking matrices, and cyclic lifts "
        "of annular link patterns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_conway = sub.add_parser(
        "conway", parents=[limits, as_json],
        help="Conway polynomial of a PD-code diagram",
    )
    p_conway.add_argument("pd_file", help="PD-code file, or - for stdin")
    p_conway.set_defaults(func=cmd_conway)

    p_lk = sub.add_parser(
        "lkmatrix", parents=[limits, as_json],
        help="linking matrix, a cofactor, and the lowest-coefficient cross-check",
    )
    p_lk.add_argument("pd_file", help="PD-code file, or - for stdin")
    p_lk.set_defaults(func=cmd_lkmatrix)

    p_lift = sub.add_parser(
        "lift", parents=[as_json], help="p-fold cyclic lift of a pattern"
    )
    p_lift.add_argument("pattern", help="pattern JSON file, or - for stdin")
    p_lift.add_argument("-p", type=int, required=True, help="number of copies")
    p_lift.set_defaults(func=cmd_lift)

    p_classify = sub.add_parser(
        "classify", parents=[as_json],
        help="invariant-pair/periodic-part decomposition of a pattern's lift",
    )
    p_classify.add_argument("pattern", help="pattern JSON file, or - for stdin")
    p_classify.add_argument("-p", type=int, required=True, help="prime period")
    p_classify.set_defaults(func=cmd_classify)

    p_gen = sub.add_parser(
        "gen", help="sample random patterns (one JSON object per line)"
    )
    p_gen.add_argument("--width", type=int, required=True, help="boundary strands")
    p_gen.add_argument("--events", type=int, required=True, help="events per tape")
    p_gen.add_argument("-p", type=int, default=None, help="period for --os/--strong")
    p_gen.add_argument(
        "--os", action="store_true",
        help="require all pairwise quotient linking numbers zero",
    )
    p_gen.add_argument(
        "--strong", action="store_true",
        help="require all quotient windings divisible by p",
    )
    p_gen.add_argument("--seed", default="0", help="master seed")
    p_gen.add_argument("--count", type=int, default=1, help="patterns to emit")
    p_gen.set_defaults(func=cmd_gen)

    p_verify = sub.add_parser(
        "verify", parents=[limits],
        help="run congruence/divisibility suites on random instances",
    )
    p_verify.add_argument(
        "--suite", action="append", default=None,
        choices=[*SUITE_ORDER, "all"],
        help="suite id, repeatable (default: all)",
    )
    p_verify.add_argument("--p", default="3", help="comma-separated primes")
    p_verify.add_argument("--count", type=int, default=25,
                          help="instances per suite and prime")
    p_verify.add_argument("--seed", default="0", help="master seed")
    p_verify.add_argument("--workers", type=int, default=1,
                          help="concurrent checks")
    p_verify.add_argument("--witness-dir", default=None,
                          help="directory for failing-report JSON fixtures")
    p_verify.add_argument("--timing", action="store_true",
                          help="include per-check timings in the JSON report")
    p_verify.add_argument("--json", default=None, metavar="PATH",
                          help="write the full JSON report here")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        ParseError,
        ValidationError,
        PatternError,
        GenerationError,
        ParityError,
        ResourceLimitError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
