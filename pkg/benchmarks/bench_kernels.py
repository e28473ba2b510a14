"""Compare the compiled and pure-Python skein kernels on shared workloads.

Each workload is evaluated cold (fresh memo per call) on every available
kernel; coefficients are asserted identical before any timing is reported.
Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--seed S] [--json]
"""

import argparse
import json
import random
import statistics
import time

from conwaylab import (
    CrossEvent,
    PatternConfig,
    QuotientPattern,
    available_kernels,
    canonical_code,
    conway,
    lift,
    parse_pd,
    quotient_diagram,
    random_pattern,
)

CLASSICS = {
    "trefoil": "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]",
    "figure_eight": "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]",
    "torus_2_4": "X[1,5,2,8] X[5,3,6,2] X[3,7,4,6] X[7,1,8,4]",
}


def _braid_closure(word, width):
    events = tuple(CrossEvent(abs(g) - 1, 1 if g > 0 else -1) for g in word)
    return quotient_diagram(QuotientPattern(width, ("R",) * width, events))


def build_workloads(seed):
    rng = random.Random(seed)
    workloads = [(name, parse_pd(pd)) for name, pd in CLASSICS.items()]
    for length in (10, 14, 18, 22):
        width = rng.randint(3, 4)
        word = tuple(
            rng.choice((1, -1)) * rng.randint(1, width - 1) for _ in range(length)
        )
        workloads.append((f"closure_{length}", _braid_closure(word, width)))
    for p in (3, 5):
        d = parse_pd("")
        while len(d) < p:
            q = random_pattern(PatternConfig(3, 5), seed=rng.randrange(2**32))
            d, _ = lift(q, p)
        workloads.append((f"lift_p{p}", d))
    return workloads


def time_call(fn, repeat):
    best = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best.append(time.perf_counter() - start)
    return min(best), statistics.median(best)


def run(repeat, seed):
    kernels = available_kernels()
    rows = []
    for name, d in build_workloads(seed):
        answers = {k: conway(d, kernel=k, time_limit=None) for k in kernels}
        codes = {k: canonical_code(d, kernel=k) for k in kernels}
        assert len(set(p.coeffs for p in answers.values())) == 1, name
        assert len(set(codes.values())) == 1, name
        row = {"workload": name, "crossings": len(d)}
        for k in kernels:
            best, med = time_call(
                lambda k=k: conway(d, kernel=k, time_limit=None), repeat
            )
            row[k] = {"best_ms": best * 1e3, "median_ms": med * 1e3}
        if len(kernels) == 2:
            row["speedup"] = row["pure"]["best_ms"] / row["compiled"]["best_ms"]
        rows.append(row)
    return kernels, rows


def print_table(kernels, rows):
    header = f"{'workload':<14} {'n':>3}"
    for k in kernels:
        header += f" {k + ' best':>14} {k + ' median':>14}"
    if len(kernels) == 2:
        header += f" {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for row in rows:
        line = f"{row['workload']:<14} {row['crossings']:>3}"
        for k in kernels:
            line += f" {row[k]['best_ms']:>12.3f}ms {row[k]['median_ms']:>12.3f}ms"
        if "speedup" in row:
            line += f" {row['speedup']:>7.1f}x"
        print(line)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="timings per cell (best/median reported)")
    parser.add_argument("--seed", default="bench", help="workload generation seed")
    parser.add_argument("--json", action="store_true", help="emit rows as JSON instead of a table")
    args = parser.parse_args(argv)

    kernels, rows = run(args.repeat, args.seed)
    if args.json:
        print(json.dumps({"kernels": list(kernels), "rows": rows}, indent=2))
    else:
        print(f"kernels: {', '.join(kernels)} (repeat={args.repeat})")
        print_table(kernels, rows)


if __name__ == "__main__":
    main()
