"""Command line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 size limit
or overflow.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
from typing import Callable, Sequence

from rbred import builder, dp, fast, oracle
from rbred.errors import InputOverflowError, SizeLimitError
from rbred.tree import serialize, to_dot, validate

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
MAX_TABLE_ROWS = 20


class UsageError(Exception):
    pass


def _dp_max(n: int, dp_cap: int) -> int:
    return dp.r_dp(n, cap=dp_cap)


def _dp_min(n: int, dp_cap: int) -> int:
    return dp.s_dp(n, cap=dp_cap)


# method name -> r(n); looked up at call time so tests can swap entries
METHODS: dict[str, Callable[[int], int]] = {
    "closed": fast.r_closed,
    "rec": fast.r_rec,
    "triangle": fast.r_tri,
}


def compute(n: int, method: str, minimum: bool = False, dp_cap: int = dp.DEFAULT_CAP,
            oracle_cap: int = oracle.DEFAULT_CAP) -> str:
    if n < 0:
        raise UsageError("--n must be non-negative")
    if minimum and method not in ("dp", "oracle"):
        raise UsageError("--min is only available with --method dp or oracle")
    if method == "dp":
        value = (_dp_min if minimum else _dp_max)(n, dp_cap)
    elif method == "oracle":
        if n == 0:
            value = 0
        else:
            value = (oracle.oracle_min_red if minimum else oracle.oracle_max_red)(n, cap=oracle_cap)
    else:
        value = METHODS[method](n)
    return f"{'s' if minimum else 'r'}({n}) = {value}"


def table(rows: int) -> str:
    if not 0 <= rows <= MAX_TABLE_ROWS:
        raise UsageError(f"--rows must be between 0 and {MAX_TABLE_ROWS}")
    lines = []
    for i in range(rows):
        first = (1 << i) - 1
        lines.append(",".join(str(fast.r_closed(n)) for n in range(first, first + (1 << i))))
    return "".join(line + "\n" for line in lines)


def verify(n_lo: int, n_hi: int, oracle_cap: int = oracle.DEFAULT_CAP,
           dp_cap: int = dp.DEFAULT_CAP, builder_cap: int = builder.DEFAULT_CAP) -> tuple[int, str]:
    """Cross-check every method over [n_lo, n_hi]. Returns (exit code, report line)."""
    if n_lo > n_hi or n_lo < 0:
        raise UsageError("need 0 <= --lo <= --hi")
    dp_hi = min(n_hi, dp_cap)
    max_table = dp.build_table(dp_hi, dp.Objective.MAX, cap=dp_cap) if n_lo <= dp_hi else None
    min_table = dp.build_table(dp_hi, dp.Objective.MIN, cap=dp_cap) if max_table is not None and n_lo <= oracle_cap else None
    for n in range(n_lo, n_hi + 1):
        ref = METHODS["closed"](n)
        found = [(name, METHODS[name](n)) for name in ("rec", "triangle")]
        if max_table is not None and n <= dp_hi:
            found.append(("dp", max_table.best(n)))
        if 1 <= n <= min(oracle_cap, oracle.HARD_CAP):
            found.append(("oracle", oracle.oracle_max_red(n)))
        if 1 <= n <= builder_cap:
            report = validate(builder.build_maximal(n, cap=builder_cap))
            found.append(("build", report.red_count if report.valid_relaxed else "invalid"))
        for name, value in found:
            if value != ref:
                return EXIT_MISMATCH, f"MISMATCH n={n} closed={ref} {name}={value}"
        if min_table is not None and 1 <= n <= min(oracle_cap, oracle.HARD_CAP, dp_hi):
            lo_dp, lo_oracle = min_table.best(n), oracle.oracle_min_red(n)
            if lo_dp != lo_oracle:
                return EXIT_MISMATCH, f"MISMATCH n={n} dp_min={lo_dp} oracle_min={lo_oracle}"
    return EXIT_OK, f"OK {n_hi - n_lo + 1} values"


def build(n: int, fmt: str = "text", cap: int = builder.DEFAULT_CAP) -> str:
    if n < 0:
        raise UsageError("--n must be non-negative")
    tree = builder.build_maximal(n, cap=cap)
    return to_dot(tree) if fmt == "dot" else serialize(tree) + "\n"


def _bench_target(method: str, dp_cap: int, oracle_cap: int) -> Callable[[int], object]:
    if method == "dp":
        return lambda n: dp.build_table(n, dp.Objective.MAX, cap=dp_cap, cached=False).best(n)
    if method == "oracle":
        def run(n: int) -> object:
            if n > min(oracle_cap, oracle.HARD_CAP):
                raise SizeLimitError(f"exhaustive enumeration is capped at n={oracle_cap}, got {n}")
            return oracle.compute_cells(n)
        return run
    if method == "build":
        return builder.build_maximal
    return METHODS[method]


def bench(methods: Sequence[str], sizes: Sequence[int], reps: int = 5,
          dp_cap: int = dp.DEFAULT_CAP, oracle_cap: int = oracle.DEFAULT_CAP) -> str:
    if reps < 1:
        raise UsageError("--reps must be at least 1")
    rows = ["method,n,nanoseconds"]
    for method in methods:
        target = _bench_target(method, dp_cap, oracle_cap)
        for n in sizes:
            samples = []
            for _ in range(reps):
                start = time.perf_counter_ns()
                target(n)
                samples.append(time.perf_counter_ns() - start)
            rows.append(f"{method},{n},{int(statistics.median(samples))}")
    return "".join(row + "\n" for row in rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rbred", description="Red-node extremes of relaxed red-black trees")
    sub = parser.add_subparsers(dest="command", required=True)

    def caps(p: argparse.ArgumentParser) -> None:
        p.add_argument("--dp-cap", type=int, default=dp.DEFAULT_CAP)
        p.add_argument("--oracle-cap", type=int, default=oracle.DEFAULT_CAP)

    p = sub.add_parser("compute", help="print r(n), or s(n) with --min")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["closed", "rec", "triangle", "dp", "oracle"], default="closed")
    p.add_argument("--min", action="store_true", help="smallest red count (dp and oracle only)")
    caps(p)

    p = sub.add_parser("table", help="CSV rows of the r(n) triangle")
    p.add_argument("--rows", type=int, default=6)

    p = sub.add_parser("verify", help="cross-check all methods over a range")
    p.add_argument("--lo", type=int, default=1)
    p.add_argument("--hi", type=int, required=True)
    caps(p)

    p = sub.add_parser("build", help="emit a maximal tree on n keys")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["text", "dot"], default="text")
    p.add_argument("--builder-cap", type=int, default=builder.DEFAULT_CAP)

    p = sub.add_parser("bench", help="median timings as CSV")
    p.add_argument("--methods", default="closed,rec,triangle",
                   help="comma-separated subset of closed,rec,triangle,dp,oracle,build")
    p.add_argument("--n", type=int, nargs="*", default=[], dest="sizes")
    p.add_argument("--reps", type=int, default=5)
    caps(p)
    return parser


_BENCH_METHODS = {"closed", "rec", "triangle", "dp", "oracle", "build"}


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    if args.command == "compute":
        return EXIT_OK, compute(args.n, args.method, args.min, args.dp_cap, args.oracle_cap) + "\n"
    if args.command == "table":
        return EXIT_OK, table(args.rows)
    if args.command == "verify":
        code, line = verify(args.lo, args.hi, args.oracle_cap, args.dp_cap)
        return code, line + "\n"
    if args.command == "build":
        return EXIT_OK, build(args.n, args.format, args.builder_cap)
    methods = [m for m in args.methods.split(",") if m]
    unknown = set(methods) - _BENCH_METHODS
    if unknown:
        raise UsageError(f"unknown bench method(s): {', '.join(sorted(unknown))}")
    return EXIT_OK, bench(methods, args.sizes, args.reps, args.dp_cap, args.oracle_cap)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        code, out = run(argv)
    except SystemExit as exc:
        # argparse reports usage errors (status 2) and --help (status 0) this way
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        print(f"rbred: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SizeLimitError, InputOverflowError) as exc:
        print(f"rbred: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
