"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from contextlib import contextmanager

from . import checks
from .combinatorics import UsageError, stirling_table
from .engines import BernoulliMethod, bernoulli_gf, compute
from .rational import rat_approx, rat_format

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

METHOD_NAMES = [m.value for m in BernoulliMethod]


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_compute(args) -> int:
    method = BernoulliMethod(args.method)
    if not method.defined_at(args.n):
        print(f"error: {method.value} is defined only for even n >= 2", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter_ns()
    value = compute(args.n, method)
    elapsed = time.perf_counter_ns() - t0
    record = {"n": args.n, "method": method.value, "value": rat_format(value), "elapsed_ns": elapsed}
    if args.approx:
        record["approx"] = rat_approx(value)
    with _output(args.out) as out:
        if args.format == "json":
            out.write(json.dumps(record) + "\n")
        elif args.format == "csv":
            out.write(_csv_text(list(record), [list(record.values())]))
        else:
            line = f"B_{args.n} = {record['value']}"
            if args.approx:
                line += f"  (approx {record['approx']})"
            out.write(f"{line}  [{method.value}, {elapsed} ns]\n")
    return EXIT_OK


def cmd_table(args) -> int:
    values = [bernoulli_gf(n) for n in range(args.max_n + 1)]
    table = stirling_table(args.max_n)
    with _output(args.out) as out:
        if args.format == "json":
            doc = {
                "bernoulli": [{"n": n, "value": rat_format(v)} for n, v in enumerate(values)],
                "stirling": [list(map(str, row)) for row in table.rows],
            }
            out.write(json.dumps(doc) + "\n")
        elif args.format == "csv":
            rows = [["bernoulli", n, "", rat_format(v)] for n, v in enumerate(values)]
            rows += [
                ["stirling", n, k, str(s)]
                for n, row in enumerate(table.rows)
                for k, s in enumerate(row)
            ]
            out.write(_csv_text(["table", "n", "k", "value"], rows))
        else:
            for v in values:
                out.write(rat_format(v) + "\n")
            if args.max_n > 0:
                out.write("\n")
                for n, row in enumerate(table.rows):
                    out.write(f"S({n},k): " + " ".join(map(str, row)) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite == "tangent-sweep":
        results, sweep = checks.tangent_suite(8 if args.max_index is None else args.max_index)
    else:
        results = checks.run_suite(args.suite, order=args.order, max_index=args.max_index, seed=args.seed)
        sweep = None
    failed = None
    with _output(args.out) as out:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            tag = " [quarantined]" if r.quarantined else ""
            detail = f": {r.detail}" if r.detail else ""
            out.write(f"{status}{tag} {r.name}{detail}\n")
            if not r.passed and not r.quarantined and failed is None:
                failed = r
        if sweep is not None:
            out.write("variant,k,value,reference,match\n")
            for row in sweep.rows():
                out.write(
                    f"{row['variant']},{row['k']},{rat_format(row['value'])},"
                    f"{rat_format(row['reference'])},{row['match']}\n"
                )
            for k in range(1, sweep.max_k + 1):
                e = sweep.power_of_two_exponent(k)
                out.write(
                    f"k={k}: exponent that would fix the prefactor: "
                    f"{e if e is not None else 'none (required factor ' + rat_format(sweep.required_scale[k]) + ')'}\n"
                )
    if failed is not None:
        print(f"verification failed: {failed.name}: {failed.detail}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _bench_points(max_n: int, step: int | None) -> list[int]:
    if step is None:
        step = max(2, 2 * round(max_n / 20))
    return sorted(set(range(0, max_n + 1, step)) | {max_n})


def cmd_bench(args) -> int:
    methods = [BernoulliMethod(m) for m in (args.method or METHOD_NAMES)]
    points = _bench_points(args.max_n, args.step)
    rows = []
    for method in methods:
        for n in points:
            if not method.defined_at(n):
                continue
            times = []
            value = None
            for _ in range(args.reps):
                t0 = time.perf_counter_ns()
                v = compute(n, method)
                times.append(time.perf_counter_ns() - t0)
                if value is not None and v != value:
                    print(f"error: nondeterministic value for {method.value} n={n}", file=sys.stderr)
                    return EXIT_FAIL
                value = v
            rows.append(
                {
                    "method": method.value,
                    "n": n,
                    "reps": args.reps,
                    "min_ns": min(times),
                    "mean_ns": sum(times) // len(times),
                    "value": rat_format(value),
                }
            )
    with _output(args.out) as out:
        if args.format == "json":
            out.write(json.dumps(rows) + "\n")
        else:
            header = ["method", "n", "reps", "min_ns", "mean_ns", "value"]
            out.write(_csv_text(header, [[r[h] for h in header] for r in rows]))
    return EXIT_OK


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bernstirling",
        description="Exact Bernoulli numbers by several routes, with identity checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute one Bernoulli number")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--method", choices=METHOD_NAMES, default="gf_division")
    p.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    p.add_argument("--approx", action="store_true", help="add a decimal approximation field")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("table", help="tabulate B_0..B_max_n and the Stirling triangle")
    p.add_argument("--max-n", type=_nonneg, required=True)
    p.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=checks.SUITES, default="all")
    p.add_argument("--order", type=_nonneg, default=30)
    p.add_argument("--max-index", type=_nonneg, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time each method over a range of n")
    p.add_argument("--max-n", type=_nonneg, required=True)
    p.add_argument("--reps", type=_positive, default=3)
    p.add_argument("--step", type=_positive, default=None)
    p.add_argument("--method", action="append", choices=METHOD_NAMES)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
