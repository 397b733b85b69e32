"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage or precondition
error, 3 I/O error. Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from itertools import groupby
from typing import Sequence

from . import bijection, closedform, enumeration, sequences, stochastic
from .core import ENUMERABLE_LIMIT

SCHEMA = "runspectrum/1"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_IO = 3


class Mismatch(Exception):
    pass


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} must be >= 1")
    return value


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def _write_csv(out, header: Sequence[str], rows) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["schema", *header])
    for row in rows:
        writer.writerow([SCHEMA, *row])


def _write_json(out, payload: dict) -> None:
    json.dump({"schema": SCHEMA, **payload}, out, indent=2)
    out.write("\n")


# table


def cmd_table(args, out) -> int:
    n = args.n
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if args.per_string and n > enumeration.ROWS_LIMIT:
        raise ValueError(f"--per-string needs n <= {enumeration.ROWS_LIMIT}")
    if args.oracle and n > ENUMERABLE_LIMIT:
        raise ValueError(f"--oracle needs n <= {ENUMERABLE_LIMIT}")

    table = None
    if args.oracle or args.per_string:
        table = enumeration.enumerate_table(n, keep_rows=args.per_string, threads=args.threads)
        counts = table.aggregate.to_list()
    else:
        counts = [closedform.r_closed(n, i) for i in range(1, n + 1)]
    total = closedform.t_closed(n) if table is None else table.aggregate.total()
    route = "enumeration" if table is not None else "closed-form"

    if args.format == "json":
        payload = {
            "command": "table",
            "n": n,
            "route": route,
            "rows": [{"i": i, "r": str(c)} for i, c in enumerate(counts, start=1)],
            "total": str(total),
        }
        if table is not None and table.per_string is not None:
            payload["per_string"] = [
                {"string": format(idx, f"0{n}b"), "spectrum": [str(c) for c in sp.to_list()]}
                for idx, sp in table.per_string
            ]
        _write_json(out, payload)
    elif args.format == "csv":
        rows = [(i, c) for i, c in enumerate(counts, start=1)]
        rows.append(("total", total))
        _write_csv(out, ["i", "r_n(i)"], rows)
    else:
        if table is not None and table.per_string is not None:
            _plain_matrix(out, n, table)
        width = max(len("r_n(i)"), len(str(counts[0])))
        out.write(f"n={n} ({route})\n")
        out.write(f"{'i':>4}  {'r_n(i)':>{width}}\n")
        for i, c in enumerate(counts, start=1):
            out.write(f"{i:>4}  {c:>{width}}\n")
        out.write(f"t(n) = {total}\n")
    return EXIT_OK


def _plain_matrix(out, n: int, table: enumeration.SpectrumTable) -> None:
    strings = [format(idx, f"0{n}b") for idx, _ in table.per_string]
    for pos in range(n):
        out.write("    " + " ".join(s[pos] for s in strings) + "\n")
    out.write("-" * (4 + 2 * len(strings)) + "\n")
    for i in range(1, n + 1):
        cells = " ".join(str(sp[i]) for _, sp in table.per_string)
        out.write(f"{i:>2} |{cells} | {table.aggregate[i]}\n")
    out.write("\n")


# verify


def _verify_checks(n_max: int, threads: int | None):
    """Yield ``(name, detail)`` for each passing check; raise Mismatch on the first failure."""
    for n in range(1, min(n_max, 16) + 1):
        oracle = enumeration.enumerate_table(n, threads=threads).aggregate.to_list()
        closed = [closedform.r_closed(n, i) for i in range(1, n + 1)]
        if oracle != closed:
            i = next(k for k in range(n) if oracle[k] != closed[k]) + 1
            raise Mismatch(f"n={n} i={i}: enumeration {oracle[i - 1]} != closed form {closed[i - 1]}")
        yield "oracle", f"n={n}: " + " ".join(map(str, oracle))

    for n in range(1, n_max + 1):
        for i in range(1, n + 1):
            values = {
                "closed": closedform.r_closed(n, i),
                "recursive": closedform.r_recursive(n, i),
                "combinatorial": closedform.r_combinatorial(n, i),
            }
            if n >= 2:
                values["recursive_alt"] = closedform.r_recursive_alt(n, i)
            if len(set(values.values())) != 1:
                raise Mismatch(f"n={n} i={i}: routes disagree {values}")
    yield "routes", f"closed = recursive = recursive_alt = combinatorial for 1 <= i <= n <= {n_max}"

    for n in range(3, min(n_max, 64) + 1):
        for i in range(1, n - 1):
            expected = closedform.r_closed(n, i)
            for k in range(n - i):
                if closedform.r_unrolled(n, i, k) != expected:
                    raise Mismatch(f"n={n} i={i} k={k}: unrolled form depends on k")
    yield "unrolled", f"k-independent for n <= {min(n_max, 64)}"

    for n in range(1, n_max + 1):
        row = sum(closedform.r_closed(n, i) for i in range(1, n + 1))
        totals = {row, closedform.t_closed(n), closedform.t_combinatorial(n)}
        if n <= bijection.COUNT_LIMIT and n <= 16:
            totals.add(bijection.count_parts_in_compositions(n))
        if len(totals) != 1:
            raise Mismatch(f"n={n}: totals disagree {sorted(totals)}")
    yield "totals", f"sum_i r(n,i) = t(n) = combinatorial sum for n <= {n_max}"

    for n in range(1, min(n_max, 12) + 1):
        for i in range(1, n + 1):
            pairs = [(str(s), k) for s, k in bijection.enumerate_placements(n, i)]
            if len(set(pairs)) != len(pairs):
                raise Mismatch(f"n={n} i={i}: duplicate placements")
            if set(pairs) != enumeration.run_occurrences(n, i):
                raise Mismatch(f"n={n} i={i}: placements differ from enumerated run occurrences")
    yield "bijection", f"placements complete and duplicate-free for n <= {min(n_max, 12)}"

    for n in range(1, n_max + 1):
        for i in range(1, n + 1):
            exp = stochastic.expected_runs_of_length(n, i)
            by_position = sum(stochastic.prob_run_of_length_at(n, k, i) for k in range(1, n + 1))
            if by_position != exp or exp * 2**n != closedform.r_closed(n, i):
                raise Mismatch(f"n={n} i={i}: expectation {exp} inconsistent")
    yield "expectations", f"sum_k Pr(run of length i at k) = E = r(n,i)/2^n for n <= {n_max}"

    report = sequences.cross_check(n_max)
    if not report.ok:
        raise Mismatch(report.failure)
    yield "oeis", f"A045623 and A001792 identities for n <= {n_max}"


def cmd_verify(args, out) -> int:
    if args.n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {args.n_max}")
    results = []
    failure = None
    try:
        for name, detail in _verify_checks(args.n_max, args.threads):
            results.append((name, detail))
            if args.format == "plain":
                out.write(f"{detail} OK\n")
    except Mismatch as exc:
        failure = str(exc)

    if args.format == "json":
        _write_json(out, {
            "command": "verify",
            "n_max": args.n_max,
            "checks": [{"check": c, "detail": d, "status": "OK"} for c, d in results],
            "failure": failure,
            "ok": failure is None,
        })
    elif args.format == "csv":
        rows = [(c, d, "OK") for c, d in results]
        if failure:
            rows.append(("mismatch", failure, "FAIL"))
        _write_csv(out, ["check", "detail", "status"], rows)
    elif failure:
        out.write(f"MISMATCH {failure}\n")
    else:
        out.write("all checks passed\n")
    return EXIT_OK if failure is None else EXIT_MISMATCH


# bijection


def cmd_bijection(args, out) -> int:
    n, i = args.n, args.i
    if not 1 <= i <= n <= 12:
        raise ValueError(f"need 1 <= i <= n <= 12, got n={n}, i={i}")
    rows = []
    for rp in bijection.placements(n, i):
        if rp is None:
            rows.append((0, "()", 0, "1" * n, 1))
            continue
        s, pos = bijection.placement_to_string(rp, n)
        rows.append((rp.base.p, str(rp.base), rp.slot, str(s), pos))
    rows.sort(key=lambda r: r[0])

    if args.format == "json":
        _write_json(out, {
            "command": "bijection",
            "n": n,
            "i": i,
            "rows": [
                {"p": p, "composition": c, "slot": slot, "string": s, "position": pos}
                for p, c, slot, s, pos in rows
            ],
        })
    elif args.format == "csv":
        _write_csv(out, ["p", "composition", "slot", "string", "position"], rows)
    else:
        out.write(f"n={n} i={i}: {len(rows)} runs of length {i}\n")
        for p, group in groupby(rows, key=lambda r: r[0]):
            group = list(group)
            ways = closedform.binomial_extended(n - i - 1, p - 1)
            out.write(f"p={p}: C({n - i - 1},{p - 1})={ways} partitionings x {p + 1} slots\n")
            for _, c, slot, s, pos in group:
                out.write(f"  {c} slot={slot} -> {s} pos={pos}\n")
    return EXIT_OK


# sample


def cmd_sample(args, out) -> int:
    report = stochastic.monte_carlo(
        args.n, args.i, samples=args.samples, seed=args.seed, threads=args.threads
    )
    fields = [
        ("n", report.n),
        ("i", "all" if report.i is None else report.i),
        ("samples", report.samples),
        ("seed", report.seed),
        ("observed_total", report.observed_total),
        ("empirical_mean", f"{report.empirical_mean:.9f}"),
        ("exact_mean", _frac(report.exact_mean)),
        ("exact_mean_decimal", f"{float(report.exact_mean):.9f}"),
        ("abs_error", f"{report.abs_error:.9f}"),
        ("rel_error", f"{report.rel_error:.9f}"),
    ]
    if args.format == "json":
        _write_json(out, {
            "command": "sample",
            "n": report.n,
            "i": report.i,
            "samples": report.samples,
            "seed": str(report.seed),
            "observed_total": str(report.observed_total),
            "empirical_mean": report.empirical_mean,
            "exact_mean": _frac(report.exact_mean),
            "abs_error": report.abs_error,
            "rel_error": report.rel_error,
        })
    elif args.format == "csv":
        _write_csv(out, [k for k, _ in fields], [[v for _, v in fields]])
    else:
        for key, value in fields:
            out.write(f"{key:<20}{value}\n")
    return EXIT_OK


# analyze


def cmd_analyze(args, out) -> int:
    order = "msb_first" if args.bit_order == "msb" else "lsb_first"
    if args.path == "-":
        spectrum = enumeration.analyze_stream(sys.stdin.buffer, order)
    else:
        with open(args.path, "rb") as fh:
            spectrum = enumeration.analyze_stream(fh, order)
    total = spectrum.total()
    rows = []
    for length, count in spectrum.as_dict().items():
        observed = count / total
        reference = stochastic.asymptotic_fraction(length)
        rows.append((length, count, observed, reference))

    if args.format == "json":
        _write_json(out, {
            "command": "analyze",
            "bits": str(spectrum.n),
            "runs": str(total),
            "rows": [
                {"i": i, "count": str(c), "observed_fraction": f, "reference_fraction": _frac(r)}
                for i, c, f, r in rows
            ],
        })
    elif args.format == "csv":
        _write_csv(
            out,
            ["i", "count", "observed_fraction", "reference_fraction"],
            [(i, c, f"{f:.9f}", f"{float(r):.9f}") for i, c, f, r in rows],
        )
    else:
        out.write(f"bits={spectrum.n} runs={total}\n")
        if rows:
            out.write(f"{'i':>6}  {'count':>12}  {'observed':>10}  {'2^-i':>10}\n")
        for i, c, f, r in rows:
            out.write(f"{i:>6}  {c:>12}  {f:>10.6f}  {float(r):>10.6f}\n")
    return EXIT_OK


# oeis


def cmd_oeis(args, out) -> int:
    report = sequences.cross_check(args.n_max)
    terms = {name: sequences.sequence(name, args.terms) for name in sequences.SEQUENCES}
    if args.format == "json":
        _write_json(out, {
            "command": "oeis",
            "terms": {name: [str(v) for v in vals] for name, vals in terms.items()},
            "n_max": args.n_max,
            "checks": report.checks,
            "ok": report.ok,
            "failure": report.failure,
        })
    elif args.format == "csv":
        _write_csv(
            out,
            ["j", *sequences.SEQUENCES],
            [(j, *(terms[name][j] for name in sequences.SEQUENCES)) for j in range(args.terms)],
        )
    else:
        for name, vals in terms.items():
            out.write(f"{name}: {', '.join(map(str, vals))}\n")
        if report.ok:
            for line in report.passed:
                out.write(f"{line} OK\n")
        else:
            out.write(f"MISMATCH {report.failure}\n")
    return EXIT_OK if report.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["plain", "csv", "json"], default="plain")
    common.add_argument("--threads", type=_positive, default=None,
                        help="worker cap; never changes results")
    common.add_argument("--seed", type=_u64, default=0, help="unsigned 64-bit seed")

    parser = argparse.ArgumentParser(
        prog="runspectra", description="Exact statistics of runs of ones in binary strings."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="r_n(i) for i = 1..n and the total t(n)")
    p.add_argument("n", type=int)
    p.add_argument("--oracle", action="store_true", help="count by exhaustive enumeration")
    p.add_argument("--per-string", action="store_true", help="also list every string's spectrum")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="cross-check every counting route")
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bijection", parents=[common], help="list run placements for (n, i)")
    p.add_argument("n", type=int)
    p.add_argument("i", type=int)
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("sample", parents=[common], help="Monte Carlo mean vs exact expectation")
    p.add_argument("n", type=int)
    p.add_argument("--i", type=int, default=None, help="run length (default: all runs)")
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("analyze", parents=[common], help="run spectrum of a file or stdin")
    p.add_argument("path", nargs="?", default="-")
    p.add_argument("--bit-order", choices=["msb", "lsb"], default="msb")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("oeis", parents=[common], help="A045623 / A001792 terms and identities")
    p.add_argument("--terms", type=_positive, default=20)
    p.add_argument("--n-max", type=int, default=128)
    p.set_defaults(func=cmd_oeis)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    buffer = io.StringIO()
    try:
        code = args.func(args, buffer)
    except OSError as exc:
        print(f"runspectra: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"runspectra: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(buffer.getvalue())
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
