"""Command-line frontend.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from qpartitions import bounds, measures, permstats, sampling, verify
from qpartitions.partitions import enumerate_partitions
from qpartitions.qarith import as_rational, format_rational


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    try:
        return as_rational(text.strip())
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"malformed rational: {text!r}")


def parse_perm(text: str) -> tuple[int, ...]:
    text = text.strip()
    try:
        values = json.loads(text) if text.startswith("[") else [int(t) for t in text.replace(" ", "").split(",")]
        return permstats.check_permutation(values)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _dump(obj, out: TextIO) -> None:
    out.write(json.dumps(obj) + "\n")


def _need_q_above_one(q: Fraction) -> None:
    if q <= 1:
        raise UsageError("q must exceed 1")


def cmd_pmf(args, out) -> int:
    _need_q_above_one(args.q)
    if args.measure in ("P", "Q"):
        pmf = measures.p_pmf(args.n, args.q) if args.measure == "P" else measures.q_pmf(args.n, args.q)
        out.write(pmf.to_csv() if args.format == "csv" else pmf.dumps() + "\n")
        return 0
    enclose = measures.tilde_p_pmf if args.measure == "tildeP" else measures.tilde_q_pmf
    rows = [(lam, enclose(lam, args.q, args.trunc)) for lam in enumerate_partitions(args.n)]
    if args.format == "csv":
        out.write("partition,lo,hi\n")
        for lam, iv in rows:
            out.write(f"\"{json.dumps(list(lam)).replace(' ', '')}\",{format_rational(iv.lo)},{format_rational(iv.hi)}\n")
    else:
        _dump(
            {
                "n": args.n,
                "q": format_rational(args.q),
                "measure": args.measure,
                "trunc": args.trunc,
                "entries": [{"partition": list(lam), **iv.to_json()} for lam, iv in rows],
            },
            out,
        )
    return 0


def cmd_tail(args, out) -> int:
    _need_q_above_one(args.q)
    if args.measure == "P":
        _dump(
            {
                "direct": format_rational(measures.p_row_tail_direct(args.n, args.q, args.r)),
                "rogers_selberg": format_rational(measures.p_row_tail_rs(args.n, args.q, args.r)),
            },
            out,
        )
    elif args.measure == "Q":
        _dump({"direct": format_rational(measures.q_row_tail_direct(args.n, args.q, args.r))}, out)
    else:
        raise UsageError("tail supports measures P and Q")
    return 0


def cmd_column(args, out) -> int:
    _need_q_above_one(args.q)
    if args.measure not in ("P", "Q"):
        raise UsageError("column supports measures P and Q")
    pmf = measures.p_pmf(args.n, args.q) if args.measure == "P" else measures.q_pmf(args.n, args.q)
    marg = measures.first_column_marginal(pmf)
    ks = [args.k] if args.k is not None else range(1, args.n + 1)
    rows = []
    for k in ks:
        row = {
            "k": k,
            "marginal": format_rational(marg.get(k, Fraction(0))),
            "closed_form": format_rational(measures.p_first_column(args.n, args.q, k)),
        }
        if args.measure == "Q":
            lo, hi = bounds.corollary_bounds(args.n, args.q, k)
            row.update(lower=format_rational(lo), upper=format_rational(hi))
        rows.append(row)
    _dump({"n": args.n, "q": format_rational(args.q), "measure": args.measure, "rows": rows}, out)
    return 0


def cmd_bounds(args, out) -> int:
    if args.measure not in ("P", "Q"):
        raise UsageError("bounds supports measures P and Q")
    policy = args.r if args.r is not None else "all"
    rows = bounds.bounds_report(range(args.n_min, args.n_max + 1), policy, args.q, args.measure)
    if args.format == "csv":
        out.write(bounds.reports_to_csv(rows))
    else:
        for row in rows:
            _dump(
                {
                    "n": row.n,
                    "r": row.r_or_k,
                    "q": format_rational(row.q),
                    "lower": format_rational(row.lower),
                    "exact": format_rational(row.exact),
                    "upper": format_rational(row.upper),
                    "ok": row.ok,
                },
                out,
            )
    return 0 if all(r.ok for r in rows) else 1


def cmd_verify(args, out) -> int:
    results = verify.run_suite(args.n_max, args.q)
    for res in results:
        _dump({"check": res.check_id, "statement": res.statement, "passed": res.passed, "detail": res.detail}, out)
    return 0 if all(r.passed for r in results) else 1


def cmd_sample(args, out) -> int:
    _need_q_above_one(args.q)
    if args.measure == "P":
        batch = sampling.sample_exact(measures.p_pmf(args.n, args.q), args.seed, args.count)
    elif args.measure == "Q":
        batch = sampling.sample_exact(measures.q_pmf(args.n, args.q), args.seed, args.count)
    elif args.measure == "tildeP":
        batch = sampling.sample_tilde_p(args.q, args.seed, args.count, args.trunc)
    else:
        batch = sampling.sample_tilde_q(args.q, args.seed, args.count, args.trunc)
    _dump(batch.header(), out)
    for lam in batch.draws:
        _dump({"partition": list(lam)}, out)
    return 0


def cmd_mcmc(args, out) -> int:
    for step, pi in enumerate(permstats.mcmc_sampler(args.n, args.q, args.steps, args.seed), start=1):
        if step % args.thin == 0:
            _dump(permstats.perm_record(pi), out)
    return 0


def cmd_rsk(args, out) -> int:
    P, Q = permstats.rsk(args.perm)
    record = permstats.perm_record(args.perm)
    record.update(insertion=P, recording=Q)
    _dump(record, out)
    return 0


def cmd_ztable(args, out) -> int:
    _need_q_above_one(args.q)
    table = measures.z_table(args.n, args.q)
    if args.format == "csv":
        out.write("n,z,decimal\n")
        for n, z in enumerate(table.values):
            out.write(f"{n},{format_rational(z)},{measures.to_decimal(z)}\n")
    else:
        _dump({"q": format_rational(args.q), "z": [format_rational(z) for z in table.values]}, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpartitions", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, measures_allowed=("P", "Q"), need_n=True):
        p.add_argument("--q", type=parse_rational, required=True)
        if need_n:
            p.add_argument("--n", type=int, required=True)
        p.add_argument("--measure", choices=measures_allowed, default=measures_allowed[0])

    p = sub.add_parser("pmf", help="probability table")
    common(p, ("P", "Q", "tildeP", "tildeQ"))
    p.add_argument("--trunc", type=int, default=30)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("tail", help="probability that the first row is below r")
    common(p)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_tail)

    p = sub.add_parser("column", help="first-column law and its closed form")
    common(p)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_column)

    p = sub.add_parser("bounds", help="exact tails against the explicit bounds")
    p.add_argument("--q", type=parse_rational, action="append", required=True)
    p.add_argument("--measure", choices=("P", "Q"), default="P")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run the identity and inequality suite")
    p.add_argument("--q", type=parse_rational, default=Fraction(2))
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="exact samples as NDJSON")
    common(p, ("P", "Q", "tildeP", "tildeQ"), need_n=False)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--trunc", type=int, default=30)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("mcmc", help="Metropolis chain on the maj-biased permutations")
    p.add_argument("--q", type=parse_rational, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--thin", type=int, default=1)
    p.set_defaults(func=cmd_mcmc)

    p = sub.add_parser("rsk", help="RSK tableaux and statistics of a permutation")
    p.add_argument("--perm", type=parse_perm, required=True)
    p.set_defaults(func=cmd_rsk)

    p = sub.add_parser("z-table", help="normalising constants of Q_{n,q}")
    p.add_argument("--q", type=parse_rational, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_ztable)
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "sample" and args.measure in ("P", "Q") and args.n is None:
        parser.print_usage(err)
        err.write("sample: --n is required for measures P and Q\n")
        return 2
    try:
        return args.func(args, out)
    except (UsageError, ValueError) as exc:
        parser.print_usage(err)
        err.write(f"{args.command}: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
