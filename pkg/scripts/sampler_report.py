"""Frequency-versus-exact table for a seeded exact-sampler batch.

    python scripts/sampler_report.py --measure Q --n 5 --q 2 --count 10000 --seed 2024
"""

import argparse

from qpartitions.cli import parse_rational
from qpartitions.measures import p_pmf, q_pmf, to_decimal
from qpartitions.qarith import format_rational
from qpartitions.sampling import chi_square, frequency_report, sample_exact


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--measure", choices=("P", "Q"), default="P")
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--q", type=parse_rational, default="2")
    ap.add_argument("--count", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()

    pmf = (p_pmf if args.measure == "P" else q_pmf)(args.n, args.q)
    batch = sample_exact(pmf, args.seed, args.count)
    support = list(pmf.entries)
    print("partition,count,frequency,exact,exact_decimal,z")
    for row in frequency_report(batch, support):
        lam = "[" + ",".join(map(str, row.partition)) + "]"
        print(f'"{lam}",{row.count},{to_decimal(row.frequency)},{format_rational(row.exact)},{to_decimal(row.exact)},{row.z:.3f}')
    stat, df, crit = chi_square(batch, support)
    print(f"# chi-square {stat:.3f} on {df} df; 0.999 quantile {crit:.3f}")


if __name__ == "__main__":
    main()
