"""Total-variation distance between the Metropolis chain and the exact
maj-biased table, and between the chain's shape law and Q_{n,q}.

    python scripts/mcmc_vs_exact.py --n 5 --q 2 --steps 100000 --seed 2024
"""

import argparse
from fractions import Fraction

from qpartitions.cli import parse_rational
from qpartitions.measures import q_pmf
from qpartitions.partitions import conjugate
from qpartitions.permstats import biased_pmf, mcmc_sampler, rsk_shape, total_variation


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--q", type=parse_rational, default=Fraction(2))
    ap.add_argument("--steps", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--checkpoints", type=int, default=5)
    args = ap.parse_args()

    exact_perm = biased_pmf(args.n, args.q)
    exact_shape = dict(q_pmf(args.n, args.q).entries)
    perms: dict = {}
    shapes: dict = {}
    every = max(1, args.steps // args.checkpoints)
    print("steps,tv_permutation,tv_shape")
    for step, pi in enumerate(mcmc_sampler(args.n, args.q, args.steps, args.seed), start=1):
        perms[pi] = perms.get(pi, 0) + 1
        lam = conjugate(rsk_shape(pi))
        shapes[lam] = shapes.get(lam, 0) + 1
        if step % every == 0 or step == args.steps:
            tv_p = total_variation({k: Fraction(v, step) for k, v in perms.items()}, exact_perm)
            tv_s = total_variation({k: Fraction(v, step) for k, v in shapes.items()}, exact_shape)
            print(f"{step},{float(tv_p):.6f},{float(tv_s):.6f}")


if __name__ == "__main__":
    main()
