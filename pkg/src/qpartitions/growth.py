"""Weighted Young lattice whose path sums reproduce the P_{n,q} weights,
the induced measure on standard Young tableaux, and the first-row
monotonicity of P_{n,q}."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from qpartitions.bounds import row_tails
from qpartitions.measures import p_pmf
from qpartitions.partitions import Partition, conjugate, enumerate_partitions, successors
from qpartitions.qarith import RationalLike, as_rational, qpoch


def _col(conj: Partition, s: int) -> int:
    return conj[s - 1] if s <= len(conj) else 0


def edge_weight(lam: Partition, s: int, q: RationalLike) -> Fraction:
    """Weight of the edge adding a cell to column ``s`` of ``lam``.

    Column 1: ``1 / (q^{lam'_1} (q^{lam'_1 + 1} - 1))``.
    Column s > 1: ``(q^{-lam'_s} - q^{-lam'_{s-1}}) / (q^{lam'_1} - 1)``,
    which vanishes when column s is not addable.
    """
    q = as_rational(q)
    if s < 1:
        raise ValueError("columns are 1-based")
    conj = conjugate(lam)
    c1 = _col(conj, 1)
    if s == 1:
        return 1 / (q**c1 * (q ** (c1 + 1) - 1))
    if c1 == 0:
        raise ValueError("no edge adds to column > 1 of the empty partition")
    return (q ** -_col(conj, s) - q ** -_col(conj, s - 1)) / (q**c1 - 1)


@dataclass(frozen=True)
class GrowthDP:
    n: int
    q: Fraction
    table: dict[Partition, Fraction]

    def __getitem__(self, lam: Partition) -> Fraction:
        return self.table[tuple(lam)]


@lru_cache(maxsize=None)
def _growth_dp(n: int, q: Fraction) -> GrowthDP:
    table: dict[Partition, Fraction] = {(): Fraction(1)}
    for size in range(n):
        for lam in sorted(enumerate_partitions(size)):
            f = table[lam]
            for big, s in successors(lam):
                table[big] = table.get(big, Fraction(0)) + f * edge_weight(lam, s, q)
    return GrowthDP(n, q, table)


def growth_dp(n: int, q: RationalLike) -> GrowthDP:
    """Path sums from the empty partition to every partition of size <= n."""
    return _growth_dp(n, as_rational(q))


def path_sum(lam: Partition, q: RationalLike) -> Fraction:
    lam = tuple(lam)
    return growth_dp(sum(lam), q)[lam]


def outflow(lam: Partition, q: RationalLike) -> Fraction:
    """Total weight leaving ``lam``: ``q^{-lam'_1} (1 + 1/(q^{lam'_1 + 1} - 1))``."""
    q = as_rational(q)
    if not lam:
        raise ValueError("outflow closed form excludes the empty partition")
    c1 = len(lam)
    return (1 + 1 / (q ** (c1 + 1) - 1)) / q**c1


def outflow_direct(lam: Partition, q: RationalLike) -> Fraction:
    return sum((edge_weight(lam, s, q) for _, s in successors(lam)), Fraction(0))


def nonaddable_weights_vanish(lam: Partition, q: RationalLike) -> bool:
    """Column-s weights are zero wherever column s cannot take a cell."""
    addable = {s for _, s in successors(lam)}
    width = lam[0] if lam else 0
    return all(edge_weight(lam, s, q) == 0 for s in range(2, width + 2) if s not in addable)


def standard_tableaux(lam: Partition) -> Iterator[tuple[Partition, ...]]:
    """Chains from the empty partition up to ``lam``."""
    lam = tuple(lam)

    def rec(mu: Partition) -> Iterator[tuple[Partition, ...]]:
        if not mu:
            yield ((),)
            return
        for i, part in enumerate(mu):
            if i == len(mu) - 1 or mu[i + 1] < part:
                smaller = tuple(p for p in mu[:i] + (part - 1,) + mu[i + 1 :] if p)
                for chain in rec(smaller):
                    yield chain + (mu,)

    return rec(lam)


def path_weight(chain: tuple[Partition, ...], q: RationalLike) -> Fraction:
    q = as_rational(q)
    w = Fraction(1)
    for small, big in zip(chain, chain[1:]):
        s = next(col for nxt, col in successors(small) if nxt == big)
        w *= edge_weight(small, s, q)
    return w


def syt_pmf(n: int, q: RationalLike, max_n: int = 10) -> dict[tuple[Partition, ...], Fraction]:
    """Measure on standard Young tableaux of size n, each given as its chain
    of shapes, with probability ``q^n (1/q)_n`` times the path weight."""
    q = as_rational(q)
    if n > max_n:
        raise ValueError(f"n={n} exceeds the tableau enumeration cap {max_n}")
    norm = q**n * qpoch(1 / q, n, q)
    return {
        chain: norm * path_weight(chain, q)
        for lam in enumerate_partitions(n)
        for chain in standard_tableaux(lam)
    }


def substochastic_check(n: int, q: RationalLike) -> bool:
    """``q (1 - q^-(n+1)) outflow(lam) <= 1`` for every lam of n with at least two rows."""
    q = as_rational(q)
    return all(
        q * (1 - q ** -(n + 1)) * outflow(lam, q) <= 1
        for lam in enumerate_partitions(n)
        if len(lam) >= 2
    )


def monotone_check(n: int, r: int, q: RationalLike) -> bool:
    """``P^r_{n,q} >= P^r_{n+1,q}`` exactly."""
    q = as_rational(q)
    if q < 2:
        raise ValueError("monotonicity is claimed for q >= 2")
    a, b = row_tails(p_pmf(n, q)), row_tails(p_pmf(n + 1, q))
    ta = a[min(r, len(a) - 1)]
    tb = b[min(r, len(b) - 1)]
    return ta >= tb
