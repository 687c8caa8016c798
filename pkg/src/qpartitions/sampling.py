"""Exact samplers for P_{n,q}, Q_{n,q} and their all-sizes versions.

A draw reads fair random bits one at a time, narrowing a dyadic interval
``[k/2^b, (k+1)/2^b)`` until it sits inside a single cell of the CDF. Every
comparison is between rationals, so the output law is exactly the target
pmf. For the all-sizes measures the CDF is only known up to certified
enclosures; the sampler also widens the enclosure until the cell is
unambiguous.
"""

from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

from scipy import stats

from qpartitions.measures import Pmf, p_pmf, p_weight, q_pmf, q_weight, z_table
from qpartitions.partitions import Partition
from qpartitions.qarith import (
    Interval,
    RationalLike,
    as_rational,
    dp_prod_interval,
    euler_coeff,
    sp_prod_interval,
)


class BitSource:
    """Seeded stream of fair bits."""

    def __init__(self, seed: int):
        self._rng = random.Random(seed)
        self._buf = 0
        self._left = 0

    def bit(self) -> int:
        if self._left == 0:
            self._buf = self._rng.getrandbits(64)
            self._left = 64
        self._left -= 1
        out = self._buf & 1
        self._buf >>= 1
        return out


def cumulative(probs: Sequence[Fraction]) -> list[Fraction]:
    """``[0, p0, p0+p1, ..., 1]``."""
    cdf = [Fraction(0)]
    for p in probs:
        cdf.append(cdf[-1] + p)
    return cdf


def resolve_cell(cdf: Sequence[Fraction], k: int, depth: int) -> int | None:
    """Index of the CDF cell containing the dyadic interval
    ``[k/2^depth, (k+1)/2^depth)``, or None if it straddles a boundary."""
    lo = Fraction(k, 1 << depth)
    hi = Fraction(k + 1, 1 << depth)
    i = bisect.bisect_right(cdf, lo) - 1
    if i < len(cdf) - 1 and hi <= cdf[i + 1]:
        return i
    return None


def resolve_bits(cdf: Sequence[Fraction], bits: Sequence[int]) -> int | None:
    """Cell decided by a bit prefix, or None if the prefix is too short."""
    k = 0
    for depth, b in enumerate(bits, start=1):
        k = 2 * k + b
        cell = resolve_cell(cdf, k, depth)
        if cell is not None:
            return cell
    return resolve_cell(cdf, 0, 0) if not bits else None


def draw_index(cdf: Sequence[Fraction], source: BitSource) -> int:
    cell = resolve_cell(cdf, 0, 0)
    k, depth = 0, 0
    while cell is None:
        k = 2 * k + source.bit()
        depth += 1
        cell = resolve_cell(cdf, k, depth)
    return cell


@dataclass(frozen=True)
class SampleBatch:
    measure: str
    n: Union[int, str]
    q: Fraction
    seed: int
    draws: list[Partition]
    exact: Callable[[Partition], Fraction] = field(repr=False, compare=False)

    def header(self) -> dict:
        return {
            "measure": self.measure,
            "n": self.n,
            "q": f"{self.q.numerator}/{self.q.denominator}",
            "seed": self.seed,
            "count": len(self.draws),
        }


def _finite_sampler(pmf: Pmf):
    keys = list(pmf.entries)
    cdf = cumulative([pmf.entries[k] for k in keys])
    return keys, cdf


def sample_exact(pmf: Pmf, seed: int, count: int) -> SampleBatch:
    """``count`` i.i.d. draws with law exactly ``pmf``."""
    if count < 1:
        raise ValueError("count must be positive")
    keys, cdf = _finite_sampler(pmf)
    source = BitSource(seed)
    draws = [keys[draw_index(cdf, source)] for _ in range(count)]
    return SampleBatch(pmf.measure, pmf.n, pmf.q, seed, draws, pmf.__getitem__)


def _draw_size(source: BitSource, cum_interval: Callable[[int, int], Interval], M: int) -> int:
    """Smallest n with U < C(n), where ``cum_interval(n, M)`` encloses the
    size CDF C(n) and U is the uniform generated bit by bit."""
    k, depth = 0, 0
    while True:
        lo, hi = Fraction(k, 1 << depth), Fraction(k + 1, 1 << depth)
        n = 0
        while True:
            c = cum_interval(n, M)
            if hi <= c.lo:
                return n
            if lo >= c.hi:
                n += 1
                continue
            break
        if c.width * 4 > hi - lo:
            M *= 2
        else:
            k = 2 * k + source.bit()
            depth += 1


def _tilde_sampler(
    measure: str,
    q: Fraction,
    seed: int,
    count: int,
    M: int,
    prefactor: Callable[[Fraction, int], Interval],
    size_weight: Callable[[int], Fraction],
    conditional: Callable[[int], Pmf],
    weight: Callable[[Partition, Fraction], Fraction],
) -> SampleBatch:
    sums: list[Fraction] = []
    pre_cache: dict[int, Interval] = {}
    cum_cache: dict[tuple[int, int], Interval] = {}

    def cum_interval(n: int, m: int) -> Interval:
        if (n, m) in cum_cache:
            return cum_cache[n, m]
        while len(sums) <= n:
            prev = sums[-1] if sums else Fraction(0)
            sums.append(prev + size_weight(len(sums)))
        if m not in pre_cache:
            pre_cache[m] = prefactor(q, m)
        cum_cache[n, m] = out = pre_cache[m] * sums[n]
        return out

    source = BitSource(seed)
    tables: dict[int, tuple[list, list]] = {}
    draws = []
    for _ in range(count):
        n = _draw_size(source, cum_interval, M)
        if n not in tables:
            tables[n] = _finite_sampler(conditional(n))
        keys, cdf = tables[n]
        draws.append(keys[draw_index(cdf, source)])

    enclosure = prefactor(q, max(M, 30))

    def exact(lam: Partition) -> Fraction:
        iv = enclosure * weight(lam, q)
        return (iv.lo + iv.hi) / 2

    return SampleBatch(measure, "tilde", q, seed, draws, exact)


def sample_tilde_p(q: RationalLike, seed: int, count: int, M: int = 30) -> SampleBatch:
    """Draw the size from the all-sizes P measure, then the shape from P_{n,q}."""
    q = as_rational(q)
    return _tilde_sampler(
        "tildeP", q, seed, count, M,
        sp_prod_interval, lambda n: euler_coeff(n, q), lambda n: p_pmf(n, q), p_weight,
    )


def sample_tilde_q(q: RationalLike, seed: int, count: int, M: int = 30) -> SampleBatch:
    """Same two-stage scheme with size weights ``z(n, q)``."""
    q = as_rational(q)
    return _tilde_sampler(
        "tildeQ", q, seed, count, M,
        dp_prod_interval, lambda n: z_table(n, q)[n], lambda n: q_pmf(n, q), q_weight,
    )


@dataclass(frozen=True)
class FrequencyRow:
    partition: Partition
    count: int
    frequency: Fraction
    exact: Fraction
    z: float


def frequency_report(batch: SampleBatch, support: Sequence[Partition] | None = None) -> list[FrequencyRow]:
    """Empirical frequency, exact probability and binomial z-score per
    partition; unobserved partitions from ``support`` are included."""
    N = len(batch.draws)
    counts: dict[Partition, int] = {}
    for lam in batch.draws:
        counts[lam] = counts.get(lam, 0) + 1
    for lam in support or ():
        counts.setdefault(lam, 0)
    rows = []
    for lam in sorted(counts, key=lambda l: (sum(l), tuple(-x for x in l))):
        p = batch.exact(lam)
        freq = Fraction(counts[lam], N)
        var = float(p) * (1 - float(p)) / N
        if var > 0:
            z = float(freq - p) / math.sqrt(var)
        else:
            z = 0.0 if freq == p else math.inf
        rows.append(FrequencyRow(lam, counts[lam], freq, p, z))
    return rows


def chi_square(batch: SampleBatch, support: Sequence[Partition], min_expected: float = 5.0) -> tuple[float, int, float]:
    """Pearson statistic over ``support`` with cells of small expected count
    pooled. Returns (statistic, degrees of freedom, 0.999 quantile)."""
    N = len(batch.draws)
    counts = {lam: 0 for lam in support}
    for lam in batch.draws:
        counts[lam] += 1
    cells: list[tuple[float, int]] = []
    pooled_e, pooled_o = 0.0, 0
    for lam in support:
        e = N * float(batch.exact(lam))
        if e < min_expected:
            pooled_e += e
            pooled_o += counts[lam]
        else:
            cells.append((e, counts[lam]))
    if pooled_e > 0:
        cells.append((pooled_e, pooled_o))
    stat = sum((o - e) ** 2 / e for e, o in cells)
    df = len(cells) - 1
    return stat, df, float(stats.chi2.ppf(0.999, df))
