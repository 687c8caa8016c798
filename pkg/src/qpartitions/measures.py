"""The measures P_{n,q} and Q_{n,q} on partitions of n, their all-sizes
versions, and the exact identities that tie the different descriptions
together.

Weights are kept unnormalised where that is natural (``p_weight``,
``q_weight``); pmfs are materialised tables over every partition of ``n``.
"""

from __future__ import annotations

import csv
import decimal
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from types import MappingProxyType
from typing import Callable, Mapping, Sequence

from qpartitions.partitions import (
    Partition,
    conjugate,
    enumerate_first_row_below,
    enumerate_partitions,
    hook_lengths,
    m_counts,
    n_lambda,
    row_end_hooks,
)
from qpartitions.qarith import (
    Interval,
    RationalLike,
    Series,
    as_rational,
    dp_prod_interval,
    euler_coeff,
    format_rational,
    qpoch,
    qpoch_series,
    sp_prod_interval,
)


@dataclass(frozen=True)
class Pmf:
    """Exact probability table over the partitions of ``n``."""

    n: int
    q: Fraction
    measure: str
    entries: Mapping[Partition, Fraction]

    def __getitem__(self, lam: Partition) -> Fraction:
        return self.entries.get(tuple(lam), Fraction(0))

    def __iter__(self):
        return iter(self.entries.items())

    def __len__(self) -> int:
        return len(self.entries)

    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def marginal(self, stat: Callable[[Partition], int]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for lam, p in self.entries.items():
            key = stat(lam)
            out[key] = out.get(key, Fraction(0)) + p
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": format_rational(self.q),
            "measure": self.measure,
            "entries": [
                {"partition": list(lam), "prob": format_rational(p)}
                for lam, p in self.entries.items()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["partition", "prob", "decimal"])
        for lam, p in self.entries.items():
            writer.writerow([json.dumps(list(lam)).replace(" ", ""), format_rational(p), to_decimal(p)])
        return buf.getvalue()


def to_decimal(x: Fraction, digits: int = 12) -> str:
    """Decimal rendering to ``digits`` significant digits, round-half-even."""
    ctx = decimal.Context(prec=digits, rounding=decimal.ROUND_HALF_EVEN)
    return str(ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator)))


def _make_pmf(n: int, q: Fraction, measure: str, weights: dict[Partition, Fraction]) -> Pmf:
    total = sum(weights.values(), Fraction(0))
    entries = {lam: w / total for lam, w in weights.items()}
    return Pmf(n, q, measure, MappingProxyType(entries))


# -- P_{n,q} ----------------------------------------------------------------


def p_weight(lam: Partition, q: RationalLike) -> Fraction:
    """``1 / prod_j q^{(lam'_j)^2} (1/q)_{m_j(lam)}``."""
    q = as_rational(q)
    conj = conjugate(lam)
    denom = q ** sum(c * c for c in conj)
    for m in m_counts(lam).values():
        denom *= qpoch(1 / q, m, q)
    return 1 / denom


@lru_cache(maxsize=None)
def _p_pmf(n: int, q: Fraction) -> Pmf:
    norm = q**n * qpoch(1 / q, n, q)
    entries = {lam: norm * p_weight(lam, q) for lam in enumerate_partitions(n)}
    if sum(entries.values()) != 1:
        raise RuntimeError(f"P_{{{n},{q}}} failed to normalise")
    return Pmf(n, q, "P", MappingProxyType(entries))


def p_pmf(n: int, q: RationalLike) -> Pmf:
    q = as_rational(q)
    if q <= 1:
        raise ValueError("P_{n,q} needs q > 1")
    return _p_pmf(n, q)


def p_first_column(n: int, q: RationalLike, k: int) -> Fraction:
    """Closed form for the P_{n,q} probability that ``lam'_1 = k``."""
    q = as_rational(q)
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}, got {k}")
    x = 1 / q
    num = qpoch(x, n, q) * qpoch(x, n - 1, q)
    den = q ** (k * k - k) * qpoch(x, k, q) * qpoch(x, k - 1, q) * qpoch(x, n - k, q)
    return num / den


def _row_tail(pmf: Pmf, r: int) -> Fraction:
    if r < 1:
        raise ValueError("r must be >= 1")
    return sum((pmf[lam] for lam in enumerate_first_row_below(pmf.n, r)), Fraction(0))


def p_row_tail_direct(n: int, q: RationalLike, r: int) -> Fraction:
    """P_{n,q} probability that ``lam_1 < r``, by enumeration."""
    return _row_tail(p_pmf(n, q), r)


def p_row_tail_rs(n: int, q: RationalLike, r: int) -> Fraction:
    """P_{n,q} probability that ``lam_1 < r`` from the Rogers-Selberg type
    expansion: ``q^n (1/q)_n`` times the ``u^n`` coefficient of the Euler
    product against a finite alternating sum over ``m``."""
    q = as_rational(q)
    if r < 1:
        raise ValueError("r must be >= 1")
    euler = Series([euler_coeff(k, q) for k in range(n + 1)])
    inner = Series([], n)
    m = 0
    while r * m <= n:
        coeff = Fraction((-1) ** m) / (q ** (r * m * m + comb(m, 2)) * qpoch(1 / q, m, q))
        term = Series([1, -1 / q ** (2 * m)], n)
        term = term * Series.monomial(r * m, 1, n)
        # (u/q)_{m-1}; the m = 0 case is 1/(1-u)
        term = term * qpoch_series(1 / q, m - 1, q, n)
        inner = inner + term.scale(coeff)
        m += 1
    return q**n * qpoch(1 / q, n, q) * (euler * inner).coeff(n)


# -- Q_{n,q} ----------------------------------------------------------------


def q_weight(lam: Partition, q: RationalLike) -> Fraction:
    """``1 / (q^{|lam| + 2 n(lam)} prod_s (1 - q^{-h(s)})^2)``."""
    q = as_rational(q)
    denom = q ** (sum(lam) + 2 * n_lambda(lam))
    for h in hook_lengths(lam):
        denom *= (1 - q**-h) ** 2
    return 1 / denom


@dataclass(frozen=True)
class ZTable:
    q: Fraction
    values: tuple[Fraction, ...]

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]


@lru_cache(maxsize=None)
def _z_table(N: int, q: Fraction) -> ZTable:
    x = 1 / q
    inv_poch = [1 / qpoch(x, i, q) for i in range(N + 1)]
    z = [Fraction(1)]
    for n in range(1, N + 1):
        s = sum((z[n - i] * inv_poch[i] for i in range(1, n + 1)), Fraction(0))
        z.append(s / (q**n - 1))
    return ZTable(q, tuple(z))


def z_table(N: int, q: RationalLike) -> ZTable:
    """``z(0..N, q)`` from the recurrence
    ``z(n) = (q^n - 1)^{-1} sum_{i=1}^n z(n-i) / (1/q)_i``."""
    q = as_rational(q)
    if q <= 1:
        raise ValueError("the z recurrence needs q > 1")
    return _z_table(N, q)


@lru_cache(maxsize=None)
def _z_direct(n: int, q: Fraction) -> Fraction:
    return sum((q_weight(lam, q) for lam in enumerate_partitions(n)), Fraction(0))


def z_direct(n: int, q: RationalLike) -> Fraction:
    """Normalising constant of Q_{n,q} as a plain sum over partitions of n."""
    return _z_direct(n, as_rational(q))


@lru_cache(maxsize=None)
def _q_pmf(n: int, q: Fraction) -> Pmf:
    weights = {lam: q_weight(lam, q) for lam in enumerate_partitions(n)}
    z = sum(weights.values(), Fraction(0))
    if q > 1 and z != z_table(n, q)[n]:
        raise RuntimeError(f"z({n},{q}) recurrence disagrees with direct sum")
    return Pmf(n, q, "Q", MappingProxyType({lam: w / z for lam, w in weights.items()}))


def q_pmf(n: int, q: RationalLike) -> Pmf:
    """Q_{n,q}. Also defined for ``0 < q < 1``, normalised by direct sum."""
    q = as_rational(q)
    if q <= 0 or q == 1:
        raise ValueError("Q_{n,q} needs q > 0, q != 1")
    return _q_pmf(n, q)


def q_row_tail_direct(n: int, q: RationalLike, r: int) -> Fraction:
    return _row_tail(q_pmf(n, q), r)


def first_column_marginal(pmf: Pmf) -> dict[int, Fraction]:
    """Distribution of ``lam'_1`` (the number of parts)."""
    return pmf.marginal(len)


def first_row_marginal(pmf: Pmf) -> dict[int, Fraction]:
    return pmf.marginal(lambda lam: lam[0] if lam else 0)


# -- all-sizes measures -----------------------------------------------------


def tilde_p_pmf(lam: Partition, q: RationalLike, M: int) -> Interval:
    return sp_prod_interval(q, M) * p_weight(lam, q)


def tilde_q_pmf(lam: Partition, q: RationalLike, M: int) -> Interval:
    return dp_prod_interval(q, M) * q_weight(lam, q)


def tilde_p_size_pmf(n: int, q: RationalLike, M: int) -> Interval:
    """Probability that the all-sizes P measure yields a partition of ``n``."""
    return sp_prod_interval(q, M) * euler_coeff(n, q)


def tilde_q_size_pmf(n: int, q: RationalLike, M: int) -> Interval:
    q = as_rational(q)
    return dp_prod_interval(q, M) * z_table(n, q)[n]


def tilde_p_hook_identity(lam: Partition, q: RationalLike) -> bool:
    """Check ``prod_j q^{(lam'_j)^2} (1/q)_{m_j} =
    q^{|lam| + 2 n(lam)} prod_{a(s)=0} (1 - q^{-h(s)})`` exactly."""
    q = as_rational(q)
    lhs = 1 / p_weight(lam, q)
    rhs = q ** (sum(lam) + 2 * n_lambda(lam)) * prod(
        (1 - q**-h for h in row_end_hooks(lam)), start=Fraction(1)
    )
    return lhs == rhs


@dataclass(frozen=True)
class FirstColumnEnclosure:
    k: int
    closed_form: Interval
    summed: Interval

    @property
    def ok(self) -> bool:
        return self.closed_form in self.summed


def tilde_first_column_enclosure(k: int, q: RationalLike, N: int, M: int) -> FirstColumnEnclosure:
    """Enclose the all-sizes P probability that ``lam'_1 = k`` two ways.

    ``closed_form`` is ``prod(1 - q^-i) q^{-k^2} / (1/q)_k^2``.
    ``summed`` adds ``Prob(|lam| = n) P_{n,q}(lam'_1 = k)`` over ``n <= N``
    and bounds the rest by the unused size mass, certified through the
    lower end of the product enclosure.
    """
    q = as_rational(q)
    sp = sp_prod_interval(q, M)
    closed = qpoch(1 / q, k, q) ** -2 / q ** (k * k)
    partial = Fraction(0)
    size_mass = Fraction(0)
    for n in range(N + 1):
        e = euler_coeff(n, q)
        size_mass += e
        if n == 0:
            marginal = Fraction(int(k == 0))
        elif 1 <= k <= n:
            marginal = p_first_column(n, q, k)
        else:
            marginal = Fraction(0)
        partial += e * marginal
    tail = 1 / sp.lo - size_mass
    if tail < 0:
        raise RuntimeError("Euler sizes exceeded the certified product bound")
    summed = Interval(sp.lo * partial, sp.hi * (partial + tail))
    return FirstColumnEnclosure(k, sp * closed, summed)


def tilde_first_column_check(k: int, q: RationalLike, N: int, M: int) -> bool:
    return tilde_first_column_enclosure(k, q, N, M).ok


# -- Schur functions at geometric progressions ------------------------------


def schur_principal(lam: Partition, k: int, q: RationalLike) -> Fraction:
    """``s_lam(q^-k, q^-k-1, ...)`` via the hook-content specialisation."""
    q = as_rational(q)
    x = 1 / q
    denom = prod((1 - x**h for h in hook_lengths(lam)), start=Fraction(1))
    return x ** (k * sum(lam) + n_lambda(lam)) / denom


def _complete_homogeneous(variables: Sequence[Fraction], degree: int) -> list[Fraction]:
    """``h_0..h_degree`` evaluated at ``variables``."""
    h = [Fraction(1)] + [Fraction(0)] * degree
    for v in variables:
        # multiply by 1/(1 - v t)
        for d in range(1, degree + 1):
            h[d] += v * h[d - 1]
    return h


def _det(matrix: list[list[Fraction]]) -> Fraction:
    a = [row[:] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def schur_polynomial(lam: Partition, variables: Sequence[RationalLike]) -> Fraction:
    """Evaluate ``s_lam`` at finitely many variables by Jacobi-Trudi."""
    variables = [as_rational(v) for v in variables]
    if not lam:
        return Fraction(1)
    ell = len(lam)
    h = _complete_homogeneous(variables, lam[0] + ell)
    mat = [
        [h[lam[i] - i + j] if lam[i] - i + j >= 0 else Fraction(0) for j in range(ell)]
        for i in range(ell)
    ]
    return _det(mat)


def schur_principal_truncated(lam: Partition, k: int, q: RationalLike, nvars: int) -> Interval:
    """Enclose ``s_lam(q^-k, q^-k-1, ...)`` by the Jacobi-Trudi value at
    the first ``nvars`` variables plus a bound on every monomial that uses a
    later one: at most ``|lam| * (sum of dropped vars) * (sum of all vars)^(|lam|-1)``."""
    q = as_rational(q)
    x = 1 / q
    variables = [x ** (k + i) for i in range(nvars)]
    lower = schur_polynomial(lam, variables)
    size = sum(lam)
    if size == 0:
        return Interval.point(lower)
    total = x**k / (1 - x)
    dropped = x ** (k + nvars) / (1 - x)
    return Interval(lower, lower + size * dropped * total ** (size - 1))


def construction1_check(n: int, q: RationalLike, transpose: bool = False) -> bool:
    """Compare ``s(1, 1/q, ...) s(1/q, 1/q^2, ...)``, normalised over
    partitions of ``n``, with Q_{n,q}.

    With ``transpose=False`` the Schur functions are indexed by ``lam`` and
    the normalised table must equal Q_{n,q} itself. Indexing by ``lam'``
    instead produces ``lam -> Q_{n,q}(lam')``; the flag checks that variant.
    """
    q = as_rational(q)
    target = q_pmf(n, q)
    weights = {}
    for lam in enumerate_partitions(n):
        idx = conjugate(lam) if transpose else lam
        weights[lam] = schur_principal(idx, 0, q) * schur_principal(idx, 1, q)
    got = _make_pmf(n, q, "Q", weights)
    if transpose:
        return all(got[lam] == target[conjugate(lam)] for lam in got.entries)
    return dict(got.entries) == dict(target.entries)


def symmetry_check(n: int, q: RationalLike) -> bool:
    """``Q_{n,q}(lam) == Q_{n,1/q}(lam')`` for every partition of ``n``."""
    q = as_rational(q)
    fwd, back = q_pmf(n, q), q_pmf(n, 1 / q)
    return all(p == back[conjugate(lam)] for lam, p in fwd)
