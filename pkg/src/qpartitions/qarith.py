"""Exact scalars, q-Pochhammer symbols, truncated series in ``u`` and
certified enclosures of the infinite products that normalise the measures.

Scalars are :class:`fractions.Fraction`. Nothing in this module ever
rounds through a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

RationalLike = Union[int, Fraction, str]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and literals such as ``"5/2"`` to a Fraction.

    Floats are rejected: a float literal has already been rounded.
    """
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a Fraction or 'a/b' string")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational literal: {value!r}") from exc


def format_rational(value: Fraction) -> str:
    """Render as ``"numerator/denominator"`` in lowest terms."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def qpoch(x: RationalLike, n: int, q: RationalLike) -> Fraction:
    """Return ``(x)_n = (1-x)(1-x/q)...(1-x/q^(n-1))``.

    ``n = 0`` is the empty product. ``n = -1`` follows the extension
    ``(x)_{-1} = 1/(1 - x q)``, which is what makes the ``m = 0`` term of the
    first-row tail expansion equal to one.
    """
    x, q = as_rational(x), as_rational(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    if n < -1:
        raise ValueError(f"n must be >= -1, got {n}")
    if n == -1:
        denom = 1 - x * q
        if denom == 0:
            raise ValueError("(x)_{-1} is undefined when x*q == 1")
        return 1 / denom
    result = Fraction(1)
    scale = Fraction(1)
    for _ in range(n):
        result *= 1 - x * scale
        scale /= q
    return result


def euler_coeff(n: int, q: RationalLike) -> Fraction:
    """Coefficient of ``u^n`` in ``prod_{i>=1} 1/(1 - u/q^i)``, i.e.
    ``1/(q^n (1/q)_n)``."""
    q = as_rational(q)
    if q <= 1:
        raise ValueError("euler_coeff requires q > 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return 1 / (q**n * qpoch(1 / q, n, q))


# -- truncated power series in u -------------------------------------------


@dataclass(frozen=True)
class Series:
    """Polynomial in ``u`` truncated after ``u^order``."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[RationalLike], order: int | None = None):
        cs = [as_rational(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = (cs + [Fraction(0)] * (order + 1 - len(cs)))[: order + 1]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, order: int) -> Series:
        return cls([1], order)

    @classmethod
    def monomial(cls, k: int, c: RationalLike, order: int) -> Series:
        cs = [Fraction(0)] * (order + 1)
        if k <= order:
            cs[k] = as_rational(c)
        return cls(cs, order)

    def coeff(self, k: int) -> Fraction:
        if k < 0 or k > self.order:
            raise ValueError(f"coefficient u^{k} is outside truncation order {self.order}")
        return self.coeffs[k]

    def _check(self, other: Series) -> None:
        if self.order != other.order:
            raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other: Series) -> Series:
        self._check(other)
        return Series([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: Series) -> Series:
        self._check(other)
        return Series([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> Series:
        return Series([-a for a in self.coeffs])

    def scale(self, c: RationalLike) -> Series:
        c = as_rational(c)
        return Series([c * a for a in self.coeffs])

    def __mul__(self, other: Series) -> Series:
        self._check(other)
        N = self.order
        out = [Fraction(0)] * (N + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(N + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return Series(out)


def series_mul(a: Series, b: Series) -> Series:
    return a * b


def series_coeff(a: Series, k: int) -> Fraction:
    return a.coeff(k)


def series_geom_factor(q: RationalLike, i: int, N: int) -> Series:
    """Expansion of ``1/(1 - u/q^i)`` through ``u^N``."""
    ratio = 1 / as_rational(q) ** i
    return Series([ratio**k for k in range(N + 1)])


def qpoch_series(c: RationalLike, n: int, q: RationalLike, N: int) -> Series:
    """``(c u)_n`` as a series in ``u`` truncated at ``u^N``."""
    c, q = as_rational(c), as_rational(q)
    if n == -1:
        # 1/(1 - c q u)
        return Series([(c * q) ** k for k in range(N + 1)])
    if n < -1:
        raise ValueError("n must be >= -1")
    out = Series.one(N)
    for k in range(n):
        out = out * Series([1, -c / q**k], N)
    return out


@dataclass(frozen=True)
class EulerReport:
    n: int
    q: Fraction
    M: int
    partial: tuple[Fraction, ...]  # coefficient of u^n using factors i = 1..m, m = n..M
    limit: Fraction

    @property
    def gap(self) -> Fraction:
        return self.limit - self.partial[-1]


def euler_convergence_report(n: int, q: RationalLike, M: int) -> EulerReport:
    """Track the ``u^n`` coefficient of the truncated Euler product as more
    factors are included, checking it climbs monotonically to its limit."""
    q = as_rational(q)
    if q < 2 or M < n or M < 1:
        raise ValueError("need q >= 2 and M >= max(n, 1)")
    limit = euler_coeff(n, q)
    prod = Series.one(n)
    partial = []
    for m in range(1, M + 1):
        prod = prod * series_geom_factor(q, m, n)
        if m >= n:
            partial.append(prod.coeff(n))
    for prev, cur in zip(partial, partial[1:]):
        assert prev <= cur, "partial Euler coefficients must be nondecreasing"
    assert partial[-1] <= limit, "partial Euler coefficient exceeded its limit"
    return EulerReport(n, q, M, tuple(partial), limit)


# -- certified enclosures ---------------------------------------------------


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: RationalLike) -> Interval:
        x = as_rational(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def overlaps(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other) -> Interval:
        if not isinstance(other, Interval):
            other = Interval.point(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __mul__(self, other) -> Interval:
        if not isinstance(other, Interval):
            other = Interval.point(other)
        products = [a * b for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"lo": format_rational(self.lo), "hi": format_rational(self.hi)}


def _check_q_ge_2(q: Fraction) -> None:
    if q < 2:
        raise ValueError(f"enclosures are certified for q >= 2, got {q}")


def sp_prod_interval(q: RationalLike, M: int) -> Interval:
    """Enclose ``prod_{i>=1} (1 - q^-i)`` using ``M`` exact factors.

    The tail satisfies ``prod_{i>M} (1 - q^-i) >= 1 - q^-M/(q-1)``.
    """
    q = as_rational(q)
    _check_q_ge_2(q)
    if M < 1:
        raise ValueError("M must be positive")
    partial = qpoch(1 / q, M, q)
    tail = 1 - 1 / (q**M * (q - 1))
    return Interval(partial * tail, partial)


def dp_prod_interval(q: RationalLike, M: int) -> Interval:
    """Enclose ``prod_{i>=1} prod_{j>=0} (1 - q^-(i+j)) = prod_k (1 - q^-k)^k``.

    Lower end uses ``prod_{k>M} (1 - q^-k)^k >= 1 - sum_{k>M} k q^-k``.
    """
    q = as_rational(q)
    _check_q_ge_2(q)
    if M < 1:
        raise ValueError("M must be positive")
    x = 1 / q
    partial = Fraction(1)
    for k in range(1, M + 1):
        partial *= (1 - x**k) ** k
    tail_sum = x ** (M + 1) * ((M + 1) - M * x) / (1 - x) ** 2
    if tail_sum >= 1:
        raise ValueError(f"M={M} too small for a positive tail bound at q={q}; raise M")
    return Interval(partial * (1 - tail_sum), partial)

