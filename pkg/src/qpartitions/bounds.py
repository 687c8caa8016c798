"""Explicit inequalities for P_{n,q}, Q_{n,q} and their normalising
constants, as exact predicates and slack reports.

Several bounds carry the irrational exponent ``4 sqrt(2n)``. Two checks are
made for those: an exact rational one with the exponent rounded up to
``4 ceil(sqrt(2n))`` (a weaker upper bound, since the base is below one),
and a certified check of the literal exponent using a rational lower
bracket of ``sqrt(2n)``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Iterable, Union

from qpartitions.measures import (
    first_column_marginal,
    p_first_column,
    p_pmf,
    q_pmf,
    to_decimal,
    z_table,
)
from qpartitions.qarith import (
    RationalLike,
    as_rational,
    dp_prod_interval,
    format_rational,
    qpoch,
)

# denominators of the successively finer rational brackets for sqrt(2n)
SQRT_BRACKETS = (64, 4096)


def ceil_sqrt(m: int) -> int:
    c = isqrt(m)
    return c if c * c == m else c + 1


def _base(q: Fraction) -> Fraction:
    return 1 - 1 / q


def _check_hyp(n: int, r: int, q: Fraction) -> None:
    if q < 2:
        raise ValueError("bounds hold for q >= 2")
    if not 1 <= r <= n - 1:
        raise ValueError(f"bounds need 1 <= r <= n-1, got n={n}, r={r}")


def sqrt_exponent_factor(n: int, q: RationalLike, shift: int) -> Fraction:
    """``(1-1/q)^-(shift + 4 ceil(sqrt(2n)))``: the rational stand-in for
    ``(1-1/q)^-(shift + 4 sqrt(2n))``, never smaller than it."""
    q = as_rational(q)
    return _base(q) ** -(shift + 4 * ceil_sqrt(2 * n))


def certify_sqrt_power_bound(value: Fraction, coeff: Fraction, q: RationalLike, n: int, shift: int) -> bool:
    """Decide ``value <= coeff * (1-1/q)^-(shift + 4 sqrt(2n))`` exactly.

    With ``a = isqrt(32 n D^2)`` we have ``a/D <= 4 sqrt(2n) <= (a+1)/D``.
    Since the base is below one, the inequality holds if
    ``(value/coeff)^D * b^(D*shift + a) <= 1`` and fails if the same
    expression with ``a + 1`` exceeds one. Brackets are refined through
    ``SQRT_BRACKETS``; an undecided case returns False.
    """
    q = as_rational(q)
    if coeff < 0:
        raise ValueError("coefficient must be nonnegative")
    if value <= 0:
        return True
    if coeff == 0:
        return False
    b = _base(q)
    ratio = Fraction(value) / coeff

    def side(D: int, a: int) -> Fraction:
        exp = D * shift + a
        lhs = ratio**D
        return lhs * b**exp if exp >= 0 else lhs / b ** (-exp)

    for D in SQRT_BRACKETS:
        a = isqrt(32 * n * D * D)
        if side(D, a) <= 1:
            return True
        if a * a == 32 * n * D * D or side(D, a + 1) > 1:
            return False
    return False


# -- first-row tails --------------------------------------------------------


def _p_bracket_upper(n: int, r: int, q: Fraction) -> Fraction:
    return q ** -(2 * n - 2 * r + 2) + 1 / ((1 - q ** -(2 * n + 1)) * q ** (n + 1))


def _p_bracket_lower(n: int, r: int, q: Fraction) -> Fraction:
    b = _base(q)
    return (
        q ** -(2 * n - 2 * r + 2)
        - 1 / (q ** (n + 1) * b)
        - 1 / (q ** (2 * n - 2 * r + 3) * b**2)
        - 1 / (q ** (3 * n - 3 * r + 4) * b**3)
        - 1 / (b**2 * q ** (2 * n + 3) * (1 - q ** -(2 * n + 3)))
    )


def pbound_upper(n: int, r: int, q: RationalLike) -> Fraction:
    q = as_rational(q)
    _check_hyp(n, r, q)
    return _p_bracket_upper(n, r, q) / _base(q) ** 2


def pbound_lower(n: int, r: int, q: RationalLike) -> Fraction:
    """May be negative, in which case it is vacuous."""
    q = as_rational(q)
    _check_hyp(n, r, q)
    return _p_bracket_lower(n, r, q)


def compare_lower_factor(n: int, q: RationalLike) -> Fraction:
    """``(1 - q^-n)(1 - 1/q)^4``."""
    q = as_rational(q)
    return (1 - q**-n) * _base(q) ** 4


def qbound_upper(n: int, r: int, q: RationalLike) -> Fraction:
    """Rational upper bound on Q^r_{n,q} with the exponent rounded up."""
    q = as_rational(q)
    _check_hyp(n, r, q)
    return sqrt_exponent_factor(n, q, 1) * _p_bracket_upper(n, r, q)


def qbound_lower(n: int, r: int, q: RationalLike) -> Fraction:
    q = as_rational(q)
    _check_hyp(n, r, q)
    return compare_lower_factor(n, q) * _p_bracket_lower(n, r, q)


def qbound_upper_literal(n: int, r: int, q: RationalLike, value: Fraction) -> bool:
    """Is ``value`` below the upper bound with the exact ``4 sqrt(2n)``?"""
    q = as_rational(q)
    _check_hyp(n, r, q)
    return certify_sqrt_power_bound(value, _p_bracket_upper(n, r, q), q, n, 1)


def row_tails(pmf) -> list[Fraction]:
    """``tails[r]`` is the probability that ``lam_1 < r``, for r = 0..n+1."""
    by_row = [Fraction(0)] * (pmf.n + 2)
    for lam, p in pmf:
        by_row[lam[0] if lam else 0] += p
    tails, acc = [], Fraction(0)
    for r in range(pmf.n + 2):
        tails.append(acc)
        acc += by_row[r]
    return tails


# -- pointwise comparison and the normalising constant ----------------------


def compare_sandwich_check(n: int, q: RationalLike) -> bool:
    """For every partition of n, ``(1-q^-n)(1-1/q)^4 P <= Q`` and
    ``Q <= P (1-1/q)^{1 - 4 sqrt(2n)}``, the latter both with the rounded
    exponent and certified at the literal one."""
    q = as_rational(q)
    P, Q = p_pmf(n, q), q_pmf(n, q)
    low = compare_lower_factor(n, q)
    up = sqrt_exponent_factor(n, q, -1)
    for lam, p in P:
        qv = Q[lam]
        if not (low * p <= qv <= up * p):
            return False
        if not certify_sqrt_power_bound(qv, p, q, n, -1):
            return False
    return True


def neumann_check(q: RationalLike, dmax: int) -> bool:
    """``(1-1/q)^2 <= prod_{i<=d}(1-q^-i) <= 1-1/q`` and the sharper lower
    bound ``1 - 1/q - 1/q^2``, for d = 1..dmax."""
    q = as_rational(q)
    if q < 2:
        raise ValueError("needs q >= 2")
    b = _base(q)
    partial = Fraction(1)
    for d in range(1, dmax + 1):
        partial *= 1 - q**-d
        if not (b * b <= partial <= b and 1 - 1 / q - 1 / q**2 <= partial):
            return False
    return True


def prelim_check(q: RationalLike, M: int = 40) -> bool:
    """Certified lower end of the double product is at least ``(1-1/q)^4``."""
    q = as_rational(q)
    return dp_prod_interval(q, M).lo >= _base(q) ** 4


def boundconst_check(n: int, q: RationalLike) -> bool:
    """``1/(q^n (1/q)_n) <= z(n,q) <= 1/((q^n - 1)(1-1/q)^6)``."""
    q = as_rational(q)
    if q < 2 or n < 1:
        raise ValueError("needs q >= 2 and n >= 1")
    z = z_table(n, q)[n]
    lower = 1 / (q**n * qpoch(1 / q, n, q))
    upper = 1 / ((q**n - 1) * _base(q) ** 6)
    return lower <= z <= upper


def corollary_bounds(n: int, q: RationalLike, k: int) -> tuple[Fraction, Fraction]:
    """(lower, rounded-exponent upper) for the Q_{n,q} probability of ``lam'_1 = k``."""
    q = as_rational(q)
    closed = p_first_column(n, q, k)
    return compare_lower_factor(n, q) * closed, sqrt_exponent_factor(n, q, 1) * closed


def corollary_check(n: int, q: RationalLike, k: int) -> bool:
    q = as_rational(q)
    if q < 2 or not 1 <= k <= n:
        raise ValueError("needs q >= 2 and 1 <= k <= n")
    exact = first_column_marginal(q_pmf(n, q)).get(k, Fraction(0))
    lower, upper = corollary_bounds(n, q, k)
    literal = certify_sqrt_power_bound(exact, p_first_column(n, q, k), q, n, 1)
    return lower <= exact <= upper and literal


# -- reports ----------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    measure: str
    n: int
    r_or_k: int
    q: Fraction
    lower: Fraction
    exact: Fraction
    upper: Fraction

    @property
    def slack_low(self) -> Fraction:
        return self.exact - self.lower

    @property
    def slack_high(self) -> Fraction:
        return self.upper - self.exact

    @property
    def ok(self) -> bool:
        return self.lower <= self.exact <= self.upper


RPolicy = Union[str, int, Callable[[int], Iterable[int]]]


def _r_values(n: int, policy: RPolicy) -> list[int]:
    if policy == "all":
        return list(range(1, n))
    if policy == "n-1":
        return [n - 1] if n >= 2 else []
    if isinstance(policy, int):
        return [policy] if 1 <= policy <= n - 1 else []
    return [r for r in policy(n) if 1 <= r <= n - 1]


def bounds_report(
    n_range: Iterable[int],
    r_policy: RPolicy = "all",
    q_set: Iterable[RationalLike] = (2,),
    measure: str = "P",
) -> list[BoundReport]:
    """One row per (q, n, r) with the exact first-row tail and both bounds."""
    if measure not in ("P", "Q"):
        raise ValueError("measure must be 'P' or 'Q'")
    rows = []
    for q in (as_rational(x) for x in q_set):
        for n in n_range:
            rs = _r_values(n, r_policy)
            if not rs:
                continue
            pmf = p_pmf(n, q) if measure == "P" else q_pmf(n, q)
            tails = row_tails(pmf)
            for r in rs:
                if measure == "P":
                    lo, hi = pbound_lower(n, r, q), pbound_upper(n, r, q)
                else:
                    lo, hi = qbound_lower(n, r, q), qbound_upper(n, r, q)
                rows.append(BoundReport(measure, n, r, q, lo, tails[r], hi))
    return rows


REPORT_COLUMNS = ["n", "r_or_k", "q", "lower", "exact", "upper", "slack_low", "slack_high"]


def reports_to_csv(rows: Iterable[BoundReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    rational_cols = REPORT_COLUMNS[3:]
    writer.writerow(REPORT_COLUMNS + [f"{c}_decimal" for c in rational_cols])
    for row in rows:
        vals = [getattr(row, c) for c in rational_cols]
        writer.writerow(
            [row.n, row.r_or_k, format_rational(row.q)]
            + [format_rational(v) for v in vals]
            + [to_decimal(v) for v in vals]
        )
    return buf.getvalue()
