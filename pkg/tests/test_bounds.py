import csv
import io
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qpartitions import bounds
from qpartitions.measures import first_column_marginal, p_pmf, q_pmf
from qpartitions.qarith import qpoch

F = Fraction


def _mp(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def test_pbound_upper_example():
    assert bounds.pbound_upper(5, 4, 2) == 4 * (F(1, 16) + F(2048, 2047) * F(1, 64)) == F(2559, 8188)


def test_bounds_reject_r_outside_hypothesis():
    with pytest.raises(ValueError):
        bounds.pbound_upper(5, 5, 2)
    with pytest.raises(ValueError):
        bounds.qbound_lower(5, 0, 2)
    with pytest.raises(ValueError):
        bounds.pbound_lower(5, 2, F(3, 2))


def test_compare_prefactor():
    assert bounds.compare_lower_factor(3, 2) == F(7, 128)


def test_compare_examples():
    assert bounds.compare_sandwich_check(1, 2)
    assert F(7, 128) * p_pmf(3, 2)[(1, 1, 1)] == F(7, 8192) <= q_pmf(3, 2)[(1, 1, 1)]
    assert bounds.compare_sandwich_check(3, 2)
    assert len(p_pmf(12, 2)) == 77
    assert bounds.compare_sandwich_check(12, 2)


def test_neumann_examples():
    assert bounds.neumann_check(2, 1)
    assert F(1, 4) <= qpoch(F(1, 2), 3, 2) == F(21, 64) <= F(1, 2)
    assert bounds.neumann_check(2, 3)
    assert bounds.neumann_check(3, 10)
    assert bounds.neumann_check(2, 50)


def test_prelim():
    assert bounds.prelim_check(2)
    assert bounds.prelim_check(3)


def test_boundconst_examples():
    assert bounds.boundconst_check(2, 2)
    assert F(2, 3) <= F(20, 9) <= F(64, 3)
    assert bounds.boundconst_check(3, 2)
    assert bounds.boundconst_check(10, 3)


def test_corollary_examples():
    assert first_column_marginal(q_pmf(2, 2))[1] == F(4, 5)
    lower, upper = bounds.corollary_bounds(2, 2, 1)
    assert lower == (1 - F(1, 4)) * F(1, 16) * F(3, 4) == F(9, 256)
    assert lower <= F(4, 5) <= upper
    assert all(bounds.corollary_check(3, 2, k) for k in (1, 2, 3))
    assert all(bounds.corollary_check(8, 3, k) for k in range(1, 9))


def test_sqrt_exponent_rounding_is_weaker():
    # the rounded exponent gives the larger (weaker) upper factor
    for n in range(1, 30):
        q = F(2)
        literal = _mp(1 - 1 / q) ** (-(1 + 4 * mpmath.sqrt(2 * n)))
        assert _mp(bounds.sqrt_exponent_factor(n, q, 1)) >= literal * (1 - mpmath.mpf(10) ** -20)


@given(n=st.integers(1, 40), shift=st.integers(-2, 2), q=st.sampled_from([F(2), F(3), F(5, 2)]),
       num=st.integers(1, 10**6), den=st.integers(1, 10**6))
def test_certified_sqrt_power_is_sound(n, shift, q, num, den):
    # whenever the certificate says yes, the literal inequality holds numerically
    value = F(num, den)
    with mpmath.workdps(50):
        factor = _mp(1 - 1 / q) ** (-(shift + 4 * mpmath.sqrt(2 * n)))
        if bounds.certify_sqrt_power_bound(value, F(1), q, n, shift):
            assert _mp(value) <= factor
        else:
            assert _mp(value) > factor * (1 - mpmath.mpf(2) ** -10)


def test_certified_sqrt_power_is_tight_enough():
    # a value slightly below the literal bound is still certified
    q, n, shift = F(2), 7, 1
    factor = (1 - 1 / q) ** -(shift + 4 * math.sqrt(2 * n))
    assert bounds.certify_sqrt_power_bound(F(factor) * F(9999, 10000), F(1), q, n, shift)
    assert not bounds.certify_sqrt_power_bound(F(factor) * F(10001, 10000), F(1), q, n, shift)
    assert bounds.certify_sqrt_power_bound(F(0), F(1), q, n, shift)
    with pytest.raises(ValueError):
        bounds.certify_sqrt_power_bound(F(1), F(-1), q, n, shift)


@pytest.mark.parametrize("measure", ["P", "Q"])
@pytest.mark.parametrize("q", [F(2), F(3)])
def test_first_row_bounds_hold(measure, q):
    rows = bounds.bounds_report(range(2, 19), "all", [q], measure)
    assert rows and all(r.ok for r in rows)
    if measure == "Q":
        assert all(bounds.qbound_upper_literal(r.n, r.r_or_k, q, r.exact) for r in rows)


def test_row_tails_match_enumeration():
    pmf = p_pmf(6, 2)
    tails = bounds.row_tails(pmf)
    for r in range(8):
        assert tails[r] == sum((p for lam, p in pmf if lam[0] < r), F(0))


def test_bounds_report_examples():
    assert bounds.bounds_report([], "all", [2]) == []
    rows = bounds.bounds_report(range(3, 6), "n-1", [2])
    assert [(r.n, r.r_or_k) for r in rows] == [(3, 2), (4, 3), (5, 4)]
    assert all(r.lower <= r.exact <= r.upper for r in rows)
    assert bounds.bounds_report(range(3, 6), lambda n: [1, n], [2]) == bounds.bounds_report(range(3, 6), 1, [2])


def test_bounds_slack_shrinks():
    (row,) = bounds.bounds_report([10], 9, [2])
    assert row.slack_low >= 0 and 0 <= row.slack_high < 1


def test_report_csv():
    text = bounds.reports_to_csv(bounds.bounds_report([3], "all", [2]))
    reader = list(csv.reader(io.StringIO(text)))
    assert reader[0][:8] == bounds.REPORT_COLUMNS
    assert reader[0][8:] == [f"{c}_decimal" for c in bounds.REPORT_COLUMNS[3:]]
    assert len(reader) == 3
    assert reader[2][:3] == ["3", "2", "2/1"]
    assert reader[2][4] == "1/64"
