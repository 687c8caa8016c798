from fractions import Fraction

import pytest

from qpartitions import growth
from qpartitions.measures import p_pmf, p_weight
from qpartitions.partitions import enumerate_partitions

F = Fraction


def test_edge_weight_examples():
    assert growth.edge_weight((), 1, 2) == 1
    assert growth.edge_weight((), 1, 5) == F(1, 4)
    assert growth.edge_weight((1,), 2, 2) == F(1, 2)
    assert growth.edge_weight((1,), 1, 2) == F(1, 6)
    with pytest.raises(ValueError):
        growth.edge_weight((), 2, 2)


def test_path_sum_examples():
    assert growth.path_sum((1,), 2) == 1 == p_weight((1,), 2)
    assert growth.path_sum((2,), 2) == F(1, 2) == p_weight((2,), 2)
    assert growth.path_sum((1, 1), 2) == F(1, 6) == p_weight((1, 1), 2)


@pytest.mark.parametrize("q", [F(2), F(3), F(7, 2)])
def test_path_sum_is_p_weight(q):
    dp = growth.growth_dp(10, q)
    for n in range(11):
        for lam in enumerate_partitions(n):
            assert dp[lam] == p_weight(lam, q)


def test_outflow_examples():
    assert growth.outflow((1,), 2) == F(2, 3)
    assert growth.outflow((2, 1), 2) == F(2, 7) == growth.outflow_direct((2, 1), 2)
    with pytest.raises(ValueError):
        growth.outflow((), 2)


@pytest.mark.parametrize("n", range(1, 9))
def test_outflow_closed_form(n):
    for lam in enumerate_partitions(n):
        assert growth.outflow(lam, 3) == growth.outflow_direct(lam, 3)
        assert growth.nonaddable_weights_vanish(lam, 3)


def test_syt_examples():
    assert list(growth.syt_pmf(1, 2).values()) == [1]
    assert growth.syt_pmf(2, 2) == {((), (1,), (2,)): F(3, 4), ((), (1,), (1, 1)): F(1, 4)}
    three = growth.syt_pmf(3, 2)
    to_21 = [p for chain, p in three.items() if chain[-1] == (2, 1)]
    assert len(to_21) == 2 and sum(to_21) == F(21, 64)
    with pytest.raises(ValueError):
        growth.syt_pmf(11, 2)


@pytest.mark.parametrize("n", range(0, 8))
def test_syt_shape_marginal_is_p(n):
    q = F(5, 2)
    marg = {}
    for chain, p in growth.syt_pmf(n, q).items():
        marg[chain[-1]] = marg.get(chain[-1], 0) + p
    assert marg == dict(p_pmf(n, q).entries)


def test_standard_tableaux_count_by_hook_formula():
    assert len(list(growth.standard_tableaux((3, 2)))) == 5
    assert len(list(growth.standard_tableaux((3, 2, 1)))) == 16


@pytest.mark.parametrize("n", range(2, 10))
def test_substochastic(n):
    assert growth.substochastic_check(n, 2)


def test_monotone_examples():
    assert growth.monotone_check(2, 2, 2)
    assert growth.monotone_check(3, 2, 2)
    assert growth.monotone_check(4, 9, 2)
    with pytest.raises(ValueError):
        growth.monotone_check(3, 2, F(3, 2))


@pytest.mark.parametrize("q", [F(2), F(5, 2), F(3)])
def test_monotone_all(q):
    assert all(growth.monotone_check(n, r, q) for n in range(14) for r in range(1, n + 3))
