from fractions import Fraction
from itertools import product
from types import MappingProxyType

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qpartitions import sampling as sm
from qpartitions.measures import Pmf, p_pmf, q_pmf
from qpartitions.partitions import enumerate_partitions
from qpartitions.qarith import sp_prod_interval

F = Fraction


def prefix_law(probs, depth):
    """Mass each cell receives from bit prefixes of length ``depth``
    (decided), and the mass of prefixes still undecided."""
    cdf = sm.cumulative(probs)
    decided = [F(0)] * len(probs)
    undecided = F(0)
    for bits in product((0, 1), repeat=depth):
        cell = sm.resolve_bits(cdf, bits)
        if cell is None:
            undecided += F(1, 2**depth)
        else:
            decided[cell] += F(1, 2**depth)
    return decided, undecided


@pytest.mark.parametrize(
    "probs",
    [[F(1, 2), F(1, 2)], [F(3, 4), F(1, 4)], [F(1, 3), F(2, 3)], [F(21, 32), F(21, 64), F(1, 64)],
     [F(64, 101), F(36, 101), F(1, 101)], [F(1, 8), F(5, 8), F(1, 4)]],
)
def test_prefix_enumeration_exactness(probs):
    decided, undecided = prefix_law(probs, 10)
    assert sum(decided) + undecided == 1
    for d, p in zip(decided, probs):
        assert d <= p <= d + undecided
    if all(p.denominator & (p.denominator - 1) == 0 and p.denominator <= 2**10 for p in probs):
        assert decided == probs and undecided == 0
    # undecided mass halves (at least) with each extra bit beyond the cell scale
    assert undecided <= F(len(probs), 2**10)


@given(st.lists(st.integers(1, 50), min_size=2, max_size=4))
def test_prefix_sandwich_property(ws):
    probs = [F(w, sum(ws)) for w in ws]
    decided, undecided = prefix_law(probs, 8)
    assert all(d <= p <= d + undecided for d, p in zip(decided, probs))


def test_point_mass():
    batch = sm.sample_exact(p_pmf(1, 2), 0, 50)
    assert set(batch.draws) == {(1,)}
    assert len(sm.frequency_report(sm.sample_exact(p_pmf(3, 2), 0, 1))) == 1


def test_reproducible():
    a = sm.sample_exact(q_pmf(5, 2), 9, 300).draws
    assert a == sm.sample_exact(q_pmf(5, 2), 9, 300).draws
    assert a != sm.sample_exact(q_pmf(5, 2), 10, 300).draws
    t = sm.sample_tilde_p(2, 4, 50).draws
    assert t == sm.sample_tilde_p(2, 4, 50).draws


def test_count_must_be_positive():
    with pytest.raises(ValueError):
        sm.sample_exact(p_pmf(2, 2), 0, 0)


def test_frequency_examples():
    batch = sm.sample_exact(p_pmf(2, 2), 2024, 10_000)
    rows = {r.partition: r for r in sm.frequency_report(batch)}
    assert abs(rows[(2,)].z) < 4
    assert sum(r.frequency for r in rows.values()) == 1
    batch = sm.sample_exact(q_pmf(3, 2), 2024, 10_000)
    rows = {r.partition: r for r in sm.frequency_report(batch, list(enumerate_partitions(3)))}
    assert rows[(1, 1, 1)].exact == F(1, 101)
    assert abs(rows[(1, 1, 1)].z) < 4


def test_non_dyadic_cell_frequencies():
    pmf = Pmf(0, F(2), "P", MappingProxyType({(1,): F(1, 3), (2,): F(2, 3)}))
    batch = sm.sample_exact(pmf, 1, 6000)
    assert all(abs(r.z) < 4 for r in sm.frequency_report(batch))


def test_chi_square_pools_small_cells():
    batch = sm.sample_exact(q_pmf(6, 2), 3, 2000)
    stat, df, crit = sm.chi_square(batch, list(enumerate_partitions(6)))
    assert df < len(list(enumerate_partitions(6))) - 1
    assert stat < crit


def test_tilde_p_size_marginal():
    batch = sm.sample_tilde_p(2, 2024, 3000)
    assert batch.n == "tilde" and batch.header()["n"] == "tilde"
    ones = sum(1 for lam in batch.draws if sum(lam) == 1) / 3000
    p1 = sp_prod_interval(2, 30)
    assert abs(ones - float(p1.lo)) < 4 * (float(p1.lo) * (1 - float(p1.lo)) / 3000) ** 0.5


def test_tilde_large_q_mass_at_zero():
    q = F(2**20)
    batch = sm.sample_tilde_p(q, 1, 200)
    assert sum(1 for lam in batch.draws if lam == ()) >= 199
    assert abs(float(batch.exact(())) - (1 - 2**-20)) < 1e-9


def test_tilde_q_runs():
    batch = sm.sample_tilde_q(3, 5, 300)
    rows = sm.frequency_report(batch)
    assert sum(r.frequency for r in rows) == 1
    assert max(abs(r.z) for r in rows if r.count >= 5) < 4


def test_tilde_conditional_matches_p():
    batch = sm.sample_tilde_p(F(3, 2) + F(1, 2), 77, 4000)
    twos = [lam for lam in batch.draws if sum(lam) == 2]
    frac = twos.count((2,)) / len(twos)
    p = float(p_pmf(2, 2)[(2,)])
    assert abs(frac - p) < 4 * (p * (1 - p) / len(twos)) ** 0.5
