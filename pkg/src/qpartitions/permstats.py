"""Permutations under the ``q^{maj(pi) + maj(pi^-1)}`` weighting: major
index, RSK shapes, longest monotone subsequences, exact tables for small n
and a Metropolis sampler beyond that."""

from __future__ import annotations

import bisect
import random
from fractions import Fraction
from itertools import permutations
from types import MappingProxyType
from typing import Iterator, Sequence

from qpartitions.measures import Pmf
from qpartitions.partitions import Partition, conjugate
from qpartitions.qarith import RationalLike, as_rational

Permutation = tuple[int, ...]

ENUMERATION_CAP = 9


class CapacityError(ValueError):
    """Raised when exact enumeration over S_n is requested beyond the cap."""


def check_permutation(pi: Sequence[int]) -> Permutation:
    pi = tuple(int(v) for v in pi)
    if sorted(pi) != list(range(1, len(pi) + 1)):
        raise ValueError(f"{pi} is not a permutation of 1..{len(pi)}")
    return pi


def maj(pi: Sequence[int]) -> int:
    """Sum of the (1-based) positions i with pi(i) > pi(i+1)."""
    return sum(i for i in range(1, len(pi)) if pi[i - 1] > pi[i])


def inverse(pi: Sequence[int]) -> Permutation:
    inv = [0] * len(pi)
    for pos, val in enumerate(pi, start=1):
        inv[val - 1] = pos
    return tuple(inv)


def rsk(pi: Sequence[int]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-insertion RSK: (insertion tableau P, recording tableau Q)."""
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for step, x in enumerate(pi, start=1):
        row = 0
        while True:
            if row == len(P):
                P.append([x])
                Q.append([step])
                break
            cur = P[row]
            j = bisect.bisect_right(cur, x)
            if j == len(cur):
                cur.append(x)
                Q[row].append(step)
                break
            x, cur[j] = cur[j], x
            row += 1
    return P, Q


def rsk_shape(pi: Sequence[int]) -> Partition:
    return tuple(len(row) for row in rsk(pi)[0])


def lis(pi: Sequence[int]) -> int:
    """Longest increasing subsequence, by the quadratic DP."""
    best = [1] * len(pi)
    for i in range(len(pi)):
        for j in range(i):
            if pi[j] < pi[i] and best[j] + 1 > best[i]:
                best[i] = best[j] + 1
    return max(best, default=0)


def lds(pi: Sequence[int]) -> int:
    """Longest decreasing subsequence, by the quadratic DP."""
    best = [1] * len(pi)
    for i in range(len(pi)):
        for j in range(i):
            if pi[j] > pi[i] and best[j] + 1 > best[i]:
                best[i] = best[j] + 1
    return max(best, default=0)


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapacityError(f"S_{n} exceeds the enumeration cap {cap}; use mcmc_sampler")


def biased_weights(n: int, q: RationalLike, cap: int = ENUMERATION_CAP) -> Iterator[tuple[Permutation, Fraction]]:
    q = as_rational(q)
    _check_cap(n, cap)
    for pi in permutations(range(1, n + 1)):
        yield pi, q ** (maj(pi) + maj(inverse(pi)))


def biased_pmf(n: int, q: RationalLike, cap: int = ENUMERATION_CAP) -> dict[Permutation, Fraction]:
    """Exact table of the measure proportional to ``q^{maj(pi) + maj(pi^-1)}``."""
    weights = dict(biased_weights(n, q, cap))
    total = sum(weights.values(), Fraction(0))
    return {pi: w / total for pi, w in weights.items()}


def shape_pushforward(n: int, q: RationalLike, cap: int = ENUMERATION_CAP) -> Pmf:
    """Law of ``conjugate(rsk_shape(pi))`` under the biased measure."""
    q = as_rational(q)
    tally: dict[Partition, Fraction] = {}
    total = Fraction(0)
    for pi, w in biased_weights(n, q, cap):
        lam = conjugate(rsk_shape(pi))
        tally[lam] = tally.get(lam, Fraction(0)) + w
        total += w
    ordered = sorted(tally, reverse=True)
    return Pmf(n, q, "Q", MappingProxyType({lam: tally[lam] / total for lam in ordered}))


def lds_tail(n: int, q: RationalLike, r: int, cap: int = ENUMERATION_CAP) -> Fraction:
    """Biased-measure probability that the longest decreasing subsequence is below r."""
    table = biased_pmf(n, q, cap)
    return sum((p for pi, p in table.items() if lds(pi) < r), Fraction(0))


def acceptance_ratio(pi: Sequence[int], pi_new: Sequence[int], q: RationalLike) -> Fraction:
    """Metropolis ratio ``min(1, q^Δ)``, Δ the change in ``maj + maj∘inverse``."""
    q = as_rational(q)
    delta = (maj(pi_new) + maj(inverse(pi_new))) - (maj(pi) + maj(inverse(pi)))
    return min(Fraction(1), q**delta)


def mcmc_sampler(
    n: int,
    q: RationalLike,
    steps: int,
    seed: int,
    start: Sequence[int] | None = None,
) -> Iterator[Permutation]:
    """Metropolis chain targeting the biased measure.

    Proposals swap the values at two uniformly chosen positions. Yields the
    state after each of ``steps`` steps. The accept test compares a uniform
    integer against the exact ratio, so no float enters the decision.
    """
    q = as_rational(q)
    if n < 2 or steps < 1:
        raise ValueError("need n >= 2 and steps >= 1")
    rng = random.Random(seed)
    state = list(check_permutation(start) if start is not None else range(1, n + 1))
    stat = maj(state) + maj(inverse(state))
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        state[i], state[j] = state[j], state[i]
        new_stat = maj(state) + maj(inverse(state))
        delta = new_stat - stat
        accept = True
        if delta != 0:
            ratio = q**delta
            if ratio < 1:
                # accept with probability num/den
                accept = rng.randrange(ratio.denominator) < ratio.numerator
        if accept:
            stat = new_stat
        else:
            state[i], state[j] = state[j], state[i]
        yield tuple(state)


def perm_record(pi: Sequence[int]) -> dict:
    pi = tuple(pi)
    return {
        "perm": list(pi),
        "maj": maj(pi),
        "maj_inv": maj(inverse(pi)),
        "shape": list(rsk_shape(pi)),
        "lis": lis(pi),
        "lds": lds(pi),
    }


def total_variation(empirical: dict, exact: dict) -> Fraction | float:
    keys = set(empirical) | set(exact)
    return sum(abs(empirical.get(k, 0) - exact.get(k, 0)) for k in keys) / 2

