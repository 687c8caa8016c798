"""Partition combinatorics on plain tuples.

A partition is a tuple of weakly decreasing positive integers; ``()`` is the
partition of zero. Cells are ``(row, column)`` pairs, 1-based, rows counted
downward.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterator, Sequence

Partition = tuple[int, ...]


def make_partition(parts: Sequence[int]) -> Partition:
    """Validate and normalise ``parts``; zeros are dropped."""
    parts = tuple(int(p) for p in parts if p != 0)
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"parts must be weakly decreasing: {parts}")
    return parts


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= i) for i in range(1, lam[0] + 1))


def cells(lam: Partition) -> Iterator[tuple[int, int]]:
    for i, part in enumerate(lam, start=1):
        for j in range(1, part + 1):
            yield i, j


def _check_cell(lam: Partition, cell: tuple[int, int]) -> None:
    i, j = cell
    if not (1 <= i <= len(lam) and 1 <= j <= lam[i - 1]):
        raise ValueError(f"cell {cell} is not in the diagram of {lam}")


def arm(lam: Partition, cell: tuple[int, int]) -> int:
    _check_cell(lam, cell)
    i, j = cell
    return lam[i - 1] - j


def leg(lam: Partition, cell: tuple[int, int]) -> int:
    _check_cell(lam, cell)
    i, j = cell
    return sum(1 for p in lam[i:] if p >= j)


def hook(lam: Partition, cell: tuple[int, int]) -> int:
    return arm(lam, cell) + leg(lam, cell) + 1


def hook_lengths(lam: Partition) -> list[int]:
    """Hook lengths of all cells, row by row."""
    conj = conjugate(lam)
    return [
        (lam[i - 1] - j) + (conj[j - 1] - i) + 1 for i, j in cells(lam)
    ]


def row_end_hooks(lam: Partition) -> list[int]:
    """Hook lengths of the cells with zero arm (the last cell of each row)."""
    conj = conjugate(lam)
    return [conj[p - 1] - i + 1 for i, p in enumerate(lam, start=1)]


def m_counts(lam: Partition) -> dict[int, int]:
    """Multiplicity ``m_i`` of each part size that occurs."""
    return dict(Counter(lam))


def n_lambda(lam: Partition) -> int:
    """``n(lam) = sum (i-1) lam_i``."""
    return sum(i * p for i, p in enumerate(lam))


def colsq_sum(lam: Partition) -> int:
    return sum(c * c for c in conjugate(lam))


def distinct_parts(lam: Partition) -> int:
    return len(set(lam))


def enumerate_partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` with parts at most ``max_part``, in
    lexicographically decreasing order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if max_part is None:
        max_part = n

    def rec(remaining: int, cap: int) -> Iterator[Partition]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    return rec(n, max_part)


def enumerate_first_row_below(n: int, r: int) -> Iterator[Partition]:
    """Partitions of ``n`` with ``lam_1 < r``."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if n == 0:
        return iter([()])
    return enumerate_partitions(n, r - 1)


def partition_count(n: int) -> int:
    """``p(n)`` by Euler's pentagonal-number recurrence."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def successors(lam: Partition) -> list[tuple[Partition, int]]:
    """Partitions covering ``lam`` in Young's lattice, each paired with the
    column of the added cell. Ordered by the row receiving the cell."""
    out = []
    for i, part in enumerate(lam):
        if i == 0 or lam[i - 1] > part:
            out.append((lam[:i] + (part + 1,) + lam[i + 1 :], part + 1))
    out.append((lam + (1,), 1))
    return out


def predecessors(lam: Partition) -> list[Partition]:
    """Partitions obtained by removing one corner cell."""
    out = []
    for i, part in enumerate(lam):
        if i == len(lam) - 1 or lam[i + 1] < part:
            out.append(make_partition(lam[:i] + (part - 1,) + lam[i + 1 :]))
    return out
