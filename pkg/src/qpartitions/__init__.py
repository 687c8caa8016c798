"""Exact computations with the unipotent and q-Plancherel partition measures.

Partitions are plain tuples of weakly decreasing positive integers; all
probabilities are :class:`fractions.Fraction` values.
"""

from fractions import Fraction

from qpartitions.qarith import Interval, Series, euler_coeff, qpoch
from qpartitions.partitions import conjugate, enumerate_partitions
from qpartitions.measures import Pmf, p_pmf, q_pmf

__all__ = [
    "Fraction",
    "Interval",
    "Pmf",
    "Series",
    "conjugate",
    "enumerate_partitions",
    "euler_coeff",
    "p_pmf",
    "q_pmf",
    "qpoch",
]
