"""Convex-position probability for points on the teeth of an orthogonal comb.

A comb is a family of vertical segments ("teeth") at strictly increasing
abscissas in (0, 1), together with the two endpoint points (0, 0) and (1, 0).
The tooth-length polynomial K (the probability multiplied by the product of
tooth lengths) has three equivalent computations:

* a pivot recurrence (`comb_poly`),
* a sum over non-crossing triangulations (`comb_poly_triangulations`),
* a sum over insertion permutations (`comb_poly_permutations`).

All three accept symbolic tooth lengths (MultiPoly) with numeric abscissas;
agreement of the three routes is part of the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .poly import MultiPoly
from .rationals import format_rational, to_fraction

PERMUTATION_CAP = 7


@dataclass(frozen=True)
class Comb:
    """Tooth abscissas in (0,1), strictly increasing, with lengths >= 0."""

    x: tuple
    lengths: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(to_fraction(v) for v in self.x))
        object.__setattr__(
            self, "lengths", tuple(to_fraction(v) for v in self.lengths)
        )
        if len(self.x) != len(self.lengths):
            raise ValueError("abscissa / length count mismatch")
        _check_interior_abscissas(self.x)
        if any(l < 0 for l in self.lengths):
            raise ValueError("negative tooth length")

    @property
    def m(self):
        return len(self.x)

    def to_json(self):
        return {
            "x": [format_rational(v) for v in self.x],
            "l": [format_rational(v) for v in self.lengths],
        }

    @classmethod
    def from_json(cls, doc):
        return cls(
            tuple(Fraction(v) for v in doc["x"]),
            tuple(Fraction(v) for v in doc["l"]),
        )


def _check_interior_abscissas(x):
    for a, b in zip(x, x[1:]):
        if a >= b:
            raise ValueError("abscissas must be strictly increasing")
    if x and (x[0] <= 0 or x[-1] >= 1):
        raise ValueError("abscissas must lie strictly inside (0, 1)")


def _check_full_abscissas(x):
    if len(x) < 2 or x[0] != 0 or x[-1] != 1:
        raise ValueError("expected abscissas starting at 0 and ending at 1")
    for a, b in zip(x, x[1:]):
        if a >= b:
            raise ValueError("abscissas must be strictly increasing")


def comb_poly(x, lengths):
    """Tooth-length polynomial K via the pivot recurrence.

    ``x`` holds the m interior abscissas only; ``lengths`` entries may be
    rationals or MultiPoly values sharing one variable set.
    """
    x = [to_fraction(v) for v in x]
    _check_interior_abscissas(x)
    if len(x) != len(lengths):
        raise ValueError("abscissa / length count mismatch")
    lengths = [
        v if isinstance(v, MultiPoly) else to_fraction(v) for v in lengths
    ]
    return _rec(x, lengths)


def _rec(x, lengths):
    m = len(x)
    if m == 0:
        return Fraction(1)
    if m == 1:
        return lengths[0]
    total = Fraction(0)
    for j in range(m):
        xj, lj = x[j], lengths[j]
        left_x = [x[k] / xj for k in range(j)]
        left_l = [lengths[k] - (x[k] / xj) * lj for k in range(j)]
        right_x = [(x[k] - xj) / (1 - xj) for k in range(j + 1, m)]
        right_l = [
            lengths[k] - ((1 - x[k]) / (1 - xj)) * lj for k in range(j + 1, m)
        ]
        total = total + lj * _rec(left_x, left_l) * _rec(right_x, right_l)
    return total / m


def enumerate_triangulations(m):
    """All triangulations of the m+2 points, each a frozenset of triples.

    Deterministic lexicographic order: each triangulation compares by its
    sorted triple list.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    found = [frozenset(t) for t in _triangulate_interval(0, m + 1)]
    return sorted(found, key=lambda t: sorted(t))


def _triangulate_interval(a, b):
    if b - a == 1:
        yield []
        return
    for j in range(a + 1, b):
        for left in _triangulate_interval(a, j):
            for right in _triangulate_interval(j, b):
                yield left + right + [(a, j, b)]


def triangle_weight(triangle, x, gamma):
    """Vertical distance of the middle vertex to the triangle's long chord,
    divided by (n3 - n1 - 1)."""
    n1, n2, n3 = triangle
    chord = gamma[n1] + (x[n2] - x[n1]) / (x[n3] - x[n1]) * (
        gamma[n3] - gamma[n1]
    )
    return (gamma[n2] - chord) / (n3 - n1 - 1)


def comb_poly_triangulations(x, gamma):
    """K* as a sum over triangulations of products of triangle weights.

    ``x`` and ``gamma`` cover the full index range 0..m+1; the boundary
    values gamma[0], gamma[m+1] are unrestricted.
    """
    x = [to_fraction(v) for v in x]
    _check_full_abscissas(x)
    if len(gamma) != len(x):
        raise ValueError("abscissa / value count mismatch")
    gamma = [v if isinstance(v, MultiPoly) else to_fraction(v) for v in gamma]
    m = len(x) - 2
    total = Fraction(0)
    for tri in enumerate_triangulations(m):
        prod = Fraction(1)
        for t in sorted(tri):
            prod = prod * triangle_weight(t, x, gamma)
        total = total + prod
    return total


def comb_poly_permutations(x, gamma, cap=PERMUTATION_CAP):
    """K* as an average over all insertion orders of the interior points.

    Each inserted point contributes its vertical distance to the chord
    between its nearest already-placed neighbours (boundary included).
    Cost is m!, capped.
    """
    x = [to_fraction(v) for v in x]
    _check_full_abscissas(x)
    if len(gamma) != len(x):
        raise ValueError("abscissa / value count mismatch")
    gamma = [v if isinstance(v, MultiPoly) else to_fraction(v) for v in gamma]
    m = len(x) - 2
    if m > cap:
        raise ValueError(f"m={m} exceeds the permutation cap {cap}")
    import itertools

    total = Fraction(0)
    for sigma in itertools.permutations(range(1, m + 1)):
        placed = [0, m + 1]
        prod = Fraction(1)
        for idx in sigma:
            left = max(p for p in placed if p < idx)
            right = min(p for p in placed if p > idx)
            chord = gamma[left] + (x[idx] - x[left]) / (
                x[right] - x[left]
            ) * (gamma[right] - gamma[left])
            prod = prod * (gamma[idx] - chord)
            placed.append(idx)
            placed.sort()
        total = total + prod
    return total / math.factorial(m)


def comb_probability(comb: Comb) -> Fraction:
    """Probability that one uniform point per tooth plus the two endpoints
    are in convex position."""
    if comb.m <= 1:
        return Fraction(1)
    if any(l == 0 for l in comb.lengths):
        raise ValueError("zero tooth length with m >= 2")
    value = comb_poly(comb.x, comb.lengths)
    denom = Fraction(1)
    for l in comb.lengths:
        denom *= l
    return value / denom
