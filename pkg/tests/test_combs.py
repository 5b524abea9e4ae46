import random
from fractions import Fraction

import pytest

from sylvester import MultiPoly, grid_identity_check
from sylvester.combs import (
    Comb,
    comb_poly,
    comb_poly_permutations,
    comb_poly_triangulations,
    comb_probability,
    enumerate_triangulations,
)


def full_grid(x):
    return [Fraction(0)] + list(x) + [Fraction(1)]


def full_gamma(lengths):
    return [Fraction(0)] + list(lengths) + [Fraction(0)]


def test_empty_and_single_tooth():
    assert comb_poly([], []) == 1
    # a single tooth contributes its full length: three points are almost
    # surely in convex position
    c = Fraction(3, 7)
    assert comb_poly([Fraction(1, 2)], [c]) == c
    assert comb_probability(Comb((Fraction(1, 2),), (c,))) == 1


def test_reference_comb_m2():
    x = (Fraction(1, 3), Fraction(2, 3))
    lengths = (Fraction(1), Fraction(1))
    assert comb_poly(x, lengths) == Fraction(1, 2)
    assert comb_probability(Comb(x, lengths)) == Fraction(1, 2)
    assert comb_poly_triangulations(full_grid(x), full_gamma(lengths)) == Fraction(1, 2)
    assert comb_poly_permutations(full_grid(x), full_gamma(lengths)) == Fraction(1, 2)


def test_triangulation_counts_are_catalan():
    catalan = [1, 1, 2, 5, 14, 42]
    for m, expected in enumerate(catalan):
        assert len(enumerate_triangulations(m)) == expected


def test_triangulations_partition_correctly():
    for tri in enumerate_triangulations(3):
        # each triangulation of m+2=5 boundary points has m=3 triangles
        assert len(tri) == 3


def test_three_routes_agree_randomized():
    rnd = random.Random(7)
    for _ in range(40):
        m = rnd.randrange(0, 5)
        xs = sorted(rnd.sample(range(1, 24), m))
        x = [Fraction(v, 24) for v in xs]
        lengths = [Fraction(rnd.randrange(0, 9), 8) for _ in range(m)]
        k_rec = comb_poly(x, lengths)
        k_tri = comb_poly_triangulations(full_grid(x), full_gamma(lengths))
        k_perm = comb_poly_permutations(full_grid(x), full_gamma(lengths))
        assert k_rec == k_tri == k_perm


def test_three_routes_agree_symbolic():
    for m, x in [
        (1, (Fraction(1, 2),)),
        (2, (Fraction(1, 4), Fraction(2, 3))),
        (3, (Fraction(1, 5), Fraction(2, 5), Fraction(4, 5))),
    ]:
        names = [f"l{j}" for j in range(1, m + 1)]
        lengths = [MultiPoly.variable(n) for n in names]
        k_rec = comb_poly(x, lengths)
        k_tri = comb_poly_triangulations(full_grid(x), full_gamma(lengths))
        k_perm = comb_poly_permutations(full_grid(x), full_gamma(lengths))
        bounds = {n: m for n in names}
        assert grid_identity_check(k_rec, k_tri, bounds)
        assert grid_identity_check(k_rec, k_perm, bounds)


def test_permutation_cap():
    x = full_grid([Fraction(k, 9) for k in range(1, 9)])
    gamma = full_gamma([Fraction(1)] * 8)
    with pytest.raises(ValueError):
        comb_poly_permutations(x, gamma)


def test_validation():
    with pytest.raises(ValueError):
        Comb((Fraction(2, 3), Fraction(1, 3)), (1, 1))
    with pytest.raises(ValueError):
        Comb((Fraction(0),), (1,))
    with pytest.raises(ValueError):
        Comb((Fraction(1, 2),), (-1,))
    with pytest.raises(ValueError):
        comb_probability(Comb((Fraction(1, 3), Fraction(2, 3)), (0, 1)))


def test_json_round_trip():
    comb = Comb((Fraction(1, 3), Fraction(2, 3)), (Fraction(1), Fraction(1, 2)))
    doc = comb.to_json()
    assert doc == {"x": ["1/3", "2/3"], "l": ["1/1", "1/2"]}
    assert Comb.from_json(doc) == comb
