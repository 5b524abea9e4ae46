import random
from fractions import Fraction

import pytest

import sylvester.certificates as certs
from sylvester.certificates import (
    HELPERS,
    compa_violation_witness,
    default_x_triples,
    linear_reconstruct,
    mirror_x,
    positivity_check,
    symbolic_difference,
    verify_n4,
    verify_n5_cone,
    verify_n5_quadratic,
)
from sylvester.poly import MultiPoly, grid_identity_check
from sylvester.segments import profile_to_offsets

POINTS = default_x_triples(4)


def v(name):
    return MultiPoly.variable(name)


def test_symbolic_difference_reference():
    d = symbolic_difference(2, (Fraction(1, 3), Fraction(2, 3)), "majoration")
    b1, b2 = v("beta1"), v("beta2")
    assert d == 2 * (b1 * b1 + b2 * b2)


def test_symbolic_difference_structure():
    d = symbolic_difference(3, POINTS[0], "majoration")
    assert d.degree("l0") == 1 and d.degree("l1") == 1
    assert not d.used_variables() & {"a", "b"}
    assert d.total_degree() <= 5


def test_vanishing_at_extremes():
    x = POINTS[0]
    d_min = symbolic_difference(3, x, "minoration")
    at_shaken = d_min.substitute(
        {f"beta{j}": v(f"lam{j}") for j in (1, 2, 3)}
    )
    assert at_shaken.is_zero()
    d_maj = symbolic_difference(3, x, "majoration")
    assert d_maj.substitute({f"beta{j}": 0 for j in (1, 2, 3)}).is_zero()


def test_nonnegativity_spot_checks():
    rnd = random.Random(1)
    for x in POINTS:
        xbar = [Fraction(0), *x, Fraction(1)]
        diffs = [
            symbolic_difference(3, x, kind)
            for kind in ("minoration", "majoration")
        ]
        for _ in range(25):
            p = [Fraction(rnd.randrange(0, 9), 8) for _ in range(3)]
            q = [Fraction(rnd.randrange(-8, 9), 8) * pj for pj in p]
            lam = profile_to_offsets(p, xbar)[1:-1]
            beta = profile_to_offsets(q, xbar)[1:-1]
            point = {"l0": Fraction(1, 2), "l1": Fraction(1, 3), "a": 0, "b": 0}
            for j in range(3):
                point[f"lam{j + 1}"] = lam[j]
                point[f"beta{j + 1}"] = beta[j]
            for diff in diffs:
                assert diff.evaluate(point) >= 0


def test_invalid_x_rejected():
    with pytest.raises(ValueError):
        symbolic_difference(2, (Fraction(2, 3), Fraction(1, 3)), "majoration")
    with pytest.raises(ValueError):
        symbolic_difference(3, (Fraction(1, 3), Fraction(2, 3)), "minoration")
    with pytest.raises(ValueError):
        symbolic_difference(2, (Fraction(1, 3), Fraction(2, 3)), "other")


def test_linear_reconstruct():
    x = v("x")
    assert linear_reconstruct("x", 0, 3, 1, 7) == 3 + 4 * x
    assert linear_reconstruct("x", 0, 5, 1, 5) == MultiPoly.constant(5)
    with pytest.raises(ValueError):
        linear_reconstruct("x", 1, 2, 1, 3)


def test_helper_symbolic_matches_endpoints():
    p0 = HELPERS["P0"].symbolic()
    assert p0.degree("x1") == 1
    x2 = Fraction(1, 2)
    x3 = Fraction(3, 4)
    low = p0.evaluate({"x1": 0, "x2": x2, "x3": x3})
    assert low == x2**2 + x2 * x3 - 2 * x2**2 * x3


def test_verify_n4_passes():
    report = verify_n4(grid_size=4)
    assert report.summary
    assert all(c.passed for c in report.identity_checks)


def test_verify_n4_mutated_rhs_fails():
    # coefficient 4 -> 5 breaks the identity on every grid point
    x1, x2 = Fraction(1, 3), Fraction(2, 3)
    d = symbolic_difference(2, (x1, x2), "majoration")
    b1, b2 = v("beta1"), v("beta2")
    wrong = 5 * b2 * b2 * Fraction(x1, 1) / x2 + 4 * b1 * b1 * Fraction(
        1 - x2, 1
    ) / (1 - x1)
    bounds = {"beta1": 2, "beta2": 2}
    assert not grid_identity_check(d, wrong, bounds)


def test_verify_n5_cone_passes():
    report = verify_n5_cone(points=POINTS)
    assert report.summary
    assert not any(c.method == "sampled-only" for c in report.positivity_checks)


def test_verify_n5_cone_perturbed_coefficient(monkeypatch):
    original = certs.cone_coefficients_d2

    def perturbed(x):
        table = original(x)
        table[(1, 1, 1)] = table[(1, 1, 1)] + 1
        return table

    monkeypatch.setattr(certs, "cone_coefficients_d2", perturbed)
    report = certs.verify_n5_cone(points=POINTS[:2])
    failed = [c for c in report.identity_checks if not c.passed]
    assert failed
    assert "(1, 1, 1)" in failed[0].detail


def test_verify_n5_quadratic_passes():
    report = verify_n5_quadratic(points=POINTS)
    assert report.summary
    names = [c.name for c in report.identity_checks]
    assert any("f2 mirror" in n for n in names)
    assert any("minor factorization: M2[3]" in n for n in names)


def test_positivity_check_methods():
    x1, x2, x3 = v("x1"), v("x2"), v("x3")
    one = MultiPoly.constant(1)
    assert positivity_check(x2 * (one - x3)).certified
    verdict = positivity_check(x2 * x2 + x2 * x3 - 2 * x2 * x2 * x3)
    assert verdict.certified and verdict.method == "monomial-certificate"
    refuted = positivity_check(x1 - x2)
    assert refuted.status == "refuted"
    w = dict(zip(("x1", "x2", "x3"), refuted.witness))
    assert (x1 - x2).evaluate(w) <= 0
    assert positivity_check(MultiPoly.constant(0)).status == "refuted"
    with pytest.raises(ValueError):
        positivity_check(v("y"))
    with pytest.raises(ValueError):
        positivity_check(x1, domain="cube")


def test_negative_second_minor_detected():
    # sanity for the minor logic: an indefinite matrix has a negative
    # second leading principal minor
    m = ((Fraction(1), Fraction(2)), (Fraction(2), Fraction(1)))
    assert certs.leading_minor(m, 2) < 0


def test_mirror_x():
    x = (Fraction(1, 5), Fraction(1, 2), Fraction(4, 5))
    assert mirror_x(x) == (Fraction(1, 5), Fraction(1, 2), Fraction(4, 5))
    y = (Fraction(1, 7), Fraction(2, 7), Fraction(3, 7))
    assert mirror_x(y) == (Fraction(4, 7), Fraction(5, 7), Fraction(6, 7))


def test_compa_violation_witness_exists():
    found = compa_violation_witness(tries=3000)
    assert found is not None
    lam, beta, value = found
    assert value < 0
    assert all(abs(b) <= l for b, l in zip(beta, lam))
