import json

import numpy as np
import pytest
from hypothesis import given, settings
from numpy.polynomial import Polynomial

from cgafactor.algebra import BIVECTOR_INDICES, Multivector
from cgafactor.catalog import entries, get
from cgafactor.factorization import (DEDUP_TOL, DimensionTooLarge, IrregularSignal,
                                     NumericalRankAmbiguity, VerdictKind, _rank_split,
                                     construct_irregular, factorize, irregular_solve,
                                     irregularity_residual, is_irregular_pair, is_trivial,
                                     matchings, polynomial_roots, quadratic_factor_choices,
                                     reconstruction_residual, regular_right_factor,
                                     remainder_irregular)
from cgafactor.motion_poly import MotionPolynomial, MotionType, classify_linear, quadrance_poly
from cgafactor.sampling import random_regular_pair
from conftest import seeds

B = Multivector.blade


def poly_from_roots(*roots):
    return Polynomial.fromroots(roots)


def params(h):
    return np.concatenate([[h.coeffs[0]], h.coeffs[BIVECTOR_INDICES]])


def test_roots_with_multiplicity():
    roots = polynomial_roots(Polynomial([1, 0, 2, 0, 1]))  # (t^2 + 1)^2
    assert sorted((round(z.imag), k) for z, k in roots) == [(-1, 2), (1, 2)]
    roots = polynomial_roots(poly_from_roots(1, 1, 1, 3))
    assert sorted((round(z.real, 9), k) for z, k in roots) == [(1.0, 3), (3.0, 1)]


def test_factor_choices_two_complex_pairs():
    same = quadratic_factor_choices(Polynomial([1, 0, 2, 0, 1]))
    assert len(same) == 1 and np.allclose(same[0].right.coef, [1, 0, 1])
    distinct = quadratic_factor_choices(Polynomial([1, 0, 1]) * Polynomial([4, 0, 1]))
    assert sorted(tuple(c.right.coef) for c in distinct) == [(1, 0, 1), (4, 0, 1)]


def test_factor_choices_mixed():
    choices = quadratic_factor_choices(Polynomial([1, 0, 1]) * Polynomial([-1, 0, 1]))
    rights = sorted(tuple(np.round(c.right.coef, 9)) for c in choices)
    assert rights == [(-1, 0, 1), (1, 0, 1)]


def test_factor_choices_four_real_roots():
    choices = quadratic_factor_choices(poly_from_roots(1, 2, 3, 4))
    assert len(choices) == 6  # ordered: which pair goes to the right factor
    assert len(matchings(choices)) == 3


@settings(max_examples=50)
@given(seeds)
def test_every_choice_divides_the_quartic(seed):
    rng = np.random.default_rng(seed)
    p = Polynomial.fromroots(rng.normal(size=4)) if seed % 2 else (
        Polynomial([rng.uniform(0.5, 2), rng.normal(), 1]) * Polynomial([rng.uniform(0.5, 2), rng.normal(), 1]))
    for c in quadratic_factor_choices(p):
        assert np.allclose((c.left * c.right).coef, p.coef / p.coef[-1], atol=1e-7)
        _, rem = divmod(p, c.right)
        assert np.max(np.abs(rem.coef)) <= 1e-7 * max(1.0, np.max(np.abs(p.coef)))


def test_non_quartic_rejected():
    with pytest.raises(ValueError):
        quadratic_factor_choices(Polynomial([1, 0, 1]))


def test_regular_branch_signals_villarceau():
    c = MotionPolynomial.from_factors([B("e12"), B("e3p")])
    out = regular_right_factor(c, quadrance_poly(MotionPolynomial.linear(B("e3p"))))
    assert isinstance(out, IrregularSignal)


@settings(max_examples=30)
@given(seeds)
def test_regular_branch_recovers_right_factor(seed):
    h1, h2 = random_regular_pair(np.random.default_rng(seed))
    c = MotionPolynomial.from_factors([h1, h2])
    h = regular_right_factor(c, quadrance_poly(MotionPolynomial.linear(h2)))
    assert h.allclose(h2, 1e-9)


def test_irregular_pair_examples():
    assert is_irregular_pair(B("e12"), B("e3p"))
    for e in entries():
        assert is_irregular_pair(*e.factors), e.name
    h1, h2 = random_regular_pair(np.random.default_rng(0))
    assert not is_irregular_pair(h1, h2)


def test_dual_check_agrees_on_catalog():
    for e in entries():
        assert remainder_irregular(e.C, e.factors[1]) == is_irregular_pair(*e.factors)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_report_invariants_on_random_regular(seed):
    h1, h2 = random_regular_pair(np.random.default_rng(seed))
    c = MotionPolynomial.from_factors([h1, h2])
    report = factorize(c, seed=seed)
    assert report.verdict.kind is VerdictKind.FINITE
    assert report.verdict.count == len(report.factorizations) <= 6
    for (a, b), flag, res in zip(report.factorizations, report.irregular_flags, report.residuals):
        assert res == reconstruction_residual(c, a, b) <= 1e-8 * max(1.0, c.scale())
        assert flag == is_irregular_pair(a, b)
        assert flag == remainder_irregular(c, b)
    rights = [b for _, b in report.factorizations]
    for i, x in enumerate(rights):
        for y in rights[i + 1:]:
            assert not x.allclose(y, DEDUP_TOL)
    assert any(b.allclose(h2, DEDUP_TOL * max(1.0, h2.scale())) for b in rights)


def test_factorize_normalizes_leading_coefficient():
    c = MotionPolynomial.from_factors([B("e12"), B("e3p")])
    lead = 2.0 + B("e12")
    report = factorize(lead * c)
    assert report.verdict.kind is VerdictKind.INFINITE


def test_factorize_rejects_bad_input():
    with pytest.raises(ValueError):
        factorize(MotionPolynomial.linear(B("e12")))


def test_report_json_is_deterministic():
    c = get("villarceau").C
    a = json.dumps(factorize(c, seed=3).to_json())
    b = json.dumps(factorize(c, seed=3).to_json())
    assert a == b
    data = json.loads(a)
    assert data["verdict"] == "infinite" and len(data["families"][0]["samples"]) >= 5


def test_rank_split():
    assert _rank_split(np.array([2.0, 1.0, 1e-12])) == 2
    assert _rank_split(np.array([2.0, 1.0, 0.5])) == 3
    with pytest.raises(NumericalRankAmbiguity):
        _rank_split(np.array([1.0, 1e-5]))


def test_dimension_guard():
    c = MotionPolynomial.from_factors([B("e12"), B("e3p")])
    m = Polynomial([1.0, 0.0, 1.0])
    with pytest.raises(DimensionTooLarge):
        irregular_solve(c, m, Multivector(), Multivector())


def test_triviality_examples():
    # (t - h)(t + 1 - h) reparametrizes t - h
    h = B("e12")
    c = MotionPolynomial.linear(h) * MotionPolynomial([1.0 - h, 1.0])
    assert is_trivial(c)
    assert is_trivial(MotionPolynomial.from_real(Polynomial([2.0, 0.0, 1.0])))
    assert not is_trivial(get("villarceau").C)
    assert not is_trivial(get("circular-translation").C)
    h1, h2 = random_regular_pair(np.random.default_rng(1))
    assert not is_trivial(MotionPolynomial.from_factors([h1, h2]))


def test_construction_recovers_catalog_h1_from_exact_seed():
    for e in entries()[:6]:
        h1, h2 = e.factors
        out = construct_irregular(h2, classify_linear(h1), start=h1)
        assert np.linalg.norm(irregularity_residual(params(out), h2)) < 1e-9
        assert out.allclose(h1, 1e-9), e.name


def test_construction_from_perturbed_seed_lands_nearby():
    e = get("scaling-rotation")
    h1, h2 = e.factors
    rng = np.random.default_rng(0)
    delta = 1e-5
    start = h1 + Multivector(np.where(np.abs(h1.coeffs) > 0, rng.normal(scale=delta, size=32), 0))
    out = construct_irregular(h2, None, start=start)
    assert np.linalg.norm(irregularity_residual(params(out), h2)) < 1e-9
    # the solution set is not locally a point, so Gauss-Newton projects onto it
    assert np.max(np.abs(out.coeffs - h1.coeffs)) < 10 * delta
    assert is_irregular_pair(out, h2)


def test_random_construction_is_irregular_and_factorizable():
    h2 = B("e12")
    h1 = construct_irregular(h2, MotionType.ROTATION, seed=1, restarts=640)
    assert is_irregular_pair(h1, h2)
    assert classify_linear(h1) is MotionType.ROTATION
    c = MotionPolynomial.from_factors([h1, h2])
    assert not is_trivial(c)
    report = factorize(c)
    found = report.factorizations + report.family_factorizations
    assert any(b.allclose(h2, 1e-6) for _, b in found)
    assert any(flag for flag in report.irregular_flags) or report.families
