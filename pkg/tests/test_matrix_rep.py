import numpy as np
import pytest
from hypothesis import given, settings

from cgafactor.algebra import ONE, Multivector
from cgafactor.matrix_rep import (BLADE_MATRICES, GENERATORS, SelfReverseElement, det_fast,
                                  inverse, is_invertible, qm, represent, represent_batch)
from cgafactor.sampling import random_even, random_multivector, random_self_reverse
from conftest import multivectors, seeds

B = Multivector.blade
i = 1j

# reference generator images, entered by hand
REFERENCE = {
    "e1": [[0, -i, 0, 0], [i, 0, 0, 0], [0, 0, 0, -i], [0, 0, i, 0]],
    "e2": [[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]],
    "e3": [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    "ep": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]],
    "em": [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]],
}


def test_generators_bit_exact():
    for name, mat in REFERENCE.items():
        assert np.array_equal(GENERATORS[name], np.array(mat, dtype=complex))
        assert np.array_equal(represent(B(name)), np.array(mat, dtype=complex))


def test_generators_square_to_metric():
    for name, sq in [("e1", 1), ("e2", 1), ("e3", 1), ("ep", 1), ("em", -1)]:
        g = GENERATORS[name]
        assert np.array_equal(g @ g, sq * np.eye(4))


def test_represent_examples():
    assert np.array_equal(represent(B("e2")), np.diag([-1, 1, -1, 1]).astype(complex))
    assert np.array_equal(represent(ONE), np.eye(4))
    assert np.allclose(represent(B("e12")), GENERATORS["e1"] @ GENERATORS["e2"])


def test_representation_is_faithful():
    # the 32 blade images are linearly independent over the reals
    flat = BLADE_MATRICES.reshape(32, 16)
    real = np.concatenate([flat.real, flat.imag], axis=1)
    assert np.linalg.matrix_rank(real) == 32


@settings(max_examples=200)
@given(multivectors, multivectors)
def test_homomorphism(a, b):
    lhs = represent(a * b)
    rhs = represent(a) @ represent(b)
    scale = max(1.0, np.max(np.abs(a.coeffs)) * np.max(np.abs(b.coeffs)))
    assert np.max(np.abs(lhs - rhs)) <= 1e-10 * scale * 32


def test_homomorphism_batch():
    rng = np.random.default_rng(1)
    a, b = rng.normal(size=(2, 1000, 32))
    from cgafactor.algebra import product_arrays
    lhs = represent_batch(product_arrays(a, b))
    rhs = represent_batch(a) @ represent_batch(b)
    assert np.max(np.abs(lhs - rhs)) <= 1e-10 * 100


def test_det_examples():
    assert det_fast(SelfReverseElement(x0=1.0)) == 1
    x = SelfReverseElement(x123pm=1.0)
    assert qm(x) == (-1.0, 0.0)
    assert det_fast(x) == pytest.approx(1.0)
    assert np.linalg.det(represent(x.to_multivector())) == pytest.approx(1.0)
    x = SelfReverseElement(xp=1.0, x123m=1.0)
    assert qm(x) == (0.0, 1.0)
    assert det_fast(x) == pytest.approx(-4.0)
    assert np.linalg.det(represent(x.to_multivector())) == pytest.approx(-4.0)


@settings(max_examples=300)
@given(seeds)
def test_det_formula_on_self_reverse(seed):
    x = random_self_reverse(np.random.default_rng(seed))
    exact = np.linalg.det(represent(x))
    assert abs(det_fast(x) - exact) <= 1e-8 * max(1.0, abs(exact))


@settings(max_examples=300)
@given(seeds)
def test_det_formula_on_quadrances(seed):
    a = random_multivector(np.random.default_rng(seed))
    x = a * ~a
    exact = np.linalg.det(represent(x))
    assert abs(det_fast(x) - exact) <= 1e-8 * max(1.0, abs(exact))


def test_self_reverse_roundtrip():
    x = SelfReverseElement(*np.arange(1.0, 13.0))
    assert SelfReverseElement.from_multivector(x.to_multivector()) == x
    assert (~x.to_multivector()).allclose(x.to_multivector())


def test_invertibility_examples():
    res = is_invertible(B("e12"))
    assert res and res.inverse.allclose(-B("e12"))
    assert not is_invertible(B("e3p") + B("e3m"))
    rr_h1 = -B("e12") + B("e13") + B("e1m") + B("e23") + B("e2m")
    assert not is_invertible(rr_h1 - ~B("e12"))
    with pytest.raises(ZeroDivisionError):
        inverse(B("e3p") + B("e3m"))


@settings(max_examples=200)
@given(seeds)
def test_inverse_is_two_sided(seed):
    a = random_multivector(np.random.default_rng(seed))
    inv = inverse(a)
    assert (a * inv).allclose(ONE, 1e-8)
    assert (inv * a).allclose(ONE, 1e-8)


@given(seeds)
def test_even_inverse_stays_even(seed):
    a = random_even(np.random.default_rng(seed))
    assert inverse(a).is_even()


def test_non_invertible_means_rank_deficient():
    rng = np.random.default_rng(3)
    # null vectors and blades built from them are singular
    samples = [B("ep") + B("em"), B("e1") + B("em"), (B("e1") + B("em")) * B("e23"),
               (B("e3p") + B("e3m")) * random_even(rng)]
    for a in samples:
        assert not is_invertible(a)
        sv = np.linalg.svd(represent(a), compute_uv=False)
        assert sv[-1] <= 1e-9 * sv[0]
