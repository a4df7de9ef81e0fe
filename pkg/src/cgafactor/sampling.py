"""Random test objects: multivectors, simple rotations and regular factor pairs."""

from __future__ import annotations

import numpy as np

from .algebra import DIM, EVEN_INDICES, Multivector, vector
from .matrix_rep import SELF_REVERSE_INDICES, is_invertible


def random_multivector(rng: np.random.Generator, scale: float = 1.0) -> Multivector:
    return Multivector(rng.normal(scale=scale, size=DIM))


def random_even(rng: np.random.Generator, scale: float = 1.0) -> Multivector:
    c = np.zeros(DIM)
    c[EVEN_INDICES] = rng.normal(scale=scale, size=len(EVEN_INDICES))
    return Multivector(c)


def random_self_reverse(rng: np.random.Generator, scale: float = 1.0) -> Multivector:
    c = np.zeros(DIM)
    c[SELF_REVERSE_INDICES] = rng.normal(scale=scale, size=len(SELF_REVERSE_INDICES))
    return Multivector(c)


def random_vector(rng: np.random.Generator) -> Multivector:
    return vector(*rng.normal(size=5))


def random_rotation(rng: np.random.Generator, max_tries: int = 1000) -> Multivector:
    """``s + B`` with ``B`` a 2-blade squaring to a negative number.

    A 2-blade squares to a real, so ``t - (s + B)`` is a motion polynomial
    and its quadrance ``(t - s)^2 - B^2`` has no real roots.
    """
    for _ in range(max_tries):
        blade = random_vector(rng) ^ random_vector(rng)
        square = (blade * blade).coeffs[0]
        if square < -0.05 * max(1.0, blade.scale() ** 2):
            return rng.normal() + blade * (rng.uniform(0.5, 2.0) / np.sqrt(-square))
    raise RuntimeError("could not draw a rotation")


def random_regular_pair(rng: np.random.Generator) -> tuple[Multivector, Multivector]:
    """Two rotations whose product is regularly factorizable (``h1 - ~h2`` invertible)."""
    while True:
        h1, h2 = random_rotation(rng), random_rotation(rng)
        check = is_invertible(h1 - ~h2)
        if check.invertible and max(abs(check.q), abs(check.m)) > 1e-2:
            return h1, h2
