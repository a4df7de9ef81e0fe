"""Faithful 4x4 complex matrix representation of Cl(4,1) and invertibility tests.

The five generator images are fixed; every other blade is the ordered
product of its generators.  Non-invertibility of ``a`` is decided on the
self-reverse element ``x = a ~a`` through the closed form
``det rep(x) = (q - 2im)^2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import DIM, GRADE, Multivector, left_matrix, product_arrays, quadrance


class InverseVerificationFailed(ArithmeticError):
    """The constructed inverse does not satisfy ``a * a^-1 == 1`` within tolerance."""


_I = 1j
GENERATORS = {
    "e1": np.array([[0, -_I, 0, 0], [_I, 0, 0, 0], [0, 0, 0, -_I], [0, 0, _I, 0]]),
    "e2": np.diag([-1, 1, -1, 1]).astype(complex),
    "e3": np.array([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=complex),
    "ep": np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]], dtype=complex),
    "em": np.array([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]], dtype=complex),
}
_GEN_ORDER = ("e1", "e2", "e3", "ep", "em")


def _blade_matrices() -> np.ndarray:
    mats = np.zeros((DIM, 4, 4), dtype=complex)
    for idx in range(DIM):
        m = np.eye(4, dtype=complex)
        for bit, name in enumerate(_GEN_ORDER):
            if idx >> bit & 1:
                m = m @ GENERATORS[name]
        mats[idx] = m
    return mats


BLADE_MATRICES = _blade_matrices()

# Coordinates of the self-reverse subspace (grades 0, 1, 4, 5).
SELF_REVERSE_INDICES = np.array([i for i in range(DIM) if GRADE[i] in (0, 1, 4, 5)])


def represent(a: Multivector) -> np.ndarray:
    return np.tensordot(a.coeffs, BLADE_MATRICES, axes=1)


def represent_batch(coeffs: np.ndarray) -> np.ndarray:
    """Representation of a stack of coefficient arrays of shape (n, 32)."""
    return np.tensordot(np.asarray(coeffs, dtype=float), BLADE_MATRICES, axes=1)


@dataclass(frozen=True)
class SelfReverseElement:
    """Element with only grade 0, 1, 4 and 5 parts, named by its 12 coefficients."""

    x0: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0
    xp: float = 0.0
    xm: float = 0.0
    x123p: float = 0.0
    x123m: float = 0.0
    x12pm: float = 0.0
    x13pm: float = 0.0
    x23pm: float = 0.0
    x123pm: float = 0.0

    @classmethod
    def from_multivector(cls, x: Multivector) -> SelfReverseElement:
        return cls(*(x[name] for name in _SR_NAMES))

    def to_multivector(self) -> Multivector:
        return Multivector.from_dict(dict(zip(_SR_NAMES, self.as_tuple())))

    def as_tuple(self) -> tuple[float, ...]:
        return (self.x0, self.x1, self.x2, self.x3, self.xp, self.xm, self.x123p,
                self.x123m, self.x12pm, self.x13pm, self.x23pm, self.x123pm)


_SR_NAMES = ("s", "e1", "e2", "e3", "ep", "em", "e123p", "e123m",
             "e12pm", "e13pm", "e23pm", "e123pm")


def qm_arrays(c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """The two real quadratic forms q, m of self-reverse coefficient arrays (..., 32)."""
    x0, x1, x2, x3 = c[..., 0], c[..., 1], c[..., 2], c[..., 4]
    xp, xm = c[..., 8], c[..., 16]
    x123p, x123m = c[..., 15], c[..., 23]
    x12pm, x13pm, x23pm, x123pm = c[..., 27], c[..., 29], c[..., 30], c[..., 31]
    q = (x0**2 - x1**2 - x2**2 - x3**2 - xp**2 + xm**2
         - x123p**2 + x123m**2 + x12pm**2 + x13pm**2 + x23pm**2 - x123pm**2)
    m = x0 * x123pm - x1 * x23pm + x2 * x13pm - x3 * x12pm + xp * x123m - xm * x123p
    return q, m


def qm(x: Multivector | SelfReverseElement) -> tuple[float, float]:
    if isinstance(x, SelfReverseElement):
        x = x.to_multivector()
    q, m = qm_arrays(x.coeffs)
    return float(q), float(m)


def det_fast(x: Multivector | SelfReverseElement) -> complex:
    """Determinant of the representation of a self-reverse element, ``(q - 2im)^2``."""
    q, m = qm(x)
    return complex(q, -2.0 * m) ** 2


def singular_threshold(x: Multivector) -> float:
    return 1e-7 * (1.0 + float(np.sum(x.coeffs**2)))


@dataclass(frozen=True)
class Invertibility:
    invertible: bool
    q: float
    m: float
    inverse: Multivector | None = None

    def __bool__(self) -> bool:
        return self.invertible


def _solve_unit(x: Multivector) -> Multivector:
    """Solve ``x * y = 1`` for ``y``; the inverse of a self-reverse element is self-reverse."""
    lmat = left_matrix(x.coeffs)
    rhs = np.zeros(DIM)
    rhs[0] = 1.0
    sub = lmat[:, SELF_REVERSE_INDICES]
    y_sub, *_ = np.linalg.lstsq(sub, rhs, rcond=None)
    y = np.zeros(DIM)
    y[SELF_REVERSE_INDICES] = y_sub
    if np.max(np.abs(lmat @ y - rhs)) > 1e-9:
        y = np.linalg.solve(lmat, rhs)
    return Multivector(y)


def is_invertible(a: Multivector, tol: float = 1e-9) -> Invertibility:
    """Decide invertibility of ``a`` from ``q`` and ``m`` of ``a ~a``.

    When invertible the inverse ``~a (a ~a)^-1`` is attached and checked.
    """
    x = quadrance(a)
    q, m = qm(x)
    if max(abs(q), abs(m)) <= singular_threshold(x):
        return Invertibility(False, q, m)
    inv = ~a * _solve_unit(x)
    if a.is_even():
        inv = inv.even()  # exact in theory; drops rounding-level odd parts
    residual = np.max(np.abs(product_arrays(a.coeffs, inv.coeffs) - np.eye(DIM)[0]))
    if residual > tol * max(1.0, a.scale() * inv.scale()) * 1e3:
        raise InverseVerificationFailed(f"inverse residual {residual:.3e} for {a!r}")
    return Invertibility(True, q, m, inv)


def inverse(a: Multivector) -> Multivector:
    result = is_invertible(a)
    if not result.invertible:
        raise ZeroDivisionError(f"{a!r} is not invertible")
    return result.inverse
