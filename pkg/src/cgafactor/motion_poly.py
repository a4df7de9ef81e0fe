"""Polynomials over the even subalgebra with a central real indeterminate ``t``.

Real polynomials (quadrance polynomials, quadratic factors) are plain
``numpy.polynomial.Polynomial`` objects with ascending coefficients.
"""

from __future__ import annotations

import enum
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from .algebra import DEFAULT_TOL, ONE, ZERO, Multivector, parse
from .matrix_rep import inverse, is_invertible


class NotAMotionPolynomial(ValueError):
    pass


class ZeroQuadrance(NotAMotionPolynomial):
    pass


class MotionType(enum.Enum):
    ROTATION = "rotation"
    TRANSVERSION = "transversion"
    SCALING = "scaling"


class MotionPolynomial:
    """``sum_i coeffs[i] t^i`` with Multivector coefficients and ``t`` central."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Multivector | float]):
        cs = [c if isinstance(c, Multivector) else Multivector.scalar(float(c)) for c in coeffs]
        while len(cs) > 1 and not np.any(cs[-1].coeffs):
            cs.pop()
        self.coeffs: tuple[Multivector, ...] = tuple(cs) if cs else (ZERO,)

    @classmethod
    def linear(cls, h: Multivector) -> MotionPolynomial:
        """The simple motion polynomial ``t - h``."""
        return cls([-h, ONE])

    @classmethod
    def from_factors(cls, hs: Sequence[Multivector]) -> MotionPolynomial:
        result = cls([ONE])
        for h in hs:
            result = result * cls.linear(h)
        return result

    @classmethod
    def from_real(cls, poly: Polynomial | Sequence[float]) -> MotionPolynomial:
        coef = poly.coef if isinstance(poly, Polynomial) else poly
        return cls([Multivector.scalar(float(c)) for c in coef])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Multivector:
        return self.coeffs[-1]

    def scale(self) -> float:
        return max(c.scale() for c in self.coeffs)

    def __add__(self, other: MotionPolynomial) -> MotionPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [ZERO] * (n - len(self.coeffs))
        b = list(other.coeffs) + [ZERO] * (n - len(other.coeffs))
        return MotionPolynomial([x + y for x, y in zip(a, b)])

    def __neg__(self) -> MotionPolynomial:
        return MotionPolynomial([-c for c in self.coeffs])

    def __sub__(self, other: MotionPolynomial) -> MotionPolynomial:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MotionPolynomial):
            return multiply(self, other)
        if isinstance(other, Polynomial):
            return multiply(self, MotionPolynomial.from_real(other))
        if np.isscalar(other):
            return MotionPolynomial([c * other for c in self.coeffs])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(MotionPolynomial.from_real(other), self)
        if np.isscalar(other):
            return MotionPolynomial([other * c for c in self.coeffs])
        if isinstance(other, Multivector):
            return MotionPolynomial([other * c for c in self.coeffs])
        return NotImplemented

    def __invert__(self) -> MotionPolynomial:
        return MotionPolynomial([~c for c in self.coeffs])

    def __call__(self, t: float) -> Multivector:
        """Evaluate at a real parameter (``t`` is central, so no ordering issue)."""
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def allclose(self, other: MotionPolynomial, tol: float = DEFAULT_TOL) -> bool:
        return residual(self, other) <= tol * max(1.0, self.scale(), other.scale())

    def to_json(self, tol: float = 0.0) -> dict:
        return {"coeffs": [c.to_dict(tol) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> MotionPolynomial:
        if not isinstance(data, dict) or "coeffs" not in data:
            raise ValueError('polynomial JSON must be an object with a "coeffs" list')
        return cls([parse(c) for c in data["coeffs"]])

    def __repr__(self) -> str:
        return "MotionPolynomial(" + ", ".join(repr(c) for c in self.coeffs) + ")"


def multiply(a: MotionPolynomial, b: MotionPolynomial) -> MotionPolynomial:
    out = [ZERO] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            out[i + j] = out[i + j] + x * y
    return MotionPolynomial(out)


def residual(a: MotionPolynomial, b: MotionPolynomial) -> float:
    diff = a - b
    return max(float(np.max(np.abs(c.coeffs))) for c in diff.coeffs)


def right_evaluate(c: MotionPolynomial, h: Multivector) -> Multivector:
    """``sum_i c_i h^i`` (Horner with ``h`` multiplied on the right)."""
    acc = ZERO
    for coeff in reversed(c.coeffs):
        acc = acc * h + coeff
    return acc


def _real_part(c: MotionPolynomial, tol: float) -> Polynomial | None:
    scale = max(1.0, c.scale())
    if any(np.max(np.abs(k.coeffs[1:])) > tol * scale for k in c.coeffs):
        return None
    return Polynomial([k.coeffs[0] for k in c.coeffs])


def quadrance_poly(c: MotionPolynomial, tol: float = DEFAULT_TOL) -> Polynomial:
    """The real polynomial ``C ~C``; raises unless it is real, nonzero and equals ``~C C``."""
    right = _real_part(c * ~c, tol)
    if right is None:
        raise NotAMotionPolynomial("C ~C has non-scalar coefficients")
    left = _real_part(~c * c, tol)
    if left is None:
        raise NotAMotionPolynomial("~C C has non-scalar coefficients")
    n = max(len(left.coef), len(right.coef))
    diff = np.pad(left.coef, (0, n - len(left.coef))) - np.pad(right.coef, (0, n - len(right.coef)))
    if np.max(np.abs(diff)) > tol * max(1.0, c.scale() ** 2):
        raise NotAMotionPolynomial("left and right quadrance differ")
    if np.max(np.abs(right.coef)) <= tol * max(1.0, c.scale() ** 2):
        raise ZeroQuadrance("C ~C vanishes")
    return right


def is_motion_polynomial(c: MotionPolynomial, tol: float = DEFAULT_TOL) -> bool:
    try:
        quadrance_poly(c, tol)
    except NotAMotionPolynomial:
        return False
    return True


def study_conditions(h: Multivector, tol: float = DEFAULT_TOL) -> tuple[bool, bool]:
    """Whether ``h + ~h`` and ``h ~h`` are real.

    ``t - h`` is a motion polynomial exactly when both hold.
    """
    return (h + ~h).is_scalar(tol), (h * ~h).is_scalar(tol)


def classify_linear(h: Multivector, tol: float = 1e-8) -> MotionType:
    """Type of the simple motion ``t - h`` from the real roots of its quadrance."""
    poly = quadrance_poly(MotionPolynomial.linear(h))
    c0, c1, c2 = (list(poly.coef) + [0.0, 0.0])[:3]
    disc = c1 * c1 - 4.0 * c2 * c0
    scale = max(1.0, abs(c0), abs(c1), abs(c2))
    if abs(disc) <= tol * scale**2:
        return MotionType.TRANSVERSION
    return MotionType.ROTATION if disc < 0 else MotionType.SCALING


def divide_by_real(c: MotionPolynomial, m: Polynomial) -> tuple[MotionPolynomial, MotionPolynomial]:
    """``C = Q M + R`` with ``deg R < deg M`` for a monic real polynomial ``M``."""
    mc = np.asarray(m.coef, dtype=float)
    if abs(mc[-1] - 1.0) > 1e-12:
        raise ValueError("divisor must be monic")
    k = len(mc) - 1
    rem = list(c.coeffs)
    if len(rem) <= k:
        return MotionPolynomial([ZERO]), MotionPolynomial(rem)
    quot = [ZERO] * (len(rem) - k)
    for i in range(len(rem) - 1, k - 1, -1):
        lead = rem[i]
        quot[i - k] = lead
        for j in range(k + 1):
            rem[i - k + j] = rem[i - k + j] - lead * mc[j]
    return MotionPolynomial(quot), MotionPolynomial(rem[:k])


def divide_by_real_quadratic(c: MotionPolynomial, m: Polynomial) -> tuple[MotionPolynomial, MotionPolynomial]:
    if len(m.coef) != 3:
        raise ValueError("divisor must be quadratic")
    return divide_by_real(c, m)


def divide_right_linear(c: MotionPolynomial, h: Multivector) -> tuple[MotionPolynomial, Multivector]:
    """``C = Q (t - h) + r``; the constant remainder ``r`` equals ``C(h)`` (right evaluation)."""
    rem = list(c.coeffs)
    n = len(rem) - 1
    if n < 1:
        return MotionPolynomial([ZERO]), rem[0]
    quot = [ZERO] * n
    for i in range(n, 0, -1):
        lead = rem[i]
        quot[i - 1] = lead
        rem[i - 1] = rem[i - 1] + lead * h
    return MotionPolynomial(quot), rem[0]


def monic(c: MotionPolynomial) -> MotionPolynomial:
    """Left-multiply by the inverse of the leading coefficient."""
    if not is_invertible(c.leading):
        raise NotAMotionPolynomial("leading coefficient is not invertible")
    return inverse(c.leading) * c
