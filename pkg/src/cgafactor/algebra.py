"""Dense arithmetic in the Clifford algebra Cl(4,1) with basis e1, e2, e3, e+, e-.

Blades are indexed by bitmask: e1 -> bit 0, e2 -> bit 1, e3 -> bit 2,
e+ -> bit 3, e- -> bit 4.  A multivector is a length-32 float array indexed
by that bitmask.  The geometric product goes through a precomputed 32x32
sign/result table.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

DIM = 32
METRIC = (1.0, 1.0, 1.0, 1.0, -1.0)
VECTOR_NAMES = ("1", "2", "3", "p", "m")
DEFAULT_TOL = 1e-9


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _reorder_sign(a: int, b: int) -> int:
    """Sign picked up by moving the factors of blade ``b`` past those of ``a``."""
    swaps = 0
    a >>= 1
    while a:
        swaps += _popcount(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


def _blade_product(a: int, b: int) -> tuple[int, float]:
    sign = float(_reorder_sign(a, b))
    common = a & b
    for i in range(5):
        if common >> i & 1:
            sign *= METRIC[i]
    return a ^ b, sign


GRADE = np.array([_popcount(i) for i in range(DIM)])
PRODUCT_INDEX = np.zeros((DIM, DIM), dtype=np.intp)
PRODUCT_SIGN = np.zeros((DIM, DIM))
for _i in range(DIM):
    for _j in range(DIM):
        PRODUCT_INDEX[_i, _j], PRODUCT_SIGN[_i, _j] = _blade_product(_i, _j)

# Scatter matrix: (outer product flattened) @ _SCATTER -> product coefficients.
_SCATTER = np.zeros((DIM * DIM, DIM))
_SCATTER[np.arange(DIM * DIM), PRODUCT_INDEX.ravel()] = PRODUCT_SIGN.ravel()

REVERSE_SIGN = np.array([(-1.0) ** (k * (k - 1) // 2) for k in GRADE])
EVEN_INDICES = np.array([i for i in range(DIM) if GRADE[i] % 2 == 0])
ODD_INDICES = np.array([i for i in range(DIM) if GRADE[i] % 2 == 1])
BIVECTOR_INDICES = np.array([i for i in range(DIM) if GRADE[i] == 2])
QUADVECTOR_INDICES = np.array([i for i in range(DIM) if GRADE[i] == 4])


def blade_name(index: int) -> str:
    if index == 0:
        return "s"
    return "e" + "".join(VECTOR_NAMES[i] for i in range(5) if index >> i & 1)


BLADE_NAMES = tuple(blade_name(i) for i in range(DIM))
_NAME_TO_INDEX = {name: i for i, name in enumerate(BLADE_NAMES)}


def blade_index(name: str) -> int:
    """Bitmask of a blade name such as ``"e12"``, ``"e3p"`` or ``"s"``.

    Indices must appear in the canonical order 1,2,3,p,m; other orderings
    are rejected rather than silently re-signed.
    """
    if name in _NAME_TO_INDEX:
        return _NAME_TO_INDEX[name]
    if name in ("", "1", "scalar"):
        return 0
    raise KeyError(f"unknown blade name {name!r}")


def product_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Geometric product of coefficient arrays; broadcasts over leading axes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    outer = a[..., :, None] * b[..., None, :]
    return outer.reshape(outer.shape[:-2] + (DIM * DIM,)) @ _SCATTER


def left_matrix(a: np.ndarray) -> np.ndarray:
    """Matrix L with L @ b == product_arrays(a, b)."""
    mat = np.zeros((DIM, DIM))
    np.add.at(mat, (PRODUCT_INDEX, np.broadcast_to(np.arange(DIM), (DIM, DIM))),
              PRODUCT_SIGN * np.asarray(a, dtype=float)[:, None])
    return mat


def right_matrix(b: np.ndarray) -> np.ndarray:
    """Matrix R with R @ a == product_arrays(a, b)."""
    mat = np.zeros((DIM, DIM))
    np.add.at(mat, (PRODUCT_INDEX, np.broadcast_to(np.arange(DIM)[:, None], (DIM, DIM))),
              PRODUCT_SIGN * np.asarray(b, dtype=float)[None, :])
    return mat


class Multivector:
    """An element of Cl(4,1) stored as 32 dense coefficients.

    Instances are treated as immutable values.  ``*`` is the geometric
    product, ``^`` the outer product, ``~a`` the reversion.
    """

    __slots__ = ("coeffs",)
    __array_priority__ = 100

    def __init__(self, coeffs: Iterable[float] | np.ndarray | None = None):
        if coeffs is None:
            arr = np.zeros(DIM)
        else:
            arr = np.array(coeffs, dtype=float)
            if arr.shape != (DIM,):
                raise ValueError(f"expected {DIM} coefficients, got shape {arr.shape}")
        arr.setflags(write=False)
        self.coeffs = arr

    # construction ---------------------------------------------------------
    @classmethod
    def scalar(cls, value: float) -> Multivector:
        arr = np.zeros(DIM)
        arr[0] = value
        return cls(arr)

    @classmethod
    def blade(cls, name: str, value: float = 1.0) -> Multivector:
        arr = np.zeros(DIM)
        arr[blade_index(name)] = value
        return cls(arr)

    @classmethod
    def from_dict(cls, data: Mapping[str, float]) -> Multivector:
        arr = np.zeros(DIM)
        for name, value in data.items():
            arr[blade_index(name)] += float(value)
        return cls(arr)

    @classmethod
    def from_even(cls, coords: Iterable[float]) -> Multivector:
        """Embed 16 even-grade coordinates (ordered as ``EVEN_INDICES``)."""
        arr = np.zeros(DIM)
        arr[EVEN_INDICES] = np.asarray(list(coords), dtype=float)
        return cls(arr)

    def to_dict(self, tol: float = 0.0) -> dict[str, float]:
        return {BLADE_NAMES[i]: float(c) for i, c in enumerate(self.coeffs) if abs(c) > tol}

    def even_coords(self) -> np.ndarray:
        return self.coeffs[EVEN_INDICES].copy()

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Multivector):
            return Multivector(self.coeffs + other.coeffs)
        if np.isscalar(other):
            return self + Multivector.scalar(other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> Multivector:
        return Multivector(-self.coeffs)

    def __sub__(self, other):
        if isinstance(other, Multivector):
            return Multivector(self.coeffs - other.coeffs)
        if np.isscalar(other):
            return self - Multivector.scalar(other)
        return NotImplemented

    def __rsub__(self, other):
        if np.isscalar(other):
            return Multivector.scalar(other) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if np.isscalar(other):
            return Multivector(self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return Multivector(self.coeffs * other)
        return NotImplemented

    def __truediv__(self, other):
        if np.isscalar(other):
            return Multivector(self.coeffs / other)
        return NotImplemented

    def __xor__(self, other: Multivector) -> Multivector:
        return wedge(self, other)

    def __invert__(self) -> Multivector:
        return reversion(self)

    def __getitem__(self, name: str) -> float:
        return float(self.coeffs[blade_index(name)])

    # queries --------------------------------------------------------------
    def grade(self, k: int) -> Multivector:
        return Multivector(np.where(GRADE == k, self.coeffs, 0.0))

    def even(self) -> Multivector:
        return Multivector(np.where(GRADE % 2 == 0, self.coeffs, 0.0))

    def scale(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def is_even(self) -> bool:
        return not np.any(self.coeffs[ODD_INDICES])

    def is_scalar(self, tol: float = DEFAULT_TOL) -> bool:
        return bool(np.max(np.abs(self.coeffs[1:])) <= tol * max(1.0, abs(self.coeffs[0])))

    def allclose(self, other: Multivector | float, tol: float = DEFAULT_TOL) -> bool:
        if not isinstance(other, Multivector):
            other = Multivector.scalar(other)
        scale = max(1.0, self.scale(), other.scale())
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) <= tol * scale)

    def __repr__(self) -> str:
        terms = [f"{c:+.6g}*{n}" if n != "s" else f"{c:+.6g}"
                 for n, c in self.to_dict(tol=1e-15).items()]
        return "Multivector(" + (" ".join(terms) or "0") + ")"


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    return Multivector(product_arrays(a.coeffs, b.coeffs))


def reversion(a: Multivector) -> Multivector:
    return Multivector(a.coeffs * REVERSE_SIGN)


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Outer product: keeps blade products whose grade is the sum of the grades."""
    outer = a.coeffs[:, None] * b.coeffs[None, :]
    keep = (GRADE[:, None] + GRADE[None, :]) == GRADE[PRODUCT_INDEX]
    out = np.zeros(DIM)
    np.add.at(out, PRODUCT_INDEX[keep], (PRODUCT_SIGN * outer)[keep])
    return Multivector(out)


def quadrance(a: Multivector) -> Multivector:
    """``a * ~a``; real exactly when ``a`` lies on the Study variety."""
    return a * ~a


def vector(x1: float = 0.0, x2: float = 0.0, x3: float = 0.0,
           xp: float = 0.0, xm: float = 0.0) -> Multivector:
    arr = np.zeros(DIM)
    arr[[1, 2, 4, 8, 16]] = x1, x2, x3, xp, xm
    return Multivector(arr)


def parse(data: Mapping[str, float] | float | int) -> Multivector:
    if isinstance(data, bool):
        raise TypeError("a multivector cannot be a boolean")
    if isinstance(data, (int, float)):
        return Multivector.scalar(float(data))
    if not isinstance(data, Mapping):
        raise TypeError(f"expected an object of blade coefficients, got {type(data).__name__}")
    return Multivector.from_dict(data)


ONE = Multivector.scalar(1.0)
ZERO = Multivector()
e1, e2, e3, ep, em = (Multivector.blade(n) for n in ("e1", "e2", "e3", "ep", "em"))
