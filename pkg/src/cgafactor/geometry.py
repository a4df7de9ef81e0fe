"""Spheres, points and planes as CGA vectors, and point trajectories of rational motions."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import DEFAULT_TOL, GRADE, Multivector, vector
from .motion_poly import MotionPolynomial


class PointAtInfinity(ValueError):
    pass


class NotNull(ValueError):
    pass


class SampleAtExceptionalParameter(ValueError):
    def __init__(self, t: float):
        super().__init__(f"C(t) ~C(t) vanishes at t={t}")
        self.t = t


@dataclass(frozen=True)
class Sphere:
    center: tuple[float, float, float]
    radius: float


@dataclass(frozen=True)
class Plane:
    normal: tuple[float, float, float]
    distance: float


def embed_sphere(s: Sphere) -> Multivector:
    cx, cy, cz = s.center
    q = cx * cx + cy * cy + cz * cz - s.radius**2
    return vector(cx, cy, cz, (q - 1) / 2, (q + 1) / 2)


def embed_point(p: Sequence[float]) -> Multivector:
    return embed_sphere(Sphere(tuple(p), 0.0))


def embed_plane(pl: Plane) -> Multivector:
    # the support term carries |n|^2 d; n is not normalized
    nx, ny, nz = pl.normal
    w = (nx * nx + ny * ny + nz * nz) * pl.distance
    return vector(nx, ny, nz, w, w)


def sandwich(g: Multivector, a: Multivector) -> Multivector:
    return g * a * ~g


def extract_point(v: Multivector, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Euclidean point of a null vector, normalized so the ``e- - e+`` weight is 1."""
    c = v.coeffs
    scale = max(1.0, v.scale())
    if np.max(np.abs(c[GRADE != 1])) > tol * scale:
        raise NotNull("not a grade-1 element")
    weight = c[16] - c[8]
    if abs(weight) <= tol * scale:
        raise PointAtInfinity("e- - e+ weight vanishes")
    x = c[[1, 2, 4]] / weight
    sq = (c[1] ** 2 + c[2] ** 2 + c[4] ** 2 + c[8] ** 2 - c[16] ** 2) / weight**2
    if abs(sq) > 1e-6 * max(1.0, float(x @ x)):
        raise NotNull(f"quadrance {sq:.3e} of normalized vector is not zero")
    return x


def trajectory(c: MotionPolynomial, p: Sequence[float], ts: Iterable[float],
               skip_exceptional: bool = False) -> tuple[list[float], np.ndarray]:
    """Images of the point ``p`` under ``C(t)`` for each sample ``t``.

    Returns the parameters actually used and an (n, 3) array of points.  Samples
    where ``C(t) ~C(t)`` vanishes raise, or are dropped when ``skip_exceptional``.
    """
    a = embed_point(p)
    used, pts = [], []
    for t in ts:
        if is_exceptional(c, t):
            if skip_exceptional:
                continue
            raise SampleAtExceptionalParameter(t)
        pts.append(extract_point(sandwich(c(t), a), tol=1e-7))
        used.append(t)
    return used, np.array(pts).reshape(-1, 3)


def is_exceptional(c: MotionPolynomial, t: float) -> bool:
    """Whether ``C(t) ~C(t)`` is negligible relative to the size of ``C`` at ``t``."""
    g = c(t)
    lead = max(1.0, c.scale()) ** 2
    return abs((g * ~g).coeffs[0]) < 1e-9 * lead * max(1.0, abs(t)) ** (2 * c.degree)


def exceptional_samples(c: MotionPolynomial, ts: Iterable[float]) -> list[float]:
    return [t for t in ts if is_exceptional(c, t)]


def trajectory_csv(ts: Sequence[float], points: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "x", "y", "z"])
    for t, (x, y, z) in zip(ts, points):
        writer.writerow([repr(float(t)), repr(float(x)), repr(float(y)), repr(float(z))])
    return buf.getvalue()
