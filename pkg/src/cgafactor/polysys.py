"""Real solutions of small systems of quadratic equations.

A system is ``F_k(z) = z^T A_k z + b_k^T z + c_k`` for ``z`` in R^d.  Real
roots are located by batched multistart Gauss-Newton with minimum-norm
steps, which also converges (linearly) to singular roots such as the
origin of ``x^2 + y^2 = 0``.  Whether a root lies on a positive-dimensional
component is decided by a continuation probe rather than by Jacobian rank,
since isolated singular roots have rank-deficient Jacobians too.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree


@dataclass(frozen=True)
class QuadraticSystem:
    quad: np.ndarray  # (k, d, d), symmetric
    lin: np.ndarray  # (k, d)
    const: np.ndarray  # (k,)

    def __post_init__(self):
        sym = 0.5 * (self.quad + np.swapaxes(self.quad, 1, 2))
        object.__setattr__(self, "quad", sym)

    @property
    def dim(self) -> int:
        return self.lin.shape[1]

    def residual(self, z: np.ndarray) -> np.ndarray:
        """``F`` for a batch ``z`` of shape (n, d); returns (n, k)."""
        return np.einsum("ni,kij,nj->nk", z, self.quad, z) + z @ self.lin.T + self.const

    def jacobian(self, z: np.ndarray) -> np.ndarray:
        return 2.0 * np.einsum("kij,nj->nki", self.quad, z) + self.lin[None]

    def scale(self) -> float:
        return max(1.0, float(np.max(np.abs(self.quad), initial=0.0)),
                   float(np.max(np.abs(self.lin), initial=0.0)),
                   float(np.max(np.abs(self.const), initial=0.0)))


def _min_norm_steps(jac: np.ndarray, res: np.ndarray) -> np.ndarray:
    pinv = np.linalg.pinv(jac, rcond=1e-12)
    return -np.einsum("nik,nk->ni", pinv, res)


def gauss_newton(system: QuadraticSystem, z0: np.ndarray, iters: int = 300,
                 tol: float = 1e-28) -> tuple[np.ndarray, np.ndarray]:
    """Damped minimum-norm Gauss-Newton on a batch of starting points.

    Returns final points and the squared residual norms.
    """
    z = np.array(z0, dtype=float, copy=True)
    if z.ndim == 1:
        z = z[None]
    f = system.residual(z)
    cost = np.sum(f**2, axis=1)
    active = cost > tol
    for _ in range(iters):
        if not np.any(active):
            break
        za, fa = z[active], f[active]
        step = _min_norm_steps(system.jacobian(za), fa)
        ca = cost[active]
        accepted = np.zeros(len(za), dtype=bool)
        new_z, new_f, new_c = za.copy(), fa.copy(), ca.copy()
        alpha = 1.0
        for _ in range(12):
            todo = ~accepted
            if not np.any(todo):
                break
            trial = za[todo] + alpha * step[todo]
            tf = system.residual(trial)
            tc = np.sum(tf**2, axis=1)
            ok = tc < ca[todo] * (1 - 1e-4 * alpha) + 1e-300
            idx = np.flatnonzero(todo)[ok]
            new_z[idx], new_f[idx], new_c[idx] = trial[ok], tf[ok], tc[ok]
            accepted[idx] = True
            alpha *= 0.5
        idx_active = np.flatnonzero(active)
        z[idx_active], f[idx_active], cost[idx_active] = new_z, new_f, new_c
        stalled = ~accepted | (new_c <= tol)
        active[idx_active[stalled]] = False
    return z, cost


def cluster(points: np.ndarray, tol: float) -> list[np.ndarray]:
    """Group points closer than ``tol * max(1, |p|)`` (max-norm, transitively); returns means."""
    points = np.asarray(points, dtype=float)
    if len(points) == 0:
        return []
    radius = tol * max(1.0, float(np.max(np.abs(points))))
    # snap to cells first so dense clusters do not produce O(n^2) pairs
    _, cell_first, cell_of = np.unique(np.floor(points / radius), axis=0,
                                       return_index=True, return_inverse=True)
    reps = points[cell_first]
    pairs = cKDTree(reps).query_pairs(2 * radius, p=np.inf, output_type="ndarray")
    n = len(reps)
    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    count, cell_labels = connected_components(graph, directed=False)
    labels = cell_labels[cell_of.ravel()]
    sums = np.zeros((count, points.shape[1]))
    np.add.at(sums, labels, points)
    means = sums / np.bincount(labels, minlength=count)[:, None]
    first = np.unique(labels, return_index=True)[1]
    return [means[labels[i]] for i in np.sort(first)]


def nullspace(mat: np.ndarray, rtol: float = 1e-6) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical nullspace."""
    if mat.size == 0:
        return np.eye(mat.shape[1])
    _, s, vt = np.linalg.svd(mat)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rtol * max(smax, 1.0)))
    return vt[rank:].T


@dataclass
class ContinuationProbe:
    on_curve: bool
    tangents: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    neighbours: list[np.ndarray] = field(default_factory=list)


def probe_continuum(system: QuadraticSystem, points: np.ndarray, step: float = 1e-3,
                    accept: float = 1e-20, null_rtol: float = 1e-6) -> list[ContinuationProbe]:
    """Test whether each root in ``points`` (n, d) sits on a real curve of roots.

    Candidate directions come from the Jacobian nullspace.  A displaced point
    ``z + step v`` is projected back onto the root set with minimum-norm
    Gauss-Newton; if it lands about ``step`` away from ``z`` rather than
    collapsing onto it, a continuum passes through ``z`` in direction ``v``.
    """
    points = np.atleast_2d(points)
    n, d = points.shape
    jac = system.jacobian(points)
    _, s, vt = np.linalg.svd(jac, full_matrices=True)
    svals = np.zeros((n, d))
    svals[:, : s.shape[1]] = s
    null = svals <= null_rtol * np.maximum(svals[:, :1], 1.0)
    h = step * np.maximum(1.0, np.max(np.abs(points), axis=1))
    owner, starts = [], []
    for i in range(n):
        for j in np.flatnonzero(null[i]):
            for sgn in (1.0, -1.0):
                owner.append(i)
                starts.append(points[i] + sgn * h[i] * vt[i, j])
    probes = [ContinuationProbe(False, np.zeros((d, 0))) for _ in range(n)]
    if not starts:
        return probes
    ends, cost = gauss_newton(system, np.array(starts), iters=200)
    hits: dict[int, list[np.ndarray]] = {}
    limit = accept * system.scale() ** 2
    for i, p, c in zip(owner, ends, cost):
        if c <= limit and np.max(np.abs(p - points[i])) >= 0.25 * h[i]:
            hits.setdefault(i, []).append(p)
    for i, good in hits.items():
        dirs = np.array([(p - points[i]) / np.linalg.norm(p - points[i]) for p in good])
        _, sv, dv = np.linalg.svd(dirs)
        rank = int(np.sum(sv > 0.2 * sv[0]))
        probes[i] = ContinuationProbe(True, dv[:rank].T, good)
    return probes


@dataclass
class RealRoots:
    isolated: list[np.ndarray]
    continuum: list[np.ndarray]
    tangents: list[np.ndarray]

    @property
    def infinite(self) -> bool:
        return bool(self.continuum)


def solve_real(system: QuadraticSystem, rng: np.random.Generator, box: float = 10.0,
               n_random: int = 10_000, grid: int = 101, cluster_tol: float = 1e-6,
               accept: float = 1e-20) -> RealRoots:
    """All real roots found by multistart Gauss-Newton, split into isolated and continuum."""
    d = system.dim
    if d == 0:
        root = np.zeros(0)
        ok = np.sum(system.const**2) <= accept * system.scale() ** 2
        return RealRoots([root] if ok else [], [], [])
    if d <= 2:
        axis = np.linspace(-box, box, grid)
        seeds = np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1).reshape(-1, d)
    else:
        seeds = rng.uniform(-box, box, size=(n_random, d))
    z, cost = gauss_newton(system, seeds)
    roots = z[cost <= accept * system.scale() ** 2]
    centers = cluster(roots, cluster_tol)
    isolated, continuum, tangents = [], [], []
    probes = probe_continuum(system, np.array(centers)) if centers else []
    for c, probe in zip(centers, probes):
        if probe.on_curve:
            continuum.append(c)
            tangents.append(probe.tangents)
        else:
            isolated.append(c)
    return RealRoots(isolated, continuum, tangents)
