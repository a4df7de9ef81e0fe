"""Factorization of monic quadratic motion polynomials into linear factors.

For each monic quadratic factor ``M`` of the quadrance ``C ~C`` we divide
``C = Q M + R`` with ``R = r1 t + r0``.  A right factor ``t - h`` with
``M = (t - h)(t - ~h)`` must satisfy ``r1 h + r0 = 0``.  If ``r1`` is
invertible that pins ``h = -r1^-1 r0``.  Otherwise (the irregular case) the
linear equation leaves an affine family of candidates which is cut down by
the quadratic conditions ``h ~h = M(0)`` and ``h + ~h = -M'(0)``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial

from .algebra import (BIVECTOR_INDICES, DIM, GRADE, PRODUCT_INDEX, PRODUCT_SIGN, ONE,
                      QUADVECTOR_INDICES, Multivector, left_matrix, product_arrays)
from .matrix_rep import is_invertible, qm_arrays, singular_threshold
from .motion_poly import (MotionPolynomial, MotionType, NotAMotionPolynomial,
                          classify_linear, divide_by_real_quadratic, divide_right_linear,
                          monic, quadrance_poly, residual, study_conditions)
from .polysys import QuadraticSystem, gauss_newton, solve_real

RECONSTRUCT_TOL = 1e-8
DEDUP_TOL = 1e-7
MAX_FREE_DIM = 8


class OddRealRootCount(ArithmeticError):
    pass


class RootVerificationFailed(ArithmeticError):
    pass


class DimensionTooLarge(ArithmeticError):
    pass


class NumericalRankAmbiguity(ArithmeticError):
    pass


class NoRealSolutionFound(ArithmeticError):
    pass


# quadratic factors of the quadrance -------------------------------------------------


def polynomial_roots(p: Polynomial, merge_tol: float = 1e-5) -> list[tuple[complex, int]]:
    """Roots with multiplicities.

    Companion-matrix eigenvalues scatter a root of multiplicity ``k`` by about
    ``eps^(1/k)``, so nearby eigenvalues are merged and each cluster is
    polished by Newton's method on the ``(k-1)``-th derivative, where the
    root is simple.
    """
    coef = np.trim_zeros(np.asarray(p.coef, dtype=float), "b")
    poly = Polynomial(coef / coef[-1])
    raw = poly.roots()
    scale = max(1.0, float(np.max(np.abs(raw)))) if raw.size else 1.0
    groups: list[list[complex]] = []
    for r in sorted(raw, key=lambda z: (z.real, z.imag)):
        for g in groups:
            if abs(np.mean(g) - r) <= merge_tol * scale:
                g.append(r)
                break
        else:
            groups.append([r])
    out = []
    for g in groups:
        k = len(g)
        z = complex(np.mean(g))
        deriv = poly.deriv(k - 1) if k > 1 else poly
        d1 = deriv.deriv()
        for _ in range(3):
            slope = d1(z)
            if slope == 0:
                break
            z = z - deriv(z) / slope
        if abs(z.imag) <= merge_tol * scale:
            z = complex(z.real, 0.0)
        out.append((z, k))
    return out


@dataclass(frozen=True)
class QuadraticFactorChoice:
    """A split ``P = M' M`` into monic real quadratics; ``M`` is used for the right factor."""

    right: Polynomial
    left: Polynomial
    roots: tuple[complex, complex]

    def key(self) -> tuple[float, ...]:
        return tuple(np.round(self.right.coef, 9))


def _real_quadratic(a: complex, b: complex) -> Polynomial:
    # (t - a)(t - b) = t^2 - (a + b) t + ab
    return Polynomial([(a * b).real, -(a + b).real, 1.0])


def quadratic_factor_choices(p: Polynomial, tol: float = 1e-9) -> list[QuadraticFactorChoice]:
    """All distinct monic real quadratic right-factor candidates of a quartic quadrance.

    Complex roots stay with their conjugates; real roots are paired in every
    possible way.
    """
    coef = np.trim_zeros(np.asarray(p.coef, dtype=float), "b")
    if len(coef) - 1 != 4:
        raise ValueError("expected a quartic quadrance polynomial")
    p = Polynomial(coef / coef[-1])
    real, pairs = [], []
    for z, k in polynomial_roots(p):
        if z.imag == 0.0:
            real += [z] * k
        elif z.imag > 0:
            pairs += [(z, z.conjugate())] * k
    if len(real) % 2:
        raise OddRealRootCount(f"{len(real)} real roots found for {p}")
    blocks = list(pairs)
    n_real = len(real)
    choices: list[QuadraticFactorChoice] = []
    seen = set()

    def add(right_roots, left_roots):
        right = _real_quadratic(*right_roots)
        left = _real_quadratic(*left_roots)
        choice = QuadraticFactorChoice(right, left, right_roots)
        if choice.key() not in seen:
            seen.add(choice.key())
            choices.append(choice)

    if n_real == 0:
        add(blocks[0], blocks[1])
        add(blocks[1], blocks[0])
    elif n_real == 2:
        add(tuple(real), blocks[0])
        add(blocks[0], tuple(real))
    else:
        for i, j in itertools.combinations(range(4), 2):
            rest = [real[k] for k in range(4) if k not in (i, j)]
            add((real[i], real[j]), tuple(rest))
    return choices


def matchings(choices: list[QuadraticFactorChoice]) -> set[frozenset]:
    """Unordered splits ``{M, M'}`` underlying a list of ordered choices."""
    return {frozenset([c.key(), tuple(np.round(c.left.coef, 9))]) for c in choices}


# regular branch ---------------------------------------------------------------------


@dataclass(frozen=True)
class IrregularSignal:
    """Division remainder whose leading coefficient is not invertible."""

    r1: Multivector
    r0: Multivector
    m: Polynomial


def linear_remainder(c: MotionPolynomial, m: Polynomial) -> tuple[Multivector, Multivector]:
    _, rem = divide_by_real_quadratic(c, m)
    coeffs = list(rem.coeffs) + [Multivector()] * 2
    return coeffs[1], coeffs[0]


def regular_right_factor(c: MotionPolynomial, m: Polynomial,
                         tol: float = RECONSTRUCT_TOL) -> Multivector | IrregularSignal:
    """``h = -r1^-1 r0`` when ``r1`` is invertible, otherwise an ``IrregularSignal``."""
    r1, r0 = linear_remainder(c, m)
    inv = is_invertible(r1)
    if not inv.invertible:
        return IrregularSignal(r1, r0, m)
    h = -(inv.inverse * r0)
    h = (polish(r1, r0, m, [h]) or [h])[0]
    _, rem = divide_right_linear(c, h)
    if rem.scale() > tol * max(1.0, c.scale(), h.scale() ** 2):
        raise RootVerificationFailed(f"C(h) has size {rem.scale():.3e}")
    return h


# irregular branch -------------------------------------------------------------------


@dataclass
class Family:
    """A positive-dimensional set of right factors ``h`` (base, tangent directions, samples)."""

    base: Multivector
    tangents: list[Multivector]
    samples: list[Multivector]
    dimension: int


@dataclass
class SolutionSet:
    points: list[Multivector] = field(default_factory=list)
    family: Family | None = None
    free_dim: int = 0

    @property
    def kind(self) -> str:
        if self.family is not None:
            return "infinite"
        return "finite" if self.points else "empty"


# coefficient k of (bivector i)(bivector j), for outputs scalar + quadvectors
_OUT = np.concatenate([[0], QUADVECTOR_INDICES])
_BIV_PRODUCT = np.zeros((len(_OUT), 10, 10))
for _a, _i in enumerate(BIVECTOR_INDICES):
    for _b, _j in enumerate(BIVECTOR_INDICES):
        _k = PRODUCT_INDEX[_i, _j]
        if _k in _OUT:
            _BIV_PRODUCT[list(_OUT).index(_k), _a, _b] = PRODUCT_SIGN[_i, _j]


def _rank_split(sv: np.ndarray, rel: float = 1e-6, gap: float = 100.0) -> int:
    # a computed singular element has near-null singular values of order
    # sqrt(eps) rather than eps, hence the loose cut
    smax = float(sv[0]) if sv.size else 0.0
    if smax == 0.0:
        return 0
    rank = int(np.sum(sv > rel * smax))
    ambiguous = (sv > rel * smax) & (sv <= gap * rel * smax)
    if np.any(ambiguous):
        raise NumericalRankAmbiguity(f"singular values {sv} straddle the rank tolerance")
    return rank


def _linear_data(r1: Multivector, r0: Multivector, m: Polynomial):
    p0, p1 = float(m.coef[0]), float(m.coef[1])
    half_trace = -p1 / 2.0  # h + ~h = -p1
    lmat = left_matrix(r1.coeffs)[:, BIVECTOR_INDICES]
    rhs = -(r0.coeffs + half_trace * r1.coeffs)
    # B^2 must be real and equal to (h+~h)^2/4 - h~h
    return half_trace, lmat, rhs, half_trace**2 - p0


def full_system(r1: Multivector, r0: Multivector, m: Polynomial) -> tuple[float, QuadraticSystem]:
    """Bivector part ``B`` of ``h = s + B`` as roots of ``r1 h + r0 = 0`` and ``B^2 = s^2 - M(0)``."""
    half_trace, lmat, rhs, target = _linear_data(r1, r0, m)
    quad = np.concatenate([np.zeros((DIM, 10, 10)), _BIV_PRODUCT])
    lin = np.concatenate([lmat, np.zeros((len(_OUT), 10))])
    const = np.concatenate([-rhs, -target * np.eye(len(_OUT))[0]])
    return half_trace, QuadraticSystem(quad, lin, const)


def polish_each(r1: Multivector, r0: Multivector, m: Polynomial,
                hs: list[Multivector]) -> list[Multivector | None]:
    """Refine candidate right factors on the unreduced equations; None where it fails."""
    if not hs:
        return []
    half_trace, system = full_system(r1, r0, m)
    start = np.array([h.coeffs[BIVECTOR_INDICES] for h in hs])
    ends, cost = gauss_newton(system, start, iters=50, tol=1e-30)
    out: list[Multivector | None] = []
    for b, k in zip(ends, cost):
        if k <= 1e-22 * system.scale() ** 2 * max(1.0, float(b @ b)) ** 2:
            arr = np.zeros(DIM)
            arr[0] = half_trace
            arr[BIVECTOR_INDICES] = b
            out.append(Multivector(arr))
        else:
            out.append(None)
    return out


def polish(r1: Multivector, r0: Multivector, m: Polynomial,
           hs: list[Multivector]) -> list[Multivector]:
    return [h for h in polish_each(r1, r0, m, hs) if h is not None]


def irregular_system(r1: Multivector, r0: Multivector, m: Polynomial):
    """Affine parametrization ``h = s/2 + B0 + N z`` and the quadratic system on ``z``.

    Returns ``(offset, basis, system)`` or ``None`` when the linear part is inconsistent.
    """
    half_trace, lmat, rhs, target = _linear_data(r1, r0, m)
    u, sv, vt = np.linalg.svd(lmat, full_matrices=True)
    rank = _rank_split(sv)
    if rank:
        b0 = vt[:rank].T @ ((u[:, :rank].T @ rhs) / sv[:rank])
    else:
        b0 = np.zeros(10)
    scale = max(1.0, float(np.max(np.abs(rhs))), float(sv[0]) if sv.size else 1.0)
    if np.max(np.abs(lmat @ b0 - rhs)) > 1e-5 * scale * max(1.0, float(np.max(np.abs(b0)))):
        return None
    basis = vt[rank:].T
    quad = np.einsum("ia,kij,jb->kab", basis, _BIV_PRODUCT, basis)
    lin = np.einsum("i,kij,jb->kb", b0, _BIV_PRODUCT + np.swapaxes(_BIV_PRODUCT, 1, 2), basis)
    const = np.einsum("i,kij,j->k", b0, _BIV_PRODUCT, b0)
    const[0] -= target
    offset = np.zeros(DIM)
    offset[0] = half_trace
    offset[BIVECTOR_INDICES] = b0
    return offset, basis, QuadraticSystem(quad, lin, const)


def _lift(offset: np.ndarray, basis: np.ndarray, z: np.ndarray) -> Multivector:
    out = offset.copy()
    out[BIVECTOR_INDICES] += basis @ z
    return Multivector(out)


def _verified_cofactor(c: MotionPolynomial, h: Multivector,
                       tol: float = RECONSTRUCT_TOL) -> Multivector | None:
    """Left cofactor ``h1`` with ``C = (t - h1)(t - h)``, or None if ``t - h`` does not divide."""
    quot, rem = divide_right_linear(c, h)
    scale = max(1.0, c.scale(), h.scale() ** 2)
    if rem.scale() > tol * scale:
        return None
    h1 = -quot.coeffs[0]
    if not all(study_conditions(h, 1e-7)) or not all(study_conditions(h1, 1e-7)):
        return None
    return h1


def irregular_solve(c: MotionPolynomial, m: Polynomial, r1: Multivector, r0: Multivector,
                    rng: np.random.Generator | None = None, n_samples: int = 5) -> SolutionSet:
    """Right roots ``h`` of ``C`` with ``(t - h)(t - ~h) = M`` when ``r1`` is singular."""
    rng = np.random.default_rng(0) if rng is None else rng
    built = irregular_system(r1, r0, m)
    if built is None:
        return SolutionSet()
    offset, basis, system = built
    d = system.dim
    if d > MAX_FREE_DIM:
        raise DimensionTooLarge(f"{d} free parameters after the linear solve")
    roots = solve_real(system, rng)
    lifted = polish(r1, r0, m, [_lift(offset, basis, z) for z in roots.isolated])
    points = [h for h in lifted if _verified_cofactor(c, h) is not None]
    family = None
    # a continuum yields one cluster per seed; a random subset is enough to confirm it
    subset = [roots.continuum[i] for i in rng.permutation(len(roots.continuum))[:64]]
    refined = polish_each(r1, r0, m, [_lift(offset, basis, z) for z in subset])
    cont = [z for z, h in zip(subset, refined)
            if h is not None and _verified_cofactor(c, h) is not None]
    if cont:
        family = _sample_family(c, (r1, r0, m), system, offset, basis, roots, cont, rng, n_samples)
    return SolutionSet(_dedup(points), family, d)


def _sample_family(c, linear, system, offset, basis, roots, cont, rng, n_samples) -> Family:
    base_z = cont[0]
    idx = [i for i, z in enumerate(roots.continuum) if z is base_z or np.array_equal(z, base_z)]
    tangent_z = roots.tangents[idx[0]] if idx else np.zeros((system.dim, 0))
    picks = [cont[i] for i in rng.permutation(len(cont))[: 4 * n_samples]]
    if len(picks) < n_samples and tangent_z.shape[1]:
        steps = rng.normal(size=(4 * n_samples, tangent_z.shape[1]))
        starts = base_z + steps @ tangent_z.T
        ends, cost = gauss_newton(system, starts)
        picks += [z for z, k in zip(ends, cost) if k <= 1e-20 * system.scale() ** 2]
    lifted = polish(*linear, [_lift(offset, basis, z) for z in picks])
    samples = [h for h in lifted if _verified_cofactor(c, h) is not None]
    samples = _dedup(samples)[:n_samples]
    tangents = []
    for v in tangent_z.T:
        arr = np.zeros(DIM)
        arr[BIVECTOR_INDICES] = basis @ v
        tangents.append(Multivector(arr))
    return Family(_lift(offset, basis, base_z), tangents, samples, len(tangents))


def _dedup(hs: list[Multivector], tol: float = DEDUP_TOL) -> list[Multivector]:
    out: list[Multivector] = []
    for h in hs:
        if not any(h.allclose(g, tol) for g in out):
            out.append(h)
    return out


# full factorization ------------------------------------------------------------------


class VerdictKind(enum.Enum):
    NONE = "none"
    FINITE = "finite"
    INFINITE = "infinite"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    count: int | None = None

    def __str__(self) -> str:
        if self.kind is VerdictKind.FINITE:
            return f"Finite({self.count})"
        return self.kind.value.capitalize()


@dataclass
class FactorizationReport:
    polynomial: MotionPolynomial
    factorizations: list[tuple[Multivector, Multivector]]
    irregular_flags: list[bool]
    verdict: Verdict
    families: list[Family] = field(default_factory=list)
    family_factorizations: list[tuple[Multivector, Multivector]] = field(default_factory=list)
    residuals: list[float] = field(default_factory=list)

    def to_json(self, digits: int = 12) -> dict:
        def mv(x: Multivector) -> dict:
            return {k: round(v, digits) for k, v in x.to_dict(tol=10.0**-digits).items()}

        return {
            "verdict": self.verdict.kind.value,
            "count": self.verdict.count,
            "polynomial": [mv(k) for k in self.polynomial.coeffs],
            "factorizations": [[mv(h1), mv(h2)] for h1, h2 in self.factorizations],
            "irregular": list(self.irregular_flags),
            "residuals": [float(f"{r:.3e}") for r in self.residuals],
            "families": [
                {
                    "dimension": f.dimension,
                    "base": mv(f.base),
                    "tangents": [mv(t) for t in f.tangents],
                    "samples": [[mv(h1), mv(h2)] for h1, h2 in
                                _family_pairs(self.polynomial, f)],
                }
                for f in self.families
            ],
        }


def _family_pairs(c: MotionPolynomial, fam: Family) -> list[tuple[Multivector, Multivector]]:
    pairs = []
    for h2 in fam.samples:
        h1 = _verified_cofactor(c, h2)
        if h1 is not None:
            pairs.append((h1, h2))
    return pairs


def reconstruction_residual(c: MotionPolynomial, h1: Multivector, h2: Multivector) -> float:
    return residual(c, MotionPolynomial.from_factors([h1, h2]))


def is_irregular_pair(h1: Multivector, h2: Multivector) -> bool:
    """Whether the factorization ``(t - h1)(t - h2)`` is irregular (``h1 - ~h2`` singular)."""
    return not is_invertible(h1 - ~h2).invertible


def remainder_irregular(c: MotionPolynomial, h2: Multivector) -> bool:
    """Irregularity read off from dividing ``C`` by the quadrance of ``t - h2``."""
    m = quadrance_poly(MotionPolynomial.linear(h2))
    r1, _ = linear_remainder(c, m)
    return not is_invertible(r1).invertible


def _prepare(c: MotionPolynomial) -> MotionPolynomial:
    if c.degree != 2:
        raise ValueError(f"expected a quadratic motion polynomial, got degree {c.degree}")
    quadrance_poly(c)
    if not c.leading.allclose(ONE, 1e-12):
        c = monic(c)
    return c


def factorize(c: MotionPolynomial, seed: int = 0, n_samples: int = 5) -> FactorizationReport:
    """All factorizations ``C = (t - h1)(t - h2)`` of a quadratic motion polynomial."""
    c = _prepare(c)
    rng = np.random.default_rng(seed)
    found: list[Multivector] = []
    families: list[Family] = []
    for choice in quadratic_factor_choices(quadrance_poly(c)):
        try:
            h = regular_right_factor(c, choice.right)
        except RootVerificationFailed:
            continue
        if isinstance(h, IrregularSignal):
            sol = irregular_solve(c, choice.right, h.r1, h.r0, rng, n_samples)
            found += sol.points
            if sol.family is not None:
                families.append(sol.family)
        elif _verified_cofactor(c, h) is not None:
            found.append(h)
    found = _dedup(found)
    pairs, flags, res = [], [], []
    for h2 in found:
        h1 = _verified_cofactor(c, h2)
        pairs.append((h1, h2))
        flags.append(is_irregular_pair(h1, h2))
        res.append(reconstruction_residual(c, h1, h2))
    fam_pairs = [p for f in families for p in _family_pairs(c, f)]
    if families:
        verdict = Verdict(VerdictKind.INFINITE)
    elif pairs:
        verdict = Verdict(VerdictKind.FINITE, len(pairs))
    else:
        verdict = Verdict(VerdictKind.NONE, 0)
    return FactorizationReport(c, pairs, flags, verdict, families, fam_pairs, res)


def is_trivial(c: MotionPolynomial, tol: float = 1e-8) -> bool:
    """Whether ``C`` is a reparametrized simple motion ``f(t) - h``.

    True when the non-scalar parts of all coefficients are multiples of one
    element ``B`` with ``s + B`` on the Study variety.
    """
    rows = np.array([np.where(GRADE > 0, k.coeffs, 0.0) for k in c.coeffs])
    scale = max(1.0, float(np.max(np.abs(rows))))
    u, sv, vt = np.linalg.svd(rows)
    if sv[0] <= tol * scale:
        return True
    if sv.size > 1 and sv[1] > tol * scale:
        return False
    direction = Multivector(vt[0])
    return direction.is_even() and all(study_conditions(direction, 1e-7))


# construction of irregular examples ---------------------------------------------------


def _h1_from_params(y: np.ndarray) -> np.ndarray:
    out = np.zeros(y.shape[:-1] + (DIM,))
    out[..., 0] = y[..., 0]
    out[..., BIVECTOR_INDICES] = y[..., 1:]
    return out


def irregularity_residual(y: np.ndarray, h2: Multivector,
                          motion_type: MotionType | None = None) -> np.ndarray:
    """Equations for ``h1 = y0 + B`` (batched over leading axes of ``y``).

    ``q`` and ``m`` of ``(h1 - ~h2)(~h1 - h2)`` vanish (non-invertibility),
    ``h1 ~h1`` is real, and optionally ``B^2 = 0`` to force a transversion.
    """
    h1 = _h1_from_params(y)
    rev_sign = np.where((GRADE * (GRADE - 1) // 2) % 2, -1.0, 1.0)
    diff = h1 - h2.coeffs * rev_sign
    x = product_arrays(diff, diff * rev_sign)
    q, m = qm_arrays(x)
    norm = product_arrays(h1, h1 * rev_sign)
    parts = [q[..., None], m[..., None], norm[..., QUADVECTOR_INDICES]]
    if motion_type is MotionType.TRANSVERSION:
        bsq = product_arrays(h1 - h1[..., :1] * np.eye(DIM)[0], h1 - h1[..., :1] * np.eye(DIM)[0])
        parts.append(bsq[..., :1])
    return np.concatenate(parts, axis=-1)


def _gauss_newton_fd(fun, y0: np.ndarray, iters: int = 400, tol: float = 1e-26) -> tuple[np.ndarray, np.ndarray]:
    """Batched damped Gauss-Newton with central-difference Jacobians."""
    y = np.array(y0, dtype=float, copy=True)
    n, d = y.shape
    f = fun(y)
    cost = np.sum(f**2, axis=1)
    eye = np.eye(d)
    for _ in range(iters):
        active = cost > tol
        if not np.any(active):
            break
        ya, fa = y[active], f[active]
        hstep = 1e-6 * np.maximum(1.0, np.abs(ya))
        jac = np.empty((len(ya), fa.shape[1], d))
        for j in range(d):
            dy = eye[j] * hstep[:, j:j + 1]
            jac[:, :, j] = (fun(ya + dy) - fun(ya - dy)) / (2 * hstep[:, j:j + 1])
        step = -np.einsum("nik,nk->ni", np.linalg.pinv(jac, rcond=1e-12), fa)
        alpha = np.ones(len(ya))
        ca = cost[active]
        best_y, best_f, best_c = ya.copy(), fa.copy(), ca.copy()
        pending = np.ones(len(ya), dtype=bool)
        for _ in range(10):
            trial = ya + alpha[:, None] * step
            tf = fun(trial)
            tc = np.sum(tf**2, axis=1)
            ok = pending & (tc < ca)
            best_y[ok], best_f[ok], best_c[ok] = trial[ok], tf[ok], tc[ok]
            pending &= ~ok
            alpha[pending] *= 0.5
            if not np.any(pending):
                break
        if np.all(pending):
            break
        y[active], f[active], cost[active] = best_y, best_f, best_c
    return y, cost


def construct_irregular(h2: Multivector, motion_type: MotionType | None = None,
                        seed: int | None = 0, start: Multivector | None = None,
                        restarts: int = 2000, tol: float = 1e-9,
                        allow_trivial: bool = False, batch: int = 64) -> Multivector:
    """Find ``h1`` such that ``(t - h1)(t - h2)`` is an irregularly factorizable motion polynomial.

    With ``start`` given, Gauss-Newton is run from that point only; otherwise
    random starts are tried in batches until one converges to a verified
    solution of the requested type.  Raises ``NoRealSolutionFound`` when the
    restart budget is exhausted.
    """
    rng = np.random.default_rng(seed)

    def fun(y):
        return irregularity_residual(y, h2, motion_type)

    if start is not None:
        batches = [np.concatenate([[start.coeffs[0]], start.coeffs[BIVECTOR_INDICES]])[None]]
    else:
        batches = (rng.normal(scale=1.5, size=(min(batch, restarts - k), 11))
                   for k in range(0, restarts, batch))
    tried = 0
    for y0 in batches:
        tried += len(y0)
        ys, cost = _gauss_newton_fd(fun, y0, iters=400 if start is not None else 120)
        for i in np.argsort(cost):
            if np.sqrt(cost[i]) >= tol:
                break
            h1 = Multivector(_h1_from_params(ys[i]))
            if _valid_construction(h1, h2, motion_type, allow_trivial):
                return h1
    raise NoRealSolutionFound(f"no admissible h1 for h2={h2!r} after {tried} starts")


def _valid_construction(h1: Multivector, h2: Multivector, motion_type: MotionType | None,
                        allow_trivial: bool) -> bool:
    if not all(study_conditions(h1, 1e-8)):
        return False
    if not is_irregular_pair(h1, h2):
        return False
    try:
        if motion_type is not None and classify_linear(h1) is not motion_type:
            return False
        c = MotionPolynomial.from_factors([h1, h2])
        quadrance_poly(c, 1e-8)
    except NotAMotionPolynomial:
        return False
    return allow_trivial or not is_trivial(c)
