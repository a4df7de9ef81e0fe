"""Named irregularly factorizable quadratic motions with their known properties."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .algebra import Multivector
from .factorization import (RECONSTRUCT_TOL, Verdict, VerdictKind, factorize,
                            is_irregular_pair, is_trivial, reconstruction_residual)
from .motion_poly import (MotionPolynomial, MotionType, NotAMotionPolynomial,
                          classify_linear, is_motion_polynomial)

ROTATION, TRANSVERSION, SCALING = MotionType.ROTATION, MotionType.TRANSVERSION, MotionType.SCALING


def _b(name: str, value: float = 1.0) -> Multivector:
    return Multivector.blade(name, value)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    factors: tuple[Multivector, Multivector]
    expected_verdict: Verdict
    expected_types: tuple[MotionType, MotionType]
    expected_commuting: bool = False
    expected_trivial: bool = False

    @property
    def C(self) -> MotionPolynomial:
        return MotionPolynomial.from_factors(list(self.factors))


def circular_translation(x: float = 1.0, y: float = 0.0) -> tuple[Multivector, Multivector]:
    """Factors of the curvilinear translation along a circle, offset ``(x, y)`` from the axis.

    Both factors are rotations with opposite speed about parallel axes.
    """
    h1 = -_b("e12") + x * (_b("e1m") + _b("e1p")) + y * (_b("e2m") + _b("e2p"))
    return h1, _b("e12")


def villarceau() -> tuple[Multivector, Multivector]:
    return _b("e12"), _b("e3p")


def entries() -> list[CatalogEntry]:
    sqrt2, sqrt3, sqrt5, sqrt6 = (math.sqrt(k) for k in (2, 3, 5, 6))
    e12 = _b("e12")
    transl = _b("e3p") + _b("e3m")
    dilat = -_b("epm")
    inf = Verdict(VerdictKind.INFINITE)

    def finite(n: int) -> Verdict:
        return Verdict(VerdictKind.FINITE, n)

    return [
        CatalogEntry(
            "rotation-rotation",
            (-e12 + _b("e13") + _b("e1m") + _b("e23") + _b("e2m"), e12),
            inf, (ROTATION, ROTATION)),
        CatalogEntry(
            "transversion-rotation",
            (-0.5 * e12 + 0.8 * _b("e13") + (49 / 30) * _b("e1m") + (4 / 3) * _b("e1p"), e12),
            finite(1), (TRANSVERSION, ROTATION)),
        CatalogEntry(
            "scaling-rotation",
            (_b("e13") + (sqrt6 / 3) * (2 * _b("e1m") + 1), e12),
            finite(1), (SCALING, ROTATION)),
        CatalogEntry(
            "transversion-transversion",
            (_b("e3m") - _b("epm") - _b("e13") + _b("e1p") + _b("e1m") - _b("e23")
             + _b("e2p") + _b("e2m") + sqrt2, transl),
            finite(2), (TRANSVERSION, TRANSVERSION)),
        CatalogEntry(
            "scaling-scaling",
            (-_b("e3m") + _b("e2m") + sqrt3, dilat),
            finite(5), (SCALING, SCALING)),
        CatalogEntry(
            "transversion-scaling",
            (_b("e2m") + 0.5 * (sqrt5 * _b("e2p") + _b("epm")), dilat),
            finite(3), (TRANSVERSION, SCALING)),
        CatalogEntry("circular-translation", circular_translation(1.0, 0.0), inf,
                     (ROTATION, ROTATION)),
        CatalogEntry("villarceau", villarceau(), inf, (ROTATION, ROTATION),
                     expected_commuting=True),
    ]


def get(name: str) -> CatalogEntry:
    for e in entries():
        if e.name == name:
            return e
    raise KeyError(name)


@dataclass(frozen=True)
class Check:
    passed: bool
    observed: object
    expected: object
    residual: float | None = None


@dataclass
class VerificationResult:
    name: str
    checks: dict[str, Check] = field(default_factory=dict)
    verdict: Verdict | None = None
    residual: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, c in self.checks.items() if not c.passed]


def _commutator_size(a: Multivector, b: Multivector) -> float:
    return (a * b - b * a).scale()


def verify_entry(e: CatalogEntry, tol: float = RECONSTRUCT_TOL, seed: int = 0,
                 n_samples: int = 5) -> VerificationResult:
    """Check an entry against its recorded properties; every check reports pass/fail."""
    h1, h2 = e.factors
    c = e.C
    out = VerificationResult(e.name)
    checks = out.checks

    rebuilt = reconstruction_residual(c, h1, h2)
    checks["reconstructs"] = Check(rebuilt <= tol * max(1.0, c.scale()), rebuilt, 0.0, rebuilt)
    motion = is_motion_polynomial(c)
    checks["motion_polynomial"] = Check(motion, motion, True)
    irregular = is_irregular_pair(h1, h2)
    checks["irregular_pair"] = Check(irregular, irregular, True)
    try:
        types = (classify_linear(h1), classify_linear(h2))
    except NotAMotionPolynomial:
        types = None
    checks["types"] = Check(types == e.expected_types, types, e.expected_types)
    comm = _commutator_size(h1, h2)
    commuting = comm <= 1e-9 * max(1.0, h1.scale() * h2.scale())
    checks["commuting"] = Check(commuting == e.expected_commuting, commuting,
                                e.expected_commuting, comm)
    if not motion:
        checks["verdict"] = Check(False, None, str(e.expected_verdict))
        return out

    trivial = is_trivial(c)
    checks["trivial"] = Check(trivial == e.expected_trivial, trivial, e.expected_trivial)
    report = factorize(c, seed=seed, n_samples=n_samples)
    out.verdict = report.verdict
    checks["verdict"] = Check(report.verdict == e.expected_verdict, str(report.verdict),
                              str(e.expected_verdict))
    pairs = report.factorizations + report.family_factorizations
    worst = max((reconstruction_residual(c, a, b) for a, b in pairs), default=0.0)
    out.residual = max(rebuilt, worst)
    checks["factorizations_reconstruct"] = Check(
        bool(pairs) and worst <= tol * max(1.0, c.scale()), len(pairs), ">=1", worst)
    if report.verdict.kind is VerdictKind.INFINITE:
        n = len(report.family_factorizations)
        checks["family_samples"] = Check(n >= n_samples, n, n_samples)
    if e.expected_commuting:
        sizes = [_commutator_size(a, b) / max(1.0, a.scale() * b.scale()) for a, b in pairs]
        worst_comm = max(sizes, default=0.0)
        checks["sampled_commute"] = Check(worst_comm <= 1e-9, worst_comm, 0.0, worst_comm)
    return out
