"""Search for irregular factorizations with a prescribed right factor.

For each right factor and requested motion type, solve the non-invertibility
equations from random starts, then factor the resulting quadratic and record
how many factorizations it has.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from cgafactor.algebra import Multivector
from cgafactor.factorization import NoRealSolutionFound, construct_irregular, factorize, is_trivial
from cgafactor.motion_poly import MotionPolynomial, MotionType

B = Multivector.blade
RIGHT_FACTORS = {"rotation e12": B("e12"), "transversion e3p+e3m": B("e3p") + B("e3m"),
                 "scaling -epm": -B("epm")}
TYPES = [MotionType.ROTATION, MotionType.TRANSVERSION, MotionType.SCALING, None]


@dataclass
class Config:
    seed: int = 1
    restarts: int = 640


def run(cfg: Config) -> None:
    print(f"{'right factor':<24}{'left type':<14}{'verdict':<11}{'trivial':<9}{'seconds':>8}")
    for label, h2 in RIGHT_FACTORS.items():
        for kind in TYPES:
            t0 = time.perf_counter()
            name = kind.value if kind else "any"
            try:
                h1 = construct_irregular(h2, kind, seed=cfg.seed, restarts=cfg.restarts)
            except NoRealSolutionFound:
                print(f"{label:<24}{name:<14}{'no solution':<20}{time.perf_counter() - t0:>8.1f}")
                continue
            c = MotionPolynomial.from_factors([h1, h2])
            report = factorize(c, seed=cfg.seed)
            print(f"{label:<24}{name:<14}{str(report.verdict):<11}{str(is_trivial(c)):<9}"
                  f"{time.perf_counter() - t0:>8.1f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--restarts", type=int, default=Config.restarts)
    args = ap.parse_args()
    run(Config(args.seed, args.restarts))


if __name__ == "__main__":
    main()
