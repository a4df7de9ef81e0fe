"""Trajectories of points on a unit circle centred at (0, 0, 3) under catalog motions.

Writes one CSV per (motion, point) with columns t,x,y,z.  The data is what a
plot of the swept circle would be drawn from.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from cgafactor.catalog import get
from cgafactor.geometry import trajectory, trajectory_csv


@dataclass
class Config:
    motions: list[str] = field(default_factory=lambda: ["circular-translation", "villarceau"])
    n_points: int = 8
    center: tuple[float, float, float] = (0.0, 0.0, 3.0)
    t_min: float = -10.0
    t_max: float = 10.0
    samples: int = 401
    out_dir: Path = Path("results/trajectories")


def circle_points(cfg: Config) -> np.ndarray:
    phi = np.linspace(0, 2 * np.pi, cfg.n_points, endpoint=False)
    return np.array(cfg.center) + np.stack([np.cos(phi), np.sin(phi), 0 * phi], axis=1)


def run(cfg: Config) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    ts = np.linspace(cfg.t_min, cfg.t_max, cfg.samples)
    for name in cfg.motions:
        c = get(name).C
        for k, p in enumerate(circle_points(cfg)):
            used, pts = trajectory(c, p, ts, skip_exceptional=True)
            path = cfg.out_dir / f"{name}_p{k}.csv"
            path.write_text(trajectory_csv(used, pts))
            span = np.ptp(pts, axis=0)
            print(f"{name:<22} point {k}: {len(used)} samples, extent "
                  f"({span[0]:.3f}, {span[1]:.3f}, {span[2]:.3f}) -> {path}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-points", type=int, default=Config.n_points)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--out-dir", type=Path, default=Config.out_dir)
    args = ap.parse_args()
    run(Config(n_points=args.n_points, samples=args.samples, out_dir=args.out_dir))


if __name__ == "__main__":
    main()
