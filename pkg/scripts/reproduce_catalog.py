"""Factor every catalog motion and write the reports as JSON."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from cgafactor.catalog import entries, verify_entry
from cgafactor.factorization import factorize


@dataclass
class Config:
    seed: int = 0
    samples: int = 5
    out_dir: Path = Path("results/catalog")


def run(cfg: Config) -> int:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    failures = 0
    print(f"{'entry':<27}{'verdict':<11}{'expected':<11}{'irregular':<11}{'seconds':>8}")
    for e in entries():
        t0 = time.perf_counter()
        report = factorize(e.C, seed=cfg.seed, n_samples=cfg.samples)
        dt = time.perf_counter() - t0
        check = verify_entry(e, seed=cfg.seed, n_samples=cfg.samples)
        failures += not check.passed
        n_irr = sum(report.irregular_flags)
        print(f"{e.name:<27}{str(report.verdict):<11}{str(e.expected_verdict):<11}"
              f"{n_irr:<11}{dt:>8.2f}" + ("" if check.passed else "  FAIL " + ",".join(check.failures())))
        (cfg.out_dir / f"{e.name}.json").write_text(json.dumps(report.to_json(), indent=2))
    print(f"reports written to {cfg.out_dir}/")
    return 1 if failures else 0


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--out-dir", type=Path, default=Config.out_dir)
    args = ap.parse_args()
    return run(Config(args.seed, args.samples, args.out_dir))


if __name__ == "__main__":
    raise SystemExit(main())
