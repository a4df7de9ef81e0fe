"""Command-line front end.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 malformed input, 2 not a motion polynomial, 3 numerical rank ambiguity,
4 a verification (catalog or --self-check) failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .algebra import Multivector, parse
from .catalog import entries, verify_entry
from .factorization import (RECONSTRUCT_TOL, NumericalRankAmbiguity, factorize,
                            reconstruction_residual, remainder_irregular, is_irregular_pair)
from .geometry import trajectory, trajectory_csv
from .motion_poly import MotionPolynomial, NotAMotionPolynomial, classify_linear, quadrance_poly

EXIT_OK, EXIT_INPUT, EXIT_NOT_MOTION, EXIT_RANK, EXIT_VERIFY = 0, 1, 2, 3, 4


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class CommandConfig:
    tolerance: float = RECONSTRUCT_TOL
    fmt: str = "json"
    seed: int = 0
    samples: int = 5
    t_min: float = -10.0
    t_max: float = 10.0
    self_check: bool = False

    def __post_init__(self):
        if not self.tolerance > 0:
            raise InputError("tolerance must be positive")
        if self.samples < 2:
            raise InputError("sample count must be at least 2")


def _load_json(arg: str):
    """A JSON document from a file path, ``-`` for stdin, or an inline literal."""
    try:
        if arg == "-":
            return json.load(sys.stdin)
        path = Path(arg)
        if path.is_file():
            return json.loads(path.read_text())
        return json.loads(arg)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {arg!r}: {exc}") from exc


def _load_polynomial(arg: str) -> MotionPolynomial:
    try:
        return MotionPolynomial.from_json(_load_json(arg))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed polynomial: {exc}") from exc


def _load_multivector(arg: str) -> Multivector:
    try:
        return parse(_load_json(arg))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed multivector: {exc}") from exc


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False)


def _fmt_mv(x: Multivector, digits: int = 12) -> str:
    d = x.to_dict(tol=10.0**-digits)
    if not d:
        return "0"
    return " ".join(f"{v:+.{digits}g}*{k}" if k != "s" else f"{v:+.{digits}g}" for k, v in d.items())


def cmd_factor(path: str, cfg: CommandConfig) -> int:
    c = _load_polynomial(path)
    report = factorize(c, seed=cfg.seed, n_samples=cfg.samples)
    status = EXIT_OK
    if cfg.self_check:
        pairs = report.factorizations + report.family_factorizations
        worst = max((reconstruction_residual(report.polynomial, a, b) for a, b in pairs),
                    default=0.0)
        ok = worst <= cfg.tolerance * max(1.0, report.polynomial.scale())
        print(f"self-check: {len(pairs)} factorizations, worst residual {worst:.3e} "
              f"({'ok' if ok else 'FAILED'})", file=sys.stderr)
        status = EXIT_OK if ok else EXIT_VERIFY
    if cfg.fmt == "json":
        print(_dump(report.to_json()))
    else:
        print(f"verdict: {report.verdict}")
        for (h1, h2), irr in zip(report.factorizations, report.irregular_flags):
            tag = "irregular" if irr else "regular"
            print(f"(t - ({_fmt_mv(h1)})) (t - ({_fmt_mv(h2)}))  [{tag}]")
        for fam in report.families:
            print(f"family of dimension {fam.dimension}, base {_fmt_mv(fam.base)}")
        for h1, h2 in report.family_factorizations:
            print(f"sample: (t - ({_fmt_mv(h1)})) (t - ({_fmt_mv(h2)}))")
    return status


def cmd_classify(arg: str, cfg: CommandConfig) -> int:
    h = _load_multivector(arg)
    kind = classify_linear(h)
    poly = quadrance_poly(MotionPolynomial.linear(h))
    roots = np.sort_complex(poly.roots())
    real = sorted({round(float(r.real), 12) for r in roots if abs(r.imag) <= 1e-9})
    if cfg.fmt == "json":
        print(_dump({"type": kind.value, "quadrance": [float(v) for v in poly.coef],
                     "real_roots": real}))
    else:
        print(kind.value)
        print("real roots of quadrance: " + (", ".join(f"{r:.12g}" for r in real) or "none"))
    return EXIT_OK


def cmd_irregular(arg1: str, arg2: str, cfg: CommandConfig) -> int:
    h1, h2 = _load_multivector(arg1), _load_multivector(arg2)
    c = MotionPolynomial.from_factors([h1, h2])
    quadrance_poly(c)
    by_pair = is_irregular_pair(h1, h2)
    by_division = remainder_irregular(c, h2)
    if cfg.fmt == "json":
        print(_dump({"irregular": by_pair, "remainder_irregular": by_division}))
    else:
        print("irregular" if by_pair else "regular")
    if by_pair != by_division:
        print("warning: pair test and division test disagree", file=sys.stderr)
    return EXIT_OK


def cmd_trajectory(path: str, point: list[float], cfg: CommandConfig) -> int:
    c = _load_polynomial(path)
    quadrance_poly(c)
    ts = np.linspace(cfg.t_min, cfg.t_max, cfg.samples)
    used, pts = trajectory(c, point, ts, skip_exceptional=True)
    for t in sorted(set(ts.tolist()) - set(used)):
        print(f"skipped exceptional sample t={t!r}", file=sys.stderr)
    sys.stdout.write(trajectory_csv(used, pts))
    return EXIT_OK


def cmd_verify_catalog(cfg: CommandConfig) -> int:
    results = [verify_entry(e, tol=cfg.tolerance, seed=cfg.seed, n_samples=cfg.samples)
               for e in entries()]
    expected = {e.name: str(e.expected_verdict) for e in entries()}
    if cfg.fmt == "json":
        print(_dump([{"name": r.name, "verdict": str(r.verdict), "expected": expected[r.name],
                      "residual": float(f"{r.residual:.3e}"), "passed": r.passed,
                      "failures": r.failures()} for r in results]))
    else:
        width = max(len(r.name) for r in results)
        print(f"{'entry':<{width}}  {'verdict':<10} {'expected':<10} {'residual':<9}  result")
        for r in results:
            mark = "pass" if r.passed else "FAIL " + ",".join(r.failures())
            print(f"{r.name:<{width}}  {str(r.verdict):<10} {expected[r.name]:<10} "
                  f"{r.residual:<9.1e}  {mark}")
        print(f"{sum(r.passed for r in results)}/{len(results)} pass")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=RECONSTRUCT_TOL,
                        help="reconstruction tolerance (relative)")
    common.add_argument("--format", dest="fmt", choices=("json", "text", "csv"), default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=None,
                        help="family members to sample, or trajectory sample count")

    parser = argparse.ArgumentParser(prog="cgafactor",
                                     description="Factor quadratic motion polynomials in CGA(4,1).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", parents=[common], help="all factorizations of a quadratic")
    p.add_argument("input", help="polynomial JSON: file path, '-' or inline")
    p.add_argument("--self-check", action="store_true",
                   help="re-multiply every factorization and compare with the input")

    p = sub.add_parser("classify", parents=[common], help="type of the simple motion t - h")
    p.add_argument("input", help="multivector JSON: file path, '-' or inline")

    p = sub.add_parser("irregular", parents=[common],
                       help="whether (t - h1)(t - h2) is an irregular factorization")
    p.add_argument("h1")
    p.add_argument("h2")

    p = sub.add_parser("trajectory", parents=[common], help="CSV trajectory of a point")
    p.add_argument("input", help="polynomial JSON: file path, '-' or inline")
    p.add_argument("--point", type=float, nargs=3, default=(0.0, 0.0, 0.0),
                   metavar=("X", "Y", "Z"))
    p.add_argument("--t-min", type=float, default=-10.0)
    p.add_argument("--t-max", type=float, default=10.0)

    sub.add_parser("verify-catalog", parents=[common], help="check every catalog entry")
    return parser


_DEFAULT_FORMAT = {"factor": "json", "classify": "text", "irregular": "text",
                   "trajectory": "csv", "verify-catalog": "text"}
_DEFAULT_SAMPLES = {"trajectory": 401}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = CommandConfig(
            tolerance=args.tolerance,
            fmt=args.fmt or _DEFAULT_FORMAT[args.command],
            seed=args.seed,
            samples=args.samples or _DEFAULT_SAMPLES.get(args.command, 5),
            t_min=getattr(args, "t_min", -10.0),
            t_max=getattr(args, "t_max", 10.0),
            self_check=getattr(args, "self_check", False),
        )
        if args.command == "factor":
            return cmd_factor(args.input, cfg)
        if args.command == "classify":
            return cmd_classify(args.input, cfg)
        if args.command == "irregular":
            return cmd_irregular(args.h1, args.h2, cfg)
        if args.command == "trajectory":
            return cmd_trajectory(args.input, list(args.point), cfg)
        return cmd_verify_catalog(cfg)
    except NotAMotionPolynomial as exc:
        print(f"error: not a motion polynomial: {exc}", file=sys.stderr)
        return EXIT_NOT_MOTION
    except NumericalRankAmbiguity as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANK
    except (InputError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
