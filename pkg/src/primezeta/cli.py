"""Command-line front end: ``primezeta <command> [flags]``.

Exit codes: 0 success, 1 runtime or data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .characters import parse_character_spec
from .curves import delta_grid, write_columns
from .errors import CharacterError, DomainError, ZeroTableError
from .prime_zeta import covariance_curve
from .primes import MAX_LIMIT, primes_through_nth, sieve_primes
from .repulsion import CONVENTIONS, SIGMA_STD, conditional_variance, extreme_prob_curve, threshold_scale
from .verify import DEFAULT_TOLERANCES, run_gates
from .zeros import ZEROS_ENV, diff_histogram, midpoints, read_zero_file, trough_score
from .zeta import POLE_EXCLUSION, log_abs_zeta_1line_grid


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: int | None
    version: str = __version__
    duration_s: float = 0.0
    outputs: list = field(default_factory=list)


class UsageError(Exception):
    pass


def _write_manifest(path, manifest):
    if path == "-" or path is None:
        return
    with open(path + ".manifest.json", "w") as fh:
        json.dump(asdict(manifest), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _zero_path(args):
    path = args.zeros or os.environ.get(ZEROS_ENV)
    if not path:
        raise UsageError(f"no zero table: pass --zeros or set {ZEROS_ENV}")
    return path


def _grid(args):
    return delta_grid(args.delta_min, args.delta_max, args.step)


def cmd_cov_curve(args):
    if args.limit is not None:
        if args.limit > MAX_LIMIT:
            raise DomainError(f"--limit {args.limit} exceeds the sieve ceiling {MAX_LIMIT}")
        primes = sieve_primes(args.limit)
    else:
        primes = primes_through_nth(args.nth_prime_limit)
    grid = _grid(args)
    curve = covariance_curve(primes, grid)
    ref = np.full(grid.size, math.nan)
    ok = np.abs(grid) > POLE_EXCLUSION
    if ok.any():
        ref[ok] = log_abs_zeta_1line_grid(grid[ok])
    write_columns(args.out, ["delta", "value", "log_abs_zeta"], [grid, curve.values, ref])
    return {"primes": len(primes), "t": primes.limit}


def cmd_zero_hist(args):
    zeros = read_zero_file(_zero_path(args), args.n_zeros)
    hist = diff_histogram(zeros, args.lo, args.hi, args.bin_width)
    hist.to_csv(args.out)
    if args.troughs:
        centers = [float(x) for x in args.troughs.split(",") if x.strip()]
    else:
        centers = [float(x) for x in zeros.ordinates[:4]]
    report = {"n_zeros": len(zeros), "half_width": args.half_width, "window": args.window,
              "troughs": [], "midpoints": []}
    for key, points in (("troughs", centers), ("midpoints", midpoints(centers))):
        for c in points:
            c = float(c)
            try:
                report[key].append({"center": c, "score": trough_score(hist, c, args.half_width, args.window)})
            except DomainError as exc:
                report[key].append({"center": c, "score": None, "error": str(exc)})
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    report_path = args.report or (None if args.out == "-" else os.path.splitext(args.out)[0] + ".troughs.json")
    if report_path:
        with open(report_path, "w") as fh:
            fh.write(text)
    else:
        sys.stderr.write(text)
    return {"n_zeros": len(zeros), "total_pairs": hist.total, "report": report_path}


def cmd_cond_prob(args):
    if args.tau is not None:
        tau = args.tau
    else:
        zeros = read_zero_file(_zero_path(args))
        tau = zeros.ordinate(args.zero_index)
    grid = _grid(args)
    curve = extreme_prob_curve(grid, tau, args.sigmas, convention=args.sigma_convention)
    curve.to_csv(args.out, "probability")
    return {"tau": tau, "variance": conditional_variance(tau),
            "threshold": -args.sigmas * threshold_scale(tau, args.sigma_convention)}


def _parse_overrides(items):
    out = {}
    for item in items or []:
        name, _, value = item.partition("=")
        if name not in DEFAULT_TOLERANCES or not value:
            raise UsageError(f"bad --gate-tolerance {item!r}; names: {', '.join(DEFAULT_TOLERANCES)}")
        out[name] = float(value)
    return out


def cmd_verify(args):
    zeros = None
    path = args.zeros or os.environ.get(ZEROS_ENV)
    if path:
        zeros = read_zero_file(path)
    elif args.level == "full":
        raise UsageError(f"--level full needs --zeros or {ZEROS_ENV}")
    gates = run_gates(args.level, args.seed, zeros, _parse_overrides(args.gate_tolerance))
    report = {"level": args.level, "seed": args.seed, "passed": all(g.passed for g in gates),
              "gates": [g.to_dict() for g in gates]}
    text = json.dumps(report, indent=2, sort_keys=True, default=float) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    for g in gates:
        print(f"{'PASS' if g.passed else 'FAIL'} {g.name}: estimate={g.estimate!r} target={g.target!r}",
              file=sys.stderr)
    return {"passed": report["passed"]}


def _add_grid(p, lo, hi, step):
    p.add_argument("--delta-min", type=float, default=lo)
    p.add_argument("--delta-max", type=float, default=hi)
    p.add_argument("--step", "--delta-step", dest="step", type=float, default=step)


def build_parser():
    ap = argparse.ArgumentParser(prog="primezeta", description="Prime zeta statistics and zero-difference repulsion.")
    ap.add_argument("--threads", type=int, default=None, help="cap on worker threads")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cov-curve", help="covariance curve 2R_t(delta) with log|zeta(1+i delta)|")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--limit", type=int, help="sum over primes <= LIMIT")
    src.add_argument("--nth-prime-limit", type=int, default=1_000_000, help="sum over the first N primes")
    _add_grid(p, 0.0, 100.0, 0.05)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_cov_curve)

    p = sub.add_parser("zero-hist", help="histogram of zero differences plus trough scores")
    p.add_argument("--zeros", help=f"zero table path (default ${ZEROS_ENV})")
    p.add_argument("--n-zeros", type=int, default=None, help="use only the first N zeros")
    p.add_argument("--lo", type=float, default=5.0)
    p.add_argument("--hi", type=float, default=30.0)
    p.add_argument("--bin-width", type=float, default=0.05)
    p.add_argument("--troughs", help="comma-separated trough centres (default: first zero ordinates)")
    p.add_argument("--half-width", type=float, default=0.15)
    p.add_argument("--window", type=float, default=1.0)
    p.add_argument("--out", default="-")
    p.add_argument("--report", help="trough-score JSON path")
    p.set_defaults(func=cmd_zero_hist)

    p = sub.add_parser("cond-prob", help="probability of an extreme negative Re P given a zero at tau")
    where = p.add_mutually_exclusive_group()
    where.add_argument("--zeros", help=f"zero table path (default ${ZEROS_ENV})")
    where.add_argument("--tau", type=float)
    p.add_argument("--zero-index", type=int, default=100_000)
    p.add_argument("--sigmas", type=float, default=3.0)
    p.add_argument("--sigma-convention", choices=CONVENTIONS, default=SIGMA_STD)
    _add_grid(p, 0.05, 100.0, 0.05)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_cond_prob)

    p = sub.add_parser("verify", help="run the verification gates")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--zeros", help=f"zero table path (default ${ZEROS_ENV})")
    p.add_argument("--out", default="-")
    p.add_argument("--gate-tolerance", action="append", metavar="NAME=VALUE",
                   help="override one gate bound (testing hook)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("char-info", help="print a character table and its error bounds")
    p.add_argument("--char", required=True, help="<modulus>:<generator>=<num>/<den>[,...]")
    p.set_defaults(func=cmd_char_info)
    return ap


def cmd_char_info(args):
    from .characters import character_error_bound, character_truncation_mse

    chi = parse_character_spec(args.char)
    info = {"modulus": chi.modulus, "order": chi.order,
            "values": [[float(v.real), float(v.imag)] for v in chi.values],
            "error_bound": character_error_bound(chi), "truncation_mse": character_truncation_mse(chi)}
    print(json.dumps(info, indent=2))
    return {}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        if args.threads < 1:
            parser.error("--threads must be >= 1")
        import numba

        numba.set_num_threads(min(args.threads, numba.config.NUMBA_NUM_THREADS))
    params = {k: v for k, v in vars(args).items() if k != "func"}
    start = time.perf_counter()
    try:
        extra = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (DomainError, ZeroTableError, CharacterError, OSError, ValueError) as exc:
        print(f"primezeta: error: {exc}", file=sys.stderr)
        return 1
    manifest = RunManifest(args.command, params, getattr(args, "seed", None),
                           duration_s=round(time.perf_counter() - start, 3), outputs=[extra])
    _write_manifest(getattr(args, "out", None), manifest)
    if args.command == "verify" and not extra["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
