"""Command-line front end.

Exit status: 0 on success, 1 when a search budget runs out or a
verification fails, 2 on bad usage or malformed input.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction as Q

from . import bfset, density, intpoly, modarith, rootsmodp, witness
from .bfset import Fraction

DEFAULT_EPS = "0.01"
DEFAULT_X = 10**5
IRREDUCIBILITY_BOUND = 1000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    poly: intpoly.IntPoly | None = None
    alpha: Q | None = None
    eps: Q | None = None
    b_max: int = witness.B_MAX
    w_max: int = witness.W_MAX
    X: int = DEFAULT_X
    seed: int = 0
    threshold: int = rootsmodp.EXHAUSTIVE_THRESHOLD
    fmt: str = "table"
    cache: str | None = None
    workers: int = 1

    def __post_init__(self):
        for name in ("b_max", "w_max", "X", "threshold", "workers"):
            if getattr(self, name) < 0 or (name != "threshold" and getattr(self, name) == 0):
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.alpha is not None and not 0 < self.alpha < 1:
            raise UsageError("--alpha must lie in (0, 1)")
        if self.eps is not None and self.eps <= 0:
            raise UsageError("--eps must be positive")


def _rational(text: str) -> Q:
    try:
        return Q(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _poly(text: str) -> intpoly.IntPoly:
    try:
        return intpoly.parse_poly(text).normalized()
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--threshold", type=int, default=rootsmodp.EXHAUSTIVE_THRESHOLD,
                        help="primes below this are root-searched exhaustively")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--format", dest="fmt", choices=("table", "csv", "json-lines"), default="table")
    common.add_argument("--timing", action="store_true", help="include wall time in reports")

    with_poly = _Parser(add_help=False, parents=[common])
    with_poly.add_argument("--poly", type=_poly, required=True,
                           help='"x^2+1" or coefficients constant-first, "1,0,1"')

    search = _Parser(add_help=False)
    search.add_argument("--b-max", type=int, default=witness.B_MAX)
    search.add_argument("--w-max", type=int, default=witness.W_MAX)
    search.add_argument("--cache", help="append witnesses to this file (JSON lines)")
    search.add_argument("--assume-irreducible", action="store_true",
                        help="skip the mod-q irreducibility certificate")

    parser = _Parser(prog="rootdensity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("fixed-divisor", parents=[with_poly], help="gcd of all values of f")
    p = sub.add_parser("irreducible", parents=[with_poly], help="search for a mod-q irreducibility witness")
    p.add_argument("--bound", type=int, default=IRREDUCIBILITY_BOUND)
    p = sub.add_parser("roots", parents=[with_poly], help="roots mod p, or all of A_f up to X")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--p", type=int)
    g.add_argument("--X", type=int)
    p = sub.add_parser("bf-check", parents=[with_poly], help="membership of a/b in B_f")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p = sub.add_parser("approximate", parents=[with_poly, search], help="root z/p within eps of alpha")
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--eps", type=_rational, default=Q(DEFAULT_EPS))
    p = sub.add_parser("sequence", parents=[with_poly, search], help="witnesses converging to a/b")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--t", type=int, help="shift (default: smallest solution)")
    p.add_argument("--count", type=int, default=5)
    p = sub.add_parser("scan-enumerative", parents=[with_poly], help="interval coverage of A_f up to X")
    p.add_argument("--X", type=int, default=DEFAULT_X)
    p.add_argument("--eps", type=_rational, default=Q(DEFAULT_EPS))
    p = sub.add_parser("scan-constructive", parents=[with_poly, search],
                       help="run the pipeline at every interval midpoint")
    p.add_argument("--eps", type=_rational, default=Q(DEFAULT_EPS))
    p = sub.add_parser("stats", parents=[with_poly], help="root counts and star discrepancy of A_f up to X")
    p.add_argument("--X", type=int, default=DEFAULT_X)
    p = sub.add_parser("brauer", parents=[common], help="longest run of quadratic residues or non-residues")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--b", type=int)
    g.add_argument("--max", type=int, help="every prime b = 3 mod 4 up to this bound")
    p = sub.add_parser("verify", parents=[common], help="re-validate a witness cache file")
    p.add_argument("--cache", required=True)
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        poly=getattr(args, "poly", None),
        alpha=getattr(args, "alpha", None),
        eps=getattr(args, "eps", None),
        b_max=getattr(args, "b_max", witness.B_MAX),
        w_max=getattr(args, "w_max", witness.W_MAX),
        X=getattr(args, "X", None) or DEFAULT_X,
        seed=args.seed,
        threshold=args.threshold,
        fmt=args.fmt,
        cache=getattr(args, "cache", None),
        workers=args.workers,
    )


def _require_irreducible(args, cfg: RunConfig) -> None:
    if args.assume_irreducible:
        return
    if cfg.poly.degree < 2:
        raise UsageError("degree must be at least 2")
    if intpoly.irreducibility_witness(cfg.poly, IRREDUCIBILITY_BOUND) is None:
        raise UsageError(
            f"no irreducibility witness below {IRREDUCIBILITY_BOUND} for {cfg.poly}; "
            "pass --assume-irreducible if f is known to be irreducible"
        )


def _witness_lines(f, W: witness.Witness, seed: int) -> list[str]:
    ok = witness.verify_witness(f, W, seed)
    return [
        f"a={W.a} b={W.b} t={W.t} w={W.w} p={W.p} z={W.z}",
        f"z/p: {W.z}/{W.p} ({float(W.value):.12g})",
        f"gap: {W.gap}",
        f"verified: {'true' if ok else 'false'}",
    ]


def cmd_fixed_divisor(args, cfg, out):
    print(intpoly.fixed_divisor(cfg.poly), file=out)
    return 0


def cmd_irreducible(args, cfg, out):
    if cfg.poly.degree < 2:
        raise UsageError("degree must be at least 2")
    q = intpoly.irreducibility_witness(cfg.poly, args.bound)
    if q is None:
        print(f"unknown: no witness prime <= {args.bound} (not a proof of reducibility)", file=out)
        return 1
    print(f"irreducible: f mod {q} is irreducible", file=out)
    return 0


def cmd_roots(args, cfg, out):
    if args.p is not None:
        if not modarith.is_prime(args.p):
            raise UsageError(f"--p {args.p} is not prime")
        roots = rootsmodp.roots_mod_p(cfg.poly, args.p, cfg.threshold, cfg.seed)
        print(" ".join(map(str, roots)), file=out)
        return 0
    points = rootsmodp.a_f_points(cfg.poly, args.X, cfg.threshold, cfg.seed, cfg.workers)
    print(f"# seed={cfg.seed}", file=out)
    rootsmodp.write_points_csv(points, out)
    return 0


def cmd_bf_check(args, cfg, out):
    if not intpoly.is_odd_prime(args.b):
        raise UsageError(f"--b {args.b} is not an odd prime")
    if not 1 <= args.a < args.b:
        raise UsageError(f"--a must lie in [1, {args.b - 1}]")
    member = bfset.bf_contains(cfg.poly, args.a, args.b)
    line = "true" if member else "false"
    if member:
        line += f" t={bfset.solve_t(cfg.poly, Fraction(args.a, args.b))}"
    print(line, file=out)
    return 0


def cmd_approximate(args, cfg, out):
    _require_irreducible(args, cfg)
    run = witness.approximate(cfg.poly, cfg.alpha, cfg.eps, cfg.b_max, cfg.w_max, cfg.seed, cfg.workers)
    print(f"seed: {cfg.seed}", file=out)
    print(f"poly: {cfg.poly}", file=out)
    print(f"alpha: {cfg.alpha}  eps: {cfg.eps}", file=out)
    print(f"w_tried: {run.stats.w_tried}  primality_tests: {run.stats.primality_tests}", file=out)
    if not run.ok:
        print(f"exhausted at {run.failed_stage}: {run.describe_failure()}", file=out)
        return 1
    W = run.witness
    print(f"fraction: {run.fraction}", file=out)
    for line in _witness_lines(cfg.poly, W, cfg.seed):
        print(line, file=out)
    print(f"error: {abs(W.value - cfg.alpha)}", file=out)
    if cfg.cache:
        witness.append_cache(cfg.cache, cfg.poly, [W], cfg.seed)
    return 0


def cmd_sequence(args, cfg, out):
    _require_irreducible(args, cfg)
    if not intpoly.is_odd_prime(args.b) or not 1 <= args.a < args.b:
        raise UsageError("need 1 <= a < b with b an odd prime")
    frac = Fraction(args.a, args.b)
    if not bfset.bf_contains(cfg.poly, frac.a, frac.b):
        raise UsageError(f"{frac} is not in B_f")
    t = args.t if args.t is not None else bfset.solve_t(cfg.poly, frac)
    if args.count < 1:
        raise UsageError("--count must be positive")
    seq = witness.witness_sequence(cfg.poly, frac, t, args.count, cfg.w_max, cfg.seed, cfg.workers)
    print(f"seed: {cfg.seed}", file=out)
    print(f"poly: {cfg.poly}  fraction: {frac}  t: {t}", file=out)
    for W in seq:
        print(" | ".join(_witness_lines(cfg.poly, W, cfg.seed)), file=out)
    if cfg.cache and seq:
        witness.append_cache(cfg.cache, cfg.poly, seq, cfg.seed)
    if len(seq) < args.count:
        print(f"exhausted: {len(seq)} of {args.count} witnesses with w <= {cfg.w_max}", file=out)
        return 1
    return 0


def _emit_report(report, cfg, args, out):
    if cfg.fmt == "csv":
        print(f"# seed={cfg.seed}", file=out)
        out.write(report.to_csv())
    elif cfg.fmt == "json-lines":
        out.write(report.to_json_lines(args.timing))
    else:
        out.write(report.to_table(args.timing))


def cmd_scan_enumerative(args, cfg, out):
    report = density.cover_report_enumerative(cfg.poly, cfg.X, cfg.eps, cfg.threshold, cfg.seed, cfg.workers)
    _emit_report(report, cfg, args, out)
    return 0


def cmd_scan_constructive(args, cfg, out):
    _require_irreducible(args, cfg)
    report = density.cover_report_constructive(cfg.poly, cfg.eps, cfg.b_max, cfg.w_max, cfg.seed, cfg.workers)
    _emit_report(report, cfg, args, out)
    if cfg.cache:
        ws = [iv.witness for iv in report.intervals if iv.witness]
        witness.append_cache(cfg.cache, cfg.poly, ws, cfg.seed)
    return 0 if report.covered == len(report.intervals) else 1


def cmd_stats(args, cfg, out):
    points = rootsmodp.a_f_points(cfg.poly, cfg.X, cfg.threshold, cfg.seed, cfg.workers)
    per_prime = Counter(Counter(pt.p for pt in points).values())
    n_primes = len(modarith.sieve_primes(cfg.X))
    per_prime[0] = n_primes - sum(per_prime.values())
    D = density.star_discrepancy([pt.value for pt in points])
    print(f"seed: {cfg.seed}", file=out)
    print(f"poly: {cfg.poly}", file=out)
    print(f"X: {cfg.X}  primes: {n_primes}  points: {len(points)}", file=out)
    for k in sorted(per_prime):
        print(f"primes with {k} root(s) in [1, p-1]: {per_prime[k]}", file=out)
    print(f"star_discrepancy: {D} ({float(D):.12g})", file=out)
    return 0


def cmd_brauer(args, cfg, out):
    if args.b is not None:
        if not intpoly.is_odd_prime(args.b):
            raise UsageError(f"--b {args.b} is not an odd prime")
        print(modarith.brauer_max_run(args.b), file=out)
        return 0
    worst = 0
    for b in modarith.sieve_primes(args.max):
        if b % 4 != 3:
            continue
        run = modarith.brauer_max_run(b)
        print(f"{b} {run} {'ok' if run * run < b else 'VIOLATED'}", file=out)
        worst = max(worst, run * run - b + 1)
    return 0 if worst <= 0 else 1


def cmd_verify(args, cfg, out):
    bad = total = 0
    try:
        for f, W, seed in witness.read_cache(cfg.cache):
            total += 1
            if not witness.verify_witness(f, W, seed):
                bad += 1
                print(f"FAIL {f.to_text()} a={W.a} b={W.b} t={W.t} w={W.w} p={W.p} z={W.z}", file=out)
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        print(f"malformed cache: {exc}", file=out)
        return 1
    print(f"verified {total - bad}/{total} witnesses", file=out)
    return 0 if bad == 0 else 1


COMMANDS = {
    "fixed-divisor": cmd_fixed_divisor,
    "irreducible": cmd_irreducible,
    "roots": cmd_roots,
    "bf-check": cmd_bf_check,
    "approximate": cmd_approximate,
    "sequence": cmd_sequence,
    "scan-enumerative": cmd_scan_enumerative,
    "scan-constructive": cmd_scan_constructive,
    "stats": cmd_stats,
    "brauer": cmd_brauer,
    "verify": cmd_verify,
}


def dispatch(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg, out)
    except (UsageError, ValueError) as exc:
        print(f"rootdensity: error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(dispatch())
