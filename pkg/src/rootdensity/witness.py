"""Prime witnesses: search w for primes p = G(w) / r_f with
G(w) = g(bw + t, b), build the root z = (a*p + b*w + t) / b of f mod p,
and check the whole chain.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction as Q

from .bfset import Fraction, as_rational, select_fraction, solve_t
from .intpoly import IntPoly, conjugate_g, evaluate, fixed_divisor
from .modarith import is_prime

B_MAX = 10**4
W_MAX = 10**6
CHUNK = 2048


@dataclass(frozen=True)
class Witness:
    a: int
    b: int
    t: int
    w: int
    p: int
    z: int

    @property
    def gap(self) -> Q:
        """z/p - a/b, which equals (b*w + t) / (b*p) exactly."""
        return Q(self.b * self.w + self.t, self.b * self.p)

    @property
    def value(self) -> Q:
        return Q(self.z, self.p)


@dataclass
class SearchStats:
    w_tried: int = 0
    primality_tests: int = 0

    def add(self, other: SearchStats) -> None:
        self.w_tried += other.w_tried
        self.primality_tests += other.primality_tests


def _check_shift(f: IntPoly, frac: Fraction, t: int, r_f: int) -> None:
    if f.leading <= 0:
        raise ValueError("normalize f to a positive leading coefficient first")
    if f.degree < 2:
        raise ValueError("degree must be at least 2")
    if not 1 <= t < frac.b:
        raise ValueError(f"t must lie in [1, {frac.b - 1}]")
    if (frac.a * f.leading * pow(t, f.degree - 1, frac.b) + r_f) % frac.b:
        raise ValueError(f"t = {t} does not solve a*c*t^(n-1) = -r_f mod {frac.b}")


def _scan(args) -> tuple[Witness | None, SearchStats]:
    G, r_f, a, b, t, lo, hi, seed = args
    stats = SearchStats()
    for w in range(lo, hi + 1):
        stats.w_tried += 1
        N = evaluate(G, w)
        if N <= 0:
            continue
        p, rem = divmod(N, r_f)
        assert rem == 0, "fixed divisor of G differs from that of f"
        stats.primality_tests += 1
        if not is_prime(p, seed):
            continue
        z, rem = divmod(a * p + b * w + t, b)
        assert rem == 0, "a*p + b*w + t not divisible by b"
        if 1 <= z <= p - 1:
            return Witness(a, b, t, w, p, z), stats
    return None, stats


def _search(f, frac, t, w_lo, w_hi, seed, workers, stats):
    r_f = fixed_divisor(f)
    _check_shift(f, frac, t, r_f)
    G = conjugate_g(f, frac.b, t)
    if workers <= 1 or w_hi - w_lo < CHUNK:
        found, s = _scan((G, r_f, frac.a, frac.b, t, w_lo, w_hi, seed))
        stats.add(s)
        return found

    # Chunks are consumed in w order and the first success wins, so the
    # answer is the minimal-w witness whatever the worker count. Counters
    # cover the chunks consumed up to and including the winning one.
    bounds = [(lo, min(lo + CHUNK - 1, w_hi)) for lo in range(w_lo, w_hi + 1, CHUNK)]
    with ProcessPoolExecutor(workers) as pool:
        for start in range(0, len(bounds), workers):
            batch = bounds[start : start + workers]
            jobs = [(G, r_f, frac.a, frac.b, t, lo, hi, seed) for lo, hi in batch]
            for found, s in pool.map(_scan, jobs):
                stats.add(s)
                if found is not None:
                    return found
    return None


def find_witness(
    f: IntPoly,
    frac: Fraction,
    t: int,
    w_lo: int,
    w_hi: int,
    seed: int = 0,
    workers: int = 1,
) -> Witness | None:
    """Witness with the smallest w in [w_lo, w_hi], or None."""
    if not 0 <= w_lo <= w_hi:
        raise ValueError("need 0 <= w_lo <= w_hi")
    return _search(f, frac, t, w_lo, w_hi, seed, workers, SearchStats())


def verify_witness(f: IntPoly, W: Witness, seed: int = 0) -> bool:
    """Re-derive every property of W from scratch."""
    try:
        frac = Fraction(W.a, W.b)
    except ValueError:
        return False
    r_f = fixed_divisor(f)
    if W.b < 3 or not is_prime(W.b) or math.gcd(W.b, f.leading * r_f) != 1:
        return False
    if not 1 <= W.t < W.b or W.w < 0:
        return False
    if not is_prime(W.p, seed):
        return False
    if r_f * W.p != evaluate(conjugate_g(f, W.b, W.t), W.w):
        return False
    if W.b * W.z != W.a * W.p + W.b * W.w + W.t:
        return False
    if not 1 <= W.z <= W.p - 1:
        return False
    if evaluate(f, W.z) % W.p:
        return False
    gap = Q(W.z, W.p) - frac.value
    return gap > 0 and gap == Q(W.b * W.w + W.t, W.b * W.p)


def witness_sequence(
    f: IntPoly,
    frac: Fraction,
    t: int,
    count: int,
    w_max: int,
    seed: int = 0,
    workers: int = 1,
) -> list[Witness]:
    """First ``count`` witnesses by ascending w, stopping at w_max."""
    if count < 1:
        raise ValueError("count must be positive")
    out: list[Witness] = []
    w = 0
    while len(out) < count and w <= w_max:
        found = find_witness(f, frac, t, w, w_max, seed, workers)
        if found is None:
            break
        out.append(found)
        w = found.w + 1
    return out


@dataclass
class Approximation:
    """Outcome of one run of the pipeline, successful or not."""

    alpha: Q
    eps: Q
    b_max: int
    w_max: int
    seed: int
    witness: Witness | None = None
    fraction: Fraction | None = None
    t: int | None = None
    failed_stage: str | None = None
    candidates: int = 0
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def ok(self) -> bool:
        return self.witness is not None

    def describe_failure(self) -> str:
        if self.failed_stage == "select_fraction":
            return f"no fraction of B_f within {self.eps / 2} of {self.alpha} with b <= {self.b_max}"
        if self.failed_stage == "find_witness":
            return (
                f"fraction {self.fraction}, t={self.t}: {self.candidates} prime witness(es) with "
                f"w <= {self.w_max}, none with gap <= {self.eps / 2}"
            )
        return ""


def approximate(
    f: IntPoly,
    alpha,
    eps,
    b_max: int = B_MAX,
    w_max: int = W_MAX,
    seed: int = 0,
    workers: int = 1,
) -> Approximation:
    """Find a root z of f mod a prime p with |z/p - alpha| <= eps.

    Half the tolerance goes to choosing a/b in B_f, half to the gap
    z/p - a/b, which shrinks as w grows.
    """
    alpha = as_rational(alpha)
    eps = as_rational(eps)
    run = Approximation(alpha, eps, b_max, w_max, seed)
    half = eps / 2
    frac = select_fraction(f, alpha, half, b_max)
    if frac is None:
        run.failed_stage = "select_fraction"
        return run
    run.fraction = frac
    run.t = t = solve_t(f, frac)

    w = 0
    while w <= w_max:
        found = _search(f, frac, t, w, w_max, seed, workers, run.stats)
        if found is None:
            break
        run.candidates += 1
        if found.gap <= half:
            run.witness = found
            return run
        w = found.w + 1
    run.failed_stage = "find_witness"
    return run


CACHE_FIELDS = ("poly", "a", "b", "t", "w", "p", "z", "seed", "timestamp")


def cache_record(f: IntPoly, W: Witness, seed: int, timestamp: float | None = None) -> str:
    if timestamp is None:
        timestamp = time.time()
    values = (f.to_text(), W.a, W.b, W.t, W.w, W.p, W.z, seed, timestamp)
    return json.dumps(dict(zip(CACHE_FIELDS, values)))


def append_cache(path, f: IntPoly, witnesses, seed: int) -> None:
    with open(path, "a") as fh:
        for W in witnesses:
            fh.write(cache_record(f, W, seed) + "\n")


def read_cache(path):
    """Yield (poly, witness, seed) per line; malformed lines raise ValueError."""
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                f = IntPoly.parse(rec["poly"])
                W = Witness(*(int(rec[k]) for k in ("a", "b", "t", "w", "p", "z")))
                seed = int(rec.get("seed", 0))
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
            yield f, W, seed
