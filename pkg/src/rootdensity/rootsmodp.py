"""Roots of an integer polynomial modulo a prime, and the normalized
root set A_f = {z/p : f(z) = 0 mod p, 1 <= z <= p - 1} up to a bound.
"""

from __future__ import annotations

import csv
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import gfpoly
from .intpoly import IntPoly
from .modarith import sieve_primes

EXHAUSTIVE_THRESHOLD = 500


@dataclass(frozen=True, order=True)
class RootPoint:
    p: int
    z: int

    def __post_init__(self):
        if not 1 <= self.z <= self.p - 1:
            raise ValueError(f"root {self.z} outside [1, {self.p - 1}]")

    @property
    def value(self) -> Fraction:
        return Fraction(self.z, self.p)


def _split_rng(seed: int, p: int) -> random.Random:
    return random.Random(f"roots:{seed}:{p}")


def _equal_degree_roots(g: list[int], p: int, rng: random.Random) -> list[int]:
    """Roots of a monic squarefree g that splits into linear factors over F_p, p odd."""
    if len(g) == 1:
        return []
    if len(g) == 2:
        return [-g[0] % p]
    while True:
        delta = rng.randrange(p)
        h = gfpoly.powmod([delta, 1], (p - 1) // 2, g, p)
        d = gfpoly.gcd(g, gfpoly.sub(h, [1], p), p)
        if 1 < len(d) < len(g):
            rest = gfpoly.divmod_(g, d, p)[0]
            return _equal_degree_roots(d, p, rng) + _equal_degree_roots(gfpoly.monic(rest, p), p, rng)


def roots_mod_p(
    f: IntPoly,
    p: int,
    threshold: int = EXHAUSTIVE_THRESHOLD,
    seed: int = 0,
) -> list[int]:
    """All z in [0, p-1] with f(z) = 0 mod p, ascending.

    Below ``threshold`` every residue is tried. Otherwise the roots are
    isolated as gcd(f, x^p - x) and separated by random-shift splitting
    (the shifts come from an RNG keyed on ``(seed, p)``).
    """
    red = gfpoly.reduce(f.coeffs, p)
    if not red:
        raise ValueError(f"f vanishes identically mod {p}")
    if len(red) == 1:
        return []
    if p < threshold or p == 2:
        return [z for z in range(p) if gfpoly.evaluate(red, z, p) == 0]

    red = gfpoly.monic(red, p)
    xp = gfpoly.powmod([0, 1], p, red, p)
    g = gfpoly.gcd(red, gfpoly.sub(xp, [0, 1], p), p)
    return sorted(_equal_degree_roots(g, p, _split_rng(seed, p)))


def _points_for_primes(args) -> list[RootPoint]:
    f, primes, threshold, seed = args
    out = []
    for p in primes:
        if all(c % p == 0 for c in f.coeffs):
            continue
        out.extend(RootPoint(p, z) for z in roots_mod_p(f, p, threshold, seed) if z)
    return out


def a_f_points(
    f: IntPoly,
    X: int,
    threshold: int = EXHAUSTIVE_THRESHOLD,
    seed: int = 0,
    workers: int = 1,
) -> list[RootPoint]:
    """Every z/p in A_f with p <= X, ordered by (p, z)."""
    if X < 2:
        raise ValueError("X must be at least 2")
    primes = sieve_primes(X)
    if workers <= 1 or len(primes) < 2 * workers:
        return _points_for_primes((f, primes, threshold, seed))
    chunks = [primes[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(workers) as pool:
        parts = pool.map(_points_for_primes, [(f, c, threshold, seed) for c in chunks])
        points = [pt for part in parts for pt in part]
    return sorted(points)


def write_points_csv(points, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["p", "z", "value"])
    for pt in points:
        writer.writerow([pt.p, pt.z, f"{pt.z / pt.p:.12g}"])
