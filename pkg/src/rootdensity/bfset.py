"""The scaffold set B_f of fractions a/b (b an odd prime) for which
a*c*x^(n-1) = -r_f (mod b) is solvable, target selection inside it, and
the shift t solving that congruence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction as Q

from .intpoly import IntPoly, fixed_divisor, is_odd_prime
from .modarith import dth_power_residue_test, dth_root_mod, inv_mod, sieve_primes


@dataclass(frozen=True)
class Fraction:
    a: int
    b: int

    def __post_init__(self):
        if not 1 <= self.a < self.b:
            raise ValueError(f"need 1 <= a < b, got {self.a}/{self.b}")

    @property
    def value(self) -> Q:
        return Q(self.a, self.b)

    def __str__(self):
        return f"{self.a}/{self.b}"


def as_rational(x) -> Q:
    """Exact rational from an int, Fraction, Decimal or decimal string.

    Floats go through their shortest repr, so 0.1 means 1/10.
    """
    if isinstance(x, float):
        x = repr(x)
    return Q(x)


def _target_residue(f: IntPoly, a: int, b: int, r_f: int) -> int:
    # a*c*x^(n-1) = -r_f  <=>  x^(n-1) = -r_f * (a*c)^-1
    return -r_f * inv_mod(a * f.leading, b) % b


def bf_contains(f: IntPoly, a: int, b: int) -> bool:
    if not is_odd_prime(b):
        raise ValueError(f"b must be an odd prime, got {b}")
    if not 1 <= a < b:
        raise ValueError(f"a must lie in [1, {b - 1}], got {a}")
    return _member(f, a, b, fixed_divisor(f))


def _member(f: IntPoly, a: int, b: int, r_f: int) -> bool:
    if math.gcd(b, f.leading * r_f) != 1:
        return False
    return dth_power_residue_test(_target_residue(f, a, b, r_f), f.degree - 1, b)


def solve_t(f: IntPoly, frac: Fraction) -> int:
    """Smallest t in [1, b-1] with a*c*t^(n-1) = -r_f (mod b)."""
    if not bf_contains(f, frac.a, frac.b):
        raise ValueError(f"{frac} is not in B_f")
    r_f = fixed_divisor(f)
    return dth_root_mod(_target_residue(f, frac.a, frac.b, r_f), f.degree - 1, frac.b)


def _nearest_numerator(alpha: Q, b: int) -> int:
    # round half down, then clamp into [1, b-1]
    x = alpha * b
    a = math.ceil(x - Q(1, 2))
    return min(max(a, 1), b - 1)


def _odd_part(m: int) -> int:
    while m % 2 == 0:
        m //= 2
    return m


def select_fraction(f: IntPoly, alpha, eps, b_max: int) -> Fraction | None:
    """Element of B_f within eps of alpha, using the smallest workable prime b <= b_max.

    Even degree: any b with gcd(n-1, b-1) = 1 makes x -> x^(n-1) a
    bijection, so every numerator is in B_f and the nearest one is taken.
    Odd degree: b = 3 mod 4 with gcd(b-1, h) = 1 (n-1 = 2^e h) makes the
    image exactly the squares; numerators are searched outward from the
    nearest within a window of half-width ceil(sqrt(b)) + 1, which must hit
    a member once the window is wider than the longest run of residues.
    """
    alpha = as_rational(alpha)
    eps = as_rational(eps)
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    if eps <= 0:
        raise ValueError("eps must be positive")
    n = f.degree
    r_f = fixed_divisor(f)
    cr = f.leading * r_f
    h = _odd_part(n - 1)

    for b in sieve_primes(b_max):
        if b == 2 or math.gcd(b, cr) != 1:
            continue
        nearest = _nearest_numerator(alpha, b)
        if n % 2 == 0:
            if math.gcd(n - 1, b - 1) != 1:
                continue
            candidates = [nearest]
        else:
            if b % 4 != 3 or math.gcd(b - 1, h) != 1:
                continue
            half_width = math.isqrt(b) + 2  # ceil(sqrt(b)) + 1, b not a square
            candidates = [nearest]
            for k in range(1, half_width + 1):
                candidates += [nearest - k, nearest + k]
        for a in candidates:
            if 1 <= a < b and abs(Q(a, b) - alpha) <= eps and _member(f, a, b, r_f):
                return Fraction(a, b)
    return None
