"""Integer polynomials: evaluation, fixed divisor, the conjugate
polynomial G(w) = g(bw + t, b), and a sound irreducibility certificate.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from . import gfpoly
from .modarith import is_prime, sieve_primes


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, ``coeffs[i]`` is the coefficient of x**i."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            raise ValueError("the zero polynomial is not allowed")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def parse(cls, text: str) -> IntPoly:
        return parse_poly(text)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __call__(self, x):
        return evaluate(self, x)

    def normalized(self) -> IntPoly:
        """f or -f, whichever has a positive leading coefficient.

        Both have the same roots mod every prime and the same fixed divisor.
        """
        if self.leading > 0:
            return self
        return IntPoly(tuple(-c for c in self.coeffs))

    def to_text(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


_TERM = re.compile(r"([+-])?(\d+)?\*?(x(?:(?:\^|\*\*)(\d+))?)?")


def parse_poly(text: str) -> IntPoly:
    """Parse "1,0,1" (constant term first) or human syntax like "x^2+1"."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if "x" not in s:
        try:
            return IntPoly(tuple(int(c) for c in s.split(",")))
        except ValueError:
            raise ValueError(f"malformed coefficient list: {text!r}") from None

    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, mono, exp = m.groups()
        if m.end() == pos or (num is None and mono is None):
            raise ValueError(f"malformed polynomial: {text!r}")
        if pos > 0 and sign is None:
            raise ValueError(f"malformed polynomial: {text!r}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        if mono is None:
            power = 0
            if m.group(0).endswith("*"):
                raise ValueError(f"malformed polynomial: {text!r}")
        else:
            power = int(exp) if exp is not None else 1
        coeffs[power] = coeffs.get(power, 0) + c
        pos = m.end()
    n = max(coeffs)
    return IntPoly(tuple(coeffs.get(i, 0) for i in range(n + 1)))


def evaluate(f: IntPoly, x):
    """Exact value of f at x (int or Fraction), by Horner's rule."""
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def fixed_divisor(f: IntPoly) -> int:
    """gcd of f(x) over all integers x.

    Any integer polynomial of degree n is an integer combination of the
    binomials C(x, k), k <= n, with coefficients given by the forward
    differences of f at 0; those are in turn combinations of f(0..n), so
    the gcd over f(0), ..., f(n) is the gcd over all of Z.
    """
    return reduce(math.gcd, (abs(evaluate(f, x)) for x in range(f.degree + 1)))


def conjugate_g(f: IntPoly, b: int, t: int) -> IntPoly:
    """G(w) = sum_i c_i (b*w + t)**i * b**(n - i) = b**n * f(w + t/b)."""
    if not 1 <= t <= b - 1:
        raise ValueError(f"t must lie in [1, {b - 1}], got {t}")
    if math.gcd(b, f.leading * fixed_divisor(f)) != 1:
        raise ValueError(f"b = {b} divides c * r_f")
    n = f.degree
    out = [0] * (n + 1)
    for i, c in enumerate(f.coeffs):
        if c == 0:
            continue
        scale = c * b ** (n - i)
        # (b*w + t)**i = sum_k C(i, k) b**k t**(i-k) w**k
        for k in range(i + 1):
            out[k] += scale * math.comb(i, k) * b**k * t ** (i - k)
    return IntPoly(tuple(out))


def _divisors(m: int) -> list[int]:
    m = abs(m)
    small, large = [], []
    for d in range(1, math.isqrt(m) + 1):
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
    return small + large[::-1]


def has_rational_root(f: IntPoly, limit: int = 10**12) -> bool | None:
    """Rational root test. None when |c_0| or |c_n| is too large to enumerate divisors."""
    if f.coeffs[0] == 0:
        return True
    c0, cn = f.coeffs[0], f.leading
    if abs(c0) > limit or abs(cn) > limit:
        return None
    for num in _divisors(c0):
        for den in _divisors(cn):
            for r in (Fraction(num, den), Fraction(-num, den)):
                if evaluate(f, r) == 0:
                    return True
    return False


def irreducibility_witness(f: IntPoly, prime_bound: int) -> int | None:
    """Smallest prime q <= prime_bound, not dividing the leading
    coefficient, with f mod q irreducible over F_q.

    Such a q proves f irreducible over Q (f primitive: over Z). None means
    no certificate was found; it does not mean f is reducible, e.g.
    x^4 + 1 is irreducible yet splits modulo every prime.
    """
    if f.degree < 2:
        raise ValueError("irreducibility witness needs degree >= 2")
    if prime_bound < 2:
        raise ValueError("prime_bound must be at least 2")
    if has_rational_root(f):
        return None
    for q in sieve_primes(prime_bound):
        if f.leading % q == 0:
            continue
        if gfpoly.is_irreducible(gfpoly.reduce(f.coeffs, q), q):
            return q
    return None


def is_odd_prime(b: int) -> bool:
    return b > 2 and is_prime(b)
