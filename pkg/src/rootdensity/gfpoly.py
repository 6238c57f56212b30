"""Dense univariate polynomials over the prime field F_p.

Polynomials are plain lists of residues, constant term first, with no
trailing zeros; the zero polynomial is the empty list.
"""

from __future__ import annotations


def trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def reduce(coeffs, p: int) -> list[int]:
    return trim([c % p for c in coeffs])


def monic(f: list[int], p: int) -> list[int]:
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def sub(f: list[int], g: list[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    f = f + [0] * (n - len(f))
    g = g + [0] * (n - len(g))
    return trim([(x - y) % p for x, y in zip(f, g)])


def mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] += x * y
    return trim([c % p for c in out])


def divmod_(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    if len(r) <= dg:
        return [], r
    inv = pow(g[-1], -1, p)
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k] * inv % p
        if c:
            q[k - dg] = c
            for j in range(dg + 1):
                r[k - dg + j] = (r[k - dg + j] - c * g[j]) % p
    return q, trim(r[:dg])


def mod(f: list[int], g: list[int], p: int) -> list[int]:
    return divmod_(f, g, p)[1]


def mulmod(f: list[int], g: list[int], m: list[int], p: int) -> list[int]:
    return mod(mul(f, g, p), m, p)


def powmod(f: list[int], e: int, m: list[int], p: int) -> list[int]:
    """f**e mod m over F_p."""
    result = [1] if len(m) > 1 else []
    base = mod(f, m, p)
    for bit in bin(e)[2:]:
        result = mulmod(result, result, m, p)
        if bit == "1":
            result = mulmod(result, base, m, p)
    return result


def gcd(f: list[int], g: list[int], p: int) -> list[int]:
    """Monic gcd (the empty list if both inputs are zero)."""
    while g:
        f, g = g, mod(f, g, p)
    return monic(f, p) if f else f


def evaluate(f: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's irreducibility test for f of degree >= 1 over F_p."""
    n = len(f) - 1
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n == 1:
        return True
    f = monic(f, p)
    x = [0, 1]

    def frobenius_power(k):
        h = x
        for _ in range(k):
            h = powmod(h, p, f, p)
        return h

    if sub(frobenius_power(n), x, p):
        return False
    for r in _prime_factors(n):
        h = frobenius_power(n // r)
        if len(gcd(f, sub(h, x, p), p)) > 1:
            return False
    return True
