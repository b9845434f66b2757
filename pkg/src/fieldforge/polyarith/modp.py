"""Polynomials over the prime field F_p and their factorization.

Polynomials are ascending lists of ints in [0, p). Distinct-degree
factorization gives factor patterns cheaply; Cantor-Zassenhaus splits
equal-degree parts when the factors themselves are wanted.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from .integers import is_prime
from .poly import IntPolynomial, _coerce


def strip(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce_poly(f, p):
    return strip([c % p for c in f])


def add(a, b, p):
    n = max(len(a), len(b))
    return strip([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return strip([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return strip([c % p for c in out])


def scale(a, c, p):
    return strip([x * c % p for x in a])


def divmod_p(a, b, p):
    a = list(a)
    b = strip(list(b))
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) - 1 < db:
        return [], strip(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return strip(q), strip(a[:db])


def rem(a, b, p):
    return divmod_p(a, b, p)[1]


def monic(a, p):
    if not a:
        return a
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a, b, p):
    a, b = strip(list(a)), strip(list(b))
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def xgcd(a, b, p):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = strip(list(a)), strip(list(b))
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_p(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def powmod(base, e, mod, p):
    out = [1]
    base = rem(base, mod, p)
    while e:
        if e & 1:
            out = rem(mul(out, base, p), mod, p)
        base = rem(mul(base, base, p), mod, p)
        e >>= 1
    return out


def derivative(a, p):
    return strip([i * c % p for i, c in enumerate(a)][1:])


def squarefree_decomposition(f, p):
    """Monic f -> list of (g, m) with f = prod g**m, each g squarefree."""
    f = monic(strip(list(f)), p)
    out = []
    if len(f) <= 1:
        return out
    df = derivative(f, p)
    if not df:
        # f is a p-th power: f(X) = g(X^p), g = f^(1/p) coefficientwise
        root = [f[i] for i in range(0, len(f), p)]
        return [(g, m * p) for g, m in squarefree_decomposition(root, p)]
    c = gcd(f, df, p)
    w = divmod_p(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_p(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = divmod_p(c, y, p)[0]
    if len(c) > 1:
        root = [c[i] for i in range(0, len(c), p)]
        out.extend((g, m * p) for g, m in squarefree_decomposition(root, p))
    return out


def distinct_degree(f, p):
    """Squarefree monic f -> list of (g_d, d), g_d the product of degree-d factors."""
    out = []
    f = list(f)
    h = [0, 1]
    x = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_p(f, g, p)[0]
            h = rem(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f, d, p, rng=None):
    """Split squarefree monic f, all of whose factors have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    rng = rng or random.Random(0)
    while True:
        a = strip([rng.randrange(p) for _ in range(n)])
        if len(a) <= 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t = list(a)
            cur = list(a)
            for _ in range(d - 1):
                cur = rem(mul(cur, cur, p), f, p)
                t = add(t, cur, p)
            g = gcd(f, t, p)
        else:
            g = gcd(f, a, p)
            if 1 < len(g) < len(f):
                pass
            else:
                b = powmod(a, (p**d - 1) // 2, f, p)
                g = gcd(f, sub(b, [1], p), p)
        if 1 < len(g) < len(f):
            h = divmod_p(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(h, d, p, rng)


@dataclass(frozen=True)
class FactorPattern:
    """Multiset of (degree, multiplicity) pairs, stored sorted."""

    parts: tuple

    @classmethod
    def of(cls, pairs):
        return cls(tuple(sorted(pairs)))

    @property
    def degree(self) -> int:
        return sum(d * m for d, m in self.parts)

    @property
    def squarefree(self) -> bool:
        return all(m == 1 for _, m in self.parts)

    def cycle_type(self):
        """Descending tuple of factor degrees; only meaningful when squarefree."""
        out = []
        for d, m in self.parts:
            out.extend([d] * m)
        return tuple(sorted(out, reverse=True))

    def __str__(self):
        return "{" + ",".join(f"({d},{m})" for d, m in self.parts) + "}"


def _check_input(f, p):
    f = _coerce(f)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f.lead % p == 0:
        raise ValueError(f"p={p} divides the leading coefficient")
    return f


def factor_mod_p(f: IntPolynomial, p: int):
    """Complete factorization of f modulo p.

    Returns (pattern, factors, unit) where factors is a sorted list of
    (monic factor as IntPolynomial with coefficients in [0, p), multiplicity)
    and f = unit * prod(factor**m) mod p.
    """
    f = _check_input(f, p)
    a = reduce_poly(list(f.coeffs), p)
    unit = a[-1]
    rng = random.Random(p)
    factors = Counter()
    for g, m in squarefree_decomposition(a, p):
        for gd, d in distinct_degree(g, p):
            for h in equal_degree(gd, d, p, rng):
                factors[tuple(h)] += m
    pairs = sorted((tuple(h), m) for h, m in factors.items())
    pattern = FactorPattern.of((len(h) - 1, m) for h, m in pairs)
    return pattern, [(IntPolynomial(h), m) for h, m in pairs], unit


def factor_pattern_mod_p(f: IntPolynomial, p: int) -> FactorPattern:
    """Degrees and multiplicities only (no equal-degree splitting)."""
    f = _check_input(f, p)
    a = reduce_poly(list(f.coeffs), p)
    parts = []
    for g, m in squarefree_decomposition(a, p):
        for gd, d in distinct_degree(g, p):
            parts.extend([(d, m)] * ((len(gd) - 1) // d))
    return FactorPattern.of(parts)


def is_irreducible_mod_p(f, p) -> bool:
    a = monic(reduce_poly(list(f), p), p)
    n = len(a) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if len(gcd(a, derivative(a, p), p)) > 1:
        return False
    dd = distinct_degree(a, p)
    return len(dd) == 1 and dd[0][1] == n


def irreducibles(d: int, p: int):
    """Monic irreducibles of degree d mod p in increasing integer encoding."""
    for code in range(p**d):
        cs = []
        c = code
        for _ in range(d):
            cs.append(c % p)
            c //= p
        cs.append(1)
        if is_irreducible_mod_p(cs, p):
            yield cs
