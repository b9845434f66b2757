"""Factorization over the integers: squarefree split, Hensel lifting, recombination."""

from __future__ import annotations

import math
from itertools import combinations

from . import modp
from .integers import primes_from
from .poly import IntPolynomial, _coerce, gcd


def squarefree_decomposition(f: IntPolynomial):
    """Yun's algorithm over Z: list of (g, m) with pp(f) = prod g**m."""
    f = _coerce(f).primitive_part()
    if f.degree < 1:
        return []
    out = []
    df = f.derivative()
    a0 = gcd(f, df)
    b = f.exact_div(a0)
    c = df.exact_div(a0)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            out.append((a.primitive_part(), i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def _sym(c, m):
    c %= m
    return c - m if c > m // 2 else c


def _hensel_step(f, g, h, s, t, m, m2):
    """One quadratic Hensel step (von zur Gathen-Gerhard 15.10) from m to m2."""
    mul, sub, add = modp.mul, modp.sub, modp.add
    e = sub(modp.reduce_poly(f, m2), mul(g, h, m2), m2)
    q, r = _divmod_monic(mul(s, e, m2), h, m2)
    g2 = add(add(g, mul(t, e, m2), m2), mul(q, g, m2), m2)
    h2 = add(h, r, m2)
    b = sub(add(mul(s, g2, m2), mul(t, h2, m2), m2), [1], m2)
    c, d = _divmod_monic(mul(s, b, m2), h2, m2)
    s2 = sub(s, d, m2)
    t2 = sub(sub(t, mul(t, b, m2), m2), mul(c, g2, m2), m2)
    return g2, h2, s2, t2


def _divmod_monic(a, b, m):
    """Division by a monic b with coefficients mod m (m need not be prime)."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], modp.strip(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % m
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % m
    return modp.strip(q), modp.strip([x % m for x in a[:db]])


def _lift(f, factors, p, k):
    """Lift monic factors of monic-mod-p^k f from mod p to mod p^k."""
    if len(factors) == 1:
        return [modp.reduce_poly(f, p**k)]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    g = [1]
    for a in left:
        g = modp.mul(g, a, p)
    h = [1]
    for a in right:
        h = modp.mul(h, a, p)
    _, s, t = modp.xgcd(g, h, p)
    target = p**k
    m = p
    while m < target:
        m2 = min(m * m, target)
        g, h, s, t = _hensel_step(f, g, h, s, t, m, m2)
        m = m2
    return _lift(g, left, p, k) + _lift(h, right, p, k)


def _choose_prime(f: IntPolynomial, candidates: int = 5):
    """Smallest good prime with the fewest modular factors among the first few."""
    best = None
    found = 0
    for p in primes_from(2):
        if f.lead % p == 0:
            continue
        a = modp.reduce_poly(list(f.coeffs), p)
        if len(modp.gcd(a, modp.derivative(a, p), p)) > 1:
            continue
        count = len(modp.factor_pattern_mod_p(f, p).parts)
        if best is None or count < best[1]:
            best = (p, count)
        found += 1
        if found >= candidates or count == 1:
            break
    return best


def _zassenhaus(f: IntPolynomial):
    """Factor a primitive squarefree f of degree >= 2 with positive lead."""
    n = f.degree
    p, count = _choose_prime(f)
    if count == 1:
        return [f]
    lc = f.lead
    norm2 = math.isqrt(sum(c * c for c in f.coeffs)) + 1
    bound = 2 * abs(lc) * (2**n) * norm2 + 1
    k = 1
    while p**k <= bound:
        k += 1
    pk = p**k
    _, facs, _ = modp.factor_mod_p(f, p)
    local = [list(h.coeffs) for h, _ in facs]
    inv = pow(lc, -1, pk)
    fm = [c * inv % pk for c in f.coeffs]
    lifted = _lift(fm, local, p, k)

    result = []
    remaining = list(range(len(lifted)))
    g = f
    s = 1
    while 2 * s <= len(remaining):
        hit = False
        for S in combinations(remaining, s):
            prod = [g.lead % pk]
            for i in S:
                prod = modp.mul(prod, lifted[i], pk)
            cand = IntPolynomial(tuple(_sym(c, pk) for c in prod)).primitive_part()
            if cand.degree < 1:
                continue
            # cheap constant-term divisibility filter before trial division
            if cand[0] != 0 and g[0] % cand[0] != 0:
                continue
            try:
                quo = g.exact_div(cand)
            except ValueError:
                continue
            result.append(cand)
            g = quo
            remaining = [i for i in remaining if i not in S]
            hit = True
            break
        if not hit:
            s += 1
    result.append(g.primitive_part())
    return result


def factor_over_integers(f: IntPolynomial):
    """Return (content, [(irreducible factor, multiplicity), ...]).

    content * prod(factor**m) == f; each factor is primitive with positive
    leading coefficient. Factors are sorted by (degree, coefficients).
    """
    f = _coerce(f)
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    cont = f.content()
    g = f.primitive_part()
    out = []
    if g.degree == 0:
        return cont, []
    # pull out powers of X first
    v = 0
    while g[v] == 0:
        v += 1
    if v:
        out.append((IntPolynomial((0, 1)), v))
        g = IntPolynomial(g.coeffs[v:])
    if g.degree > 0:
        for sq, m in squarefree_decomposition(g):
            if sq.degree == 1:
                out.append((sq, m))
            else:
                for h in _zassenhaus(sq):
                    out.append((h, m))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs, fm[1]))
    return cont, out


def is_irreducible(f: IntPolynomial) -> bool:
    f = _coerce(f)
    if f.degree < 1:
        return False
    cont, facs = factor_over_integers(f)
    return len(facs) == 1 and facs[0][1] == 1
