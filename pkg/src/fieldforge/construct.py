"""Explicit realizations: S_n with prescribed signature and local behaviour,
A_n seeds and the Mestre even-degree step, family specialization, and
cyclic fields of prime degree from Gaussian periods.

Every constructor hands its output to the independent verifiers (Sturm
signature, exact congruences, Jordan certificate) before returning it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .galois import (
    CertificateFailure,
    GroupCertificate,
    certify_sn,
    cubic_resolvent,
    frobenius_sample,
)
from .orders import field_discriminant
from .polyarith import (
    FactorPattern,
    IntPolynomial,
    Signature,
    discriminant,
    factor_pattern_mod_p,
    is_irreducible,
    is_prime,
    is_square,
    next_prime,
    signature_of,
    valuation,
)
from .polyarith.modp import irreducibles
from .polyarith.poly import _coerce


class ConstructionError(ValueError):
    """A construction gave up; ``best`` holds the last candidate, if any."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


# ---------------------------------------------------------------------------
# seeds and residue patterns

def real_seed(n: int, k: int, scale: int = 1) -> IntPolynomial:
    """prod_{i<=n-2k} (X - C i) * prod_{i<=k} ((X - C i)^2 + C^2)."""
    if not 0 <= 2 * k <= n:
        raise ValueError("need 0 <= k <= n/2")
    if scale < 1:
        raise ValueError("scale must be at least 1")
    C = scale
    g = IntPolynomial((1,))
    for i in range(1, n - 2 * k + 1):
        g = g * IntPolynomial((-C * i, 1))
    for i in range(1, k + 1):
        g = g * IntPolynomial((C * C * i * i + C * C, -2 * C * i, 1))
    return g


def _pattern_degrees(pattern) -> tuple:
    if isinstance(pattern, FactorPattern):
        if not pattern.squarefree:
            raise ValueError("pattern must be squarefree")
        return pattern.cycle_type()
    return tuple(sorted(pattern, reverse=True))


def pattern_poly(n: int, p: int, pattern) -> IntPolynomial:
    """Monic lift of a squarefree product mod p with the given factor degrees.

    Factors are the first distinct monic irreducibles in coefficient order;
    linear ones are X - 1, X - 2, ..., X - (p-1), X.
    """
    degs = _pattern_degrees(pattern)
    if sum(degs) != n:
        raise ValueError(f"pattern degrees sum to {sum(degs)}, not {n}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    count = Counter(degs)
    if count[1] > p:
        raise ValueError(f"p={p} has only {p} distinct linear factors; pick a larger prime")
    g = IntPolynomial((1,))
    for d, m in sorted(count.items()):
        if d == 1:
            roots = list(range(1, p)) + [0]
            for r in roots[:m]:
                g = g * IntPolynomial((-r, 1))
            continue
        got = 0
        for cs in irreducibles(d, p):
            g = g * IntPolynomial(tuple(cs))
            got += 1
            if got == m:
                break
        if got < m:
            raise ValueError(f"not enough irreducibles of degree {d} mod {p}")
    return IntPolynomial(tuple(c % p for c in g.coeffs[:-1]) + (1,))


@dataclass(frozen=True)
class LocalCondition:
    """f must agree with ``target`` modulo p**k, or have ``pattern`` mod p."""

    p: int
    k: int = 1
    target: IntPolynomial | None = None
    pattern: tuple | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.k < 1:
            raise ValueError("modulus exponent must be positive")
        if (self.target is None) == (self.pattern is None):
            raise ValueError("give exactly one of target or pattern")
        if self.target is not None:
            t = _coerce(self.target)
            if t.lead % self.p == 0:
                raise ValueError("target leading coefficient must be a unit mod p")
            object.__setattr__(self, "target", t)

    @classmethod
    def krasner(cls, p: int, target) -> "LocalCondition":
        """Congruence at depth 2 v_p(disc) + 1, enough to fix the p-adic factorization."""
        t = _coerce(target)
        d = discriminant(t)
        if d == 0:
            raise ValueError("target must be separable")
        return cls(p, 2 * valuation(d, p) + 1, t)

    @classmethod
    def parse(cls, text: str) -> "LocalCondition":
        """``p:k:poly`` (congruence) or ``p:pattern:2,1`` (factor degrees)."""
        p, k, rest = text.split(":", 2)
        if k == "pattern":
            return cls(int(p), 1, pattern=tuple(int(x) for x in rest.split(",")))
        return cls(int(p), int(k), IntPolynomial.parse(rest))

    def residue(self, n: int) -> tuple:
        """(modulus, monic residue coefficients a_0..a_{n-1})."""
        m = self.p**self.k
        if self.pattern is not None:
            g = pattern_poly(n, self.p, self.pattern)
        else:
            g = self.target
            if g.degree != n:
                raise ValueError(f"condition at {self.p} has degree {g.degree}, expected {n}")
            inv = pow(g.lead, -1, m)
            g = IntPolynomial(tuple((c * inv) % m for c in g.coeffs))
        return m, tuple(c % m for c in g.coeffs[:n])

    def holds(self, f: IntPolynomial) -> bool:
        n = f.degree
        if self.pattern is not None:
            if discriminant(f) % self.p == 0:
                return False
            return factor_pattern_mod_p(f, self.p).cycle_type() == _pattern_degrees(self.pattern)
        m, res = self.residue(n)
        return all((f[i] - res[i]) % m == 0 for i in range(n))


def _crt(residues):
    """Combine [(modulus, coeff tuple)] coefficientwise."""
    M = 1
    out = None
    for m, r in residues:
        if out is None:
            M, out = m, list(r)
            continue
        inv = pow(M, -1, m)
        out = [(a + M * ((b - a) * inv % m)) for a, b in zip(out, r)]
        M *= m
    return M, out


def _nearest(target: int, residue: int, M: int) -> int:
    """Integer == residue (mod M) closest to target."""
    return target + ((residue - target + M // 2) % M) - M // 2


@dataclass
class Realization:
    polynomial: IntPolynomial
    certificate: GroupCertificate
    signature: Signature
    conditions: tuple
    auxiliary: tuple
    scale: int

    def __iter__(self):
        return iter((self.polynomial, self.certificate, self.signature))


def _aux_conditions(n, avoid):
    """Three primes whose residue patterns force the Jordan roles."""
    if n == 2:
        shapes = [(2,)]
    elif n == 3:
        shapes = [(3,), (2, 1)]
    else:
        shapes = [(n,), (n - 1, 1), (2,) + (1,) * (n - 2)]
    out = []
    p = max(2, n - 2)
    for shape in shapes:
        p = next_prime(p) if p in avoid or not is_prime(p) else p
        while p in avoid or Counter(shape)[1] > p:
            p = next_prime(p)
        out.append(LocalCondition(p, 1, pattern=shape))
        avoid = set(avoid) | {p}
        p = next_prime(p)
    return out


def sn_realize(n: int, k: int, conditions=(), max_doublings: int = 60,
               aux_offset: int = 0) -> Realization:
    """Monic f with Gal(f) = S_n, signature (n-2k, k) and the local conditions.

    The seed is rescaled until the rounded CRT lift keeps the signature.
    """
    if n < 2:
        raise ValueError("degree must be at least 2")
    if not 0 <= 2 * k <= n:
        raise ValueError("need 0 <= k <= n/2")
    conditions = tuple(conditions)
    primes = [c.p for c in conditions]
    if len(set(primes)) != len(primes):
        raise ValueError("each prime may carry only one condition")
    avoid = set(primes)
    if aux_offset:
        q = 2
        for _ in range(aux_offset):
            avoid.add(q)
            q = next_prime(q)
    aux = _aux_conditions(n, avoid)
    everything = conditions + tuple(aux)
    M, res = _crt([c.residue(n) for c in everything])
    best = None
    C = 1
    for _ in range(max_doublings):
        seed = real_seed(n, k, C)
        f = IntPolynomial(tuple(_nearest(seed[i], res[i], M) for i in range(n)) + (1,))
        best = f
        if discriminant(f) != 0 and signature_of(f) == Signature(n - 2 * k, k):
            break
        C *= 2
    else:
        raise ConstructionError("signature not reached; raise max_doublings", best)
    for c in everything:
        if not c.holds(f):
            raise ConstructionError(f"condition at {c.p} not met", f)
    try:
        cert = certify_sn(f, [c.p for c in aux])
    except CertificateFailure as exc:
        raise ConstructionError(f"certificate failed: {exc}", f) from exc
    return Realization(f, cert, signature_of(f), conditions, tuple(c.p for c in aux), C)


# ---------------------------------------------------------------------------
# alternating groups

# r1 = 0, square discriminant, irreducible with irreducible cubic resolvent;
# found by a sieve over small quartics and re-verified on use
A4_TOTALLY_COMPLEX = IntPolynomial((12, 8, 0, 0, 1))


def paper_u_block(i: int) -> IntPolynomial:
    """(X-i)^4 - 7(X-i)^2 - 3(X-i) + 1."""
    y = IntPolynomial((-i, 1))
    return y**4 - 7 * y**2 - 3 * y + 1


def is_a4_block(u: IntPolynomial) -> bool:
    """Totally complex quartic with group A_4."""
    d = discriminant(u)
    return (u.degree == 4 and d != 0 and is_square(d)
            and signature_of(u) == Signature(0, 2) and is_irreducible(u)
            and is_irreducible(cubic_resolvent(u)))


def search_a4_block(bound: int = 12) -> IntPolynomial:
    """Smallest (by max |coefficient|) depressed quartic passing is_a4_block."""
    for h in range(1, bound + 1):
        for b in range(-h, h + 1):
            for c in range(-h, h + 1):
                for d in range(-h, h + 1):
                    if max(abs(b), abs(c), abs(d)) != h:
                        continue
                    u = IntPolynomial((d, c, b, 0, 1))
                    if is_a4_block(u):
                        return u
    raise ConstructionError("no A_4 quartic in the search box")


def an_seed(n: int, k: int, block: IntPolynomial | None = None) -> IntPolynomial:
    """prod_{i<=n-2k} (X - i) times k/2 translated A_4 quartic blocks."""
    if not 0 <= 2 * k <= n:
        raise ValueError("need 0 <= k <= n/2")
    if k % 2:
        raise ValueError("k must be even: an even group has an even number of complex pairs")
    block = block or A4_TOTALLY_COMPLEX
    g = IntPolynomial((1,))
    for i in range(1, n - 2 * k + 1):
        g = g * IntPolynomial((-i, 1))
    for j in range(1, k // 2 + 1):
        u = block.shift(-j)
        if not is_a4_block(u):
            raise ConstructionError("block is not a totally complex A_4 quartic", u)
        g = g * u
    if discriminant(g) == 0 or not is_square(discriminant(g)):
        raise ConstructionError("seed is not separable with square discriminant", g)
    if signature_of(g) != Signature(n - 2 * k, k):
        raise ConstructionError("seed has the wrong signature", g)
    return g


# ---------------------------------------------------------------------------
# one-parameter families

def _tp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _tp_add(a, b):
    n = max(len(a), len(b))
    return _tp_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _tp_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _tp_trim(out)


def _tp_eval(a, t):
    v = Fraction(0)
    for c in reversed(a):
        v = v * t + c
    return v


@dataclass(frozen=True)
class FamilyPolynomial:
    """f(t, X) = sum_i c_i(t) X^i with c_i in Q[t] (ascending tuples)."""

    coeffs: tuple  # indexed by power of X
    note: str = ""

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def at(self, t0) -> tuple:
        t0 = Fraction(t0)
        return tuple(_tp_eval(c, t0) for c in self.coeffs)

    def cleared(self):
        """Integer coefficients in (t, X): (denominator, coeffs)."""
        den = 1
        for c in self.coeffs:
            for x in c:
                den = lcm(den, Fraction(x).denominator)
        return den, tuple(tuple(int(x * den) for x in c) for c in self.coeffs)

    def __str__(self):
        parts = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            tp = " + ".join(f"{x}*t^{j}" for j, x in enumerate(c) if x)
            parts.append(f"({tp})*X^{i}")
        return " + ".join(parts) or "0"

    @classmethod
    def from_int(cls, rows) -> "FamilyPolynomial":
        return cls(tuple(_tp_trim(Fraction(x) for x in r) for r in rows))


def mestre_even_step(g1, h) -> FamilyPolynomial:
    """(g1(X) h(t) - g1(t) h(X)) / ((X - t) h(0))."""
    g1, h = _coerce(g1), _coerce(h)
    if h(0) == 0:
        raise ValueError("h(0) must be nonzero")
    # numerator as polynomial in X with coefficients in Q[t]
    ht = tuple(Fraction(c) for c in h.coeffs)
    g1t = tuple(Fraction(c) for c in g1.coeffs)
    deg = max(g1.degree, h.degree)
    num = []
    for i in range(deg + 1):
        a = g1[i] if i <= g1.degree else 0
        b = h[i] if i <= h.degree else 0
        num.append(_tp_add(_tp_mul((Fraction(a),), ht), _tp_mul((Fraction(-b),), g1t)))
    # synthetic division by X - t
    q = [()] * deg
    carry = ()
    for i in range(deg, 0, -1):
        carry = _tp_add(num[i], _tp_mul((0, Fraction(1)), carry))
        q[i - 1] = carry
    remainder = _tp_add(num[0], _tp_mul((0, Fraction(1)), carry))
    if remainder:
        raise ValueError("X - t does not divide the numerator")
    h0 = Fraction(h(0))
    out = tuple(_tp_mul((1 / h0,), c) for c in q)
    while out and not out[-1]:
        out = out[:-1]
    return FamilyPolynomial(out, "mestre even step")


def _monic_integral(cs) -> tuple:
    """Monic integral polynomial with the same roots up to scaling by the lead.

    For c_n X^n + ... (integers) returns c_n^{n-1} f(X / c_n).
    """
    den = 1
    for c in cs:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in cs]
    n = len(ints) - 1
    a = ints[-1]
    if a < 0:
        ints = [-c for c in ints]
        a = -a
    out = tuple(ints[i] * a ** (n - 1 - i) for i in range(n)) + (1,)
    poly = IntPolynomial(out)
    return poly, a


@dataclass
class Specialization:
    polynomial: IntPolynomial  # monic integral, same splitting field
    raw: tuple  # rational coefficients before normalization
    scale: int  # X was replaced by X / scale
    signature: Signature | None
    observed_types: dict
    outside_support: tuple

    @property
    def consistent(self) -> bool:
        return not self.outside_support


def specialize(F: FamilyPolynomial, t0, support=None, prime_budget: int = 300) -> Specialization:
    """f(t0, X) made monic integral, with signature and Frobenius diagnostics.

    ``support`` is a set of cycle types allowed by the target group; the
    string "even" restricts to even permutations.
    """
    raw = F.at(t0)
    while raw and raw[-1] == 0:
        raise ValueError("leading coefficient vanishes at t0")
    poly, scale = _monic_integral(raw)
    sep = discriminant(poly) != 0
    sig = signature_of(poly) if sep else None
    types = frobenius_sample(poly, prime_budget).types() if sep else {}
    bad = ()
    if support is not None and types:
        if support == "even":
            bad = tuple(ct for ct in types if (sum(ct) - len(ct)) % 2)
        else:
            allowed = {tuple(ct) for ct in support}
            bad = tuple(ct for ct in types if ct not in allowed)
    return Specialization(poly, raw, scale, sig, types, tuple(sorted(bad)))


# ---------------------------------------------------------------------------
# cyclic fields from Gaussian periods

def _cyclotomic(m: int) -> IntPolynomial:
    f = IntPolynomial((-1,) + (0,) * (m - 1) + (1,))
    for d in range(1, m):
        if m % d == 0:
            f = f.exact_div(_cyclotomic(d))
    return f


def _cyc_mul(a, b, m):
    out = [0] * m
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[(i + j) % m] += x * y
    return out


def period_polynomial(q: int, conductor: int) -> IntPolynomial:
    """prod (X - eta) over the Gaussian periods of the degree-q subfield of Q(zeta_m)."""
    m = conductor
    units = [a for a in range(1, m) if _gcd(a, m) == 1]
    phi = len(units)
    if phi % q:
        raise ValueError(f"Q(zeta_{m}) has no subfield of degree {q}")
    gen = _generator(m, units)
    if gen is None:
        raise ValueError(f"(Z/{m})* is not cyclic")
    # subgroup of index q: powers of gen^q
    h = pow(gen, q, m)
    H = set()
    x = 1
    while x not in H:
        H.add(x)
        x = x * h % m
    periods = []
    for j in range(q):
        c = pow(gen, j, m)
        v = [0] * m
        for s in H:
            v[c * s % m] += 1
        periods.append(v)
    # multiply out with coefficients in Z[x]/(x^m - 1)
    poly = [[1] + [0] * (m - 1)]
    for eta in periods:
        new = [[0] * m for _ in range(len(poly) + 1)]
        for i, c in enumerate(poly):
            for t in range(m):
                new[i + 1][t] += c[t]
            prod = _cyc_mul(c, eta, m)
            for t in range(m):
                new[i][t] -= prod[t]
        poly = new
    phi_m = _cyclotomic(m)
    out = []
    for c in poly:
        r = _rem_monic(IntPolynomial(tuple(c)), phi_m)
        if r.degree > 0:
            raise ArithmeticError("period polynomial coefficient is not rational")
        out.append(r[0] if r.degree == 0 else 0)
    return IntPolynomial(tuple(out))


def _rem_monic(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    cs = list(a.coeffs)
    n = b.degree
    for i in range(len(cs) - 1, n - 1, -1):
        c = cs[i]
        if c:
            for j in range(n + 1):
                cs[i - n + j] -= c * b[j]
    return IntPolynomial(tuple(cs[:n]) if n else ())


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _generator(m, units):
    phi = len(units)
    primes = [p for p in range(2, phi + 1) if phi % p == 0 and is_prime(p)]
    for g in units:
        if all(pow(g, phi // p, m) != 1 for p in primes):
            return g
    return None


@dataclass
class CyclicField:
    q: int
    conductor: int
    polynomial: IntPolynomial
    field_disc: int
    signature: Signature
    types: tuple

    def __iter__(self):
        return iter((self.polynomial, self.field_disc))


def cyclic_prime_degree_field(q: int, p: int, prime_budget: int = 300) -> CyclicField:
    """The cyclic degree-q field of prime conductor p (or conductor q^2 when p = q)."""
    if not (is_prime(q) and is_prime(p)):
        raise ValueError("q and p must be prime")
    if p == q and q != 2:
        m = q * q
    elif p != q and (p - 1) % q == 0:
        m = p
    else:
        raise ValueError(f"need p = 1 (mod {q}), or p = q odd")
    f = period_polynomial(q, m)
    if not is_irreducible(f):
        raise ArithmeticError("period polynomial is reducible")
    inv = field_discriminant(f)
    if q == 2:
        expected = m if m % 4 == 1 else -m
    else:
        expected = m ** (q - 1)
    if inv.field_disc != expected or not inv.disc_exact:
        raise ArithmeticError(f"field discriminant {inv.field_disc} != {expected}")
    types = tuple(sorted(frobenius_sample(f, prime_budget).types()))
    if any(ct not in ((1,) * q, (q,)) for ct in types):
        raise ArithmeticError("Frobenius type outside the cyclic group")
    return CyclicField(q, m, f, inv.field_disc, inv.signature, types)


@dataclass(frozen=True)
class ConductorRow:
    conductor: int
    admissible: bool
    field_disc: int | None
    note: str


def cyclic_conductor_sweep(q: int, below: int) -> list:
    """Conductors that can carry a cyclic degree-q field, up to ``below``.

    Prime conductors p < below with p = 1 (mod q) qualify, as does q^2
    (always reported, since q ramifies only through it). Composite
    conductors multiply admissible ones and cannot beat their factors.
    """
    rows = []
    for p in range(2, below):
        if not is_prime(p):
            continue
        if p == q:
            cf = cyclic_prime_degree_field(q, q) if q != 2 else None
            rows.append(ConductorRow(q * q, cf is not None, cf.field_disc if cf else None,
                                     f"{q} ramifies with conductor {q * q}"))
        elif (p - 1) % q == 0:
            cf = cyclic_prime_degree_field(q, p)
            rows.append(ConductorRow(p, True, cf.field_disc, "prime conductor"))
        else:
            rows.append(ConductorRow(p, False, None, f"{p} != 1 (mod {q})"))
    if q >= below and q != 2:
        cf = cyclic_prime_degree_field(q, q)
        rows.append(ConductorRow(q * q, True, cf.field_disc, f"{q} ramifies with conductor {q * q}"))
    return rows


__all__ = [
    "A4_TOTALLY_COMPLEX",
    "ConductorRow",
    "ConstructionError",
    "CyclicField",
    "FamilyPolynomial",
    "LocalCondition",
    "Realization",
    "Specialization",
    "an_seed",
    "cyclic_conductor_sweep",
    "cyclic_prime_degree_field",
    "is_a4_block",
    "mestre_even_step",
    "paper_u_block",
    "pattern_poly",
    "period_polynomial",
    "real_seed",
    "search_a4_block",
    "sn_realize",
    "specialize",
]
