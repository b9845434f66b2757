"""Local maximality, field discriminants and prime splitting.

Everything here works one prime at a time. An order is kept as a basis of
the field over the power basis of Q[X]/(f); only orders whose index over
Z[theta] is a power of the current prime ever appear, so the Round 2
enlargement never needs a global integral basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as igcd

from .polyarith import (
    IntPolynomial,
    Signature,
    discriminant,
    factor_integer,
    factor_mod_p,
    is_irreducible,
    is_prime,
    signature_of,
    valuation,
)
from .polyarith import modp
from .polyarith.poly import _coerce


class NotPMaximalError(ValueError):
    """The equation order is not maximal at the requested prime."""


# ---------------------------------------------------------------------------
# linear algebra over F_p on row vectors

def _rref_mod_p(rows, ncols, p):
    """Row echelon form mod p; returns (rows, pivot columns)."""
    m = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                k = m[i][c]
                m[i] = [(a - k * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _left_kernel_mod_p(rows, p):
    """Basis of {x : sum x_i rows[i] = 0 (mod p)}."""
    n = len(rows)
    if n == 0:
        return []
    width = len(rows[0])
    # transpose and take the right kernel
    cols = [[rows[i][j] for i in range(n)] for j in range(width)]
    ech, piv = _rref_mod_p(cols, n, p)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for row, pc in zip(ech, piv):
            v[pc] = (-row[fc]) % p
        basis.append(v)
    return basis


def _rank_mod_p(rows, ncols, p):
    return len(_rref_mod_p(rows, ncols, p)[1]) if rows else 0


def _hnf(rows, n):
    """Integer echelon basis (n rows) of the full-rank lattice spanned by rows."""
    m = [list(r) for r in rows if any(r)]
    out = []
    for c in range(n):
        cand = [r for r in m if r[c] != 0]
        rest = [r for r in m if r[c] == 0]
        while len(cand) > 1:
            cand.sort(key=lambda r: abs(r[c]))
            piv = cand[0]
            nxt = [piv]
            for r in cand[1:]:
                q = r[c] // piv[c]
                r2 = [a - q * b for a, b in zip(r, piv)]
                (nxt if r2[c] else rest).append(r2)
            cand = nxt
        if not cand:
            raise ValueError("lattice is not of full rank")
        piv = cand[0]
        if piv[c] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        m = [r for r in rest if any(r)]
    # reduce above-diagonal entries
    for i in range(n):
        for j in range(i):
            q = out[j][i] // out[i][i]
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], out[i])]
    return out


def _inverse(mat):
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                k = a[i][c]
                a[i] = [x - k * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def _vecmat(v, mat):
    n = len(mat[0])
    out = [Fraction(0)] * n
    for vi, row in zip(v, mat):
        if vi:
            for j in range(n):
                out[j] += vi * row[j]
    return out


# ---------------------------------------------------------------------------
# orders with p-power index over Z[theta]

class _Order:
    def __init__(self, f: IntPolynomial, basis):
        self.f = f
        self.n = f.degree
        self.basis = [list(map(Fraction, b)) for b in basis]
        self.inv = _inverse(self.basis)
        self.table = [[None] * self.n for _ in range(self.n)]
        for i in range(self.n):
            for j in range(i, self.n):
                c = self.coords(self._mul(self.basis[i], self.basis[j]))
                self.table[i][j] = self.table[j][i] = c

    @classmethod
    def equation_order(cls, f):
        n = f.degree
        return cls(f, [[int(i == j) for j in range(n)] for i in range(n)])

    def _mul(self, a, b):
        n = self.n
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        fc = self.f.coeffs
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(n):
                    prod[k - n + i] -= c * fc[i]
        return prod[:n]

    def coords(self, x):
        c = _vecmat(x, self.inv)
        out = []
        for v in c:
            if v.denominator != 1:
                raise ValueError("element is not in the order")
            out.append(v.numerator)
        return out

    def mul_mod(self, u, v, p):
        n = self.n
        out = [0] * n
        for i in range(n):
            if u[i]:
                for j in range(n):
                    if v[j]:
                        s = u[i] * v[j]
                        t = self.table[i][j]
                        for k in range(n):
                            out[k] += s * t[k]
        return [x % p for x in out]

    def pow_mod(self, u, e, p):
        n = self.n
        result = self.coords([Fraction(1)] + [Fraction(0)] * (n - 1))
        result = [x % p for x in result]
        base = [x % p for x in u]
        while e:
            if e & 1:
                result = self.mul_mod(result, base, p)
            base = self.mul_mod(base, base, p)
            e >>= 1
        return result

    def unit_mod(self, p):
        one = [Fraction(1)] + [Fraction(0)] * (self.n - 1)
        return [x % p for x in self.coords(one)]

    def radical_mod_p(self, p):
        """Basis (O-coordinates mod p) of the radical of O/pO."""
        q = p
        while q < self.n:
            q *= p
        n = self.n
        frob = [self.pow_mod([int(i == j) for j in range(n)], q, p) for i in range(n)]
        return _left_kernel_mod_p(frob, p)

    def enlarge(self, p):
        """One Round 2 step. Returns (new order, r) with [O':O] = p**r."""
        n = self.n
        rad = self.radical_mod_p(p)
        ip = _hnf([[p * int(i == j) for j in range(n)] for i in range(n)] + rad, n)
        ip_inv = _inverse(ip)
        rows = []
        for i in range(n):
            row = []
            ti = self.table[i]
            for j in range(n):
                prod = [0] * n
                for k in range(n):
                    c = ip[j][k]
                    if c:
                        for l in range(n):
                            prod[l] += c * ti[k][l]
                cc = _vecmat(prod, ip_inv)
                row.extend(int(x) % p for x in cc)
            rows.append(row)
        ker = _left_kernel_mod_p(rows, p)
        if not ker:
            return self, 0
        u = _hnf([[p * int(i == j) for j in range(n)] for i in range(n)] + ker, n)
        new_basis = []
        for row in u:
            v = _vecmat(row, self.basis)
            new_basis.append([x / p for x in v])
        return _Order(self.f, _normalize_basis(new_basis)), len(ker)


def _normalize_basis(basis):
    n = len(basis)
    den = 1
    for row in basis:
        for x in row:
            den = den * x.denominator // igcd(den, x.denominator)
    ints = [[int(x * den) for x in row] for row in basis]
    h = _hnf(ints, n)
    return [[Fraction(x, den) for x in row] for row in h]


# ---------------------------------------------------------------------------
# public API

@dataclass(frozen=True)
class DedekindResult:
    maximal: bool
    witness: IntPolynomial | None = None

    def __bool__(self):
        return self.maximal


def dedekind_p_maximal(f: IntPolynomial, p: int) -> DedekindResult:
    """Dedekind's criterion for Z[X]/(f) at p.

    On failure the witness is gcd(F, g, h) mod p, where f = g*h + p*F with
    g the radical of f mod p.
    """
    f = _coerce(f)
    if not f.is_monic():
        raise ValueError("monic polynomial required")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    _, facs, _ = factor_mod_p(f, p)
    g = IntPolynomial((1,))
    h = IntPolynomial((1,))
    for phi, m in facs:
        g = g * phi
        h = h * phi ** (m - 1)
    F = (g * h - f)
    assert all(c % p == 0 for c in F.coeffs)
    F = IntPolynomial(tuple(c // p for c in F.coeffs))
    t = modp.gcd(modp.reduce_poly(list(F.coeffs), p), modp.reduce_poly(list(g.coeffs), p), p)
    t = modp.gcd(t, modp.reduce_poly(list(h.coeffs), p), p)
    if len(t) <= 1:
        return DedekindResult(True)
    return DedekindResult(False, IntPolynomial(tuple(t)))


def _maximal_p_order(f, p, max_rounds):
    """Round 2 at p. Returns (order, v_p(index)) or (None, partial) on cap."""
    order = _Order.equation_order(f)
    total = 0
    for _ in range(max_rounds):
        order, r = order.enlarge(p)
        if r == 0:
            return order, total
        total += r
    return None, total


def index_valuation(f: IntPolynomial, p: int, max_rounds: int = 32):
    """v_p([O_K : Z[theta]]), or None when the round cap is hit."""
    f = _coerce(f)
    if valuation(discriminant(f), p) < 2 or dedekind_p_maximal(f, p):
        return 0
    order, v = _maximal_p_order(f, p, max_rounds)
    return None if order is None else v


@dataclass(frozen=True)
class FieldInvariants:
    defining_poly: IntPolynomial
    field_disc: int
    signature: Signature
    disc_exact: bool
    poly_disc: int = 0
    index: int = 1
    notes: tuple = field(default_factory=tuple)

    def disc_text(self) -> str:
        if self.disc_exact:
            return str(self.field_disc)
        return f"divides {self.field_disc}"


def field_discriminant(f: IntPolynomial, effort: int = 200_000, max_rounds: int = 32) -> FieldInvariants:
    """Field discriminant of Q[X]/(f) by Round 2 at every p with p^2 | disc(f).

    If disc(f) does not factor within ``effort`` or a prime exceeds the
    enlargement cap, the returned value is only known to be a multiple of
    the true field discriminant and ``disc_exact`` is False.
    """
    f = _coerce(f)
    if not f.is_monic() or f.degree < 1:
        raise ValueError("monic polynomial of positive degree required")
    if not is_irreducible(f):
        raise ValueError(f"{f} is reducible")
    D = discriminant(f)
    sig = signature_of(f)
    fac = factor_integer(D, effort)
    exact = True
    notes = []
    index = 1
    for p, e in fac.primes.items():
        if e < 2:
            continue
        v = index_valuation(f, p, max_rounds)
        if v is None:
            exact = False
            notes.append(f"round cap reached at p={p}")
            continue
        index *= p**v
    if fac.cofactor != 1 and fac.cofactor_status == "composite":
        exact = False
        notes.append(f"unfactored cofactor {fac.cofactor}")
    return FieldInvariants(f, D // (index * index), sig, exact, D, index, tuple(notes))


@dataclass(frozen=True)
class PrimeSplit:
    """p O_K = prod P_i^{e_i}; ``factors`` lists (e_i, f_i) pairs."""

    p: int
    factors: tuple | None
    status: str = "ok"  # ok | undetermined

    @property
    def determined(self) -> bool:
        return self.factors is not None

    @property
    def ramified(self) -> bool:
        return any(e > 1 for e, _ in self.factors)

    def __str__(self):
        if not self.determined:
            return f"p={self.p}: undetermined"
        return f"p={self.p}: " + " ".join(f"(e={e},f={fd})" for e, fd in self.factors)


def prime_split(f: IntPolynomial, p: int, enlarge: bool = False, max_rounds: int = 32,
                tries: int = 400) -> PrimeSplit:
    """Decomposition of p in the field of f.

    When Z[theta] is p-maximal the answer is read off f mod p. Otherwise
    ``enlarge=True`` runs Round 2 and decomposes O/pO; without it a
    NotPMaximalError is raised.
    """
    f = _coerce(f)
    if not f.is_monic():
        raise ValueError("monic polynomial required")
    ded = dedekind_p_maximal(f, p)
    if ded:
        _, facs, _ = factor_mod_p(f, p)
        pairs = sorted((m, phi.degree) for phi, m in facs)
        return PrimeSplit(p, tuple(pairs))
    if not enlarge:
        raise NotPMaximalError(
            f"Z[x]/({f}) is not {p}-maximal (witness {ded.witness}); enlarge with Round 2 first")
    order, _ = _maximal_p_order(f, p, max_rounds)
    if order is None:
        return PrimeSplit(p, None, "undetermined")
    pairs = _decompose_algebra(order, p, tries)
    if pairs is None:
        return PrimeSplit(p, None, "undetermined")
    return PrimeSplit(p, tuple(sorted(pairs)))


def _decompose_algebra(order: _Order, p: int, tries: int):
    """(e, f) for each local factor of O/pO, by splitting with idempotents."""
    n = order.n
    rng = random.Random(p * 7919 + n)
    rad = order.radical_mod_p(p)
    one = order.unit_mod(p)
    pending = [one]
    out = []
    budget = tries
    while pending:
        eps = pending.pop()
        span = [order.mul_mod(eps, [int(i == j) for j in range(n)], p) for i in range(n)]
        dim = _rank_mod_p(span, n, p)
        rdim = _rank_mod_p([order.mul_mod(eps, r, p) for r in rad], n, p) if rad else 0
        qdim = dim - rdim
        while True:
            if budget <= 0:
                return None
            budget -= 1
            a = order.mul_mod(eps, [rng.randrange(p) for _ in range(n)], p)
            mu = _min_poly(order, a, eps, p)
            _, facs, _ = factor_mod_p(IntPolynomial(tuple(mu)), p)
            if len(facs) == 1:
                if facs[0][0].degree == qdim:
                    out.append((dim // qdim, qdim))
                    break
                continue
            for phi, m in facs:
                P = list((phi ** m).coeffs)
                Q = modp.divmod_p(mu, P, p)[0]
                _, s, _ = modp.xgcd(Q, P, p)
                E = modp.rem(modp.mul(s, Q, p), mu, p)
                pending.append(_eval_in(order, E, a, eps, p))
            break
    return out


def _min_poly(order, a, eps, p):
    n = order.n
    powers = [eps]
    while True:
        nxt = order.mul_mod(powers[-1], a, p)
        # a relation sum v_i powers[i] + v_k nxt = 0 with v_k != 0
        k = len(powers)
        ker = _left_kernel_mod_p(powers + [nxt], p)
        dep = [v for v in ker if v[-1]]
        if dep:
            v = dep[0]
            inv = pow(v[-1], -1, p)
            return [x * inv % p for x in v[:k]] + [1]
        powers.append(nxt)
        if len(powers) > n + 1:
            raise RuntimeError("minimal polynomial search overran the dimension")


def _eval_in(order, poly, a, eps, p):
    result = [0] * order.n
    for c in reversed(poly):
        result = order.mul_mod(result, a, p)
        if c:
            result = [(x + c * e) % p for x, e in zip(result, eps)]
    return result
