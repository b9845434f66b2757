"""Exact univariate integer polynomials.

Coefficients are stored ascending: ``coeffs[i]`` is the coefficient of X**i.
Rational helpers at the bottom of the module work on plain tuples of
``Fraction`` and are used by the Sturm and order code.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce


class NotSeparableError(ValueError):
    """Raised when an operation requires a squarefree polynomial."""


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple

    def __post_init__(self):
        cs = list(self.coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"non-integer coefficient {c!r}")
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- construction -------------------------------------------------
    @classmethod
    def from_roots(cls, roots):
        out = cls((1,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def parse(cls, text) -> "IntPolynomial":
        """Accept ``x^3 - 3*x + 1`` or an ascending list ``[1, -3, 0, 1]``."""
        if isinstance(text, IntPolynomial):
            return text
        if isinstance(text, (list, tuple)):
            return cls(tuple(int(c) for c in text))
        s = text.strip()
        if s.startswith("["):
            if not s.endswith("]"):
                raise ValueError(f"unterminated coefficient list: {text!r}")
            body = s[1:-1].replace(",", " ").split()
            return cls(tuple(int(c) for c in body))
        return _parse_human(s)

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def content(self) -> int:
        if not self.coeffs:
            return 0
        g = reduce(math.gcd, self.coeffs)
        return -g if self.lead < 0 else g

    def primitive_part(self) -> "IntPolynomial":
        c = self.content()
        if c in (0, 1):
            return self
        return IntPolynomial(tuple(a // c for a in self.coeffs))

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self[i] + other[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exact_div(self, other) -> "IntPolynomial":
        """Exact division over the integers; ValueError if not exact."""
        q, r = self.divmod_rational(other)
        if any(r) or any(c.denominator != 1 for c in q):
            raise ValueError(f"{other} does not divide {self} over Z")
        return IntPolynomial(tuple(int(c) for c in q))

    def divides(self, other) -> bool:
        try:
            other.exact_div(self)
            return True
        except ValueError:
            return False

    def divmod_rational(self, other):
        other = _coerce(other)
        return qdivmod(tuple(Fraction(c) for c in self.coeffs),
                       tuple(Fraction(c) for c in other.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Fraction) -> int:
        """Exact sign of f(x) for rational x, integer-only evaluation."""
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        acc = 0
        qpow = 1
        for c in reversed(self.coeffs):
            acc = acc * p + c * qpow
            qpow *= q
        # acc = q**deg * f(p/q) up to a positive factor
        return (acc > 0) - (acc < 0)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def shift(self, t: int) -> "IntPolynomial":
        """Return f(X + t)."""
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += t * cs[j + 1]
        return IntPolynomial(tuple(cs))

    def reflect(self) -> "IntPolynomial":
        """Return f(-X)."""
        return IntPolynomial(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)))

    def compose(self, g: "IntPolynomial") -> "IntPolynomial":
        out = IntPolynomial(())
        for c in reversed(self.coeffs):
            out = out * g + c
        return out

    def reduce_mod(self, m: int) -> "IntPolynomial":
        return IntPolynomial(tuple(c % m for c in self.coeffs))

    def __str__(self):
        return format_poly(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({str(self)!r})"

    def to_list(self):
        return list(self.coeffs)


def _coerce(v):
    if isinstance(v, IntPolynomial):
        return v
    if isinstance(v, int):
        return IntPolynomial((v,))
    raise TypeError(f"cannot use {v!r} as a polynomial")


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(?:([a-zA-Z])\s*(?:(?:\^|\*\*)\s*(\d+))?)?")


def _parse_human(s: str) -> IntPolynomial:
    compact = s.replace(" ", "")
    if not compact:
        raise ValueError("empty polynomial")
    coeffs = {}
    pos = 0
    var = None
    while pos < len(compact):
        m = _TERM.match(compact, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {s!r} at offset {pos}")
        sign, num, v, exp = m.groups()
        if not num and not v:
            raise ValueError(f"cannot parse polynomial {s!r} at offset {pos}")
        if pos > 0 and not sign:
            raise ValueError(f"missing operator in {s!r} at offset {pos}")
        if v:
            if var is None:
                var = v
            elif v != var:
                raise ValueError(f"mixed variables in {s!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        e = int(exp) if exp else (1 if v else 0)
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    n = max(coeffs) + 1
    return IntPolynomial(tuple(coeffs.get(i, 0) for i in range(n)))


def format_poly(coeffs, var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------
# resultants and discriminants

def _prem(a, b):
    """Pseudo-remainder lc(b)**(da-db+1) * a mod b over Z (ascending lists)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for i, bc in enumerate(b):
            a[i + shift] -= la * bc
        a.pop()
        e -= 1
        while a and a[-1] == 0:
            a.pop()
    if e > 0:
        f = lb**e
        a = [c * f for c in a]
    return a


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g) via the subresultant PRS (Cohen, Algorithm 3.3.7)."""
    f, g = _coerce(f), _coerce(g)
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    A, B = list(f.coeffs), list(g.coeffs)
    dA, dB = len(A) - 1, len(B) - 1
    if dA == 0:
        return A[0] ** dB
    if dB == 0:
        return B[0] ** dA
    a = reduce(math.gcd, A)
    b = reduce(math.gcd, B)
    A = [c // a for c in A]
    B = [c // b for c in B]
    t = a**dB * b**dA
    s = 1
    if dA < dB:
        A, B = B, A
        if dA % 2 and dB % 2:
            s = -1
    g_, h = 1, 1
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _prem(A, B)
        A = B
        if not R:
            return 0
        div = g_ * h**delta
        B = [c // div for c in R]
        g_ = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g_
        else:
            h = g_**delta // h ** (delta - 1)
        if len(B) - 1 <= 0:
            break
    dA = len(A) - 1
    lb = B[0]
    if dA == 1:
        h_fin = lb
    else:
        h_fin = lb**dA // h ** (dA - 1)
    return s * t * h_fin


def discriminant(f: IntPolynomial) -> int:
    """(-1)**(n(n-1)/2) * Res(f, f') / lc(f)."""
    f = _coerce(f)
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, rem = divmod(r, f.lead)
    assert rem == 0
    return sign * q


def gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Z with positive leading coefficient."""
    f, g = _coerce(f), _coerce(g)
    if f.is_zero():
        return g.primitive_part()
    if g.is_zero():
        return f.primitive_part()
    c = math.gcd(f.content(), g.content())
    a, b = list(f.primitive_part().coeffs), list(g.primitive_part().coeffs)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a = b
        if r:
            cont = reduce(math.gcd, r)
            b = [x // cont for x in r]
        else:
            b = []
    out = IntPolynomial(tuple(a)).primitive_part()
    return out * c if out.degree > 0 else IntPolynomial((c,))


def is_squarefree(f: IntPolynomial) -> bool:
    return f.degree >= 0 and gcd(f, f.derivative()).degree <= 0


# ---------------------------------------------------------------------
# rational-coefficient helpers (tuples of Fraction, ascending)

def qstrip(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def qdivmod(a, b):
    a, b = list(qstrip(a)), qstrip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), tuple(a)
    q = [Fraction(0)] * (len(a) - db)
    inv = 1 / Fraction(b[-1])
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return qstrip(q), qstrip(a[:db])


def qmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return qstrip(out)


def qgcd(a, b):
    """Monic gcd over Q."""
    a, b = qstrip(a), qstrip(b)
    while b:
        a, b = b, qdivmod(a, b)[1]
    if not a:
        return ()
    lc = a[-1]
    return tuple(Fraction(c) / lc for c in a)


def to_int_primitive(a) -> IntPolynomial:
    """Clear denominators and take the primitive part (positive lead)."""
    a = qstrip(a)
    if not a:
        return IntPolynomial(())
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (Fraction(c).denominator for c in a), 1)
    return IntPolynomial(tuple(int(Fraction(c) * den) for c in a)).primitive_part()
