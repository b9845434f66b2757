"""Sturm sequences, real root counting and exact root isolation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .poly import IntPolynomial, NotSeparableError, _coerce


@dataclass(frozen=True)
class Signature:
    r1: int
    r2: int

    @property
    def degree(self) -> int:
        return self.r1 + 2 * self.r2

    def conjugation_type(self) -> str:
        """Cycle type of complex conjugation on the roots, e.g. ``1^3 2^2``."""
        parts = []
        if self.r1:
            parts.append(f"1^{self.r1}" if self.r1 > 1 else "1")
        if self.r2:
            parts.append(f"2^{self.r2}" if self.r2 > 1 else "2")
        return " ".join(parts)

    def __iter__(self):
        return iter((self.r1, self.r2))

    def __str__(self):
        return f"({self.r1},{self.r2})"


def _positive_prem(a, b):
    """Remainder of a by b scaled by a *positive* constant, as an int list."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    alb = abs(lb)
    sgn = 1 if lb > 0 else -1
    while a and len(a) - 1 >= db:
        la = a[-1]
        shift = len(a) - 1 - db
        # alb * a - sgn * la * x^shift * b keeps the scale factor positive
        a = [c * alb for c in a]
        f = sgn * la
        for i, bc in enumerate(b):
            a[i + shift] -= f * bc
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def sturm_sequence(f: IntPolynomial):
    """Sturm chain f, f', -rem, ... with primitive (positive-content) integer entries.

    The final entry is gcd(f, f') up to a positive constant.
    """
    f = _coerce(f)
    if f.degree < 1:
        return [list(f.coeffs)]
    seq = [list(f.coeffs), list(f.derivative().coeffs)]
    while True:
        r = _positive_prem(seq[-2], seq[-1])
        if not r:
            break
        r = [-c for c in r]
        g = abs(reduce(math.gcd, r))
        seq.append([c // g for c in r])
    return seq


def _sign_eval(coeffs, p, q):
    acc = 0
    qpow = 1
    for c in reversed(coeffs):
        acc = acc * p + c * qpow
        qpow *= q
    return (acc > 0) - (acc < 0)


def _variations(signs):
    v = 0
    last = 0
    for s in signs:
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def _var_at(seq, x):
    x = Fraction(x)
    return _variations([_sign_eval(s, x.numerator, x.denominator) for s in seq])


def _var_inf(seq, positive=True):
    signs = []
    for s in seq:
        lc = s[-1]
        sg = 1 if lc > 0 else -1
        if not positive and (len(s) - 1) % 2:
            sg = -sg
        signs.append(sg)
    return _variations(signs)


def count_real_roots(f: IntPolynomial, seq=None) -> int:
    """Number of distinct real roots."""
    seq = seq or sturm_sequence(f)
    return _var_inf(seq, False) - _var_inf(seq, True)


def count_roots_between(seq, a, b) -> int:
    """Distinct roots in (a, b] for a < b (a must not be a root)."""
    return _var_at(seq, a) - _var_at(seq, b)


def _check_separable(seq):
    if len(seq[-1]) - 1 > 0:
        raise NotSeparableError("polynomial has repeated roots")


def signature_of(f: IntPolynomial) -> Signature:
    f = _coerce(f)
    if f.degree < 1:
        raise ValueError("signature needs degree >= 1")
    seq = sturm_sequence(f)
    _check_separable(seq)
    r1 = count_real_roots(f, seq)
    return Signature(r1, (f.degree - r1) // 2)


def is_totally_real(f: IntPolynomial) -> bool:
    """True iff f is separable with deg(f) distinct real roots."""
    seq = sturm_sequence(f)
    if len(seq[-1]) > 1:
        return False
    return count_real_roots(f, seq) == f.degree


def root_bound(f: IntPolynomial) -> Fraction:
    """Cauchy bound: every root has |x| < 1 + max|a_i / a_n|."""
    f = _coerce(f)
    lc = abs(f.lead)
    return 1 + Fraction(max(abs(c) for c in f.coeffs[:-1]) if f.degree > 0 else 0, lc)


def real_roots_isolated(f: IntPolynomial, precision=Fraction(1, 16)):
    """Disjoint ascending intervals (lo, hi), one per real root.

    A root lies in the open interval (lo, hi), or equals lo when lo == hi.
    Every interval has width <= precision.
    """
    f = _coerce(f)
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    seq = sturm_sequence(f)
    _check_separable(seq)
    if f.degree < 1:
        return []
    B = root_bound(f)
    out = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        k = count_roots_between(seq, lo, hi)
        if k == 0:
            continue
        if k == 1 and hi - lo <= precision and f.sign_at(hi) != 0:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if f.sign_at(mid) == 0:
            out.append((mid, mid))
            d = (hi - lo) / 4
            while count_roots_between(seq, mid - d, mid + d) != 1 or \
                    f.sign_at(mid - d) == 0 or f.sign_at(mid + d) == 0:
                d /= 2
            stack.append((lo, mid - d))
            stack.append((mid + d, hi))
        else:
            stack.append((lo, mid))
            stack.append((mid, hi))
    # (lo, hi] with f(hi) != 0 is the open interval (lo, hi)
    return sorted(out)


def refine_root(f: IntPolynomial, lo: Fraction, hi: Fraction, precision):
    """Bisect an isolating interval (lo, hi) of a simple root to width <= precision."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo == hi:
        return lo, hi
    slo = f.sign_at(lo)
    while hi - lo > precision:
        mid = (lo + hi) / 2
        sm = f.sign_at(mid)
        if sm == 0:
            return mid, mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi
