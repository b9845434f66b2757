"""Totally real polynomials of bounded discriminant.

The search runs down the antiderivative tower: a monic f of degree n is
totally real and separable only if every derivative is, and once f^(k) is
fixed the admissible constants of f^(k-1) form the lattice points of a
closed interval cut out by the extreme values of an antiderivative.
The top two coefficients are bounded with Hunter's theorem.
A brute-force box scan is kept alongside as an independent check.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, floor

from .orders import field_discriminant
from .polyarith import (
    IntPolynomial,
    discriminant,
    gcd,
    integer_nth_root,
    is_irreducible,
    is_totally_real,
    real_roots_isolated,
    signature_of,
)
from .polyarith.realroots import count_roots_between, sturm_sequence

# gamma_k ** k for k = 1..8
HERMITE_POWER = {
    1: Fraction(1),
    2: Fraction(4, 3),
    3: Fraction(2),
    4: Fraction(4),
    5: Fraction(8),
    6: Fraction(64, 3),
    7: Fraction(64),
    8: Fraction(256),
}

_ROOT_SCALE = 1 << 40
SIEVE_CAP = 5_000_000


def _root_upper(q: Fraction, r: int, scale: int = _ROOT_SCALE) -> Fraction:
    """A rational >= q**(1/r), within 1/scale of it."""
    if r == 1:
        return q
    num = q * scale**r
    target = -((-num.numerator) // num.denominator)  # ceil
    x = integer_nth_root(target, r)
    if x**r < target:
        x += 1
    return Fraction(x, scale)


def hunter_t2_bound(n: int, D: int, a_top: int, hermite_power: Fraction | None = None) -> Fraction:
    """a^2/n + gamma_{n-1} (D/n)^{1/(n-1)}, rounded up to a rational.

    ``hermite_power`` supplies gamma_{n-1}^{n-1} for n outside 2..9.
    """
    if D < 1:
        raise ValueError("discriminant bound must be positive")
    if n < 2:
        raise ValueError("degree must be at least 2")
    if hermite_power is None:
        if n - 1 not in HERMITE_POWER:
            raise ValueError(f"no built-in Hermite constant for dimension {n - 1}")
        hermite_power = HERMITE_POWER[n - 1]
    q = Fraction(hermite_power) * Fraction(D, n)
    return Fraction(a_top * a_top, n) + _root_upper(q, n - 1)


# ---------------------------------------------------------------------------
# critical intervals

def _ceil_mult(v: Fraction, L: int) -> int:
    return -((-v.numerator) // (v.denominator * L)) * L


def _floor_mult(v: Fraction, L: int) -> int:
    return (v.numerator // (v.denominator * L)) * L


def _abs_bound(coeffs, r: Fraction) -> Fraction:
    return sum(abs(c) * r**i for i, c in enumerate(coeffs))


@dataclass(frozen=True)
class CriticalInterval:
    """Admissible constants t (f0 - t totally real) on the lattice step*Z.

    ``start``/``stop`` are the extreme admissible lattice points (None when
    unbounded); ``boundary`` holds the points where f0 - t acquires a double
    root. ``m_enclosure``/``M_enclosure`` bracket the exact endpoints.
    """

    step: int
    start: int | None
    stop: int | None
    boundary: frozenset
    m_enclosure: tuple | None
    M_enclosure: tuple | None

    @property
    def empty(self) -> bool:
        return self.start is not None and self.stop is not None and self.start > self.stop

    @property
    def integer_points(self):
        if self.start is None or self.stop is None:
            raise ValueError("interval is unbounded; use points(lo, hi)")
        return list(range(self.start, self.stop + 1, self.step)) if not self.empty else []

    def points(self, lo=None, hi=None):
        a = self.start if self.start is not None else _ceil_mult(Fraction(lo), self.step)
        b = self.stop if self.stop is not None else _floor_mult(Fraction(hi), self.step)
        if lo is not None:
            a = max(a, _ceil_mult(Fraction(lo), self.step))
        if hi is not None:
            b = min(b, _floor_mult(Fraction(hi), self.step))
        return list(range(a, b + 1, self.step)) if a <= b else []


class _Extremum:
    """The value f0(alpha) at a simple root alpha of g, compared exactly."""

    def __init__(self, g, f0, lo, hi, is_min, step):
        self.g, self.f0 = g, f0
        self.lo, self.hi = Fraction(lo), Fraction(hi)
        self.is_min = is_min
        self.step = step
        self.exact = None
        self.enc = None
        self._dg = g.derivative()
        if self.lo == self.hi:
            self.exact = f0(self.lo)
        self._sign_lo = g.sign_at(self.lo) if self.exact is None else 0

    def _enclose(self):
        a, b = self.lo, self.hi
        fa, fb = self.f0(a), self.f0(b)
        w = b - a
        r = max(abs(a), abs(b))
        slack = _abs_bound(self._dg.coeffs, r) * w * w
        if self.is_min:
            hi = min(fa, fb)
            lo = max(fa, fb) - slack
            lo = min(lo, hi)
        else:
            lo = max(fa, fb)
            hi = min(fa, fb) + slack
            hi = max(lo, hi)
        self.enc = (lo, hi)

    def _bisect(self):
        mid = (self.lo + self.hi) / 2
        s = self.g.sign_at(mid)
        if s == 0:
            self.lo = self.hi = mid
            self.exact = self.f0(mid)
        elif s == self._sign_lo:
            self.lo = mid
        else:
            self.hi = mid

    def _hits(self, t) -> bool:
        """f0(alpha) == t exactly?"""
        h = gcd(self.g, self.f0 - IntPolynomial((t,)))
        if h.degree < 1:
            return False
        seq = sturm_sequence(h)
        return count_roots_between(seq, self.lo, self.hi) > 0

    def resolve(self):
        """Return (value, exact) where value is exact or a tight enclosure."""
        while self.exact is None:
            self._enclose()
            lo, hi = self.enc
            a = _ceil_mult(lo, self.step)
            if a > hi:
                return self.enc, False
            b = _floor_mult(hi, self.step)
            if a == b and self._hits(a):
                self.exact = Fraction(a)
                break
            self._bisect()
        return (self.exact, self.exact), True


def critical_interval(g: IntPolynomial, f0: IntPolynomial, step: int = 1) -> CriticalInterval:
    """Lattice points t in step*Z with f0 - t totally real, where f0' = g."""
    if f0.derivative() != g:
        raise ValueError("f0 is not an antiderivative of g")
    if g.degree < 1:
        raise ValueError("g must have positive degree")
    if g.lead < 0:
        g, f0 = -g, -f0
        flipped = True
    else:
        flipped = False
    if not is_totally_real(g):
        raise ValueError("g must be totally real and separable")
    roots = real_roots_isolated(g, Fraction(1, 2))
    d = g.degree
    mins, maxs = [], []
    for j, (lo, hi) in enumerate(roots):
        is_min = (d - 1 - j) % 2 == 0
        (mins if is_min else maxs).append(_Extremum(g, f0, lo, hi, is_min, step))
    boundary = set()
    start = None
    m_enc = None
    for e in mins:
        (vlo, vhi), exact = e.resolve()
        c = _ceil_mult(vlo, step)
        if exact and c == vlo:
            boundary.add(c)
        if start is None or c > start:
            start = c
        m_enc = (vlo, vhi) if m_enc is None or vlo > m_enc[0] else m_enc
    stop = None
    M_enc = None
    for e in maxs:
        (vlo, vhi), exact = e.resolve()
        c = _floor_mult(vhi, step)
        if exact and c == vhi:
            boundary.add(c)
        if stop is None or c < stop:
            stop = c
        M_enc = (vlo, vhi) if M_enc is None or vhi < M_enc[1] else M_enc
    if flipped:
        # f0 - t for the original signs is -( (-f0) - (-t) )
        start, stop = (-stop if stop is not None else None), (-start if start is not None else None)
        boundary = {-b for b in boundary}
        m_enc, M_enc = ((-M_enc[1], -M_enc[0]) if M_enc else None,
                        (-m_enc[1], -m_enc[0]) if m_enc else None)
    lo_ok = {b for b in boundary if (start is None or b >= start) and (stop is None or b <= stop)}
    return CriticalInterval(step, start, stop, frozenset(lo_ok), m_enc, M_enc)


# ---------------------------------------------------------------------------
# the tower

@dataclass
class EnumerationReport:
    examined: dict = field(default_factory=dict)  # level (degree of f^(k)) -> nodes
    boundary: int = 0  # lattice endpoints giving inseparable polynomials
    totally_real: int = 0  # separable totally real polynomials reached
    reducible: int = 0
    over_bound: int = 0
    accepted: int = 0
    fields: int = 0

    def merge(self, other: "EnumerationReport") -> "EnumerationReport":
        ex = dict(self.examined)
        for k, v in other.examined.items():
            ex[k] = ex.get(k, 0) + v
        return EnumerationReport(ex, self.boundary + other.boundary,
                                 self.totally_real + other.totally_real,
                                 self.reducible + other.reducible,
                                 self.over_bound + other.over_bound,
                                 self.accepted + other.accepted, self.fields + other.fields)

    def lines(self):
        out = ["report"]
        for k in sorted(self.examined, reverse=True):
            out.append(f"level {k}: {self.examined[k]} nodes")
        out.append(f"boundary (inseparable): {self.boundary}")
        out.append(f"totally real candidates: {self.totally_real}")
        out.append(f"reducible: {self.reducible}")
        out.append(f"discriminant over bound: {self.over_bound}")
        out.append(f"accepted polynomials: {self.accepted}")
        out.append(f"distinct canonical polynomials: {self.fields}")
        return out


@dataclass(frozen=True)
class EnumerationTask:
    degree: int
    disc_bound: int
    a_top: tuple = ()  # a_{n-1} values; default 0..n//2
    a_second: tuple | None = None  # restrict a_{n-2} (sub-box partitioning)
    hermite_power: Fraction | None = None

    def __post_init__(self):
        n = self.degree
        if n < 2:
            raise ValueError("degree must be at least 2")
        if self.disc_bound < 1:
            raise ValueError("discriminant bound must be positive")
        tops = self.a_top or tuple(range(0, n // 2 + 1))
        for a in tops:
            if not 0 <= a <= n / 2:
                raise ValueError("a_{n-1} must lie in [0, n/2]")
        object.__setattr__(self, "a_top", tuple(tops))

    def second_range(self, a: int):
        """a_{n-2} range allowed by T2 <= B and a real quadratic f^(n-2)."""
        n = self.degree
        B = hunter_t2_bound(n, self.disc_bound, a, self.hermite_power)
        lo = _ceil_frac((a * a - B) / 2)
        # (n-1) a^2 - 2 n a_{n-2} > 0
        bound = Fraction((n - 1) * a * a, 2 * n)
        hi = _ceil_frac(bound) - 1
        rng = range(lo, hi + 1)
        if self.a_second is not None:
            rng = [b for b in rng if b in self.a_second]
        return list(rng)

    def split(self):
        """Independent sub-tasks, one per (a_{n-1}, a_{n-2}) pair."""
        out = []
        for a in self.a_top:
            for b in self.second_range(a):
                out.append(EnumerationTask(self.degree, self.disc_bound, (a,), (b,), self.hermite_power))
        return out


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _derivative_poly(a, n, k):
    """Coefficients of f^(k) from a_k..a_n (list indexed by power)."""
    return IntPolynomial(tuple(a[i + k] * factorial(i + k) // factorial(i) for i in range(n - k + 1)))


def _tower(n, a_top, a_second, report, emit):
    """Walk all totally real separable monic f with the two given top coefficients."""
    a = [0] * (n + 1)
    a[n], a[n - 1], a[n - 2] = 1, a_top, a_second
    report.examined[2] = report.examined.get(2, 0) + 1
    q = _derivative_poly(a, n, n - 2)
    if q[1] * q[1] - 4 * q[2] * q[0] <= 0:
        return
    if n == 2:
        report.totally_real += 1
        emit(IntPolynomial(tuple(a)))
        return

    def rec(k):
        # a_k..a_n fixed; f^(k) totally real separable; choose a_{k-1}
        g = _derivative_poly(a, n, k)
        f0 = IntPolynomial((0,) + tuple(a[i + k - 1] * factorial(i + k - 1) // factorial(i)
                                        for i in range(1, n - k + 2)))
        step = factorial(k - 1)
        ci = critical_interval(g, f0, step)
        level = n - k + 1
        for t in ci.integer_points:
            report.examined[level] = report.examined.get(level, 0) + 1
            if t in ci.boundary:
                report.boundary += 1
                continue
            a[k - 1] = -t // step
            if k == 1:
                report.totally_real += 1
                emit(IntPolynomial(tuple(a)))
            else:
                rec(k - 1)
        a[k - 1] = 0

    rec(n - 2)


def tower_polynomials(task: EnumerationTask):
    """Every separable totally real polynomial the tower reaches, unfiltered."""
    out = []
    report = EnumerationReport()
    for a in task.a_top:
        for b in task.second_range(a):
            _tower(task.degree, a, b, report, out.append)
    return out, report


def _run_task(task: EnumerationTask):
    from .fielddb import canonicalize

    n, D = task.degree, task.disc_bound
    report = EnumerationReport()
    found = {}

    def emit(f):
        if not is_irreducible(f):
            report.reducible += 1
            return
        pd = abs(discriminant(f))
        if pd > D:
            # the index can only shrink the discriminant by a square
            inv = field_discriminant(f)
            if abs(inv.field_disc) > D:
                report.over_bound += 1
                return
            d = inv.field_disc
        else:
            d = field_discriminant(f).field_disc
        report.accepted += 1
        found[canonicalize(f)] = d

    for a in task.a_top:
        for b in task.second_range(a):
            _tower(n, a, b, report, emit)
    return found, report


@dataclass
class EnumerationResult:
    polynomials: list  # canonical, sorted
    discriminants: dict  # polynomial -> field discriminant
    report: EnumerationReport

    def __iter__(self):
        return iter((self.polynomials, self.report))


def enumerate_totally_real(task: EnumerationTask, jobs: int = 1) -> EnumerationResult:
    """Every totally real field of degree n and |d| <= D with a Hunter generator.

    Output is one canonical polynomial per generator found, sorted; fields
    generated by several polynomials in the box may appear more than once
    (isomorphism testing is out of reach here).
    """
    subtasks = task.split()
    if jobs > 1 and len(subtasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_run_task, subtasks))
    else:
        parts = [_run_task(t) for t in subtasks]
    found = {}
    report = EnumerationReport()
    for fd, rep in parts:
        found.update(fd)
        report = report.merge(rep)
    polys = sorted(found, key=_sort_key)
    report.fields = len(polys)
    return EnumerationResult(polys, {p: found[p] for p in polys}, report)


def _sort_key(f: IntPolynomial):
    return (f.degree, tuple(reversed(f.coeffs)))


# ---------------------------------------------------------------------------
# brute-force oracle

def sieve_oracle(n: int, box, cap: int = SIEVE_CAP):
    """All monic separable totally real polynomials with (a_0..a_{n-1}) in box.

    ``box`` is a sequence of n inclusive (lo, hi) ranges, index i for a_i.
    """
    box = list(box)
    if len(box) != n:
        raise ValueError("box needs one range per non-leading coefficient")
    size = 1
    for lo, hi in box:
        size *= max(0, hi - lo + 1)
    if size > cap:
        raise ValueError(f"box has {size} points, over the cap of {cap}")
    if size == 0:
        return []
    out = []
    for cs in itertools.product(*[range(lo, hi + 1) for lo, hi in box]):
        f = IntPolynomial(tuple(cs) + (1,))
        if discriminant(f) == 0:
            continue
        if signature_of(f).r1 == n:
            out.append(f)
    return out


def hunter_box(n: int, D: int, a_top: int | None = None):
    """Coefficient box containing every polynomial the tower can reach.

    With T2 <= B, |e_k| <= C(n,k) (B/n)^(k/2) bounds each coefficient.
    """
    tops = [a_top] if a_top is not None else list(range(0, n // 2 + 1))
    B = max(hunter_t2_bound(n, D, a) for a in tops)
    box = []
    for i in range(n):
        k = n - i
        if k == 1:
            box.append((min(tops), max(tops)))
            continue
        val = Fraction(comb(n, k)) * _root_upper((B / n) ** k, 2)
        bnd = floor(val)
        box.append((-bnd, bnd))
    return box


def t2(f: IntPolynomial) -> int:
    """Sum of squared roots of a monic f: a_{n-1}^2 - 2 a_{n-2}."""
    n = f.degree
    return f[n - 1] ** 2 - 2 * f[n - 2]


def in_hunter_region(f: IntPolynomial, D: int) -> bool:
    n = f.degree
    a = f[n - 1]
    return 0 <= a <= n / 2 and t2(f) <= hunter_t2_bound(n, D, a)


__all__ = [
    "CriticalInterval",
    "EnumerationReport",
    "EnumerationResult",
    "EnumerationTask",
    "HERMITE_POWER",
    "critical_interval",
    "enumerate_totally_real",
    "hunter_box",
    "hunter_t2_bound",
    "in_hunter_region",
    "sieve_oracle",
    "t2",
    "tower_polynomials",
]
