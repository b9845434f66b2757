"""Central embedding problems with kernel Z_2 over the rationals.

Local verdicts come from Hilbert symbols and Legendre symbols; the global
verdict follows the local-global rule with at most one exceptional place.
Over Q the obstruction of a single Z_2 problem is a quaternion class, so
its local failures come in pairs and the exception never actually occurs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from .galois import PROVEN_EQUAL, identify
from .orders import field_discriminant, prime_split
from .polyarith import (
    IntPolynomial,
    factor_integer,
    is_irreducible,
    legendre,
    signature_of,
    squarefree_part,
    valuation,
)
from .polyarith.integers import integer_nth_root

SOLVABLE = "solvable"
UNSOLVABLE = "unsolvable"
UNDETERMINED = "undetermined"
INFINITY = "inf"


def _sqfree_check(d: int):
    if d in (0, 1):
        raise ValueError("d must be a squarefree integer other than 0 and 1")
    if squarefree_part(d) != d:
        raise ValueError(f"{d} is not squarefree")


def hilbert_symbol(a: int, b: int, p) -> int:
    """(a, b)_p for nonzero integers; p a prime or ``INFINITY``."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if p == INFINITY:
        return -1 if a < 0 and b < 0 else 1
    al, bl = valuation(a, p), valuation(b, p)
    u, v = a // p**al, b // p**bl
    if p != 2:
        s = -1 if (al * bl * (p - 1) // 2) % 2 else 1
        return s * legendre(u, p) ** bl * legendre(v, p) ** al

    def eps(x):
        return ((x - 1) // 2) % 2

    def omega(x):
        return ((x * x - 1) // 8) % 2

    e = eps(u) * eps(v) + al * omega(v) + bl * omega(u)
    return -1 if e % 2 else 1


@dataclass(frozen=True)
class RamifiedPrimeData:
    p: int
    even_ramification: bool
    inertia_degree: int

    @property
    def residue_mod_4(self) -> int | None:
        return self.p % 4 if self.p != 2 else None


@dataclass(frozen=True)
class LocalVerdict:
    place: object  # prime or INFINITY
    verdict: str
    reason: str = ""


def local_global_aggregate(verdicts) -> tuple:
    """(global verdict, exception place) under the one-exception rule."""
    verdicts = list(verdicts)
    if any(v.verdict == UNDETERMINED for v in verdicts):
        return UNDETERMINED, None
    bad = [v.place for v in verdicts if v.verdict == UNSOLVABLE]
    if not bad:
        return SOLVABLE, None
    if len(bad) == 1:
        return SOLVABLE, bad[0]
    return UNSOLVABLE, None


@dataclass
class ObstructionReport:
    problem: str
    local: list
    verdict: str
    exception: object = None
    notes: list = field(default_factory=list)

    @property
    def solvable(self) -> bool:
        return self.verdict == SOLVABLE

    def lines(self):
        out = [f"problem: {self.problem}"]
        for v in self.local:
            place = "infinity" if v.place == INFINITY else f"p={v.place}"
            out.append(f"{place}\t{v.verdict}\t{v.reason}")
        if self.exception is not None:
            out.append(f"exception: {self.exception}")
        out.extend(f"note: {n}" for n in self.notes)
        out.append(f"global: {self.verdict}")
        return out


def _report(problem, local, notes=(), rule="exception"):
    if rule == "exception":
        verdict, exc = local_global_aggregate(local)
    else:
        exc = None
        if any(v.verdict == UNSOLVABLE for v in local):
            verdict = UNSOLVABLE
        elif any(v.verdict == UNDETERMINED for v in local):
            verdict = UNDETERMINED
        else:
            verdict = SOLVABLE
    return ObstructionReport(problem, local, verdict, exc, list(notes))


# ---------------------------------------------------------------------------
# Z_4 over a quadratic field

def _quadratic_disc(d: int) -> int:
    return d if d % 4 == 1 else 4 * d


def z4_obstruction(d: int) -> ObstructionReport:
    """Can Q(sqrt d) be embedded in a cyclic quartic field?

    The obstruction is the quaternion algebra (d, -1); locally it splits
    exactly where the Hilbert symbol is 1.
    """
    _sqfree_check(d)
    places = [INFINITY, 2] + sorted(p for p in factor_integer(abs(d)).primes if p != 2)
    local = []
    for v in places:
        h = hilbert_symbol(d, -1, v)
        if v == INFINITY:
            reason = "real" if d > 0 else "complex conjugation must lift to order 4"
        elif v == 2:
            reason = f"(d,-1)_2 = {h}"
        else:
            reason = f"p = {v % 4} (mod 4)"
        local.append(LocalVerdict(v, SOLVABLE if h == 1 else UNSOLVABLE, reason))
    return _report(f"Q(sqrt({d})) into Z4", local)


def is_sum_of_two_squares(n: int) -> bool:
    if n <= 0:
        return n == 0
    fac = factor_integer(n)
    return all(e % 2 == 0 for p, e in fac.primes.items() if p % 4 == 3)


@dataclass
class Z4Solution:
    d: int
    polynomial: IntPolynomial
    alpha: tuple  # (x, y): alpha = x + y sqrt(d)
    twist: int
    certificate: object
    field_disc: int


def _z4_poly(x, y, d, b=1):
    # roots +-sqrt(b (x +- y sqrt d))
    return IntPolynomial((b * b * (x * x - d * y * y), 0, -2 * b * x, 0, 1))


def z4_solve(d: int, search: int = 400, S=None) -> Z4Solution:
    """A cyclic quartic field containing Q(sqrt d).

    Searches alpha = x + y sqrt d with norm d s^2, smallest s + y first.
    With ``S`` given, the solution is twisted so that it ramifies only at
    S, 2 and the primes dividing d.
    """
    rep = z4_obstruction(d)
    if not rep.solvable:
        raise ValueError(f"Q(sqrt({d})) does not embed into a Z4 field")
    for total in range(2, search):
        for s in range(1, total):
            y = total - s
            x2 = d * (s * s + y * y)
            x = integer_nth_root(x2, 2)
            if x * x != x2:
                continue
            f = _z4_poly(x, y, d)
            if not is_irreducible(f):
                continue
            b = 1
            if S is not None:
                inv = field_discriminant(f)
                bad = [p for p in factor_integer(abs(inv.field_disc)).primes
                       if p != 2 and d % p and p not in S]
                b = twist_outside_S([RamifiedPrimeData(p, True, 1) for p in bad], set(S) | {2, INFINITY})
                f = _z4_poly(x, y, d, b)
                if not is_irreducible(f):
                    continue
            cert = identify(f)
            if cert.verdict.split()[0] != "4T1" or cert.level != PROVEN_EQUAL:
                continue
            # Y^2 - 2xY + N has discriminant 4 d y^2: the quadratic subfield is Q(sqrt d)
            quad_disc = 4 * b * b * d * y * y
            if squarefree_part(quad_disc) != d:
                continue
            return Z4Solution(d, f, (x, y), b, cert, field_discriminant(f).field_disc)
    raise ValueError("search budget exhausted; raise search")


# ---------------------------------------------------------------------------
# Q_8 over a biquadratic field

def _v4_inertia_degree(p, ds):
    """Residue degree above an odd p ramified in Q(sqrt d1, sqrt d2)."""
    unram = [d for d in ds if d % p]
    if not unram:
        raise ValueError("p ramifies in all three quadratic subfields")
    return 1 if legendre(unram[0], p) == 1 else 2


def q8_obstruction(d1: int, d2: int) -> ObstructionReport:
    """Can Q(sqrt d1, sqrt d2) be embedded in a Q_8 field?

    Odd ramified p pass iff (p = 1 mod 4) <=> (odd inertia degree); the
    2-adic verdict is fixed by reciprocity, failures coming in pairs.
    """
    _sqfree_check(d1)
    _sqfree_check(d2)
    d3 = squarefree_part(d1 * d2)
    if len({d1, d2, d3}) < 3 or 1 in (d1, d2, d3):
        raise ValueError("d1, d2 must span a biquadratic field")
    ds = (d1, d2, d3)
    local = []
    real = d1 > 0 and d2 > 0
    local.append(LocalVerdict(INFINITY, SOLVABLE if real else UNSOLVABLE,
                              "totally real" if real else "not totally real"))
    primes = set()
    for d in ds:
        primes |= set(factor_integer(abs(d)).primes)
    odd = sorted(p for p in primes if p != 2)
    for p in odd:
        f = _v4_inertia_degree(p, ds)
        ok = (p % 4 == 1) == (f % 2 == 1)
        local.append(LocalVerdict(p, SOLVABLE if ok else UNSOLVABLE,
                                  f"p = {p % 4} (mod 4), inertia degree {f}"))
    fails = sum(v.verdict == UNSOLVABLE for v in local)
    local.append(LocalVerdict(2, UNSOLVABLE if fails % 2 else SOLVABLE, "reciprocity"))
    return _report(f"Q(sqrt({d1}), sqrt({d2})) into Q8", local)


def sl2_criterion(real: bool, data) -> ObstructionReport:
    """Lifting an L_2(l) field (l = 3, 5 mod 8) to SL_2: criterion on given local data."""
    local = [LocalVerdict(INFINITY, SOLVABLE if real else UNSOLVABLE,
                          "totally real" if real else "not totally real")]
    for r in data:
        if r.p == 2:
            continue
        ok = (r.p % 4 == 1) == (r.inertia_degree % 2 == 1)
        local.append(LocalVerdict(r.p, SOLVABLE if ok else UNSOLVABLE,
                                  f"p = {r.p % 4} (mod 4), inertia degree {r.inertia_degree}"))
    return _report("L2(l) into SL2", local, rule="all")


# ---------------------------------------------------------------------------
# twisting and 12T57

def twist_outside_S(ramified, S, solution_totally_complex: bool = False,
                    base_totally_real: bool = False) -> int:
    """Twist b removing tame ramification outside S.

    ``ramified`` lists primes (or RamifiedPrimeData) ramified in the solution.
    A totally complex solution over a totally real base is twisted by -1
    as well, which makes it totally real.
    """
    S = set(S)
    if 2 not in S or INFINITY not in S:
        raise ValueError("S must contain 2 and the infinite place")
    b = 1
    for r in ramified:
        p = r.p if isinstance(r, RamifiedPrimeData) else int(r)
        if p not in S:
            b *= p
    if solution_totally_complex and base_totally_real:
        b = -b
    return b


@dataclass(frozen=True)
class A4FieldData:
    totally_real: bool
    ramified: tuple  # RamifiedPrimeData
    polynomial: IntPolynomial | None = None

    @property
    def two_ramified(self) -> bool:
        return any(r.p == 2 for r in self.ramified)


def a4_field_data(f: IntPolynomial) -> A4FieldData:
    """Local data of the Galois closure of an A_4 quartic.

    In the closure e and f at p are the lcm of those in the quartic field
    (tame case: inertia and Frobenius act faithfully on the roots).
    """
    cert = identify(f)
    if cert.verdict.split()[0] != "4T4":
        raise ValueError(f"{f} does not have group A4 (got {cert.verdict})")
    inv = field_discriminant(f)
    data = []
    for p in sorted(factor_integer(abs(inv.field_disc)).primes):
        sp = prime_split(f, p, enlarge=True)
        if not sp.determined:
            raise ValueError(f"splitting of {p} undetermined")
        e = lcm(*(e for e, _ in sp.factors))
        fd = lcm(*(fd for _, fd in sp.factors))
        data.append(RamifiedPrimeData(p, e % 2 == 0, fd))
    return A4FieldData(signature_of(f).r2 == 0, tuple(data), f)


def t57_obstruction(field_data: A4FieldData) -> ObstructionReport:
    """Embedding an A_4 field into a 12T57 field.

    Needs a totally real field whose odd primes with even ramification are
    1 mod 4 of inertia degree 1; with 2 ramified the answer is left open.
    """
    local = [LocalVerdict(INFINITY, SOLVABLE if field_data.totally_real else UNSOLVABLE,
                          "totally real" if field_data.totally_real else "not totally real")]
    notes = []
    for r in field_data.ramified:
        if r.p == 2:
            local.append(LocalVerdict(2, UNDETERMINED, "2 ramified: needs a norm equation"))
            notes.append("deciding the 2-adic problem requires -1 to be a norm in a sextic over the cyclic cubic")
            continue
        if not r.even_ramification:
            local.append(LocalVerdict(r.p, SOLVABLE, "odd ramification index"))
            continue
        ok = r.p % 4 == 1 and r.inertia_degree == 1
        local.append(LocalVerdict(r.p, SOLVABLE if ok else UNSOLVABLE,
                                  f"p = {r.p % 4} (mod 4), inertia degree {r.inertia_degree}"))
    return _report("A4 into 12T57", local, notes, rule="all")


def t57_obstruction_poly(f: IntPolynomial) -> ObstructionReport:
    return t57_obstruction(a4_field_data(f))


# totally real A_4 quartic, 2 ramified, odd ramified primes with odd index
TWO_RAMIFIED_A4 = IntPolynomial((17, -8, -28, 0, 1))


__all__ = [
    "A4FieldData",
    "INFINITY",
    "LocalVerdict",
    "ObstructionReport",
    "RamifiedPrimeData",
    "SOLVABLE",
    "TWO_RAMIFIED_A4",
    "UNDETERMINED",
    "UNSOLVABLE",
    "Z4Solution",
    "a4_field_data",
    "hilbert_symbol",
    "is_sum_of_two_squares",
    "local_global_aggregate",
    "q8_obstruction",
    "sl2_criterion",
    "t57_obstruction",
    "t57_obstruction_poly",
    "twist_outside_S",
    "z4_obstruction",
    "z4_solve",
]
