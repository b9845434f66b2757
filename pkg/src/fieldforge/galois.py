"""Galois groups of integer polynomials, with replayable certificates.

Evidence is always a Frobenius cycle type at a prime not dividing disc(f).
Proofs come from four sources: parity of the group (square discriminant),
Jordan-type theorems for S_n and A_n, elimination against the embedded
transitive-group list (degree <= 8), and the cubic resolvent in degree 4.
Anything weaker is labelled Heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .permgrp import format_cycle_type, parse_cycle_type, transitive_table
from .polyarith import (
    IntPolynomial,
    discriminant,
    factor_over_integers,
    factor_pattern_mod_p,
    is_irreducible,
    is_prime,
    is_square,
    primes_from,
)
from .polyarith.poly import _coerce

PROVEN_EQUAL = "ProvenEqual"
PROVEN_CONTAINS = "ProvenContains"
HEURISTIC = "Heuristic"
DISPROVEN = "Disproven"
INCONCLUSIVE = "Inconclusive"
LEVELS = (PROVEN_EQUAL, PROVEN_CONTAINS, HEURISTIC, DISPROVEN, INCONCLUSIVE)

DEFAULT_PRIME_BUDGET = 2000
MIN_HEURISTIC_PRIMES = 50


class CertificateFailure(ValueError):
    """A certificate could not be assembled; ``missing`` names the absent witnesses."""

    def __init__(self, message, missing=()):
        super().__init__(message)
        self.missing = tuple(missing)


# ---------------------------------------------------------------------------
# Frobenius sampling

@dataclass
class FrobeniusSample:
    entries: list = field(default_factory=list)  # (p, cycle type)
    bad_primes: list = field(default_factory=list)

    @property
    def good_count(self) -> int:
        return len(self.entries)

    def types(self) -> dict:
        """Observed cycle type -> first prime witnessing it."""
        out = {}
        for p, ct in self.entries:
            out.setdefault(ct, p)
        return out


def frobenius_type(f: IntPolynomial, p: int, disc: int | None = None) -> tuple:
    """Cycle type of Frobenius at p (descending tuple); p must not divide disc(f)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    d = discriminant(f) if disc is None else disc
    if d % p == 0 or f.lead % p == 0:
        raise ValueError(f"{p} divides the discriminant or the leading coefficient")
    return factor_pattern_mod_p(f, p).cycle_type()


def frobenius_sample(f: IntPolynomial, prime_budget: int = DEFAULT_PRIME_BUDGET,
                     max_primes: int | None = None, stop=None) -> FrobeniusSample:
    """Frobenius cycle types at every good prime p <= prime_budget, in order.

    ``stop(sample)`` may end the scan early once it returns True.
    """
    f = _coerce(f)
    d = discriminant(f)
    if d == 0:
        raise ValueError("polynomial is not separable")
    out = FrobeniusSample()
    for p in primes_from(2):
        if p > prime_budget:
            break
        if d % p == 0 or f.lead % p == 0:
            out.bad_primes.append(p)
            continue
        out.entries.append((p, factor_pattern_mod_p(f, p).cycle_type()))
        if max_primes is not None and out.good_count >= max_primes:
            break
        if stop is not None and stop(out):
            break
    return out


# ---------------------------------------------------------------------------
# certificates

@dataclass
class GroupCertificate:
    polynomial: IntPolynomial
    verdict: str
    level: str
    witnesses: list = field(default_factory=list)  # (p, cycle type)
    candidates: tuple = ()
    disc_square: bool | None = None
    method: str = ""
    notes: list = field(default_factory=list)

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    @property
    def proven(self) -> bool:
        return self.level in (PROVEN_EQUAL, PROVEN_CONTAINS)

    def to_text(self) -> str:
        lines = ["certificate",
                 f"polynomial: {self.polynomial}",
                 f"verdict: {self.verdict}",
                 f"level: {self.level}",
                 f"method: {self.method}"]
        if self.candidates:
            lines.append("candidates: " + " ".join(self.candidates))
        if self.disc_square is not None:
            lines.append(f"disc-square: {'yes' if self.disc_square else 'no'}")
        for p, ct in self.witnesses:
            lines.append(f"witness: {p} {format_cycle_type(ct)}")
        for n in self.notes:
            lines.append(f"note: {n}")
        lines.append("end")
        return "\n".join(lines)

    def __str__(self):
        return self.to_text()

    @classmethod
    def from_text(cls, text: str) -> "GroupCertificate":
        fields = {"witnesses": [], "notes": []}
        for raw in text.strip().splitlines():
            line = raw.strip()
            if line in ("certificate", "end") or not line:
                continue
            key, _, val = line.partition(":")
            val = val.strip()
            if key == "polynomial":
                fields["polynomial"] = IntPolynomial.parse(val)
            elif key == "verdict":
                fields["verdict"] = val
            elif key == "level":
                if val not in LEVELS:
                    raise ValueError(f"unknown level {val!r}")
                fields["level"] = val
            elif key == "method":
                fields["method"] = val
            elif key == "candidates":
                fields["candidates"] = tuple(val.split())
            elif key == "disc-square":
                fields["disc_square"] = val == "yes"
            elif key == "witness":
                p, _, ct = val.partition(" ")
                fields["witnesses"].append((int(p), parse_cycle_type(ct)))
            elif key == "note":
                fields["notes"].append(val)
            else:
                raise ValueError(f"unknown certificate field {key!r}")
        return cls(**fields)


def _check_witness_primes(f, primes, d):
    for p in primes:
        if not is_prime(p):
            raise CertificateFailure(f"witness {p} is not prime")
        if d % p == 0:
            raise CertificateFailure(f"witness {p} divides disc(f)")


# ---------------------------------------------------------------------------
# Jordan certificates

def _sn_roles(n, ct):
    roles = set()
    if ct == (n,):
        roles.add("n-cycle")
    if n >= 2 and ct == tuple(sorted([n - 1, 1], reverse=True)) and n >= 3:
        roles.add("(n-1)-cycle")
    # one 2-cycle and odd cycles otherwise: an odd power is a transposition
    if n >= 2 and ct.count(2) == 1 and all(c % 2 for c in ct if c != 2):
        roles.add("transposition")
    return roles


def _sn_required(n):
    if n == 2:
        return ("n-cycle",)
    if n == 3:
        return ("n-cycle", "transposition")
    return ("n-cycle", "(n-1)-cycle", "transposition")


def certify_sn(f: IntPolynomial, witnesses) -> GroupCertificate:
    """Jordan certificate for Gal(f) = S_n from witness primes.

    An n-cycle proves transitivity (and irreducibility), an (n-1)-cycle then
    gives double transitivity, and a transposition in a primitive group
    forces S_n.
    """
    f = _coerce(f)
    n = f.degree
    d = discriminant(f)
    witnesses = list(witnesses)
    _check_witness_primes(f, witnesses, d)
    found = {}
    for p in witnesses:
        ct = frobenius_type(f, p, d)
        for role in _sn_roles(n, ct):
            found.setdefault(role, (p, ct))
    missing = [r for r in _sn_required(n) if r not in found]
    if missing:
        raise CertificateFailure(f"missing witness: {', '.join(missing)}", missing)
    wit = sorted({found[r] for r in _sn_required(n)})
    return GroupCertificate(f, f"S{n}", PROVEN_EQUAL, wit, (), False, "jordan-sn")


def find_sn_witnesses(f: IntPolynomial, prime_budget: int = DEFAULT_PRIME_BUDGET,
                      avoid=()) -> list:
    """Smallest primes filling the three S_n roles, or CertificateFailure."""
    f = _coerce(f)
    n = f.degree
    need = set(_sn_required(n))
    found = {}

    def done(sample):
        p, ct = sample.entries[-1]
        if p not in avoid:
            for role in _sn_roles(n, ct):
                if role in need and role not in found:
                    found[role] = p
        return len(found) == len(need)

    frobenius_sample(f, prime_budget, stop=done)
    missing = sorted(need - set(found))
    if missing:
        raise CertificateFailure(f"no witness below {prime_budget} for: {', '.join(missing)}", missing)
    return sorted(set(found.values()))


def _is_prime_small(k):
    return k >= 2 and all(k % q for q in range(2, int(k**0.5) + 1))


def _an_jordan_witness(n, types):
    """A witness that a transitive group contains A_n, or None.

    Either a prime cycle length l with n/2 < l <= n-3 (primitivity comes for
    free), or a prime l <= n-3 whose other cycle lengths are coprime to l
    together with an (n-1)-cycle for double transitivity.
    """
    dt = next((p for ct, p in types.items() if ct == (n - 1, 1)), None)
    for ct, p in sorted(types.items(), key=lambda kv: kv[1]):
        for l in set(ct):
            if not _is_prime_small(l) or l > n - 3 or ct.count(l) != 1:
                continue
            others = [c for c in ct if c != l]
            if any(c % l == 0 for c in others):
                continue
            if 2 * l > n:
                return [(p, ct)]
            if dt is not None:
                return [(p, ct), (dt, (n - 1, 1))]
    return None


def _even_candidates(n):
    return [t for t in transitive_table(n) if t.is_even()]


def _support(t):
    n = t.degree
    if t.order == factorial(n):
        return None  # every partition
    return t.cycle_type_support()


def _admits(t, types):
    sup = _support(t)
    if sup is None:
        return True
    if t.order * 2 == factorial(t.degree):
        return all(sum(k - 1 for k in ct) % 2 == 0 for ct in types)
    return all(ct in sup for ct in types)


def certify_contains_an(f: IntPolynomial, prime_budget: int = DEFAULT_PRIME_BUDGET) -> GroupCertificate:
    """Decide Gal(f) <= A_n by the discriminant, then try to prove equality."""
    f = _coerce(f)
    n = f.degree
    if not is_irreducible(f):
        raise ValueError(f"{f} is reducible")
    d = discriminant(f)
    square = is_square(d)
    if not square:
        return GroupCertificate(f, f"A{n}", DISPROVEN, [], (), False, "parity",
                                [f"disc {d} is not a square, so Gal(f) is not inside A{n}"])
    cands = _even_candidates(n) if n <= 8 else []

    def stop(sample):
        t = sample.types()
        if _an_jordan_witness(n, t):
            return True
        if cands:
            left = [c for c in cands if _admits(c, t)]
            return len(left) == 1
        return False

    sample = frobenius_sample(f, prime_budget, stop=stop)
    types = sample.types()
    jw = _an_jordan_witness(n, types)
    if jw:
        return GroupCertificate(f, f"A{n}", PROVEN_EQUAL, jw, (), True, "jordan-an")
    if cands:
        left = [c for c in cands if _admits(c, types)]
        wit = sorted((p, ct) for ct, p in types.items())
        if len(left) == 1:
            t = left[0]
            return GroupCertificate(f, _label(t), PROVEN_EQUAL, wit, (t.label,), True, "elimination")
        left.sort(key=lambda t: (t.order, t.number))
        return GroupCertificate(f, _label(left[0]), HEURISTIC, wit, tuple(t.label for t in left), True,
                                "elimination", [f"{sample.good_count} good primes sampled"])
    return GroupCertificate(f, f"A{n}", HEURISTIC, [], (), True, "parity",
                            ["square discriminant; no Jordan witness found"])


def _label(t):
    return f"{t.label} {t.name}"


# ---------------------------------------------------------------------------
# degree 4

def cubic_resolvent(f: IntPolynomial) -> IntPolynomial:
    """Resolvent with roots a1a2 + a3a4, a1a3 + a2a4, a1a4 + a2a3."""
    a, b, c, d = f[3], f[2], f[1], f[0]
    return IntPolynomial((-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, 1))


def _quartic_group(f):
    """(label, reason) for a monic irreducible quartic."""
    D = discriminant(f)
    R = cubic_resolvent(f)
    _, facs = factor_over_integers(R)
    roots = [-g[0] for g, m in facs for _ in range(m) if g.degree == 1]
    if not roots:
        return ("4T4" if is_square(D) else "4T5"), "resolvent irreducible"
    if len(roots) == 3:
        return "4T2", "resolvent splits"
    r = roots[0]
    a, b, d = f[3], f[2], f[0]
    deltas = [r * r - 4 * d, a * a - 4 * (b - r)]
    cyclic = all(is_square(x) or is_square(x * D) for x in deltas)
    return ("4T1" if cyclic else "4T3"), f"one resolvent root {r}"


# ---------------------------------------------------------------------------
# identification

def identify(f: IntPolynomial, prime_budget: int = DEFAULT_PRIME_BUDGET,
             min_primes: int = MIN_HEURISTIC_PRIMES) -> GroupCertificate:
    """Name Gal(f) as a transitive group nTk (degree <= 8) or S_n / A_n."""
    f = _coerce(f)
    n = f.degree
    if n < 1:
        raise ValueError("degree must be positive")
    if not is_irreducible(f):
        raise ValueError(f"{f} is reducible")
    d = discriminant(f)
    square = is_square(d)
    if n == 1:
        return GroupCertificate(f, "1T1", PROVEN_EQUAL, [], (), square, "trivial")
    if n == 4:
        label, why = _quartic_group(f)
        t = next(t for t in transitive_table(4) if t.label == label)
        return GroupCertificate(f, _label(t), PROVEN_EQUAL, [], (label,), square, "resolvent", [why])

    cands = [t for t in transitive_table(n) if t.is_even() == square] if n <= 8 else []
    if cands and len(cands) == 1:
        t = cands[0]
        return GroupCertificate(f, _label(t), PROVEN_EQUAL, [], (t.label,), square, "parity")

    def stop(sample):
        types = sample.types()
        if cands:
            if len([c for c in cands if _admits(c, types)]) == 1:
                return True
        if square and _an_jordan_witness(n, types):
            return True
        if not square and _sn_complete(n, types):
            return True
        return False

    sample = frobenius_sample(f, prime_budget, stop=stop)
    types = sample.types()
    if not square and _sn_complete(n, types):
        wit = sorted({(p, ct) for ct, p in types.items() if _sn_roles(n, ct) & set(_sn_required(n))})
        return _named(f, n, cands, f"S{n}", wit, square, "jordan-sn")
    if square:
        jw = _an_jordan_witness(n, types)
        if jw:
            return _named(f, n, cands, f"A{n}", jw, square, "jordan-an")
    wit = sorted((p, ct) for ct, p in types.items())
    if cands:
        left = [c for c in cands if _admits(c, types)]
        if len(left) == 1:
            t = left[0]
            return GroupCertificate(f, _label(t), PROVEN_EQUAL, wit, (t.label,), square, "elimination")
        left.sort(key=lambda t: (t.order, t.number))
        smallest = [t for t in left if t.order == left[0].order and _support(t) == _support(left[0])]
        verdict = " | ".join(_label(t) for t in smallest)
        notes = [f"{sample.good_count} good primes sampled"]
        level = HEURISTIC
        if sample.good_count < min_primes:
            level = INCONCLUSIVE
            notes.append(f"fewer than {min_primes} good primes")
        if len(smallest) > 1:
            notes.append("groups with identical cycle-type supports; not separated")
        return GroupCertificate(f, verdict, level, wit, tuple(t.label for t in left), square,
                                "elimination", notes)
    fam = f"A{n}" if square else f"S{n}"
    return GroupCertificate(f, fam, HEURISTIC if sample.good_count >= min_primes else INCONCLUSIVE,
                            wit, (), square, "parity",
                            [f"degree {n} beyond the labelled tables; family guess only"])


def _sn_complete(n, types):
    have = set()
    for ct in types:
        have |= _sn_roles(n, ct)
    return all(r in have for r in _sn_required(n))


def _named(f, n, cands, family, wit, square, method):
    if cands:
        full = factorial(n) if family.startswith("S") else factorial(n) // 2
        t = next(t for t in cands if t.order == full)
        return GroupCertificate(f, _label(t), PROVEN_EQUAL, wit, (t.label,), square, method)
    return GroupCertificate(f, family, PROVEN_EQUAL, wit, (), square, method)


# ---------------------------------------------------------------------------
# replay

def replay(cert: GroupCertificate | str) -> GroupCertificate:
    """Recheck a certificate from its polynomial and recorded witnesses only.

    Returns a freshly derived certificate; raises CertificateFailure when a
    recorded witness does not reproduce or the witnesses no longer support
    the stored verdict.
    """
    if isinstance(cert, str):
        cert = GroupCertificate.from_text(cert)
    f = cert.polynomial
    n = f.degree
    d = discriminant(f)
    _check_witness_primes(f, [p for p, _ in cert.witnesses], d)
    for p, ct in cert.witnesses:
        got = frobenius_type(f, p, d)
        if got != ct:
            raise CertificateFailure(f"witness {p}: recorded {format_cycle_type(ct)}, "
                                     f"recomputed {format_cycle_type(got)}")
    square = is_square(d)
    if cert.disc_square is not None and cert.disc_square != square:
        raise CertificateFailure("discriminant parity does not match")
    types = {}
    for p, ct in cert.witnesses:
        types.setdefault(ct, p)
    m = cert.method
    if m == "parity" and cert.level == DISPROVEN:
        out = square is False
    elif m == "jordan-sn":
        if not is_irreducible(f):
            raise CertificateFailure("polynomial is reducible")
        out = _sn_complete(n, types)
    elif m == "jordan-an":
        if not is_irreducible(f):
            raise CertificateFailure("polynomial is reducible")
        out = square and _an_jordan_witness(n, types) is not None
    elif m == "elimination":
        cands = [t for t in transitive_table(n) if t.is_even() == square]
        left = [c for c in cands if _admits(c, types)]
        if cert.level == PROVEN_EQUAL:
            out = len(left) == 1 and left[0].label in cert.verdict.split()[0]
        else:
            out = tuple(sorted(t.label for t in left)) == tuple(sorted(cert.candidates))
    elif m in ("resolvent", "parity", "trivial"):
        fresh = identify(f) if m != "parity" or n <= 8 else None
        out = fresh is not None and fresh.verdict == cert.verdict
    else:
        raise CertificateFailure(f"unknown method {m!r}")
    if not out:
        raise CertificateFailure("witnesses do not support the verdict")
    return GroupCertificate(f, cert.verdict, cert.level, list(cert.witnesses), cert.candidates,
                            square, m, list(cert.notes))


def group_is_even(cert: GroupCertificate) -> bool | None:
    """True when the verdict group lies in A_n (known from the discriminant)."""
    return cert.disc_square
