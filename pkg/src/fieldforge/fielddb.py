"""Field records, deduplication and the reference tables.

Records are keyed by a canonical defining polynomial. Distinct fields may
share every stored invariant (arithmetically equivalent fields do), so
equal invariants only ever link records as candidate duplicates.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field, replace

from .galois import DISPROVEN, INCONCLUSIVE, LEVELS, identify
from .orders import field_discriminant
from .permgrp import format_cycle_type, fused_class_count, involution_classes_fused, transitive_table
from .polyarith import IntPolynomial, is_irreducible, is_square, signature_of


def _monic_reflect(f: IntPolynomial) -> IntPolynomial:
    g = f.reflect()
    return -g if g.lead < 0 else g


def canonicalize(f: IntPolynomial) -> IntPolynomial:
    """Normal form under X -> X + t and X -> -X.

    Among the translates with |a_{n-1}| minimal and their reflections, the
    one whose coefficient list read from the top is smallest wins.
    """
    if f.lead != 1:
        raise ValueError("canonical form is defined for monic polynomials")
    n = f.degree
    if n < 1:
        raise ValueError("constant polynomial")
    a = f[n - 1]
    base = -(a // n)  # f(X + base) has a_{n-1} in [0, n)
    cands = []
    for t in (base - 1, base, base + 1):
        g = f.shift(t)
        cands.append(g)
        cands.append(_monic_reflect(g))
    best = min(abs(g[n - 1]) for g in cands)
    return min((g for g in cands if abs(g[n - 1]) == best), key=lambda g: tuple(reversed(g.coeffs)))


# ---------------------------------------------------------------------------
# reference data

# (label, name) -> {r1: (value, kind)}; kind "=" proven minimum, "<=" / ">=" bounds
MINIMA_REFERENCE = {
    7: {
        ("7T1", "7"): {7: (594823321, "=")},
        ("7T2", "7:2"): {1: (-357911, "="), 7: (192100033, "=")},
        ("7T3", "7:3"): {7: (1817487424, "=")},
        ("7T4", "7:6"): {1: (-38014691, "="), 7: (12431698517, "=")},
        ("7T5", "L3(2)"): {3: (2007889, "="), 7: (670188544, "=")},
        ("7T6", "A7"): {3: (3884841, "="), 7: (988410721, "=")},
        ("7T7", "S7"): {1: (-184607, "="), 3: (612233, "="), 5: (-2306599, "="), 7: (20134393, "=")},
    },
    8: {
        ("8T25", "8T25"): {0: (594823321, "="), 8: (9745585291264, "=")},
        ("8T36", "8T36"): {0: (1817487424, "="), 8: (6423507767296, "=")},
        ("8T37", "8T37"): {0: (37822859361, "<="), 8: (8165659002209296, "<=")},
        ("8T43", "8T43"): {0: (418195493, "<="), 2: (-1997331875, ">="), 8: (312349488740352, "<=")},
        ("8T48", "8T48"): {0: (32684089, "<="), 4: (351075169, "<="), 8: (81366421504, "<=")},
        ("8T49", "8T49"): {0: (20912329, "<="), 4: (144889369, "<="), 8: (46664208361, "<=")},
        ("8T50", "8T50"): {0: (1282789, "<="), 2: (-4296211, ">="), 4: (15908237, "<="),
                           6: (-65106259, ">="), 8: (483345053, "=")},
    },
}

# degree -> (groups, fused classes of order <= 2, polynomials in the original collection)
DEGREE_STATS = {
    2: (1, 2, 549), 3: (2, 3, 619), 4: (5, 13, 2292), 5: (5, 10, 1489),
    6: (16, 48, 5979), 7: (7, 14, 1360), 8: (50, 233, 14610), 9: (34, 83, 6144),
    10: (45, 184, 12359), 11: (8, 19, 501), 12: (301, 1895, 43200), 13: (9, 23, 248),
    14: (63, 331, 5155), 15: (104, 395, 4107),
}

# groups with conjugation types never realized: label -> (name, missing real-zero counts)
OPEN_GAPS = {
    "9T27": ("L2(8)", (9,)),
    "9T30": ("PGL2(8)", (9,)),
    "12T218": ("PGL2(11)", (12,)),
    "13T7": ("L3(3)", (13,)),
    "13T8": ("A13", (5, 9, 13)),
    "14T30": ("L2(13)", (14,)),
    "14T39": ("PGL2(13)", (14,)),
    "14T62": ("A14", (6,)),
    "15T103": ("A15", (7, 11, 15)),
}

FIXTURES = {
    "A7": IntPolynomial.parse("x^7 - 2*x^6 - 7*x^5 + 11*x^4 + 16*x^3 - 14*x^2 - 11*x + 2"),
    "L3(2)": IntPolynomial.parse("x^7 - 8*x^5 - 2*x^4 + 15*x^3 + 4*x^2 - 6*x - 2"),
    # the arithmetically equivalent sibling: sums of roots over the lines of the Fano plane
    "L3(2)'": IntPolynomial.parse("x^7 - 16*x^5 - 12*x^4 + 64*x^3 + 88*x^2 - 4*x - 32"),
    "S8": IntPolynomial.parse("x^8 - x^7 - 7*x^6 + 4*x^5 + 15*x^4 - 3*x^3 - 9*x^2 + 1"),
}


# ---------------------------------------------------------------------------
# records

class InvariantError(ValueError):
    def __init__(self, invariant: str, detail: str = ""):
        super().__init__(f"invariant '{invariant}' violated" + (f": {detail}" if detail else ""))
        self.invariant = invariant


def conjugation_type(r1: int, r2: int) -> str:
    return format_cycle_type((2,) * r2 + (1,) * r1)


def _group_is_even(label: str) -> bool | None:
    head = label.split("|")[0]
    if "T" in head:
        n = int(head.split("T")[0])
        if 2 <= n <= 8:
            for t in transitive_table(n):
                if t.label == head:
                    return t.is_even()
        return None
    if head.startswith("A") and head[1:].isdigit():
        return True
    if head.startswith("S") and head[1:].isdigit():
        return False
    return None


@dataclass(frozen=True)
class FieldRecord:
    degree: int
    polynomial: IntPolynomial  # canonical
    field_disc: int
    disc_exact: bool
    r1: int
    r2: int
    group: str
    level: str
    conjugation: str
    provenance: str = ""

    def validate(self):
        n = self.degree
        if self.polynomial.degree != n:
            raise InvariantError("degree", f"polynomial has degree {self.polynomial.degree}")
        if self.r1 < 0 or self.r2 < 0 or self.r1 + 2 * self.r2 != n:
            raise InvariantError("signature", f"r1 + 2 r2 != {n}")
        if self.conjugation != conjugation_type(self.r1, self.r2):
            raise InvariantError("conjugation", f"expected {conjugation_type(self.r1, self.r2)}")
        if self.field_disc == 0:
            raise InvariantError("discriminant", "zero")
        if (self.field_disc < 0) != (self.r2 % 2 == 1):
            raise InvariantError("sign", "sign(d) must be (-1)^r2")
        if self.level not in LEVELS:
            raise InvariantError("level", self.level)
        if _group_is_even(self.group):
            if self.r2 % 2:
                raise InvariantError("parity", "an even group forces an even number of complex pairs")
            if self.disc_exact and not is_square(self.field_disc):
                raise InvariantError("parity", "an even group forces a square discriminant")
        return self

    @property
    def invariants(self) -> tuple:
        return (self.field_disc, self.group, self.r1, self.r2)

    def to_tsv(self) -> str:
        coeffs = " ".join(str(c) for c in self.polynomial.coeffs)
        return "\t".join([str(self.degree), coeffs, str(self.field_disc), "1" if self.disc_exact else "0",
                          str(self.r1), str(self.r2), self.group, self.level, self.conjugation,
                          self.provenance])

    @classmethod
    def from_tsv(cls, line: str) -> "FieldRecord":
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 10:
            raise ValueError(f"expected 10 tab-separated fields, got {len(parts)}")
        deg, coeffs, disc, exact, r1, r2, group, level, conj, prov = parts
        if exact not in ("0", "1"):
            raise ValueError("exactness flag must be 0 or 1")
        poly = IntPolynomial(tuple(int(c) for c in coeffs.split()))
        return cls(int(deg), poly, int(disc), exact == "1", int(r1), int(r2), group, level, conj, prov)


def make_record(f: IntPolynomial, provenance: str = "", prime_budget: int = 2000) -> FieldRecord:
    """Compute every invariant of the field of f and build a record."""
    if f.lead != 1 or not is_irreducible(f):
        raise ValueError("monic irreducible polynomial required")
    can = canonicalize(f)
    inv = field_discriminant(can)
    sig = signature_of(can)
    cert = identify(can, prime_budget)
    labels = [v.split()[0] for v in cert.verdict.split(" | ")]
    group = "|".join(labels)
    return FieldRecord(can.degree, can, inv.field_disc, inv.disc_exact, sig.r1, sig.r2, group,
                       cert.level, conjugation_type(sig.r1, sig.r2), provenance).validate()


INSERTED = "inserted"
DUPLICATE = "duplicate"
CANDIDATE_DUPLICATE = "candidate-duplicate"


@dataclass
class ImportReport:
    read: int = 0
    inserted: int = 0
    duplicates: int = 0
    candidate_duplicates: int = 0
    skipped: list = field(default_factory=list)  # (line number, reason)

    def lines(self):
        out = [f"read {self.read}", f"inserted {self.inserted}", f"duplicates {self.duplicates}",
               f"candidate duplicates {self.candidate_duplicates}", f"skipped {len(self.skipped)}"]
        out.extend(f"line {n}: {why}" for n, why in self.skipped)
        return out


class FieldDB:
    """In-memory record store with a single serialized writer."""

    def __init__(self):
        self._records = {}
        self._links = {}
        self._lock = threading.Lock()
        self.attempts = 0

    def __len__(self):
        return len(self._records)

    def __iter__(self):
        return iter(sorted(self._records.values(), key=_record_key))

    def __contains__(self, f) -> bool:
        return canonicalize(f) in self._records

    def get(self, f) -> FieldRecord | None:
        return self._records.get(canonicalize(f))

    def links(self, f) -> frozenset:
        return frozenset(self._links.get(canonicalize(f), ()))

    def insert(self, record: FieldRecord) -> str:
        record.validate()
        can = canonicalize(record.polynomial)
        if can != record.polynomial:
            record = replace(record, polynomial=can)
        with self._lock:
            self.attempts += 1
            if can in self._records:
                return DUPLICATE
            twins = [k for k, r in self._records.items() if r.invariants == record.invariants]
            self._records[can] = record
            self._links.setdefault(can, set())
            for k in twins:
                self._links[k].add(can)
                self._links[can].add(k)
            return CANDIDATE_DUPLICATE if twins else INSERTED

    def add_polynomial(self, f: IntPolynomial, provenance: str = "") -> str:
        return self.insert(make_record(f, provenance))

    def query(self, degree=None, group=None, r1=None, max_disc=None):
        out = []
        for r in self:
            if degree is not None and r.degree != degree:
                continue
            if group is not None and group not in r.group.split("|"):
                continue
            if r1 is not None and r.r1 != r1:
                continue
            if max_disc is not None and abs(r.field_disc) > max_disc:
                continue
            out.append(r)
        return out

    # -- files

    def export_lines(self):
        return sorted(r.to_tsv() for r in self._records.values())

    def export(self, path):
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            for line in self.export_lines():
                fh.write(line + "\n")

    def import_lines(self, lines, recompute: bool = False) -> ImportReport:
        rep = ImportReport()
        for num, line in enumerate(lines, 1):
            if not line.strip() or line.startswith("#"):
                continue
            rep.read += 1
            try:
                rec = FieldRecord.from_tsv(line)
                if recompute:
                    fresh = make_record(rec.polynomial, rec.provenance)
                    if fresh.invariants != rec.invariants:
                        raise InvariantError("recomputed", f"stored {rec.invariants}, found {fresh.invariants}")
                    rec = fresh
                status = self.insert(rec)
            except (ValueError, InvariantError) as exc:
                rep.skipped.append((num, str(exc)))
                continue
            if status == DUPLICATE:
                rep.duplicates += 1
            else:
                rep.inserted += 1
                if status == CANDIDATE_DUPLICATE:
                    rep.candidate_duplicates += 1
        return rep

    def import_file(self, path, recompute: bool = False) -> ImportReport:
        with open(path, encoding="ascii") as fh:
            return self.import_lines(fh.read().split("\n"), recompute)

    def import_polynomials(self, lines, provenance: str = "import") -> ImportReport:
        """One polynomial per line; every invariant is recomputed."""
        rep = ImportReport()
        for num, line in enumerate(lines, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            rep.read += 1
            try:
                status = self.add_polynomial(IntPolynomial.parse(text), provenance)
            except (ValueError, InvariantError) as exc:
                rep.skipped.append((num, str(exc)))
                continue
            if status == DUPLICATE:
                rep.duplicates += 1
            else:
                rep.inserted += 1
                rep.candidate_duplicates += status == CANDIDATE_DUPLICATE
        return rep


def _record_key(r: FieldRecord):
    return (r.degree, abs(r.field_disc), tuple(reversed(r.polynomial.coeffs)))


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class MinimaRow:
    group: str
    name: str
    r1: int
    value: int | None  # our minimum (signed)
    polynomial: IntPolynomial | None
    reference: int | None
    kind: str | None  # "=", "<=", ">=" or None
    status: str

    def line(self) -> str:
        ours = "-" if self.value is None else str(self.value)
        ref = "-" if self.reference is None else (
            str(self.reference) if self.kind == "=" else f"{self.kind}{self.reference}")
        return f"{self.group}\t{self.name}\t{self.r1}\t{ours}\t{ref}\t{self.status}"


def _compare(value, ref, kind):
    if value is None:
        return "no-record"
    if ref is None:
        return "record-only"
    a, b = abs(value), abs(ref)
    if kind == "=":
        if a == b:
            return "matches-paper"
        return "mismatch" if a < b else "above-reference"
    # "<=" and ">=" both bound |d| from above
    if a == b:
        return "matches-paper"
    return "improves-reference" if a < b else "above-reference"


@dataclass
class MinimaTable:
    degree: int
    rows: list

    def get(self, group: str, r1: int) -> MinimaRow | None:
        for r in self.rows:
            if r.group == group and r.r1 == r1:
                return r
        return None

    def lines(self):
        return ["group\tname\tr1\tours\treference\tstatus"] + [r.line() for r in self.rows]


def minima_report(db: FieldDB, degree: int, include_reference: bool = True) -> MinimaTable:
    """Smallest |d| per (group, r1) among exact records, against the reference tables."""
    best = {}
    for r in db.query(degree=degree):
        if not r.disc_exact or "|" in r.group or r.level in (DISPROVEN, INCONCLUSIVE):
            continue
        key = (r.group, r.r1)
        if key not in best or abs(r.field_disc) < abs(best[key].field_disc):
            best[key] = r
    ref = MINIMA_REFERENCE.get(degree, {})
    names = {label: name for (label, name) in ref}
    keys = set(best)
    if include_reference and best:
        for (label, _), cols in ref.items():
            keys |= {(label, r1) for r1 in cols}
    rows = []
    for label, r1 in sorted(keys, key=lambda k: (int(k[0].split("T")[1]) if "T" in k[0] else 0, k)):
        rec = best.get((label, r1))
        entry = None
        for (lab, _), cols in ref.items():
            if lab == label:
                entry = cols.get(r1)
        value = rec.field_disc if rec else None
        refv, kind = entry if entry else (None, None)
        rows.append(MinimaRow(label, names.get(label, label), r1, value,
                              rec.polynomial if rec else None, refv, kind, _compare(value, refv, kind)))
    return MinimaTable(degree, rows)


@dataclass(frozen=True)
class StatsRow:
    degree: int
    groups: int
    classes: int
    reference_polynomials: int
    records: int
    groups_recomputed: int | None
    classes_recomputed: int | None

    @property
    def consistent(self) -> bool:
        return ((self.groups_recomputed is None or self.groups_recomputed == self.groups)
                and (self.classes_recomputed is None or self.classes_recomputed == self.classes))

    def line(self) -> str:
        def show(x):
            return "-" if x is None else str(x)
        return (f"{self.degree}\t{self.groups}\t{self.classes}\t{self.reference_polynomials}\t"
                f"{self.records}\t{show(self.groups_recomputed)}\t{show(self.classes_recomputed)}")


STATS_HEADER = "degree\tgroups\tclasses\treference_polys\trecords\tgroups_computed\tclasses_computed"


def stats_report(db: FieldDB | None = None, recompute_upto: int = 7) -> list:
    """Per-degree group and class counts, recomputed where feasible."""
    rows = []
    for n, (g, c, polys) in sorted(DEGREE_STATS.items()):
        gr = cr = None
        if n <= min(recompute_upto, 8):
            gr = len(transitive_table(n))
            cr = fused_class_count(n)
        recs = len(db.query(degree=n)) if db is not None else 0
        rows.append(StatsRow(n, g, c, polys, recs, gr, cr))
    return rows


@dataclass(frozen=True)
class GapRow:
    group: str
    name: str
    missing: tuple  # conjugation cycle types as text
    source: str  # "computed" or "reference"


def gap_report(db: FieldDB, degree: int) -> list:
    """Conjugation types of each group with no record."""
    recs = db.query(degree=degree)
    seen = {}
    for r in recs:
        for g in r.group.split("|")[:1]:
            seen.setdefault(g, set()).add(r.conjugation)
    rows = []
    if 2 <= degree <= 8:
        for t in transitive_table(degree):
            types = [format_cycle_type(fc.cycle_type) for fc in involution_classes_fused(t.group)]
            missing = tuple(x for x in dict.fromkeys(types) if x not in seen.get(t.label, set()))
            if missing:
                rows.append(GapRow(t.label, t.name, missing, "computed"))
        return rows
    for label, (name, zeros) in OPEN_GAPS.items():
        if int(label.split("T")[0]) != degree:
            continue
        miss = tuple(conjugation_type(r1, (degree - r1) // 2) for r1 in zeros)
        miss = tuple(m for m in miss if m not in seen.get(label, set()))
        if miss:
            rows.append(GapRow(label, name, miss, "reference"))
    return rows


__all__ = [
    "CANDIDATE_DUPLICATE",
    "DEGREE_STATS",
    "DUPLICATE",
    "FIXTURES",
    "FieldDB",
    "FieldRecord",
    "GapRow",
    "INSERTED",
    "ImportReport",
    "InvariantError",
    "MINIMA_REFERENCE",
    "MinimaRow",
    "MinimaTable",
    "OPEN_GAPS",
    "STATS_HEADER",
    "StatsRow",
    "canonicalize",
    "conjugation_type",
    "gap_report",
    "make_record",
    "minima_report",
    "stats_report",
]
