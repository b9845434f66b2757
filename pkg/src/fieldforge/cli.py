"""The ``fieldforge`` command line.

Exit codes: 0 success, 1 verified negative, 2 undetermined, 3 usage or
input error.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass

from . import __version__
from .construct import (
    ConstructionError,
    LocalCondition,
    an_seed,
    cyclic_prime_degree_field,
    sn_realize,
)
from .embed import (
    SOLVABLE,
    UNDETERMINED,
    q8_obstruction,
    t57_obstruction_poly,
    z4_obstruction,
    z4_solve,
)
from .enumeration import EnumerationTask, enumerate_totally_real, in_hunter_region, sieve_oracle
from .fielddb import (
    STATS_HEADER,
    FieldDB,
    canonicalize,
    gap_report,
    minima_report,
    stats_report,
)
from .galois import DISPROVEN, INCONCLUSIVE, identify
from .orders import field_discriminant
from .permgrp import (
    Permutation,
    PermGroupSpec,
    format_cycle_type,
    normalizer_in,
    transfer_table,
    transitive_group,
)
from .polyarith import IntPolynomial, is_irreducible

OK, NEGATIVE, UNDECIDED, USAGE = 0, 1, 2, 3
DEFAULT_SEED = 20_030_701


@dataclass(frozen=True)
class CommandOutcome:
    code: int
    text: str


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _poly(text: str) -> IntPolynomial:
    return IntPolynomial.parse(text)


def _coeff_text(f: IntPolynomial) -> str:
    return " ".join(str(c) for c in f.coeffs)


# ---------------------------------------------------------------------------
# subcommands

def _cmd_identify(args):
    f = _poly(args.polynomial)
    cert = identify(f, args.prime_budget)
    if args.format == "tsv":
        text = "\t".join([_coeff_text(f), cert.verdict, cert.level, cert.method])
    else:
        text = cert.to_text()
    code = {DISPROVEN: NEGATIVE, INCONCLUSIVE: UNDECIDED}.get(cert.level, OK)
    return code, text


def _parse_range(text):
    a, b = text.split("..")
    return int(a), int(b)


def _cmd_enumerate(args):
    n, D = args.degree, args.disc_bound
    lines = []
    if args.oracle_box:
        lo, hi = _parse_range(args.oracle_box)
        found = {}
        for f in sieve_oracle(n, [(lo, hi)] * n):
            if not in_hunter_region(f, D) or not is_irreducible(f):
                continue
            d = field_discriminant(f).field_disc
            if abs(d) <= D:
                found[canonicalize(f)] = d
        polys = sorted(found, key=lambda g: tuple(reversed(g.coeffs)))
        for f in polys:
            lines.append(f"{_coeff_text(f)}\t{found[f]}" if args.format == "tsv" else str(f))
        lines.append("# oracle box {}..{}: {} polynomials".format(lo, hi, len(polys)))
        return OK, "\n".join(lines)
    res = enumerate_totally_real(EnumerationTask(n, D), jobs=args.jobs)
    for f in res.polynomials:
        d = res.discriminants[f]
        lines.append(f"{_coeff_text(f)}\t{d}" if args.format == "tsv" else f"{f}\t{d}")
    lines.extend("# " + x for x in res.report.lines())
    return OK, "\n".join(lines)


def _cmd_construct(args):
    if args.kind == "sn":
        conds = [LocalCondition.parse(c) for c in args.cond or ()]
        r = sn_realize(args.degree, args.complex_pairs, conds)
        if args.format == "tsv":
            return OK, "\t".join([_coeff_text(r.polynomial), str(r.signature.r1), str(r.signature.r2),
                                  r.certificate.verdict, r.certificate.level])
        out = [f"polynomial: {r.polynomial}", f"signature: {r.signature}",
               f"auxiliary primes: {' '.join(map(str, r.auxiliary))}", r.certificate.to_text()]
        return OK, "\n".join(out)
    if args.kind == "cyclic":
        c = cyclic_prime_degree_field(args.degree, args.conductor)
        if args.format == "tsv":
            return OK, f"{_coeff_text(c.polynomial)}\t{c.field_disc}\t{c.conductor}"
        types = " ".join(format_cycle_type(t) for t in c.types)
        return OK, "\n".join([f"polynomial: {c.polynomial}", f"conductor: {c.conductor}",
                              f"field discriminant: {c.field_disc}", f"signature: {c.signature}",
                              f"observed types: {types}"])
    g = an_seed(args.degree, args.complex_pairs)
    return OK, _coeff_text(g) if args.format == "tsv" else f"seed: {g}"


def _report_outcome(rep, fmt):
    code = OK if rep.verdict == SOLVABLE else UNDECIDED if rep.verdict == UNDETERMINED else NEGATIVE
    if fmt == "tsv":
        rows = []
        for v in rep.local:
            rows.append(f"{v.place}\t{v.verdict}\t{v.reason}")
        rows.append(f"global\t{rep.verdict}\t")
        return code, "\n".join(rows)
    return code, "\n".join(rep.lines())


def _cmd_embed(args):
    if args.kind == "z4":
        rep = z4_obstruction(args.d)
        code, text = _report_outcome(rep, args.format)
        if rep.solvable and args.solve:
            sol = z4_solve(args.d)
            text += f"\nsolution: {sol.polynomial}\tdisc {sol.field_disc}"
        return code, text
    if args.kind == "q8":
        return _report_outcome(q8_obstruction(args.d1, args.d2), args.format)
    return _report_outcome(t57_obstruction_poly(_poly(args.field)), args.format)


def _subgroup(G, text):
    if text == "stab":
        return G.stabilizer(1)
    if text.startswith("norm:"):
        gens = [g for g in text[5:].split(";") if g.strip()]
        return normalizer_in(G, PermGroupSpec(G.degree, gens))
    return PermGroupSpec(G.degree, [g for g in text.split(";") if g.strip()])


def _cmd_transfer(args):
    if args.group:
        G = transitive_group(args.group).group
    else:
        if not args.gens or not args.degree:
            raise _UsageError("give --group nTk or --degree with --gens")
        G = PermGroupSpec(args.degree, [Permutation.parse(g, args.degree) for g in args.gens.split(";")])
    H1, H2 = _subgroup(G, args.h1), _subgroup(G, args.h2)
    rows = transfer_table(G, H1, H2)
    out = []
    if args.format != "tsv":
        out.append(f"# [G:H1] = {G.order // H1.order}, [G:H2] = {G.order // H2.order}")
    for r in rows:
        out.append("\t".join([format_cycle_type(r.type1), format_cycle_type(r.type2),
                              str(r.ind1), str(r.ind2), str(r.classes)]))
    return OK, "\n".join(out)


def _load_db(path):
    db = FieldDB()
    try:
        db.import_file(path)
    except FileNotFoundError:
        pass
    return db


def _cmd_db(args):
    db = _load_db(args.db)
    if args.action == "import":
        if args.polynomials:
            with open(args.file, encoding="ascii") as fh:
                rep = db.import_polynomials(fh.read().split("\n"), args.provenance)
        else:
            rep = db.import_file(args.file, recompute=args.recompute)
        db.export(args.db)
        return (OK if not rep.skipped else UNDECIDED), "\n".join(rep.lines())
    if args.action == "export":
        db.export(args.file)
        return OK, f"wrote {len(db)} records to {args.file}"
    if args.action == "query":
        rows = db.query(args.degree, args.group, args.r1, args.max_disc)
        if args.format == "tsv":
            return OK, "\n".join(r.to_tsv() for r in rows)
        return OK, "\n".join(f"{r.polynomial}\t{r.field_disc}\t({r.r1},{r.r2})\t{r.group}\t{r.level}"
                             for r in rows)
    if args.action == "minima":
        if args.degree is None:
            raise _UsageError("minima needs --degree")
        return OK, "\n".join(minima_report(db, args.degree).lines())
    if args.action == "stats":
        rows = stats_report(db, recompute_upto=args.recompute_upto)
        return OK, "\n".join([STATS_HEADER] + [r.line() for r in rows])
    if args.degree is None:
        raise _UsageError("gaps needs --degree")
    rows = gap_report(db, args.degree)
    return OK, "\n".join(f"{r.group}\t{r.name}\t{', '.join(r.missing)}\t{r.source}" for r in rows)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "tsv"), default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = _Parser(prog="fieldforge", description="Number fields with prescribed Galois group.")
    p.add_argument("--version", action="version", version=f"fieldforge {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("identify", parents=[common], help="identify the Galois group of a polynomial")
    s.add_argument("polynomial")
    s.add_argument("--prime-budget", type=int, default=2000)
    s.set_defaults(func=_cmd_identify)

    s = sub.add_parser("enumerate", parents=[common], help="totally real fields of bounded discriminant")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--disc-bound", type=int, required=True)
    s.add_argument("--oracle-box", help="scan every coefficient in a..b instead of the tower")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=_cmd_enumerate)

    s = sub.add_parser("construct", parents=[common], help="explicit realizations")
    s.add_argument("kind", choices=("sn", "cyclic", "an-seed"))
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--complex-pairs", type=int, default=0)
    s.add_argument("--cond", action="append", help="p:k:poly or p:pattern:d1,d2,...")
    s.add_argument("--conductor", type=int)
    s.set_defaults(func=_cmd_construct)

    s = sub.add_parser("embed", parents=[common], help="Z2 embedding obstructions")
    s.add_argument("kind", choices=("z4", "q8", "t57"))
    s.add_argument("--d", type=int)
    s.add_argument("--d1", type=int)
    s.add_argument("--d2", type=int)
    s.add_argument("--field")
    s.add_argument("--solve", action="store_true", help="also construct a Z4 solution")
    s.set_defaults(func=_cmd_embed)

    s = sub.add_parser("transfer", parents=[common], help="cycle types in two coset actions")
    s.add_argument("--group", help="transitive group label nTk")
    s.add_argument("--degree", type=int)
    s.add_argument("--gens", help="generators separated by ';'")
    s.add_argument("--h1", default="stab", help="'stab', 'norm:<gens>' or generators")
    s.add_argument("--h2", required=True)
    s.set_defaults(func=_cmd_transfer)

    s = sub.add_parser("db", parents=[common], help="the field database")
    s.add_argument("action", choices=("import", "export", "query", "minima", "stats", "gaps"))
    s.add_argument("file", nargs="?")
    s.add_argument("--db", default="fieldforge.tsv")
    s.add_argument("--degree", type=int)
    s.add_argument("--group")
    s.add_argument("--r1", type=int)
    s.add_argument("--max-disc", type=int)
    s.add_argument("--polynomials", action="store_true", help="input holds one polynomial per line")
    s.add_argument("--recompute", action="store_true")
    s.add_argument("--provenance", default="import")
    s.add_argument("--recompute-upto", type=int, default=7)
    s.set_defaults(func=_cmd_db)
    return p


def _check_args(args):
    if args.command == "construct":
        if args.kind == "cyclic" and args.conductor is None:
            raise _UsageError("construct cyclic needs --conductor")
    if args.command == "embed":
        need = {"z4": ("d",), "q8": ("d1", "d2"), "t57": ("field",)}[args.kind]
        for k in need:
            if getattr(args, k) is None:
                raise _UsageError(f"embed {args.kind} needs --{k}")
    if args.command == "db" and args.action in ("import", "export") and not args.file:
        raise _UsageError(f"db {args.action} needs a file argument")


def dispatch(argv) -> CommandOutcome:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            return CommandOutcome(USAGE, parser.format_help())
        _check_args(args)
    except _UsageError as exc:
        return CommandOutcome(USAGE, str(exc))
    random.seed(args.seed)
    try:
        code, text = args.func(args)
    except _UsageError as exc:
        return CommandOutcome(USAGE, str(exc))
    except ConstructionError as exc:
        extra = f"\nbest candidate: {exc.best}" if exc.best is not None else ""
        return CommandOutcome(UNDECIDED, f"error: {exc}{extra}")
    except (ValueError, KeyError, OSError) as exc:
        return CommandOutcome(USAGE, f"error: {exc}")
    return CommandOutcome(code, text)


def main(argv=None) -> int:
    out = dispatch(sys.argv[1:] if argv is None else argv)
    if out.text:
        stream = sys.stdout if out.code in (OK, NEGATIVE, UNDECIDED) else sys.stderr
        print(out.text, file=stream)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
