import subprocess
import sys

import pytest

from fieldforge.cli import NEGATIVE, OK, UNDECIDED, USAGE, dispatch
from fieldforge.embed import TWO_RAMIFIED_A4
from fieldforge.fielddb import FIXTURES, FieldRecord


def run(*argv):
    return dispatch(list(argv))


def test_identify_quadratic():
    out = run("identify", "x^2+1")
    assert out.code == OK
    assert "verdict: 2T1" in out.text and "level: ProvenEqual" in out.text


def test_embed_exit_codes():
    out = run("embed", "z4", "--d", "3")
    assert out.code == NEGATIVE and "global: unsolvable" in out.text
    out = run("embed", "t57", "--field", str(TWO_RAMIFIED_A4))
    assert out.code == UNDECIDED and "global: undetermined" in out.text
    out = run("embed", "z4", "--d", "5", "--solve")
    assert out.code == OK and "x^4 - 10*x^2 + 5" in out.text
    assert run("embed", "q8", "--d1", "2", "--d2", "5").code == NEGATIVE


@pytest.mark.parametrize("argv", [["bogus"], [], ["identify"], ["embed", "z4"], ["embed", "z4", "--d", "12"],
                                  ["identify", "x^2+"], ["construct", "cyclic", "--degree", "3"],
                                  ["db", "export"], ["enumerate", "--degree", "3"]])
def test_usage_errors(argv):
    out = dispatch(argv)
    assert out.code == USAGE and out.text


def test_deterministic_output():
    for argv in (["construct", "sn", "--degree", "5", "--complex-pairs", "1"],
                 ["enumerate", "--degree", "3", "--disc-bound", "300"],
                 ["identify", str(FIXTURES["A7"])]):
        a, b = dispatch(argv), dispatch(argv + ["--seed", "7"])
        assert a == dispatch(argv) and a.text == b.text


def test_enumerate_and_oracle_agree():
    tower = run("enumerate", "--degree", "3", "--disc-bound", "81", "--format", "tsv")
    oracle = run("enumerate", "--degree", "3", "--disc-bound", "81", "--oracle-box=-7..7", "--format", "tsv")
    body = lambda o: sorted(l for l in o.text.splitlines() if not l.startswith("#"))  # noqa: E731
    assert body(tower) == body(oracle) and len(body(tower)) == 2


def test_construct_commands():
    out = run("construct", "sn", "--degree", "4", "--complex-pairs", "2", "--cond", "2:1:x^4+x+1", "--format", "tsv")
    coeffs, r1, r2, verdict, level = out.text.split("\t")
    assert (r1, r2, verdict, level) == ("0", "2", "S4", "ProvenEqual")
    assert [int(c) % 2 for c in coeffs.split()] == [1, 1, 0, 0, 1]
    out = run("construct", "cyclic", "--degree", "7", "--conductor", "29")
    assert out.code == OK and "field discriminant: 594823321" in out.text
    out = run("construct", "an-seed", "--degree", "6", "--complex-pairs", "2")
    assert out.code == OK
    assert run("construct", "an-seed", "--degree", "6", "--complex-pairs", "1").code == USAGE


def test_transfer_table():
    out = run("transfer", "--group", "7T5", "--h2", "norm:(1 2 3 4 5 6 7)", "--format", "tsv")
    rows = [l.split("\t") for l in out.text.splitlines()]
    assert [(r[0], r[1]) for r in rows] == [("1^7", "1^8"), ("1^3 2^2", "2^4"), ("1 3^2", "1^2 3^2"),
                                            ("1 2 4", "4^2"), ("7", "1 7")]
    out = run("transfer", "--degree", "3", "--gens", "(1 2);(1 2 3)", "--h2", "stab")
    assert out.code == OK


def test_db_workflow(tmp_path):
    db = tmp_path / "fields.tsv"
    polys = tmp_path / "polys.txt"
    polys.write_text("\n".join(str(FIXTURES[k]) for k in ("A7", "L3(2)", "L3(2)'")) + "\n")
    out = run("db", "import", str(polys), "--polynomials", "--db", str(db))
    assert out.code == OK and "inserted 3" in out.text and "candidate duplicates 1" in out.text
    out = run("db", "query", "--db", str(db), "--group", "7T5", "--format", "tsv")
    recs = [FieldRecord.from_tsv(l) for l in out.text.splitlines()]
    assert len(recs) == 2 and {r.field_disc for r in recs} == {670188544}
    out = run("db", "minima", "--db", str(db), "--degree", "7")
    assert any("7T6" in l and "matches-paper" in l for l in out.text.splitlines())
    out = run("db", "stats", "--db", str(db), "--recompute-upto", "5")
    assert "7\t7\t14\t1360\t3" in out.text
    out = run("db", "gaps", "--db", str(db), "--degree", "9")
    assert "9T27" in out.text
    copy = tmp_path / "copy.tsv"
    assert run("db", "export", str(copy), "--db", str(db)).code == OK
    assert copy.read_text() == db.read_text()


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fieldforge.cli", "embed", "z4", "--d", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "unsolvable" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "fieldforge.cli", "nonsense"], capture_output=True, text=True)
    assert proc.returncode == 3 and "usage" in proc.stderr
