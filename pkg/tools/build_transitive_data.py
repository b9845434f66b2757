"""Convert raw GAP dumps (tg.out, tc.out) into the embedded group data file.

The dumps were produced with GAP 4 + the transgrp package by running
tg.g and tc.g from this directory:

    gap -q -A tg.g > tg.out
    gap -q -A tc.g > tc.out
"""
import ast
import re
import sys
from pathlib import Path

HERE = Path(__file__).parent


def to_cycles(images):
    n = len(images)
    seen = set()
    out = []
    for i in range(1, n + 1):
        if i in seen or images[i - 1] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = images[i - 1]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = images[j - 1]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def main(dest):
    groups = []
    for line in (HERE / "tg.out").read_text().splitlines():
        if line.startswith("GRP"):
            _, n, k, order, name = line.split(" ", 4)
            groups.append({"n": int(n), "k": int(k), "order": int(order),
                           "name": name.strip(), "gens": []})
        elif line.startswith("GEN"):
            images = ast.literal_eval(line[4:].strip())
            groups[-1]["gens"].append(to_cycles(images))
    text = re.sub(r"\s+", " ", (HERE / "tc.out").read_text())
    subs = {}
    for m in re.finditer(r"SUB (\d+) (\d+) \[([^\]]*)\]", text):
        ids = [int(x) for x in m.group(3).replace(" ", "").split(",") if x]
        subs[(int(m.group(1)), int(m.group(2)))] = ids
    lines = [
        "# Transitive permutation groups of degree 2..8 (standard nTk numbering).",
        "# Source: GAP transgrp library, extracted by tools/build_transitive_data.py.",
        "# Block layout: label degree order name / one generator per line /",
        "# 'contains' line listing transitive subgroups up to conjugacy / blank.",
        "",
    ]
    for g in groups:
        lines.append(f"{g['n']}T{g['k']} {g['n']} {g['order']} {g['name']}")
        lines.extend(g["gens"])
        ids = subs[(g["n"], g["k"])]
        lines.append("contains " + " ".join(f"{g['n']}T{i}" for i in ids))
        lines.append("")
    Path(dest).write_text("\n".join(lines))


if __name__ == "__main__":
    main(sys.argv[1])
