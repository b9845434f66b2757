"""Cycle types of L2(7) on points and on its 8 Sylow-7 cosets, side by side."""

from fieldforge.permgrp import PermGroupSpec, normalizer_in, transfer_table

L = PermGroupSpec(7, ["(1 2 3 4 5 6 7)", "(2 3)(4 7)"])
H2 = normalizer_in(L, PermGroupSpec(7, ["(1 2 3 4 5 6 7)"]))
print(f"|L| = {L.order}, index of second subgroup = {L.order // H2.order}")
for row in transfer_table(L, L.stabilizer(1), H2):
    print(row)
