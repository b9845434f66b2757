"""Cyclic septics by conductor, then quadratic fields that embed into a Z4 extension."""

from fieldforge.construct import cyclic_conductor_sweep
from fieldforge.embed import z4_obstruction, z4_solve
from fieldforge.polyarith import squarefree_part

for row in cyclic_conductor_sweep(7, 29):
    print(row)

ok = [d for d in range(-30, 31) if d not in (0, 1) and squarefree_part(d) == d and z4_obstruction(d).solvable]
print("embeddable d in [-30, 30]:", ok)
s = z4_solve(5)
print("Z4 field over Q(sqrt 5):", s.polynomial, "disc", s.field_disc)
