from math import isqrt

import pytest
from hypothesis import given, strategies as st
from sympy import Poly, Symbol
from sympy.polys.numberfields.galoisgroups import galois_group

from fieldforge.construct import paper_u_block
from fieldforge.embed import (
    INFINITY,
    SOLVABLE,
    TWO_RAMIFIED_A4,
    UNDETERMINED,
    UNSOLVABLE,
    A4FieldData,
    LocalVerdict,
    RamifiedPrimeData,
    a4_field_data,
    hilbert_symbol,
    is_sum_of_two_squares,
    local_global_aggregate,
    q8_obstruction,
    sl2_criterion,
    t57_obstruction,
    t57_obstruction_poly,
    twist_outside_S,
    z4_obstruction,
    z4_solve,
)
from fieldforge.polyarith import IntPolynomial, factor_integer, squarefree_part

X = Symbol("x")
SQUAREFREE = [d for d in range(-2000, 2001) if d not in (0, 1) and squarefree_part(d) == d]
SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43]


def _two_squares_brute(n):
    if n < 0:
        return False
    return any(isqrt(n - a * a) ** 2 == n - a * a for a in range(isqrt(n) + 1))


def _criterion(d):
    # totally real and every odd prime dividing d is 1 mod 4
    odd = [p for p in factor_integer(abs(d)).primes if p != 2]
    return d > 0 and all(p % 4 == 1 for p in odd)


@pytest.mark.parametrize("d,verdict", [(5, True), (-1, False), (3, False), (13, True)])
def test_z4_examples(d, verdict):
    assert z4_obstruction(d).solvable is verdict


def test_z4_failure_places():
    rep = z4_obstruction(-1)
    assert {v.place for v in rep.local if v.verdict == UNSOLVABLE} == {INFINITY, 2}
    rep = z4_obstruction(3)
    assert 3 in {v.place for v in rep.local if v.verdict == UNSOLVABLE}


def test_z4_rejects_bad_input():
    for d in (0, 1, 12):
        with pytest.raises(ValueError):
            z4_obstruction(d)


def test_z4_criterion_and_sum_of_two_squares():
    for d in SQUAREFREE:
        ok = z4_obstruction(d).solvable
        assert ok == _criterion(d)
        assert ok == _two_squares_brute(d) == is_sum_of_two_squares(d)


def test_sum_of_two_squares_up_to_ten_thousand():
    for n in range(-50, 10001):
        assert is_sum_of_two_squares(n) == _two_squares_brute(n)


@given(st.integers(-60, 60).filter(bool), st.integers(-60, 60).filter(bool))
def test_hilbert_product_formula_and_symmetry(a, b):
    places = [INFINITY] + sorted(set(factor_integer(abs(2 * a * b)).primes))
    prod = 1
    for v in places:
        s = hilbert_symbol(a, b, v)
        assert s == hilbert_symbol(b, a, v) and s in (1, -1)
        prod *= s
    assert prod == 1
    assert all(hilbert_symbol(a, b, p) == 1 for p in SMALL_PRIMES if p not in places)


@given(st.integers(-40, 40).filter(bool), st.integers(-40, 40).filter(bool), st.integers(-40, 40).filter(bool),
       st.sampled_from([INFINITY] + SMALL_PRIMES[:6]))
def test_hilbert_bilinear(a, b, c, p):
    assert hilbert_symbol(a * b, c, p) == hilbert_symbol(a, c, p) * hilbert_symbol(b, c, p)


def _is_cyclic_quartic(f):
    G, _ = galois_group(Poly(list(reversed(f.coeffs)), X), by_name=True)
    return G.name == "C4"


def test_z4_solve_examples():
    s = z4_solve(5)
    assert s.polynomial == IntPolynomial.parse("x^4-10*x^2+5")
    assert s.field_disc == 2000 and s.certificate.verdict.startswith("4T1")
    assert _is_cyclic_quartic(s.polynomial)
    s = z4_solve(13)
    assert _is_cyclic_quartic(s.polynomial) and s.field_disc % 13 ** 2 == 0
    with pytest.raises(ValueError):
        z4_solve(3)


@pytest.mark.parametrize("d", [2, 5, 10, 13, 17, 26, 29, 37, 41, 65, 85])
def test_z4_solution_contains_quadratic(d):
    s = z4_solve(d)
    assert _is_cyclic_quartic(s.polynomial)
    qd = d if d % 4 == 1 else 4 * d
    assert s.field_disc % (qd * qd) == 0  # conductor-discriminant: d(L)^2 divides d(N)


def test_z4_twist_keeps_ramification_in_S():
    s = z4_solve(65, S={2, INFINITY})
    primes = set(factor_integer(s.field_disc).primes)
    assert primes <= {2, 5, 13}
    assert _is_cyclic_quartic(s.polynomial)


def test_q8_examples():
    rep = q8_obstruction(2, 5)
    assert not rep.solvable
    assert next(v for v in rep.local if v.place == 5).verdict == UNSOLVABLE
    rep = q8_obstruction(2, 3)
    assert next(v for v in rep.local if v.place == 3).verdict == SOLVABLE
    rep = q8_obstruction(-1, 2)
    assert not rep.solvable
    assert next(v for v in rep.local if v.place == INFINITY).verdict == UNSOLVABLE
    with pytest.raises(ValueError):
        q8_obstruction(2, 2)
    with pytest.raises(ValueError):
        q8_obstruction(2, 8)


def test_q8_failures_come_in_pairs():
    for d1 in (2, 3, 5, 6, 7, 10, 13, -1, -3):
        for d2 in (3, 5, 7, 11, 13, 17, -2):
            try:
                rep = q8_obstruction(d1, d2)
            except ValueError:
                continue
            bad = sum(v.verdict == UNSOLVABLE for v in rep.local)
            assert bad % 2 == 0
            assert rep.solvable == (bad == 0)


def _v(place, verdict):
    return LocalVerdict(place, verdict)


def test_local_global_aggregate():
    assert local_global_aggregate([_v(INFINITY, SOLVABLE), _v(3, SOLVABLE)]) == (SOLVABLE, None)
    assert local_global_aggregate([_v(3, UNSOLVABLE), _v(5, SOLVABLE)]) == (SOLVABLE, 3)
    assert local_global_aggregate([_v(3, UNSOLVABLE), _v(7, UNSOLVABLE)]) == (UNSOLVABLE, None)
    assert local_global_aggregate([_v(3, UNDETERMINED)])[0] == UNDETERMINED


verdicts = st.lists(st.tuples(st.integers(2, 50), st.sampled_from([SOLVABLE, UNSOLVABLE, UNDETERMINED])),
                    max_size=6)


@given(verdicts, st.integers(51, 100))
def test_adding_solvable_place_is_monotone(vs, extra):
    local = [_v(p, v) for p, v in vs]
    before, _ = local_global_aggregate(local)
    after, _ = local_global_aggregate(local + [_v(extra, SOLVABLE)])
    if before == SOLVABLE:
        assert after == SOLVABLE


def test_twist_outside_S():
    S = {2, INFINITY}
    assert twist_outside_S([3, 7], S) == 21
    assert twist_outside_S([3], S | {3}) == 1
    assert twist_outside_S([3], S, solution_totally_complex=True, base_totally_real=True) == -3
    with pytest.raises(ValueError):
        twist_outside_S([3], {INFINITY})


def test_t57_criteria_on_local_data():
    ok = A4FieldData(True, (RamifiedPrimeData(13, True, 1),))
    assert t57_obstruction(ok).verdict == SOLVABLE
    bad = A4FieldData(True, (RamifiedPrimeData(7, True, 1),))
    assert t57_obstruction(bad).verdict == UNSOLVABLE
    inert = A4FieldData(True, (RamifiedPrimeData(13, True, 3),))
    assert t57_obstruction(inert).verdict == UNSOLVABLE
    open2 = A4FieldData(True, (RamifiedPrimeData(2, True, 1), RamifiedPrimeData(13, True, 1)))
    assert t57_obstruction(open2).verdict == UNDETERMINED
    cx = A4FieldData(False, (RamifiedPrimeData(13, True, 1),))
    assert t57_obstruction(cx).verdict == UNSOLVABLE


def test_t57_from_polynomials():
    rep = t57_obstruction_poly(TWO_RAMIFIED_A4)
    assert rep.verdict == UNDETERMINED
    data = a4_field_data(TWO_RAMIFIED_A4)
    assert data.totally_real and data.two_ramified
    assert all(r.p == 2 or not r.even_ramification for r in data.ramified)
    with pytest.raises(ValueError):
        a4_field_data(IntPolynomial.parse("x^4-2"))
    # a totally real A4 quartic: the verdict is decided without the 2-adic gap
    rep = t57_obstruction_poly(paper_u_block(0))
    assert rep.verdict in (SOLVABLE, UNSOLVABLE)


def test_sl2_criterion():
    data = [RamifiedPrimeData(5, True, 1), RamifiedPrimeData(3, True, 2)]
    assert sl2_criterion(True, data).verdict == SOLVABLE
    assert sl2_criterion(True, [RamifiedPrimeData(5, True, 2)]).verdict == UNSOLVABLE
    assert sl2_criterion(False, data).verdict == UNSOLVABLE
