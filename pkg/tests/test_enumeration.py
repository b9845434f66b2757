import os
from fractions import Fraction
from math import ceil, floor, lcm, sqrt

import pytest
from hypothesis import given, settings, strategies as st

from fieldforge.enumeration import (
    HERMITE_POWER,
    EnumerationTask,
    critical_interval,
    enumerate_totally_real,
    hunter_box,
    hunter_t2_bound,
    in_hunter_region,
    sieve_oracle,
    tower_polynomials,
)
from fieldforge.fielddb import canonicalize
from fieldforge.orders import field_discriminant
from fieldforge.polyarith import (
    IntPolynomial,
    discriminant,
    is_irreducible,
    signature_of,
    squarefree_decomposition,
)

P = IntPolynomial.parse
S8_MIN = P("x^8 - x^7 - 7*x^6 + 4*x^5 + 15*x^4 - 3*x^3 - 9*x^2 + 1")

# Hermite constants gamma_k with their defining powers gamma_k^k.
GAMMA = {1: 1.0, 2: (4 / 3) ** 0.5, 3: 2 ** (1 / 3), 4: 4 ** 0.25, 5: 8 ** 0.2,
         6: (64 / 3) ** (1 / 6), 7: 64 ** (1 / 7), 8: 256 ** 0.125}


def test_hermite_powers():
    for k, g in GAMMA.items():
        assert float(HERMITE_POWER[k]) == pytest.approx(g ** k)


def test_hunter_bound_examples():
    assert hunter_t2_bound(2, 5, 0) == Fraction(5, 2)
    b = hunter_t2_bound(3, 49, 1)
    exact = 1 / 3 + (2 / sqrt(3)) * sqrt(49 / 3)
    assert exact <= b < exact + 1e-6
    with pytest.raises(ValueError):
        hunter_t2_bound(3, 0, 0)
    with pytest.raises(ValueError):
        hunter_t2_bound(11, 10 ** 9, 0)
    assert hunter_t2_bound(11, 10 ** 9, 0, hermite_power=Fraction(1000)) > 0


@given(st.integers(2, 9), st.integers(1, 10 ** 12), st.integers(0, 4))
def test_hunter_bound_rounds_up(n, D, a):
    a = min(a, n // 2)
    b = hunter_t2_bound(n, D, a)
    exact = a * a / n + GAMMA[n - 1] * (D / n) ** (1 / (n - 1))
    assert b >= exact * (1 - 1e-12)
    assert b - Fraction(exact) < Fraction(1, 10 ** 6) * max(1, exact)


def test_critical_interval_examples():
    ci = critical_interval(P("3*x^2-3"), P("x^3-3*x"))
    assert ci.integer_points == [-2, -1, 0, 1, 2]
    assert ci.boundary == {-2, 2}
    assert discriminant(P("x^3-3*x") - IntPolynomial([2])) == 0
    ci = critical_interval(P("2*x"), P("x^2"))
    assert ci.start == 0 and ci.stop is None
    assert ci.points(hi=3) == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        ci.integer_points
    with pytest.raises(ValueError):
        critical_interval(P("3*x^2+3"), P("x^3+3*x"))


def _roots_poly(roots):
    f = IntPolynomial([1])
    for r in roots:
        f = f * IntPolynomial([-r, 1])
    return f


@settings(max_examples=40)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=3, unique=True), st.sampled_from([1, 2, 6]),
       st.integers(-3, 3))
def test_critical_interval_against_scan(roots, step, c0):
    # f0 is an integral antiderivative of a totally real g; scan the constants directly.
    n = len(roots) + 1
    g = _roots_poly(roots) * IntPolynomial([lcm(*range(1, n + 1))])
    f0 = IntPolynomial([c0] + [c // (i + 1) for i, c in enumerate(g.coeffs)])
    assert f0.derivative() == g
    ci = critical_interval(g, f0, step)
    crit = [f0(Fraction(r)) for r in roots]
    lo, hi = floor(min(crit)) - 3 * step, ceil(max(crit)) + 3 * step
    got = set(ci.points(lo, hi))
    want, bnd = set(), set()
    for t in range(lo, hi + 1):
        if t % step:
            continue
        h = f0 - IntPolynomial([t])
        if discriminant(h) == 0:
            core = IntPolynomial([1])
            for q, _ in squarefree_decomposition(h):
                core = core * q
            if signature_of(core).r2 == 0:
                want.add(t)
                bnd.add(t)
        elif signature_of(h).r2 == 0:
            want.add(t)
    assert got == want
    assert ci.boundary == bnd


def test_small_enumerations():
    res = enumerate_totally_real(EnumerationTask(2, 5))
    assert [str(f) for f in res.polynomials] == ["x^2 - x - 1"]
    res = enumerate_totally_real(EnumerationTask(3, 49))
    assert [str(f) for f in res.polynomials] == ["x^3 - x^2 - 2*x + 1"]
    res = enumerate_totally_real(EnumerationTask(3, 81))
    assert set(res.discriminants.values()) == {49, 81}


def _oracle_fields(n, D):
    out = {}
    for f in sieve_oracle(n, hunter_box(n, D)):
        if in_hunter_region(f, D) and is_irreducible(f):
            d = field_discriminant(f).field_disc
            if abs(d) <= D:
                out[canonicalize(f)] = d
    return out


@pytest.mark.parametrize("n,D", [(2, 200), (3, 81), (3, 500), (4, 2000)])
def test_tower_equals_oracle(n, D):
    res = enumerate_totally_real(EnumerationTask(n, D))
    assert res.discriminants == _oracle_fields(n, D)
    raw, _ = tower_polynomials(EnumerationTask(n, D))
    box = [f for f in sieve_oracle(n, hunter_box(n, D)) if in_hunter_region(f, D)]
    assert sorted(raw, key=lambda f: f.coeffs) == sorted(box, key=lambda f: f.coeffs)


def test_tower_equals_oracle_degree_five_box():
    n, D = 5, 15000
    box = [(-4, 4), (-6, 6), (-5, 5), (-5, 1), (0, 2)]

    def inside(f):
        return all(lo <= c <= hi for c, (lo, hi) in zip(f.coeffs, box))

    raw, _ = tower_polynomials(EnumerationTask(n, D))
    oracle = [f for f in sieve_oracle(n, box) if in_hunter_region(f, D)]
    assert oracle
    assert sorted((f for f in raw if inside(f)), key=lambda f: f.coeffs) == sorted(oracle, key=lambda f: f.coeffs)


def test_degree_four_oracle_misses_only_imprimitive_fields():
    ds = set(enumerate_totally_real(EnumerationTask(4, 2000)).discriminants.values())
    assert ds == {725, 1125, 1957, 2000}
    # Q(sqrt 2, sqrt 5) has discriminant 1600 but no generator in the Hunter region
    assert field_discriminant(P("x^4-14*x^2+9")).field_disc == 1600


def test_every_output_is_totally_real_and_separable():
    res = enumerate_totally_real(EnumerationTask(4, 3000))
    for f in res.polynomials:
        assert discriminant(f) != 0 and tuple(signature_of(f)) == (4, 0)


def test_monotone_in_bound():
    a = set(enumerate_totally_real(EnumerationTask(3, 200)).polynomials)
    b = set(enumerate_totally_real(EnumerationTask(3, 700)).polynomials)
    assert a <= b


def test_parallel_matches_serial():
    t = EnumerationTask(4, 2000)
    assert enumerate_totally_real(t, jobs=2).polynomials == enumerate_totally_real(t).polynomials


def test_report_counts():
    res = enumerate_totally_real(EnumerationTask(3, 81))
    r = res.report
    assert r.fields == len(res.polynomials) == 2
    assert r.totally_real == r.reducible + r.over_bound + r.accepted
    assert r.lines()[0] == "report"


def test_sieve_oracle_small_boxes():
    quad = sieve_oracle(2, [(-2, 2), (-2, 2)])
    by_hand = [(a0, a1) for a0 in range(-2, 3) for a1 in range(-2, 3) if a1 * a1 - 4 * a0 > 0]
    assert len(quad) == len(by_hand) == 14
    assert sieve_oracle(3, [(1, 0), (0, 0), (0, 0)]) == []
    with pytest.raises(ValueError):
        sieve_oracle(6, [(-20, 20)] * 6)


def test_task_validation():
    with pytest.raises(ValueError):
        EnumerationTask(4, 100, a_top=(3,))
    with pytest.raises(ValueError):
        EnumerationTask(4, 0)


@pytest.mark.skipif(not os.environ.get("FIELDFORGE_LONG"), reason="degree-8 run is opt-in")
def test_degree_eight_contains_minimal_field():
    res = enumerate_totally_real(EnumerationTask(8, 483345053), jobs=os.cpu_count() or 1)
    assert canonicalize(S8_MIN) in res.discriminants
    assert min(res.discriminants.values()) == 483345053
    # same order of magnitude as the published candidate count
    assert 10 ** 5 <= res.report.totally_real <= 10 ** 7
