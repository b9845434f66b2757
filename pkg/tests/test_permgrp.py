from collections import Counter
from math import factorial

import pytest
from hypothesis import given, strategies as st
from sympy.combinatorics import Permutation as SPerm, PermutationGroup

from fieldforge.fielddb import DEGREE_STATS
from fieldforge.permgrp import (
    GroupTooLargeError,
    Permutation,
    PermGroupSpec,
    alternating_group,
    cycle_type_distribution,
    fused_class_count,
    group_elements,
    ind,
    involution_classes_fused,
    normalizer_in,
    parse_cycle_type,
    splitting_prediction,
    symmetric_group,
    transfer_table,
    transitive_group,
    transitive_table,
)

L27_GENS = ["(1 2 3 4 5 6 7)", "(2 3)(4 7)"]


def _sympy_group(G):
    return PermutationGroup([SPerm([g(i + 1) - 1 for i in range(G.degree)]) for g in G.generators])


def _ct(text):
    return parse_cycle_type(text)


def test_permutation_parse_and_print():
    p = Permutation.parse("(1 2 3)(4 5)", 5)
    assert str(p) == "(1 2 3)(4 5)"
    assert p.order() == 6 and p.cycle_type() == _ct("2 3")
    with pytest.raises(ValueError):
        Permutation.parse("(1 1)", 3)


def test_group_order_examples():
    assert PermGroupSpec(7, ["(1 2 3 4 5 6 7)", "(1 6)(2 5)(3 4)"]).order == 14
    assert PermGroupSpec(3, ["(1 2)", "(1 2 3)"]).order == 6
    assert PermGroupSpec(7, L27_GENS).order == 168


def test_group_bound_carries_partial_count():
    with pytest.raises(GroupTooLargeError) as err:
        group_elements(PermGroupSpec(8, ["(1 2)", "(1 2 3 4 5 6 7 8)"], order_bound=1000))
    assert err.value.partial >= 1000


def test_cycle_type_distribution_examples():
    assert cycle_type_distribution(alternating_group(3)) == {_ct("1^3"): 1, _ct("3"): 2}
    support = set(cycle_type_distribution(PermGroupSpec(7, L27_GENS)))
    assert support == {_ct(t) for t in ("1^7", "1^3 2^2", "1 3^2", "1 2 4", "7")}
    frob21 = transitive_group("7T3").group
    assert frob21.order == 21
    assert set(cycle_type_distribution(frob21)) == {_ct("1^7"), _ct("1 3^2"), _ct("7")}


@pytest.mark.parametrize("n", range(2, 9))
def test_transitive_table_against_sympy(n):
    table = transitive_table(n)
    assert len(table) == DEGREE_STATS[n][0]
    for t in table:
        G = t.group
        S = _sympy_group(G)
        if t.order <= 5000:
            assert G.order == t.order
        assert S.order() == t.order and S.is_transitive()
        assert factorial(n) % t.order == 0
        assert t.is_even() == all(SPerm(g).is_even for g in S.generators)


def test_transitive_counts():
    assert [len(transitive_table(n)) for n in (3, 4, 6, 7, 8)] == [2, 5, 16, 7, 50]
    with pytest.raises(ValueError):
        transitive_table(9)


@pytest.mark.parametrize("label", ["4T3", "5T3", "6T8", "7T5", "6T13"])
def test_distribution_matches_sympy(label):
    G = transitive_group(label).group
    dist = cycle_type_distribution(G)
    theirs = Counter()
    for g in _sympy_group(G).generate():
        cyc = sum(([k] * v for k, v in g.cycle_structure.items() if k > 1), [])
        theirs[tuple(sorted(cyc + [1] * (G.degree - sum(cyc)), reverse=True))] += 1
    assert dist == dict(theirs)
    assert sum(dist.values()) == G.order


@pytest.mark.parametrize("label", ["4T3", "5T3", "6T8", "7T5"])
def test_conjugacy_classes_against_sympy(label):
    G = transitive_group(label).group
    assert len(G.conjugacy_classes()) == len(_sympy_group(G).conjugacy_classes())


def test_involution_fusion_examples():
    assert len(involution_classes_fused(symmetric_group(4))) == 3
    v4 = PermGroupSpec(4, ["(1 2)(3 4)", "(1 3)(2 4)"])
    assert len(v4.conjugacy_classes()) == 4
    assert len(involution_classes_fused(v4)) == 2
    assert len(involution_classes_fused(PermGroupSpec(2, ["(1 2)"]))) == 2


def test_fusion_unfused_above_degree_bound():
    G = PermGroupSpec(10, ["(1 2 3 4 5 6 7 8 9 10)"])
    res = involution_classes_fused(G, max_degree=9)
    assert not res.fused and len(res) == 2


@pytest.mark.parametrize("n", range(2, 8))
def test_fused_class_totals_match_table(n):
    assert fused_class_count(n) == DEGREE_STATS[n][1]


def test_splitting_prediction_examples():
    S3 = symmetric_group(3)
    H = S3.stabilizer(1)
    t = PermGroupSpec(3, ["(1 2)"])
    assert splitting_prediction(S3, H, t, t.generators) == [(2, 1), (1, 1)]
    c = PermGroupSpec(3, ["(1 2 3)"])
    assert splitting_prediction(S3, H, c, []) == [(1, 3)]
    triv = PermGroupSpec(3, [])
    assert splitting_prediction(S3, H, triv, []) == [(1, 1)] * 3
    with pytest.raises(ValueError):
        splitting_prediction(S3, H, t, [Permutation.parse("(1 2 3)", 3)])


@given(st.sampled_from(["4T3", "5T3", "6T8", "7T5"]), st.data())
def test_splitting_prediction_sums_to_index(label, data):
    G = transitive_group(label).group
    els = sorted(group_elements(G), key=lambda g: g.images)
    g = data.draw(st.sampled_from(els))
    D = PermGroupSpec(G.degree, [g])
    k = data.draw(st.integers(1, max(1, g.order())))
    I = [g ** k] if (g.order() % k == 0) else []
    H = G.stabilizer(1)
    pred = splitting_prediction(G, H, D, I)
    assert sum(e * f for e, f in pred) == G.degree


def test_ind_examples():
    L = PermGroupSpec(7, L27_GENS)
    H1 = L.stabilizer(1)
    H2 = normalizer_in(L, PermGroupSpec(7, ["(1 2 3 4 5 6 7)"]))
    assert H2.order == 21
    pi = next(g for g in group_elements(L) if g.cycle_type() == _ct("1^3 2^2"))
    assert ind(pi, H1, L) == 2 and ind(pi, H2, L) == 4
    assert ind(Permutation.identity(7), H1, L) == 0
    with pytest.raises(ValueError):
        ind(Permutation.parse("(1 2)", 7), H1, L)


def test_ind_is_a_class_function():
    L = PermGroupSpec(7, L27_GENS)
    H2 = normalizer_in(L, PermGroupSpec(7, ["(1 2 3 4 5 6 7)"]))
    seen = {}
    for g in group_elements(L):
        seen.setdefault(L.class_index(g), set()).add(ind(g, H2, L))
    assert len(seen) == 6 and all(len(v) == 1 for v in seen.values())


def test_l27_transfer_table():
    L = PermGroupSpec(7, L27_GENS)
    rows = transfer_table(L, L.stabilizer(1), normalizer_in(L, PermGroupSpec(7, ["(1 2 3 4 5 6 7)"])))
    got = {(r.type1, r.type2) for r in rows}
    assert got == {(_ct(a), _ct(b)) for a, b in [("1^7", "1^8"), ("1^3 2^2", "2^4"), ("1 3^2", "1^2 3^2"),
                                                 ("1 2 4", "4^2"), ("7", "1 7")]}
    assert all(r.ind2 >= r.ind1 for r in rows)
    assert [(r.ind1, r.ind2) for r in rows] == [(0, 0), (2, 4), (4, 4), (4, 6), (6, 6)]


def test_transfer_table_identical_subgroups():
    S3 = symmetric_group(3)
    H = S3.stabilizer(1)
    assert all(r.type1 == r.type2 and r.ind1 == r.ind2 for r in transfer_table(S3, H, H))


def test_transfer_s4_degree_six():
    S4 = symmetric_group(4)
    H2 = PermGroupSpec(4, ["(1 2)", "(3 4)"])
    rows = transfer_table(S4, S4.stabilizer(1), H2)
    tr = next(r for r in rows if r.type1 == _ct("1^2 2"))
    assert tr.type2 == _ct("1^2 2^2")
