from __future__ import annotations

import numpy as np
import pytest

from aplkit import families
from aplkit.errors import (
    BadIdentity,
    GeneratorsDoNotGenerate,
    NonAssociative,
    NotASubmonoid,
    OutOfRange,
    UnknownLetter,
)
from aplkit.monoid import (
    absolute_type_I_chain,
    build_from_table,
    build_from_transformations,
    congruence_closure,
    content_hash,
    cyclic_orbit,
    eggbox_dot,
    cayley_dot,
    is_absolute_type_I,
    is_aperiodic,
    is_ER,
    is_internal_L_chain,
    is_L_chain_of_idempotents,
    is_R_trivial_band,
    maximal_cliques,
    minimal_ideal,
    monoid_from_json,
    monoid_to_json,
    multiply,
    omega,
    quotient,
    restrict,
    stabilizer,
    submonoid,
    submonoids,
)


def test_u1_from_table():
    M = build_from_table(2, [[0, 1], [1, 1]], 0, {"x": 1})
    assert M.order == 2 and multiply(M, 1, 1) == 1
    assert is_aperiodic(M)


def test_z2_from_table():
    M = build_from_table(2, [[0, 1], [1, 0]], 0, {"x": 1})
    assert multiply(M, 1, 1) == 0
    assert not is_aperiodic(M)


def test_non_associative_names_a_triple():
    # 1*1 = 2, 2*1 = 1, 1*2 = 2: (1*1)*1 = 1 but 1*(1*1) = 2
    table = [[0, 1, 2], [1, 2, 2], [2, 1, 2]]
    with pytest.raises(NonAssociative) as info:
        build_from_table(3, table, 0, {"x": 1})
    a, b, c = info.value.triple
    t = table
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_bad_identity():
    with pytest.raises(BadIdentity):
        build_from_table(2, [[0, 0], [1, 1]], 0, {"x": 1})


def test_out_of_range_entry():
    with pytest.raises(OutOfRange):
        build_from_table(2, [[0, 1], [1, 5]], 0, {"x": 1})


def test_generators_must_generate():
    with pytest.raises(GeneratorsDoNotGenerate) as info:
        build_from_table(3, families.lz1().table, 0, {"a": 1})
    assert info.value.element == 2


def test_transformations_rz1():
    M = build_from_transformations(2, {"a": [0, 0], "b": [1, 1]})
    assert M.order == 3
    # constant maps: applying a then b gives b's constant
    assert M.evaluate("ab") == M.genmap["b"]
    assert M.evaluate("ba") == M.genmap["a"]


def test_transformations_trivial_and_swap():
    assert build_from_transformations(1, {"x": [0]}).order == 1
    Z = build_from_transformations(2, {"x": [1, 0]})
    assert Z.order == 2 and Z.evaluate("xx") == Z.identity


def test_transformations_reject_bad_points():
    with pytest.raises(OutOfRange):
        build_from_transformations(2, {"x": [0, 2]})


def test_full_transformation_monoid_t3():
    T3 = families.full_transformations(3)
    assert T3.order == 27
    assert len(T3.idempotents) == 10
    assert len(T3.green.J_classes) == 3


def test_evaluate_unknown_letter(z2):
    with pytest.raises(UnknownLetter):
        z2.evaluate("q")


def test_omega(z2, u1):
    assert omega(z2, 1) == 0
    assert omega(u1, 1) == 1
    M = families.full_transformations(3)
    for e in M.idempotents:
        assert omega(M, e) == e


def test_cyclic_orbit_monogenic():
    M = families.monogenic(3, 2)
    powers, index, period = cyclic_orbit(M.generators[0][1], M.mul)
    assert (index, period) == (3, 2)
    assert len(powers) == 4


def test_stabilizers(z2, lz1):
    for M in (z2, lz1, families.full_transformations(3)):
        assert M.identity in stabilizer(M, M.identity)
        assert stabilizer(M, M.identity) == {M.identity}
    assert stabilizer(lz1, 1) == {0, 1, 2}
    assert stabilizer(z2, 1) == {0}


def test_green_basic(z2, lz1):
    assert z2.green.L_classes == (frozenset({0, 1}),)
    assert set(lz1.green.L_classes) == {frozenset({0}), frozenset({1, 2})}
    assert set(lz1.green.R_classes) == {frozenset({0}), frozenset({1}), frozenset({2})}
    assert is_aperiodic(lz1)


def test_green_preorders_match_definition():
    M = families.full_transformations(3)
    g = M.green
    for a in M.elements:
        left = {M.table[m][a] for m in M.elements}
        right = {M.table[a][m] for m in M.elements}
        for b in M.elements:
            assert g.leq_L[b, a] == (b in left)
            assert g.leq_R[b, a] == (b in right)
    for H in g.H_classes:
        a = min(H)
        assert H == g.class_of("L", a) & g.class_of("R", a)


def test_submonoid(z2, lz1):
    assert submonoid(z2, {1}) == {0, 1}
    assert submonoid(lz1, {1, 2}) == {0, 1, 2}
    assert submonoid(lz1, set()) == {0}


def test_submonoids_of_z4():
    Z4 = families.cyclic_group(4)
    assert sorted(map(sorted, submonoids(Z4))) == [[0], [0, 1, 2, 3], [0, 2]]


def test_l_chain_of_idempotents(lz1, z2, rz1):
    assert is_L_chain_of_idempotents(lz1, {1, 2})
    assert not is_L_chain_of_idempotents(z2, {0, 1})
    assert not is_L_chain_of_idempotents(rz1, {1, 2})
    assert is_L_chain_of_idempotents(z2, set())


def test_internal_l_chain(lz1, rz1, z3):
    assert is_internal_L_chain(lz1, lz1.elements)
    assert not is_internal_L_chain(rz1, rz1.elements)
    assert is_internal_L_chain(z3, z3.elements)
    with pytest.raises(NotASubmonoid):
        is_internal_L_chain(lz1, {1, 2})


def test_r_trivial_band(lz1, rz1, trivial):
    assert is_R_trivial_band(lz1, lz1.elements)
    assert not is_R_trivial_band(rz1, rz1.elements)
    assert is_R_trivial_band(trivial, trivial.elements)


def test_minimal_ideal_and_er(lz1, rz1):
    assert minimal_ideal(lz1) == {1, 2}
    assert is_ER(lz1)
    assert not is_ER(rz1)


def test_absolute_type_one(lz1, rz1):
    assert is_absolute_type_I(lz1, lz1.elements)
    assert not is_absolute_type_I(rz1, rz1.elements)
    chain = absolute_type_I_chain(lz1, lz1.elements)
    assert frozenset().union(*chain) == {0, 1, 2}


def test_maximal_cliques_of_a_path():
    cliques = maximal_cliques([0, 1, 2], lambda a, b: abs(a - b) == 1)
    assert cliques == [[0, 1], [1, 2]]


def test_quotient_of_z4_onto_z2():
    Z4 = families.cyclic_group(4)
    parts = congruence_closure(Z4, [(0, 2)])
    assert sorted(map(sorted, parts)) == [[0, 2], [1, 3]]
    Q, proj = quotient(Z4, parts)
    assert Q.order == 2 and not is_aperiodic(Q)
    for a in Z4.elements:
        for b in Z4.elements:
            assert proj[Z4.table[a][b]] == Q.table[proj[a]][proj[b]]


def test_restrict_gives_abstract_submonoid(lz1):
    W, emb = restrict(lz1, {0, 1})
    assert W.order == 2 and emb == (0, 1)
    assert is_aperiodic(W)


def test_json_round_trip_and_hash():
    M = families.brandt_b2()
    again = monoid_from_json(monoid_to_json(M))
    assert again == M
    assert content_hash(again) == content_hash(M)
    assert content_hash(M) != content_hash(families.u1())


def test_json_transformation_form():
    M = monoid_from_json({"points": 2, "generators": {"x": [1, 0]}})
    assert M.order == 2


def test_dot_output(lz1):
    egg = eggbox_dot(lz1)
    assert egg.startswith("digraph eggbox") and egg.count("J") >= 2
    cay = cayley_dot(lz1)
    assert cay.count("->") == lz1.order * len(lz1.generators)


def test_built_tables_are_associative():
    for M in (families.brandt_b2(), families.full_transformations(3)):
        a = M.array
        # (xy)z against x(yz) over every triple at once
        assert np.array_equal(a[a], a[:, a])
        assert all(
            M.table[M.table[x][y]][z] == M.table[x][M.table[y][z]]
            for x in M.elements
            for y in M.elements
            for z in M.elements
        )
