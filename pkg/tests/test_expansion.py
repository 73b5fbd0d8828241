from __future__ import annotations

import pytest

from aplkit import families
from aplkit.errors import BaseMismatch, SizeLimitExceeded, UnknownLetter
from aplkit.expansion import (
    all_words,
    eta_fibers_aperiodic,
    expand,
    expand_iterated,
    expansion_to_json,
    generator_element,
    hs_multiply,
    hs_word,
    identity_element,
    stab_projection,
    tower_projection,
)
from aplkit.monoid import is_aperiodic

from oracles import words_expansion_size


def test_hs_word_z2_square(z2):
    e = hs_word(z2, "gg")
    assert e.diag == 0
    assert e.cuts == {(0, 0), (1, 1)}


def test_hs_word_empty_and_generator(u1):
    assert hs_word(u1, "") == identity_element(u1)
    assert hs_word(u1, "").cuts == frozenset()
    x = hs_word(u1, "x")
    assert x.diag == 1 and x.cuts == {(0, 1), (1, 0)}


def test_hs_word_unknown_letter(z2):
    with pytest.raises(UnknownLetter):
        hs_word(z2, "gq")


def test_hs_multiply_identity_and_cycle(z2):
    G = generator_element(z2, 1)
    E = identity_element(z2)
    assert hs_multiply(E, G) == G == hs_multiply(G, E)
    G2 = hs_multiply(G, G)
    assert G2.diag == 0 and G2.cuts == {(0, 0), (1, 1)}
    assert hs_multiply(G2, G) == G


def test_hs_multiply_rejects_mixed_bases(z2, u1):
    with pytest.raises(BaseMismatch):
        hs_multiply(generator_element(z2, 1), generator_element(u1, 1))


@pytest.mark.parametrize("name", ["z2", "u1", "lz1", "rz1", "z3", "b2"])
def test_multiplication_agrees_with_factorizations(name):
    M = {
        "z2": families.cyclic_group(2),
        "u1": families.u1(),
        "lz1": families.lz1(),
        "rz1": families.rz1(),
        "z3": families.cyclic_group(3),
        "b2": families.brandt_b2(),
    }[name]
    words = list(all_words(M.letters, 4))
    for u in words[:40]:
        for v in words[:40]:
            assert hs_multiply(hs_word(M, u), hs_word(M, v)) == hs_word(M, u + v)


def test_expansion_sizes(z2, u1, trivial):
    assert expand(z2).order == 3
    assert expand(u1).order == 3
    assert expand(trivial).order == 2


def test_expansion_tables_by_hand(z2, u1):
    # ids are BFS order: E, G, G^2
    assert expand(z2).table == ((0, 1, 2), (1, 2, 1), (2, 1, 2))
    X = expand(u1)
    assert X.table == ((0, 1, 2), (1, 2, 2), (2, 2, 2))
    assert is_aperiodic(X.monoid)


@pytest.mark.parametrize("name", ["z2", "u1", "lz1", "z3", "chain3", "b2"])
def test_expansion_size_matches_word_enumeration(name):
    M = {
        "z2": families.cyclic_group(2),
        "u1": families.u1(),
        "lz1": families.lz1(),
        "z3": families.cyclic_group(3),
        "chain3": families.chain(3),
        "b2": families.brandt_b2(),
    }[name]
    lengths = {"chain3": 7, "b2": 10}
    assert expand(M).order == words_expansion_size(M, lengths.get(name, 8))


def test_cut_soundness(corpus_monoids):
    for _, M in corpus_monoids:
        for e in expand(M).elements:
            assert all(M.table[u][v] == e.diag for u, v in e.cuts)
            if e.cuts:
                assert (M.identity, e.diag) in e.cuts and (e.diag, M.identity) in e.cuts


def test_eta_is_an_onto_homomorphism(corpus_monoids):
    for _, M in corpus_monoids:
        X = expand(M)
        assert set(X.eta) == set(M.elements)
        for a in range(X.order):
            for b in range(X.order):
                assert X.eta[X.table[a][b]] == M.table[X.eta[a]][X.eta[b]]


def test_expansion_cap():
    with pytest.raises(SizeLimitExceeded):
        expand(families.full_transformations(3), cap=100)


def test_iterated_expansion_projects_down(z2):
    levels = expand_iterated(z2, 2)
    assert [X.order for X in levels][0] == 3
    proj = tower_projection(levels)
    top = levels[-1].monoid
    for a in range(top.order):
        for b in range(top.order):
            assert proj[top.table[a][b]] == z2.table[proj[a]][proj[b]]


def test_stab_projection_examples(z2, lz1):
    chain, ok = stab_projection(z2, "gg")
    assert chain == [0] and ok
    chain, ok = stab_projection(lz1, "a")
    assert ok
    for M in (z2, lz1):
        assert stab_projection(M, "") == ([M.identity], True)


def test_eta_fibers_are_aperiodic(z2, z3):
    for M in (z2, z3, families.brandt_b2()):
        assert all(eta_fibers_aperiodic(expand(M)).values())


def test_expansion_json(u1):
    obj = expansion_to_json(expand(u1))
    assert obj["eta"] == [0, 1, 1]
    assert obj["elements"][0] == {"diag": 0, "cuts": []}


def test_all_words_shortlex():
    assert list(all_words("ab", 2)) == [(), ("a",), ("b",), ("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]
