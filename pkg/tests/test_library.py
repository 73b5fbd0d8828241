from __future__ import annotations

import pytest

from aplkit.errors import OrderTooLarge
from aplkit.library import (
    aperiodic_library,
    corpus,
    curated_aperiodic,
    exhaustive_library,
    generating_sets,
    load_library,
    monoid_tables,
    save_library,
)
from aplkit.monoid import is_aperiodic, submonoid

from oracles import monoid_counts


def test_small_libraries():
    assert [e.monoid.order for e in aperiodic_library(1, curated=False)] == [1]
    lib2 = aperiodic_library(2, curated=False)
    assert [e.monoid.order for e in lib2] == [1, 2]
    # the order-2 member is U1: an identity and a zero
    U = lib2[1].monoid
    assert U.table == ((0, 1), (1, 1))


@pytest.mark.parametrize("order", [2, 3, 4])
def test_counts_match_brute_force(order):
    total, aperiodic = monoid_counts(order)
    assert len(monoid_tables(order)) == total
    assert sum(1 for e in exhaustive_library(order) if e.monoid.order == order) == aperiodic


def test_frozen_counts():
    # all monoids / aperiodic monoids of orders 1..4 up to isomorphism
    assert [len(monoid_tables(n)) for n in (1, 2, 3, 4)] == [1, 2, 7, 35]
    assert len(exhaustive_library(4)) == 1 + 1 + 4 + 19


def test_order_cap():
    with pytest.raises(OrderTooLarge):
        exhaustive_library(5)


def test_generating_sets_generate():
    for e in exhaustive_library(4, False):
        assert e.generating_sets
        for s in e.generating_sets:
            assert submonoid(e.monoid, s) == set(e.monoid.elements)
        assert set(generating_sets(e.monoid)) == set(e.generating_sets)


def test_curated_entries_are_aperiodic():
    assert all(is_aperiodic(e.monoid) for e in curated_aperiodic())


def test_corpus_size():
    assert len(corpus()) == 55


def test_save_and_load(tmp_path):
    lib = aperiodic_library(3)
    save_library(lib, tmp_path)
    back = load_library(tmp_path)
    assert [e.name for e in back] == [e.name for e in lib]
    assert all(a.monoid == b.monoid and a.generating_sets == b.generating_sets for a, b in zip(lib, back))
