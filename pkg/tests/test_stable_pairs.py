from __future__ import annotations

import pytest

from aplkit import families
from aplkit.errors import EmptySet, NotAMember, NotASubmonoid
from aplkit.monoid import is_submonoid, submonoid
from aplkit.pointlikes import henckell_closure
from aplkit.stable_pairs import (
    a_stable_decide,
    a_stable_maximal,
    idempotent_chains,
    m_stable_decide,
    m_stable_maximal,
    stab_in_power,
    stable_decide,
    union_of,
    verify_a_certificate,
    verify_m_certificate,
)


def fs(*xs):
    return frozenset(xs)


def pairs(reports):
    return {(r.Y, r.N) for r in reports}


def test_m_decide_lz1(lz1):
    r = m_stable_decide(lz1, 1, {0, 1, 2})
    assert r.verdict
    assert sorted(r.chain) == [0, 1, 2]
    assert verify_m_certificate(lz1, 1, {0, 1, 2}, r.chain)


def test_m_decide_z2(z2):
    r = m_stable_decide(z2, 1, {0})
    assert r.verdict
    # the chain reported is a maximal one; it generates {1} just like the empty chain
    assert submonoid(z2, r.chain) == {0}
    assert not m_stable_decide(z2, 1, {0, 1}).verdict


def test_m_decide_rejects_non_submonoid(lz1):
    with pytest.raises(NotASubmonoid):
        m_stable_decide(lz1, 1, {1})


def test_m_maximal(lz1, z2, trivial):
    assert pairs(m_stable_maximal(lz1)) == {(fs(0), fs(0)), (fs(1), fs(0, 1, 2)), (fs(2), fs(0, 1, 2))}
    assert pairs(m_stable_maximal(z2)) == {(fs(0), fs(0)), (fs(1), fs(0))}
    assert pairs(m_stable_maximal(trivial)) == {(fs(0), fs(0))}


def test_m_verdicts_do_not_depend_on_where_l_is_computed(corpus_monoids):
    for name, M in corpus_monoids:
        for y in M.elements:
            a = {frozenset(submonoid(M, c)) for c in idempotent_chains(M, y, "monoid")}
            b = {frozenset(submonoid(M, c)) for c in idempotent_chains(M, y, "stabilizer")}
            assert a == b, (name, y)


def test_stab_in_power(z2, u1):
    assert set(stab_in_power(henckell_closure(z2), {0, 1})) == {fs(0), fs(1), fs(0, 1)}
    assert stab_in_power(henckell_closure(z2), {0}) == [fs(0)]
    # U1 zero is id 1
    assert set(stab_in_power(henckell_closure(u1), {1})) == {fs(0), fs(1)}
    with pytest.raises(NotAMember):
        stab_in_power(henckell_closure(u1), {0, 1})


def test_a_decide_z2(z2):
    r = a_stable_decide(z2, {0, 1}, {0, 1})
    assert r.verdict
    assert union_of(r.W) == {0, 1}
    assert verify_a_certificate(z2, r.Y, r.N, r.Y_prime, r.W)
    r = a_stable_decide(z2, {1}, {0, 1})
    assert r.verdict and r.Y_prime == {0, 1}


def test_a_decide_u1(u1):
    assert not a_stable_decide(u1, {0}, {0, 1}).verdict


def test_a_decide_errors(z2):
    with pytest.raises(EmptySet):
        a_stable_decide(z2, set(), {0})
    with pytest.raises(NotASubmonoid):
        a_stable_decide(z2, {0}, {1})


def test_a_maximal(z2, lz1, trivial):
    assert pairs(a_stable_maximal(z2)) == {(fs(0, 1), fs(0, 1))}
    assert pairs(a_stable_maximal(lz1)) == {(fs(0), fs(0)), (fs(1), fs(0, 1, 2)), (fs(2), fs(0, 1, 2))}
    assert pairs(a_stable_maximal(trivial)) == {(fs(0), fs(0))}


def test_separation_z2(z2):
    assert a_stable_decide(z2, {1}, {0, 1}).verdict
    assert not m_stable_decide(z2, 1, {0, 1}).verdict


def test_certificates_reverify_on_corpus(corpus_monoids):
    for name, M in corpus_monoids:
        for r in a_stable_maximal(M):
            assert verify_a_certificate(M, r.Y, r.N, r.Y_prime, r.W), name
            assert is_submonoid(M, union_of(r.W))
        for r in m_stable_maximal(M):
            assert verify_m_certificate(M, min(r.Y), r.N, r.chain), name


def test_m_stable_implies_a_stable(corpus_monoids):
    for name, M in corpus_monoids:
        for r in m_stable_maximal(M):
            assert a_stable_decide(M, r.Y, r.N).verdict, name


def test_tampered_certificates_fail(z2, lz1):
    r = a_stable_decide(z2, {0, 1}, {0, 1})
    assert not verify_a_certificate(z2, r.Y, r.N, r.Y_prime, [fs(1)])
    assert not verify_m_certificate(lz1, 1, {0, 1, 2}, [1])


def test_stable_decide_dispatch(z2):
    assert not stable_decide(z2, {0, 1}, {0}, "M").verdict
    assert stable_decide(z2, {0, 1}, {0}, "A").verdict


def test_antichains(corpus_monoids):
    for _, M in corpus_monoids:
        for reports in (a_stable_maximal(M), m_stable_maximal(M)):
            ps = list(pairs(reports))
            for p in ps:
                for q in ps:
                    if p != q:
                        assert not (p[0] <= q[0] and p[1] <= q[1])
