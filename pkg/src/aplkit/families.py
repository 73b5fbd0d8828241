"""Small named monoids used as test corpus and curated witnesses.

Conventions for element ids: the identity is always id 0.
"""

from __future__ import annotations

from aplkit.monoid import Monoid, build_from_table, build_from_transformations


def trivial(letter: str = "x") -> Monoid:
    return build_from_table(1, [[0]], 0, {letter: 0})


def cyclic_group(n: int) -> Monoid:
    """Z_n with generator ``g`` = id 1; id k is g^k."""
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return build_from_table(n, table, 0, {"g": 1 % n})


def u1() -> Monoid:
    """{1, 0}: id 0 is the identity, id 1 the zero."""
    return build_from_table(2, [[0, 1], [1, 1]], 0, {"x": 1})


def left_zero_with_identity(k: int = 2) -> Monoid:
    """Left-zero semigroup {a1..ak} (ids 1..k) with an adjoined identity."""
    n = k + 1
    table = [[b if a == 0 else a for b in range(n)] for a in range(n)]
    return build_from_table(n, table, 0, {chr(ord("a") + i): i + 1 for i in range(k)})


def right_zero_with_identity(k: int = 2) -> Monoid:
    """Right-zero semigroup {a1..ak} (ids 1..k) with an adjoined identity."""
    n = k + 1
    table = [[a if b == 0 else b for b in range(n)] for a in range(n)]
    return build_from_table(n, table, 0, {chr(ord("a") + i): i + 1 for i in range(k)})


def lz1() -> Monoid:
    return left_zero_with_identity(2)


def rz1() -> Monoid:
    return right_zero_with_identity(2)


def chain(k: int) -> Monoid:
    """The semilattice 1 > e1 > ... > ek; ids are positions in the chain."""
    n = k + 1
    table = [[max(a, b) for b in range(n)] for a in range(n)]
    return build_from_table(n, table, 0, {f"e{i}": i for i in range(1, n)})


def nilpotent(k: int) -> Monoid:
    """{1, a, a^2, ..., a^k = 0}: the monogenic monoid with a^k = a^(k+1)."""
    n = k + 1
    table = [[min(a + b, k) for b in range(n)] for a in range(n)]
    return build_from_table(n, table, 0, {"a": 1})


def monogenic(index: int, period: int) -> Monoid:
    """<a | a^(index+period) = a^index> with identity adjoined as id 0."""
    n = index + period

    def power(k: int) -> int:
        if k < index + period:
            return k
        return index + (k - index) % period

    table = [[power(a + b) for b in range(n)] for a in range(n)]
    return build_from_table(n, table, 0, {"a": 1})


def full_transformations(points: int) -> Monoid:
    gens: dict[str, list[int]] = {}
    if points >= 2:
        gens["s"] = [1, 0] + list(range(2, points))
        gens["c"] = list(range(1, points)) + [0]
        gens["z"] = [0, 0] + list(range(2, points))
    else:
        gens["i"] = [0]
    return build_from_transformations(points, gens)


def brandt_b2() -> Monoid:
    """The five-element Brandt monoid B2 with identity adjoined (order 6)."""
    # partial injections on {0,1} encoded as maps on {0,1,2}; 2 is a sink
    return build_from_transformations(3, {"a": [2, 0, 2], "b": [1, 2, 2]})


def flip_flop() -> Monoid:
    """U2: right-zero {a, b} with identity; same as ``rz1``."""
    return rz1()
