"""Stable pairs for the pseudovarieties of all finite monoids (M) and of
aperiodic monoids (A).

M: ``({y}, N)`` is stable iff some L-chain of idempotents in the
stabilizer of ``y`` generates a submonoid containing ``N``.

A: ``(Y, N)`` is stable iff ``Y`` lies in a pointlike ``Y'`` whose
stabilizer inside the pointlike monoid has a submonoid ``W`` that is an
internal L-chain with ``N`` contained in the union of ``W``.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from aplkit.errors import EmptySet, InputError, NotASubmonoid
from aplkit.monoid import (
    Monoid,
    green_within,
    is_internal_L_chain,
    is_submonoid,
    maximal_cliques,
    stabilizer,
    submonoid,
    submonoids,
)
from aplkit.pointlikes import (
    PowerMonoid,
    bits,
    canonical_key,
    from_mask,
    henckell_closure,
    to_mask,
)

DEFAULT_SUBMONOID_CAP = 200_000


@dataclass
class StablePairReport:
    variety: str
    Y: frozenset[int]
    N: frozenset[int]
    verdict: bool
    chain: list[int] | None = None
    Y_prime: frozenset[int] | None = None
    W: list[frozenset[int]] | None = field(default=None)

    def to_json(self) -> dict:
        out = {"variety": self.variety, "Y": sorted(self.Y), "N": sorted(self.N), "verdict": self.verdict}
        if self.verdict:
            if self.variety == "M":
                out["certificate"] = {"chain": list(self.chain)}
            else:
                out["certificate"] = {
                    "Y_prime": sorted(self.Y_prime),
                    "W": [sorted(z) for z in self.W],
                }
        return out


def _check_submonoid(M: Monoid, N: Iterable[int]) -> frozenset[int]:
    N = frozenset(N)
    if not all(0 <= n < M.order for n in N):
        raise InputError(f"N = {sorted(N)} names elements outside the monoid")
    if not is_submonoid(M, N):
        raise NotASubmonoid(f"N = {sorted(N)} is not a submonoid")
    return N


def pair_leq(p: tuple[frozenset[int], frozenset[int]], q: tuple[frozenset[int], frozenset[int]]) -> bool:
    return p[0] <= q[0] and p[1] <= q[1]


def maximal_pairs(pairs: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Maximal (Y, N) bitmask pairs under componentwise inclusion, canonical order."""
    kept: list[tuple[int, int]] = []
    for y, n in sorted(set(pairs), key=lambda p: (-(p[0].bit_count() + p[1].bit_count()), p)):
        if not any(y | ky == ky and n | kn == kn for ky, kn in kept):
            kept.append((y, n))
    return sorted(kept, key=lambda p: (canonical_key(p[0]), canonical_key(p[1])))


# ------------------------------------------------------------------- M


def _sort_chain(M: Monoid, chain: Iterable[int]) -> list[int]:
    """Order a chain from L-greatest to L-least (ties by id)."""
    chain = list(chain)
    leq = M.green.leq_L
    return sorted(chain, key=lambda a: (-sum(bool(leq[b, a]) for b in chain), a))


def idempotent_chains(M: Monoid, y: int, order: str = "monoid") -> list[list[int]]:
    """Maximal L-chains of idempotents in the stabilizer of ``y``.

    ``order="monoid"`` compares in ``M``; ``order="stabilizer"`` compares
    with the stabilizer's own products.
    """
    S = sorted(stabilizer(M, y))
    E = [e for e in S if M.table[e][e] == e]
    if order == "monoid":
        leq = M.green.leq_L
        pos = {a: a for a in M.elements}
    elif order == "stabilizer":
        leq = green_within(M, S).leq_L
        pos = {a: i for i, a in enumerate(S)}
    else:
        raise ValueError(f"unknown order {order!r}")
    cliques = maximal_cliques(E, lambda a, b: bool(leq[pos[a], pos[b]] or leq[pos[b], pos[a]]))
    return [_sort_chain(M, c) for c in cliques]


def m_stable_decide(M: Monoid, y: int, N: Iterable[int], order: str = "monoid") -> StablePairReport:
    N = _check_submonoid(M, N)
    if not 0 <= y < M.order:
        raise InputError(f"y = {y} is outside the monoid")
    for chain in idempotent_chains(M, y, order):
        if N <= submonoid(M, chain):
            return StablePairReport("M", frozenset({y}), N, True, chain=chain)
    return StablePairReport("M", frozenset({y}), N, False)


def m_stable_maximal(M: Monoid, order: str = "monoid") -> list[StablePairReport]:
    pairs: dict[tuple[int, int], list[int]] = {}
    for y in M.elements:
        for chain in idempotent_chains(M, y, order):
            key = (1 << y, to_mask(submonoid(M, chain)))
            pairs.setdefault(key, chain)
    return [
        StablePairReport("M", from_mask(y), from_mask(n), True, chain=pairs[(y, n)])
        for y, n in maximal_pairs(pairs)
    ]


def verify_m_certificate(M: Monoid, y: int, N: Iterable[int], chain: Iterable[int]) -> bool:
    chain = list(chain)
    row = M.table[y]
    leq = M.green.leq_L
    return (
        all(row[e] == y and M.table[e][e] == e for e in chain)
        and all(leq[a, b] or leq[b, a] for a, b in combinations(chain, 2))
        and frozenset(N) <= submonoid(M, chain)
    )


# ------------------------------------------------------------------- A


def stab_in_power(PL: PowerMonoid, Y: Iterable[int]) -> list[frozenset[int]]:
    """Members ``Z`` of the pointlike monoid with ``YZ = Y``."""
    i = PL.index_of(Y)
    return [PL.members[j] for j in _stab_indices(PL, i)]


def _stab_indices(PL: PowerMonoid, i: int) -> list[int]:
    row = PL.monoid.table[i]
    return [j for j in range(len(PL)) if row[j] == i]


@lru_cache(maxsize=4096)
def _chain_submonoids(PL: PowerMonoid, i: int, cap: int) -> tuple[tuple[frozenset[int], int], ...]:
    """Internal-L-chain submonoids ``W`` of Stab(Y'), with the mask of their union.

    Every submonoid is examined: the chain condition is not inherited by
    submonoids, so it cannot be used to prune.
    """
    P = PL.monoid
    out = []
    for W in submonoids(P, _stab_indices(PL, i), cap=cap):
        if is_internal_L_chain(P, W):
            union = 0
            for j in W:
                union |= PL.masks[j]
            out.append((W, union))
    return tuple(out)


def _w_sets(PL: PowerMonoid, W: Iterable[int]) -> list[frozenset[int]]:
    return [PL.members[j] for j in sorted(W, key=lambda j: canonical_key(PL.masks[j]))]


def a_stable_decide(
    M: Monoid, Y: Iterable[int], N: Iterable[int], cap: int = DEFAULT_SUBMONOID_CAP
) -> StablePairReport:
    Y = frozenset(Y)
    if not Y:
        raise EmptySet("Y must be nonempty")
    N = _check_submonoid(M, N)
    PL = henckell_closure(M)
    n = to_mask(N)
    for i in PL.supersets(Y):
        stab_union = 0
        for j in _stab_indices(PL, i):
            stab_union |= PL.masks[j]
        if stab_union & n != n:
            continue
        for W, union in _chain_submonoids(PL, i, cap):
            if union & n == n:
                return StablePairReport("A", Y, N, True, Y_prime=PL.members[i], W=_w_sets(PL, W))
    return StablePairReport("A", Y, N, False)


def a_stable_maximal(M: Monoid, cap: int = DEFAULT_SUBMONOID_CAP) -> list[StablePairReport]:
    PL = henckell_closure(M)
    certs: dict[tuple[int, int], tuple[int, frozenset[int]]] = {}
    for i, y in enumerate(PL.masks):
        for W, union in _chain_submonoids(PL, i, cap):
            certs.setdefault((y, union), (i, W))
    out = []
    for y, n in maximal_pairs(certs):
        i, W = certs[(y, n)]
        out.append(
            StablePairReport("A", from_mask(y), from_mask(n), True, Y_prime=PL.members[i], W=_w_sets(PL, W))
        )
    return out


def verify_a_certificate(
    M: Monoid,
    Y: Iterable[int],
    N: Iterable[int],
    Y_prime: Iterable[int],
    W: Iterable[Iterable[int]],
) -> bool:
    """Recheck an A-stable certificate with direct set products.

    Membership of ``Y'`` and of the sets in ``W`` in the pointlike family is
    checked against the maximal pointlikes; everything else is recomputed
    here without the cached power-monoid table.
    """
    from aplkit.pointlikes import is_pointlike

    Y, N, Yp = frozenset(Y), frozenset(N), frozenset(Y_prime)
    W = [frozenset(z) for z in W]
    Wset = set(W)
    if not (Y <= Yp and is_pointlike(M, Yp) and all(is_pointlike(M, z) for z in W)):
        return False
    if frozenset({M.identity}) not in Wset:
        return False
    if any(M.set_product(a, b) not in Wset for a in W for b in W):
        return False
    if any(M.set_product(Yp, z) != Yp for z in W):
        return False
    if not N <= frozenset().union(*W):
        return False
    # internal L-order of W: Z1 <=_L Z2 iff Z1 = U Z2 for some U in W
    left = {z: {M.set_product(u, z) for u in W} for z in W}
    classes: list[set[frozenset[int]]] = []
    for z in W:
        for cls in classes:
            rep = next(iter(cls))
            if z in left[rep] and rep in left[z]:
                cls.add(z)
                break
        else:
            classes.append({z})
    reps = [next(iter(c)) for c in classes]
    return all(a in left[b] or b in left[a] for a, b in combinations(reps, 2))


def union_of(W: Iterable[Iterable[int]]) -> frozenset[int]:
    return frozenset().union(*(frozenset(z) for z in W))


def pair_to_lists(Y: Iterable[int], N: Iterable[int]) -> tuple[list[int], list[int]]:
    return bits(to_mask(Y)), bits(to_mask(N))


def stable_decide(M: Monoid, Y: Iterable[int], N: Iterable[int], variety: str = "A") -> StablePairReport:
    """Decide ``(Y, N)`` for either variety.

    Only singletons are pointlike for all finite monoids, so a larger ``Y``
    is rejected outright in the ``"M"`` case.
    """
    Y = frozenset(Y)
    if variety == "A":
        return a_stable_decide(M, Y, N)
    if variety != "M":
        raise InputError(f"variety must be 'A' or 'M', got {variety!r}")
    if not Y:
        raise EmptySet("Y must be nonempty")
    if len(Y) > 1:
        return StablePairReport("M", Y, _check_submonoid(M, N), False)
    return m_stable_decide(M, next(iter(Y)), N)
