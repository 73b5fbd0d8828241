"""Aperiodic pointlike sets.

The family of aperiodic pointlikes is computed as the least family of
nonempty subsets that contains the singletons and is closed under
setwise product, under taking nonempty subsets, and under

    T(Z) = union of Z^w Z^k over k >= 0,

where ``Z^w`` is the idempotent power of ``Z`` under setwise product.
``T(Z)`` is the union of the cyclic group at the top of ``Z``'s orbit.

Subsets are handled as integer bitmasks internally; the public surface
uses ``frozenset`` of element ids.  Members are listed in canonical
order: by size, then by bitmask value.
"""

from __future__ import annotations

import heapq
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property, lru_cache

from aplkit.errors import EmptySet, NotAMember, SizeLimitExceeded
from aplkit.monoid import Monoid, build_from_table, cyclic_orbit

DEFAULT_FAMILY_CAP = 1 << 16

SINGLETON = "singleton"
PRODUCT = "product"
OMEGA_UNION = "omega-union"
DOWN_CLOSURE = "down-closure"


def to_mask(Z: Iterable[int]) -> int:
    mask = 0
    for a in Z:
        mask |= 1 << a
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    a = 0
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return frozenset(out)


def bits(mask: int) -> list[int]:
    return sorted(from_mask(mask))


def canonical_key(mask: int) -> tuple[int, int]:
    return (mask.bit_count(), mask)


def sort_sets(sets: Iterable[Iterable[int]]) -> list[frozenset[int]]:
    return [from_mask(m) for m in sorted({to_mask(s) for s in sets}, key=canonical_key)]


def maximal_masks(masks: Iterable[int]) -> list[int]:
    """The subset-maximal masks, in canonical order."""
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda m: (-m.bit_count(), m)):
        if not any(m | k == k for k in kept):
            kept.append(m)
    return sorted(kept, key=canonical_key)


def submasks(mask: int):
    """Nonempty submasks of ``mask`` (including itself)."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


class SetProduct:
    """Setwise product on bitmasks over a fixed monoid."""

    def __init__(self, M: Monoid):
        self.M = M
        # left[a][b] = bit of ab
        self._bits = [[1 << M.table[a][b] for b in M.elements] for a in M.elements]
        self._cache: dict[tuple[int, int], int] = {}

    def __call__(self, x: int, y: int) -> int:
        key = (x, y)
        out = self._cache.get(key)
        if out is not None:
            return out
        ys = bits(y)
        out = 0
        for a in bits(x):
            row = self._bits[a]
            for b in ys:
                out |= row[b]
        self._cache[key] = out
        return out

    def group_union(self, z: int) -> int:
        """Union of ``Z^w Z^k`` for ``k >= 0``."""
        _, _, period = cyclic_orbit(z, self)
        p = self.omega(z)
        out = 0
        for _ in range(period):
            out |= p
            p = self(p, z)
        return out

    def omega(self, z: int) -> int:
        powers, index, period = cyclic_orbit(z, self)
        k = -(-index // period) * period
        return powers[k - 1]


@dataclass(frozen=True, eq=False)
class PowerMonoid:
    base: Monoid
    masks: tuple[int, ...]
    provenance: dict[int, str]

    @cached_property
    def members(self) -> tuple[frozenset[int], ...]:
        return tuple(from_mask(m) for m in self.masks)

    @cached_property
    def index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.masks)}

    @cached_property
    def setmul(self) -> SetProduct:
        return SetProduct(self.base)

    @cached_property
    def monoid(self) -> Monoid:
        """The family as an abstract monoid over member indices."""
        mul = self.setmul
        idx = self.index
        table = [[idx[mul(x, y)] for y in self.masks] for x in self.masks]
        return build_from_table(
            len(self.masks),
            table,
            idx[1 << self.base.identity],
            require_generation=False,
        )

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, Z: Iterable[int]) -> bool:
        return to_mask(Z) in self.index

    def product(self, Z1: Iterable[int], Z2: Iterable[int]) -> frozenset[int]:
        return from_mask(self.setmul(to_mask(Z1), to_mask(Z2)))

    def index_of(self, Z: Iterable[int]) -> int:
        try:
            return self.index[to_mask(Z)]
        except KeyError:
            raise NotAMember(f"{sorted(Z)} is not a pointlike") from None

    def supersets(self, Z: Iterable[int]) -> list[int]:
        """Indices of members containing ``Z``, canonical order."""
        z = to_mask(Z)
        return [i for i, m in enumerate(self.masks) if m & z == z]


def henckell_closure(M: Monoid, cap: int = DEFAULT_FAMILY_CAP) -> PowerMonoid:
    """The full family of aperiodic pointlikes of ``M``."""
    return _closure_cached(M, cap)


@lru_cache(maxsize=128)
def maximal_pointlike_masks(M: Monoid) -> tuple[tuple[int, str], ...]:
    """Subset-maximal pointlikes with the rule that produced each.

    Products and ``T`` are monotone for inclusion, so the fixpoint can
    be run on the antichain of maximal members alone; the family is its
    down-closure.
    """
    mul = SetProduct(M)
    top: dict[int, str] = {}
    heap: list[tuple[int, int]] = []

    def offer(z: int, tag: str) -> None:
        if any(z | m == m for m in top):
            return
        for m in [m for m in top if m | z == z]:
            del top[m]
        top[z] = tag
        heapq.heappush(heap, canonical_key(z))

    for a in M.elements:
        offer(1 << a, SINGLETON)
    while heap:
        _, z = heapq.heappop(heap)
        if z not in top:
            continue
        for w in sorted(top, key=canonical_key):
            offer(mul(z, w), PRODUCT)
            offer(mul(w, z), PRODUCT)
        offer(mul.group_union(z), OMEGA_UNION)
    return tuple((m, top[m]) for m in sorted(top, key=canonical_key))


@lru_cache(maxsize=128)
def _closure_cached(M: Monoid, cap: int) -> PowerMonoid:
    provenance = down_closure(maximal_pointlike_masks(M), cap)
    return PowerMonoid(M, tuple(provenance), provenance)


def down_closure(tops: Iterable[tuple[int, str]], cap: int = DEFAULT_FAMILY_CAP) -> dict[int, str]:
    """Every nonempty subset of the tagged maximal masks, canonical order, with tags."""
    provenance: dict[int, str] = {}
    for top, tag in tops:
        for sub in submasks(top):
            if sub not in provenance:
                if len(provenance) >= cap:
                    raise SizeLimitExceeded("pointlike family", cap)
                provenance[sub] = DOWN_CLOSURE
        provenance[top] = tag
    for m in provenance:
        if m.bit_count() == 1:
            provenance[m] = SINGLETON
    return {m: provenance[m] for m in sorted(provenance, key=canonical_key)}


def is_pointlike(M: Monoid, Z: Iterable[int]) -> bool:
    Z = frozenset(Z)
    if not Z:
        raise EmptySet("pointlike candidates must be nonempty")
    z = to_mask(Z)
    return any(z | m == m for m, _ in maximal_pointlike_masks(M))


def maximal_pointlikes(M: Monoid) -> list[frozenset[int]]:
    return [from_mask(m) for m, _ in maximal_pointlike_masks(M)]


def idempotent_pointlikes(M: Monoid) -> list[frozenset[int]]:
    """Subset-maximal members ``Z`` of the family with ``ZZ = Z``."""
    PL = henckell_closure(M)
    idem = [z for z in PL.masks if PL.setmul(z, z) == z]
    return [from_mask(m) for m in maximal_masks(idem)]


def power_monoid_to_json(PL: PowerMonoid) -> dict:
    return {
        "order": PL.base.order,
        "count": len(PL),
        "members": [{"set": bits(m), "provenance": PL.provenance[m]} for m in PL.masks],
    }
