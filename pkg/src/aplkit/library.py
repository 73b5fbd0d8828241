"""Exhaustive small-monoid enumeration and the witness monoid library.

Monoids are enumerated with the identity fixed at id 0 by filling the
remaining table cells in row-major order, rejecting partial tables that
already violate associativity, and keeping one representative per
isomorphism class (the lexicographically least relabelling).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from pathlib import Path

from aplkit import families
from aplkit.errors import OrderTooLarge
from aplkit.expansion import expand
from aplkit.monoid import Monoid, build_from_table, is_aperiodic, monoid_from_json, monoid_to_json, submonoid

MAX_EXHAUSTIVE_ORDER = 4


@dataclass(frozen=True, eq=False)
class LibraryEntry:
    name: str
    monoid: Monoid
    generating_sets: tuple[frozenset[int], ...]


def _partial_ok(table: list[list[int]], n: int) -> bool:
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            if ab < 0:
                continue
            for c in range(n):
                bc = table[b][c]
                if bc < 0:
                    continue
                left = table[ab][c]
                right = table[a][bc]
                if left >= 0 and right >= 0 and left != right:
                    return False
    return True


def _canonical(table: tuple[tuple[int, ...], ...], n: int) -> tuple:
    best = None
    for perm in permutations(range(1, n)):
        p = (0,) + perm  # p[old] = new
        inv = [0] * n
        for old, new in enumerate(p):
            inv[new] = old
        relabelled = tuple(tuple(p[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        if best is None or relabelled < best:
            best = relabelled
    return best


@lru_cache(maxsize=None)
def monoid_tables(order: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """One multiplication table per isomorphism class of monoids of this order."""
    if order > MAX_EXHAUSTIVE_ORDER:
        raise OrderTooLarge(f"exhaustive enumeration is capped at order {MAX_EXHAUSTIVE_ORDER}")
    n = order
    table = [[-1] * n for _ in range(n)]
    for a in range(n):
        table[0][a] = a
        table[a][0] = a
    cells = [(a, b) for a in range(1, n) for b in range(1, n)]
    found = []

    def fill(k: int) -> None:
        if k == len(cells):
            t = tuple(tuple(row) for row in table)
            if _canonical(t, n) == t:
                found.append(t)
            return
        a, b = cells[k]
        for v in range(n):
            table[a][b] = v
            if _partial_ok(table, n):
                fill(k + 1)
        table[a][b] = -1

    fill(0)
    return tuple(sorted(found))


def generating_sets(M: Monoid) -> tuple[frozenset[int], ...]:
    """Every subset of non-identity elements that generates ``M``."""
    rest = [a for a in M.elements if a != M.identity]
    out = []
    for k in range(len(rest) + 1):
        for combo in combinations(rest, k):
            if len(submonoid(M, combo)) == M.order:
                out.append(frozenset(combo))
    return tuple(out)


def _letters(k: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(k)]


def _entry(name: str, M: Monoid) -> LibraryEntry:
    return LibraryEntry(name, M, generating_sets(M))


def _with_minimal_generators(table) -> Monoid:
    bare = build_from_table(len(table), table, 0, require_generation=False)
    gens = min(generating_sets(bare), key=lambda s: (len(s), sorted(s)))
    return build_from_table(len(table), table, 0, dict(zip(_letters(len(gens)), sorted(gens))))


@lru_cache(maxsize=None)
def exhaustive_library(max_order: int, aperiodic_only: bool = True) -> tuple[LibraryEntry, ...]:
    """All monoids of order <= max_order up to isomorphism (aperiodic ones by default).

    Each monoid carries a minimal generating set as its generators
    (smallest, then lexicographically least).
    """
    if max_order > MAX_EXHAUSTIVE_ORDER:
        raise OrderTooLarge(f"exhaustive enumeration is capped at order {MAX_EXHAUSTIVE_ORDER}")
    out = []
    for order in range(1, max_order + 1):
        for i, table in enumerate(monoid_tables(order)):
            M = _with_minimal_generators(table)
            if aperiodic_only and not is_aperiodic(M):
                continue
            out.append(_entry(f"n{order}_{i}", M))
    return tuple(out)


def curated_aperiodic() -> tuple[LibraryEntry, ...]:
    """Aperiodic families beyond the exhaustive range."""
    items = [
        ("chain4", families.chain(4)),
        ("chain5", families.chain(5)),
        ("nilpotent4", families.nilpotent(4)),
        ("lz4", families.left_zero_with_identity(4)),
        ("rz4", families.right_zero_with_identity(4)),
        ("b2", families.brandt_b2()),
        ("hs_u1", expand(families.u1()).monoid),
        ("hs_lz1", expand(families.lz1()).monoid),
        ("hs_rz1", expand(families.rz1()).monoid),
    ]
    return tuple(_entry(name, M) for name, M in items)


def aperiodic_library(max_order: int = 4, curated: bool = True) -> tuple[LibraryEntry, ...]:
    lib = exhaustive_library(max_order, True)
    return lib + curated_aperiodic() if curated else lib


def corpus(max_order: int = 4) -> list[tuple[str, Monoid]]:
    """Test corpus: every monoid of order <= max_order plus curated families."""
    out = [(e.name, e.monoid) for e in exhaustive_library(max_order, False)]
    out += [
        ("z2", families.cyclic_group(2)),
        ("z3", families.cyclic_group(3)),
        ("z4", families.cyclic_group(4)),
        ("u1", families.u1()),
        ("lz1", families.lz1()),
        ("rz1", families.rz1()),
        ("chain3", families.chain(3)),
        ("nilpotent3", families.nilpotent(3)),
        ("monogenic_2_2", families.monogenic(2, 2)),
        ("b2", families.brandt_b2()),
    ]
    return out


def save_library(entries, directory: str | Path) -> Path:
    """Write entries as Monoid JSON files plus an ``index.json`` manifest."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    index = []
    for e in entries:
        fname = f"{e.name}.json"
        (directory / fname).write_text(json.dumps(monoid_to_json(e.monoid), sort_keys=True) + "\n")
        index.append(
            {
                "name": e.name,
                "file": fname,
                "order": e.monoid.order,
                "aperiodic": is_aperiodic(e.monoid),
                "generating_sets": [sorted(s) for s in e.generating_sets],
            }
        )
    (directory / "index.json").write_text(json.dumps({"monoids": index}, indent=1, sort_keys=True) + "\n")
    return directory


def load_library(directory: str | Path) -> list[LibraryEntry]:
    directory = Path(directory)
    index = json.loads((directory / "index.json").read_text())
    out = []
    for item in index["monoids"]:
        M = monoid_from_json(json.loads((directory / item["file"]).read_text()))
        sets = tuple(frozenset(s) for s in item["generating_sets"])
        out.append(LibraryEntry(item["name"], M, sets))
    return out
