"""Finite monoids given by multiplication tables.

Elements are dense integer ids ``0..order-1``; ``table[a][b]`` is the
product ``ab`` (row is the left factor).  Subsets of a monoid are passed
around as ``frozenset`` of ids.

Green's preorders follow the usual conventions: ``a <=_L b`` iff
``a = mb`` for some ``m`` (``b`` itself included since monoids have a
unit), dually for R, and ``a <=_J b`` iff ``a = mbn``.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from collections.abc import Callable, Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import TypeVar

import networkx as nx
import numpy as np

from aplkit.errors import (
    BadIdentity,
    GeneratorsDoNotGenerate,
    InputError,
    NonAssociative,
    NotASubmonoid,
    OutOfRange,
    SizeLimitExceeded,
    UnknownLetter,
)

T = TypeVar("T", bound=Hashable)

PointSet = frozenset


@dataclass(frozen=True, eq=False)
class GreenData:
    leq_L: np.ndarray
    leq_R: np.ndarray
    leq_J: np.ndarray
    L_classes: tuple[frozenset[int], ...]
    R_classes: tuple[frozenset[int], ...]
    J_classes: tuple[frozenset[int], ...]
    H_classes: tuple[frozenset[int], ...]

    def class_of(self, kind: str, a: int) -> frozenset[int]:
        for cls in getattr(self, f"{kind}_classes"):
            if a in cls:
                return cls
        raise KeyError(a)


@dataclass(frozen=True, eq=False)
class Monoid:
    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    generators: tuple[tuple[str, int], ...] = field(default=())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Monoid):
            return NotImplemented
        return (self.order, self.table, self.identity, self.generators) == (
            other.order,
            other.table,
            other.identity,
            other.generators,
        )

    def __hash__(self) -> int:
        return hash((self.order, self.table, self.identity, self.generators))

    def __repr__(self) -> str:
        return f"Monoid(order={self.order}, generators={dict(self.generators)})"

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(letter for letter, _ in self.generators)

    @cached_property
    def genmap(self) -> dict[str, int]:
        return dict(self.generators)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def evaluate(self, word: Iterable[str]) -> int:
        """Image in the monoid of a word over the generator letters."""
        m = self.identity
        gens = self.genmap
        for letter in word:
            try:
                m = self.table[m][gens[letter]]
            except KeyError:
                raise UnknownLetter(f"unknown letter {letter!r}") from None
        return m

    def set_product(self, xs: Iterable[int], ys: Iterable[int]) -> frozenset[int]:
        ys = tuple(ys)
        return frozenset(self.table[x][y] for x in xs for y in ys)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.int64).reshape(self.order, self.order)
        arr.setflags(write=False)
        return arr

    @cached_property
    def idempotents(self) -> frozenset[int]:
        return frozenset(a for a in self.elements if self.table[a][a] == a)

    @cached_property
    def green(self) -> GreenData:
        return green_within(self, self.elements)

    @cached_property
    def names(self) -> tuple[str, ...]:
        """Shortest-word name for every element ("1" for the identity)."""
        names: list[str | None] = [None] * self.order
        names[self.identity] = "1"
        queue = deque([self.identity])
        while queue:
            m = queue.popleft()
            for letter, g in self.generators:
                p = self.table[m][g]
                if names[p] is None:
                    names[p] = letter if m == self.identity else names[m] + letter
                    queue.append(p)
        return tuple(n if n is not None else f"#{i}" for i, n in enumerate(names))


# ---------------------------------------------------------------- builders


def _normalize_generators(generators) -> tuple[tuple[str, object], ...]:
    if generators is None:
        return ()
    if isinstance(generators, Mapping):
        items = tuple(generators.items())
    else:
        items = tuple((letter, value) for letter, value in generators)
    letters = [letter for letter, _ in items]
    if len(set(letters)) != len(letters):
        raise InputError(f"duplicate generator letters in {letters}")
    for letter in letters:
        if not isinstance(letter, str) or not letter:
            raise InputError(f"generator letter {letter!r} must be a non-empty string")
    return items


def build_from_table(
    order: int,
    table: Sequence[Sequence[int]],
    identity: int,
    generators: Mapping[str, int] | Iterable[tuple[str, int]] | None = None,
    *,
    require_generation: bool = True,
) -> Monoid:
    """Validate a multiplication table and wrap it as a :class:`Monoid`."""
    if order < 1:
        raise InputError("order must be positive")
    if len(table) != order or any(len(row) != order for row in table):
        raise InputError(f"table must be {order}x{order}")
    rows = tuple(tuple(int(x) for x in row) for row in table)
    for a, row in enumerate(rows):
        for b, x in enumerate(row):
            if not 0 <= x < order:
                raise OutOfRange(f"table[{a}][{b}] = {x} is out of range")
    if not 0 <= identity < order:
        raise OutOfRange(f"identity {identity} is out of range")
    for a in range(order):
        if rows[identity][a] != a or rows[a][identity] != a:
            raise BadIdentity(identity, a)
    arr = np.array(rows, dtype=np.int64)
    bad = first_associativity_failure(arr)
    if bad is not None:
        raise NonAssociative(*bad)
    gens = _normalize_generators(generators)
    for letter, g in gens:
        if not isinstance(g, (int, np.integer)) or not 0 <= g < order:
            raise OutOfRange(f"generator {letter!r} -> {g} is out of range")
    gens = tuple((letter, int(g)) for letter, g in gens)
    monoid = Monoid(order, rows, int(identity), gens)
    if require_generation:
        reached = submonoid(monoid, (g for _, g in gens))
        if len(reached) != order:
            raise GeneratorsDoNotGenerate(min(set(range(order)) - reached))
    return monoid


def first_associativity_failure(arr: np.ndarray) -> tuple[int, int, int] | None:
    """First triple (a, b, c) in lexicographic order with (ab)c != a(bc)."""
    left = arr[arr]  # left[a, b, c] = (ab)c
    right = arr[:, arr]  # right[a, b, c] = a(bc)
    bad = np.argwhere(left != right)
    if len(bad) == 0:
        return None
    return tuple(int(x) for x in bad[0])


def closure_monoid(
    identity: T,
    generators: Sequence[tuple[str, T]],
    mul: Callable[[T, T], T],
    *,
    cap: int | None = None,
    what: str = "monoid",
) -> tuple[Monoid, list[T]]:
    """Generate a monoid from concrete generator values.

    Elements are discovered breadth-first from the identity, right
    multiplying by generators in declared order; that discovery order
    is the canonical id order.  Returns the monoid and the list of
    concrete values indexed by id.
    """
    values: list[T] = [identity]
    index: dict[T, int] = {identity: 0}
    parent: list[tuple[int, int]] = [(-1, -1)]
    right: list[list[int]] = []
    k = 0
    while k < len(values):
        row = []
        for gi, (_, g) in enumerate(generators):
            p = mul(values[k], g)
            j = index.get(p)
            if j is None:
                j = len(values)
                if cap is not None and j >= cap:
                    raise SizeLimitExceeded(what, cap)
                index[p] = j
                values.append(p)
                parent.append((k, gi))
            row.append(j)
        right.append(row)
        k += 1
    n = len(values)
    cayley = np.array(right, dtype=np.int64).reshape(n, len(generators))
    # column j of the table is the right action of the word naming j
    cols = np.empty((n, n), dtype=np.int64)
    cols[:, 0] = np.arange(n)
    for j in range(1, n):
        pj, gi = parent[j]
        cols[:, j] = cayley[cols[:, pj], gi]
    table = tuple(tuple(int(x) for x in row) for row in cols)
    gens = tuple((letter, index[g]) for letter, g in generators)
    return Monoid(n, table, 0, gens), values


def build_from_transformations(
    point_count: int,
    generators: Mapping[str, Sequence[int]] | Iterable[tuple[str, Sequence[int]]],
    *,
    cap: int | None = None,
) -> Monoid:
    """Transformation monoid generated by maps on ``0..point_count-1``.

    Maps act on the right: the product ``fg`` applies ``f`` first.
    """
    if point_count < 1:
        raise InputError("point_count must be positive")
    gens = []
    for letter, images in _normalize_generators(generators):
        images = tuple(int(x) for x in images)
        if len(images) != point_count:
            raise OutOfRange(f"generator {letter!r} must map all {point_count} points")
        for p, x in enumerate(images):
            if not 0 <= x < point_count:
                raise OutOfRange(f"generator {letter!r} sends {p} to {x}, out of range")
        gens.append((letter, images))

    def compose(f, g):
        return tuple(g[x] for x in f)

    monoid, _ = closure_monoid(
        tuple(range(point_count)), gens, compose, cap=cap, what="transformation monoid"
    )
    return monoid


# ------------------------------------------------------------ basic algebra


def multiply(M: Monoid, a: int, b: int) -> int:
    return M.table[a][b]


def cyclic_orbit(x: T, mul: Callable[[T, T], T]) -> tuple[list[T], int, int]:
    """Powers ``x, x^2, ...`` up to the first repeat, with index and period.

    ``powers[k-1]`` is ``x^k``; ``x^(index+period) == x^index``.
    """
    powers = [x]
    seen = {x: 1}
    while True:
        nxt = mul(powers[-1], x)
        if nxt in seen:
            index = seen[nxt]
            return powers, index, len(powers) + 1 - index
        powers.append(nxt)
        seen[nxt] = len(powers)


def omega_power(x: T, mul: Callable[[T, T], T]) -> T:
    """The unique idempotent power of ``x``."""
    powers, index, period = cyclic_orbit(x, mul)
    k = -(-index // period) * period
    return powers[k - 1]


def omega(M: Monoid, a: int) -> int:
    return omega_power(a, M.mul)


def stabilizer(M: Monoid, m: int) -> frozenset[int]:
    row = M.table[m]
    return frozenset(s for s in M.elements if row[s] == m)


def submonoid(M: Monoid, seed: Iterable[int]) -> frozenset[int]:
    """Least subset containing ``seed`` and the identity, closed under products."""
    gens = sorted(set(seed))
    found = {M.identity}
    queue = deque([M.identity])
    while queue:
        a = queue.popleft()
        row = M.table[a]
        for g in gens:
            p = row[g]
            if p not in found:
                found.add(p)
                queue.append(p)
    return frozenset(found)


def submonoids(
    M: Monoid, within: Iterable[int] | None = None, cap: int | None = None
) -> list[frozenset[int]]:
    """Every submonoid of ``M`` contained in ``within``, in discovery order.

    Discovery is breadth-first from ``{1}``, adjoining one element at a
    time in increasing id order, so the listing is deterministic.
    """
    pool = sorted(M.elements if within is None else set(within))
    start = submonoid(M, ())
    seen = {start}
    out = [start]
    k = 0
    while k < len(out):
        current = out[k]
        k += 1
        for z in pool:
            if z in current:
                continue
            nxt = submonoid(M, current | {z})
            if nxt not in seen:
                if cap is not None and len(out) >= cap:
                    raise SizeLimitExceeded("submonoid enumeration", cap)
                seen.add(nxt)
                out.append(nxt)
    return out


def is_submonoid(M: Monoid, W: Iterable[int]) -> bool:
    W = frozenset(W)
    if M.identity not in W:
        return False
    return all(M.table[a][b] in W for a in W for b in W)


def _require_submonoid(M: Monoid, W: Iterable[int]) -> frozenset[int]:
    W = frozenset(W)
    if not is_submonoid(M, W):
        raise NotASubmonoid(f"{sorted(W)} is not a submonoid")
    return W


def is_aperiodic(M: Monoid, within: Iterable[int] | None = None) -> bool:
    elems = M.elements if within is None else within
    return all(cyclic_orbit(a, M.mul)[2] == 1 for a in elems)


# ------------------------------------------------------------------ Green


def _classes(leq: np.ndarray, elems: Sequence[int]) -> tuple[frozenset[int], ...]:
    equiv = leq & leq.T
    out = []
    done = set()
    for i, a in enumerate(elems):
        if a in done:
            continue
        cls = frozenset(elems[j] for j in np.flatnonzero(equiv[i]))
        done |= cls
        out.append(cls)
    return tuple(out)


def green_within(M: Monoid, W: Iterable[int]) -> GreenData:
    """Green's preorders of the submonoid ``W`` computed with ``W``'s own products.

    Matrices are indexed by position in ``sorted(W)``.  When ``W`` is all
    of ``M`` positions coincide with element ids.
    """
    elems = sorted(set(W))
    pos = {a: i for i, a in enumerate(elems)}
    n = len(elems)
    sub = M.array[np.ix_(elems, elems)]
    local = np.vectorize(pos.__getitem__, otypes=[np.int64])(sub) if n else sub
    leq_L = np.zeros((n, n), dtype=bool)
    leq_R = np.zeros((n, n), dtype=bool)
    leq_J = np.zeros((n, n), dtype=bool)
    for b in range(n):
        left = local[:, b]  # W b
        leq_L[left, b] = True
        leq_R[local[b, :], b] = True
        leq_J[np.unique(local[left, :]), b] = True
    L = _classes(leq_L, elems)
    R = _classes(leq_R, elems)
    J = _classes(leq_J, elems)
    H = tuple(
        frozenset(h)
        for lc in L
        for rc in R
        if (h := lc & rc)
    )
    H = tuple(sorted(H, key=min))
    return GreenData(leq_L, leq_R, leq_J, L, R, J, H)


def green(M: Monoid) -> GreenData:
    return M.green


def leq_L(M: Monoid, a: int, b: int) -> bool:
    return bool(M.green.leq_L[a, b])


# ----------------------------------------------------- structural predicates


def is_L_chain_of_idempotents(
    M: Monoid, Y: Iterable[int], within: Iterable[int] | None = None
) -> bool:
    """All of ``Y`` idempotent and pairwise <=_L comparable.

    The order is taken in ``M`` unless ``within`` names a submonoid, in
    which case it is computed with that submonoid's products.
    """
    Y = sorted(set(Y))
    if any(M.table[y][y] != y for y in Y):
        return False
    if within is None:
        leq = M.green.leq_L
        idx = {a: a for a in M.elements}
    else:
        W = sorted(set(within))
        if not set(Y) <= set(W):
            return False
        leq = green_within(M, W).leq_L
        idx = {a: i for i, a in enumerate(W)}
    return all(
        leq[idx[a], idx[b]] or leq[idx[b], idx[a]] for a, b in combinations(Y, 2)
    )


def _class_comparable(leq: np.ndarray, pos: dict[int, int], c1, c2) -> bool:
    a, b = pos[min(c1)], pos[min(c2)]
    return bool(leq[a, b] or leq[b, a])


def is_internal_L_chain(M: Monoid, W: Iterable[int]) -> bool:
    W = _require_submonoid(M, W)
    elems = sorted(W)
    pos = {a: i for i, a in enumerate(elems)}
    g = green_within(M, elems)
    return all(
        _class_comparable(g.leq_L, pos, c1, c2) for c1, c2 in combinations(g.L_classes, 2)
    )


def is_R_trivial_band(M: Monoid, W: Iterable[int]) -> bool:
    W = _require_submonoid(M, W)
    if any(M.table[a][a] != a for a in W):
        return False
    return all(len(c) == 1 for c in green_within(M, W).R_classes)


def minimal_ideal(M: Monoid) -> frozenset[int]:
    g = M.green
    for cls in g.J_classes:
        a = min(cls)
        if all(g.leq_J[a, b] for b in M.elements):
            return cls
    raise AssertionError("finite monoid without a minimal ideal")


def is_ER(M: Monoid) -> bool:
    """Idempotent-generated submonoid is R-trivial."""
    E = submonoid(M, M.idempotents)
    return all(len(c) == 1 for c in green_within(M, E).R_classes)


def maximal_cliques(nodes: Sequence[T], comparable: Callable[[T, T], bool]) -> list[list[T]]:
    """Maximal cliques of the comparability graph, each sorted, in sorted order."""
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from((a, b) for a, b in combinations(nodes, 2) if comparable(a, b))
    return sorted(sorted(c) for c in nx.find_cliques(graph))


def is_absolute_type_I(M: Monoid, W: Iterable[int]) -> bool:
    """``W`` is generated by a chain of its own L-classes."""
    return absolute_type_I_chain(M, W) is not None


def absolute_type_I_chain(M: Monoid, W: Iterable[int]) -> list[frozenset[int]] | None:
    W = _require_submonoid(M, W)
    elems = sorted(W)
    pos = {a: i for i, a in enumerate(elems)}
    g = green_within(M, elems)
    classes = sorted(g.L_classes, key=min)
    keys = list(range(len(classes)))
    cliques = maximal_cliques(
        keys, lambda i, j: _class_comparable(g.leq_L, pos, classes[i], classes[j])
    )
    for clique in cliques:
        union = frozenset().union(*(classes[i] for i in clique))
        if submonoid(M, union) == W:
            return [classes[i] for i in clique]
    return None


# ------------------------------------------------------------- morphisms


def congruence_closure(M: Monoid, pairs: Iterable[tuple[int, int]]) -> list[frozenset[int]]:
    """Partition of the least congruence containing ``pairs``."""
    parent = list(M.elements)

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[max(ra, rb)] = min(ra, rb)
        return True

    for a, b in pairs:
        union(a, b)
    changed = True
    while changed:
        changed = False
        for a in M.elements:
            ra = find(a)
            if ra == a:
                continue
            for m in M.elements:
                changed |= union(M.table[m][a], M.table[m][ra])
                changed |= union(M.table[a][m], M.table[ra][m])
    blocks: dict[int, set[int]] = {}
    for a in M.elements:
        blocks.setdefault(find(a), set()).add(a)
    return sorted((frozenset(b) for b in blocks.values()), key=min)


def quotient(M: Monoid, partition: Iterable[Iterable[int]]) -> tuple[Monoid, tuple[int, ...]]:
    """Quotient by a congruence given as a partition.

    Returns the quotient monoid and the projection as a tuple indexed by
    element of ``M``.  Blocks are numbered by their least element.
    """
    blocks = sorted((frozenset(b) for b in partition), key=min)
    proj = [-1] * M.order
    for i, block in enumerate(blocks):
        for a in block:
            if not 0 <= a < M.order or proj[a] != -1:
                raise InputError(f"partition is not a partition of 0..{M.order - 1}")
            proj[a] = i
    if -1 in proj:
        raise InputError(f"partition misses element {proj.index(-1)}")
    reps = [min(b) for b in blocks]
    table = [[proj[M.table[a][b]] for b in reps] for a in reps]
    for block in blocks:
        for a in block:
            for m in M.elements:
                if proj[M.table[a][m]] != table[proj[a]][proj[m]] or (
                    proj[M.table[m][a]] != table[proj[m]][proj[a]]
                ):
                    raise InputError(f"partition is not a congruence (element {a})")
    Q = build_from_table(
        len(blocks), table, proj[M.identity], [(x, proj[g]) for x, g in M.generators]
    )
    return Q, tuple(proj)


def restrict(M: Monoid, W: Iterable[int]) -> tuple[Monoid, tuple[int, ...]]:
    """The submonoid ``W`` as a standalone monoid, with the embedding.

    Generators are the non-identity elements of ``W``, lettered ``e<id>``.
    """
    W = sorted(_require_submonoid(M, W))
    pos = {a: i for i, a in enumerate(W)}
    table = [[pos[M.table[a][b]] for b in W] for a in W]
    gens = [(f"e{a}", pos[a]) for a in W if a != M.identity]
    return build_from_table(len(W), table, pos[M.identity], gens), tuple(W)


# ---------------------------------------------------------- serialization


def monoid_from_json(obj: Mapping) -> Monoid:
    if "table" in obj:
        try:
            order = int(obj.get("order", len(obj["table"])))
            identity = int(obj["identity"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"monoid JSON: bad or missing field ({exc})") from None
        gens = obj.get("generators")
        if gens is None:
            gens = {f"e{a}": a for a in range(order) if a != identity}
        return build_from_table(order, obj["table"], identity, gens)
    if "points" in obj:
        if "generators" not in obj:
            raise InputError("monoid JSON: transformation form needs 'generators'")
        return build_from_transformations(int(obj["points"]), obj["generators"])
    raise InputError("monoid JSON needs either 'table' or 'points'")


def monoid_to_json(M: Monoid) -> dict:
    return {
        "order": M.order,
        "identity": M.identity,
        "table": [list(row) for row in M.table],
        "generators": dict(M.generators),
    }


def content_hash(M: Monoid) -> str:
    blob = json.dumps(monoid_to_json(M), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def eggbox_dot(M: Monoid) -> str:
    """Graphviz source drawing each J-class as a box of H-class cells."""
    g = M.green
    names = M.names
    lines = ["digraph eggbox {", "  node [shape=plaintext];"]
    for k, J in enumerate(sorted(g.J_classes, key=min)):
        rows = [r for r in sorted(g.R_classes, key=min) if r <= J]
        cols = [c for c in sorted(g.L_classes, key=min) if c <= J]
        cells = []
        for r in rows:
            tds = []
            for c in cols:
                h = sorted(r & c)
                text = ", ".join(
                    names[a] + ("*" if a in M.idempotents else "") for a in h
                )
                tds.append(f"<td>{text}</td>")
            cells.append("<tr>" + "".join(tds) + "</tr>")
        label = '<table border="1" cellborder="1" cellspacing="0">' + "".join(cells) + "</table>"
        lines.append(f"  J{k} [label=<{label}>];")
    order = sorted(g.J_classes, key=min)
    for i, J1 in enumerate(order):
        for j, J2 in enumerate(order):
            a, b = min(J1), min(J2)
            if i != j and g.leq_J[b, a] and not any(
                g.leq_J[b, min(J3)] and g.leq_J[min(J3), a] and J3 not in (J1, J2)
                for J3 in order
            ):
                lines.append(f"  J{i} -> J{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cayley_dot(M: Monoid) -> str:
    """Graphviz source of the right Cayley graph over the generators."""
    names = M.names
    lines = ["digraph cayley {"]
    for a in M.elements:
        lines.append(f'  n{a} [label="{names[a]}"];')
    for a in M.elements:
        for letter, g in M.generators:
            lines.append(f'  n{a} -> n{M.table[a][g]} [label="{letter}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
