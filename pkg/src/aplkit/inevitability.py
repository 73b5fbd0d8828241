"""Labelled graphs, canonical relational morphisms and witness sweeps.

A witness is a canonical relational morphism ``phi: M -> N`` induced by a
map from ``M``'s generator letters into ``N``: ``(m, n)`` is related iff
some word evaluates to ``m`` in ``M`` and to ``n`` in ``N``.  A labelling
of a graph over ``M`` survives a witness when there is a commuting
singleton labelling over ``N`` with every label contained in the inverse
image of its relabel.  Surviving every witness of a finite library is a
necessary condition for inevitability, never a proof of it.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Protocol

import numpy as np

from aplkit.errors import AlphabetMismatch, LabelOverWrongMonoid, SizeLimitExceeded
from aplkit.expansion import expand
from aplkit.library import aperiodic_library, curated_aperiodic, exhaustive_library
from aplkit.monoid import Monoid, is_aperiodic, submonoid


class MonoidLike(Protocol):
    order: int
    identity: int

    def mul(self, a: int, b: int) -> int: ...


# ------------------------------------------------------------------ graphs


@dataclass(frozen=True)
class LabelledGraph:
    """Finite directed graph with subset labels on vertices and edges.

    ``edges[j] = (src, dst)`` indexes into ``vertices``.  Labels are keyed
    ``("v", i)`` / ``("e", j)``.
    """

    order: int
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    vertex_labels: tuple[frozenset[int], ...]
    edge_labels: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.vertex_labels) != len(self.vertices) or len(self.edge_labels) != len(self.edges):
            raise ValueError("one label per vertex and per edge is required")
        for s, d in self.edges:
            if not (0 <= s < len(self.vertices) and 0 <= d < len(self.vertices)):
                raise ValueError(f"edge ({s}, {d}) has an endpoint outside the graph")
        for lab in self.vertex_labels + self.edge_labels:
            if not lab:
                raise ValueError("labels must be nonempty")
            if not all(0 <= m < self.order for m in lab):
                raise LabelOverWrongMonoid(
                    f"label {sorted(lab)} is not over a monoid of order {self.order}"
                )

    def to_json(self) -> dict:
        labels = {f"v{i}": sorted(l) for i, l in enumerate(self.vertex_labels)}
        labels.update({f"e{j}": sorted(l) for j, l in enumerate(self.edge_labels)})
        return {
            "vertices": list(self.vertices),
            "edges": [{"src": self.vertices[s], "dst": self.vertices[d]} for s, d in self.edges],
            "labels": labels,
        }


def graph_from_json(obj: Mapping, order: int) -> LabelledGraph:
    """Parse ``{"vertices": [...], "edges": [{"src", "dst"}], "labels": {...}}``.

    Vertex labels are keyed by vertex name or ``v<i>``; edge labels by ``e<j>``.
    """
    vertices = tuple(str(v) for v in obj["vertices"])
    pos = {v: i for i, v in enumerate(vertices)}
    edges = []
    for j, e in enumerate(obj.get("edges", [])):
        try:
            edges.append((pos[str(e["src"])], pos[str(e["dst"])]))
        except KeyError as exc:
            raise ValueError(f"edge e{j} names an unknown vertex {exc}") from None
    labels = obj.get("labels", {})

    def lab(*keys):
        for k in keys:
            if k in labels:
                return frozenset(int(m) for m in labels[k])
        raise ValueError(f"missing label for {keys[0]}")

    vlabels = tuple(lab(f"v{i}", v) for i, v in enumerate(vertices))
    elabels = tuple(lab(f"e{j}") for j in range(len(edges)))
    return LabelledGraph(order, vertices, tuple(edges), vlabels, elabels)


def encode_pointlike(M: Monoid, Z: Iterable[int]) -> LabelledGraph:
    return LabelledGraph(M.order, ("v",), (), (frozenset(Z),), ())


def encode_stable_pair(M: Monoid, Y: Iterable[int], N: Iterable[int]) -> LabelledGraph:
    """One vertex labelled ``Y`` with a loop labelled ``{n}`` for each ``n`` in ``N``."""
    N = sorted(set(N))
    return LabelledGraph(
        M.order,
        ("v",),
        tuple((0, 0) for _ in N),
        (frozenset(Y),),
        tuple(frozenset({n}) for n in N),
    )


def encode_triple(M: Monoid, A: Iterable[int], B: Iterable[int], C: Iterable[int]) -> LabelledGraph:
    """``v1 --B--> v2`` with a loop ``C`` at ``v2``; ``v1`` labelled A, ``v2`` labelled AB."""
    A, B, C = frozenset(A), frozenset(B), frozenset(C)
    return LabelledGraph(
        M.order,
        ("v1", "v2"),
        ((0, 1), (1, 1)),
        (A, M.set_product(A, B)),
        (B, C),
    )


# --------------------------------------------------------------- witnesses


@dataclass(frozen=True, eq=False)
class WitnessMorphism:
    name: str
    source: Monoid
    target: MonoidLike
    genmap: tuple[tuple[str, int], ...]
    relation: frozenset[tuple[int, int]]
    aperiodic: bool = True
    preimages: dict[int, frozenset[int]] = field(default_factory=dict, repr=False)

    def preimage(self, n: int) -> frozenset[int]:
        return self.preimages.get(n, frozenset())


def pair_relation(
    M: Monoid,
    N: MonoidLike,
    genmap: Mapping[str, int],
    *,
    name: str = "",
    aperiodic: bool | None = None,
) -> WitnessMorphism:
    """Canonical relational morphism ``M -> N`` by BFS in ``M x N``."""
    missing = [x for x in M.letters if x not in genmap]
    if missing:
        raise AlphabetMismatch(f"generator map does not cover letters {missing}")
    gens = [(M.genmap[x], int(genmap[x])) for x in M.letters]
    start = (M.identity, N.identity)
    seen = {start}
    queue = deque([start])
    while queue:
        m, n = queue.popleft()
        for gm, gn in gens:
            p = (M.table[m][gm], N.mul(n, gn))
            if p not in seen:
                seen.add(p)
                queue.append(p)
    pre: dict[int, set[int]] = {}
    for m, n in seen:
        pre.setdefault(n, set()).add(m)
    if aperiodic is None:
        aperiodic = isinstance(N, Monoid) and is_aperiodic(N)
    return WitnessMorphism(
        name,
        M,
        N,
        tuple((x, int(genmap[x])) for x in M.letters),
        frozenset(seen),
        aperiodic,
        {n: frozenset(ms) for n, ms in pre.items()},
    )


def _table_array(N: MonoidLike) -> np.ndarray:
    if isinstance(N, Monoid):
        return N.array
    return np.array([[N.mul(a, b) for b in range(N.order)] for a in range(N.order)], dtype=np.int64)


def check_labelling(
    graph: LabelledGraph, witness: WitnessMorphism
) -> tuple[bool, dict[tuple[str, int], int] | None]:
    """Search for a commuting singleton relabelling related to ``graph``.

    Returns ``(True, assignment)`` with assignment keyed ``("v", i)`` /
    ``("e", j)``, or ``(False, None)``.
    """
    if graph.order != witness.source.order:
        raise LabelOverWrongMonoid(
            f"graph is over a monoid of order {graph.order}, witness source has order "
            f"{witness.source.order}"
        )
    pre = sorted(witness.preimages.items())
    vdom = [[n for n, ms in pre if lab <= ms] for lab in graph.vertex_labels]
    edom = [[n for n, ms in pre if lab <= ms] for lab in graph.edge_labels]
    if any(not d for d in vdom) or any(not d for d in edom):
        return False, None
    nv = len(graph.vertices)
    order = sorted(range(nv), key=lambda i: (len(vdom[i]), i))
    rank = {v: k for k, v in enumerate(order)}
    # edges become checkable once the later of their endpoints is assigned
    due: list[list[int]] = [[] for _ in range(nv)]
    for j, (s, d) in enumerate(graph.edges):
        due[order[max(rank[s], rank[d])]].append(j)
    assign: dict[int, int] = {}
    edge_choice: dict[int, int] = {}
    table = _table_array(witness.target)
    earr = [np.asarray(d, dtype=np.int64) for d in edom]
    reach_cache: dict[tuple[int, int], np.ndarray] = {}

    def reach(j: int, u: int) -> np.ndarray:
        """``u n`` for each ``n`` in the edge's domain, in domain order."""
        key = (j, u)
        out = reach_cache.get(key)
        if out is None:
            out = table[u, earr[j]]
            reach_cache[key] = out
        return out

    def search(k: int) -> bool:
        if k == nv:
            return True
        v = order[k]
        candidates = vdom[v]
        # an edge into v from an assigned vertex narrows v's candidates
        for j in due[v]:
            s, d = graph.edges[j]
            if d == v and s != v:
                cand = np.asarray(candidates, dtype=np.int64)
                candidates = cand[np.isin(cand, reach(j, assign[s]))].tolist()
        for n in candidates:
            assign[v] = n
            ok = True
            for j in due[v]:
                s, d = graph.edges[j]
                hits = np.flatnonzero(reach(j, assign[s]) == assign[d])
                if not hits.size:
                    ok = False
                    break
                edge_choice[j] = edom[j][hits[0]]
            if ok and search(k + 1):
                return True
        assign.pop(v, None)
        return False

    if not search(0):
        return False, None
    out = {("v", i): n for i, n in assign.items()}
    out.update({("e", j): n for j, n in edge_choice.items()})
    return True, dict(sorted(out.items()))


def brute_force_labelling(graph: LabelledGraph, witness: WitnessMorphism) -> bool:
    """Exhaustive reference: try every singleton labelling over the target."""
    items = [("v", i, lab) for i, lab in enumerate(graph.vertex_labels)]
    items += [("e", j, lab) for j, lab in enumerate(graph.edge_labels)]
    N = witness.target
    for choice in itertools.product(range(N.order), repeat=len(items)):
        related = all(
            all((m, n) in witness.relation for m in lab) for (_, _, lab), n in zip(items, choice)
        )
        if not related:
            continue
        nv = len(graph.vertices)
        if all(
            N.mul(choice[s], choice[nv + j]) == choice[d] for j, (s, d) in enumerate(graph.edges)
        ):
            return True
    return False


# -------------------------------------------------------- witness library


@dataclass(frozen=True)
class SweepConfig:
    variety: str = "A"
    max_order: int = 4
    include_expansion_towers: bool = True
    depth: int = 2
    tower_cap: int = 2000
    curated: bool = True
    threads: int = 1


@dataclass
class Census:
    library_witnesses: int = 0
    tower_witnesses: int = 0
    towers_skipped_over_cap: int = 0
    max_order: int = 0
    tower_depth: int = 0
    largest_target: int = 0

    def to_json(self) -> dict:
        return dict(sorted(vars(self).items()))


@dataclass
class SweepResult:
    refuted: bool
    witness: str | None
    census: Census
    checked: int

    @property
    def verdict(self) -> str:
        return "refuted" if self.refuted else "consistent"

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "witnesses_checked": self.checked, "census": self.census.to_json()}
        if self.refuted:
            out["refuting_witness"] = self.witness
        else:
            out["note"] = "consistent with every library witness; not a proof of inevitability"
        return out


def _generating_maps(M: Monoid, N: Monoid, gensets: Sequence[frozenset[int]]):
    """Maps from M's letters into N whose image generates N, in lexicographic order."""
    gensets = set(gensets)
    for images in itertools.product(range(N.order), repeat=len(M.letters)):
        if frozenset(images) - {N.identity} in gensets or (
            len(submonoid(N, images)) == N.order
        ):
            yield dict(zip(M.letters, images))


def _mapname(genmap: Mapping[str, int]) -> str:
    return ",".join(f"{x}->{n}" for x, n in genmap.items())


def _xgenerated(N: Monoid, genmap: Mapping[str, int], letters: Sequence[str]) -> Monoid:
    """Relabel ``N`` so its generators are exactly the letters of the source."""
    return Monoid(N.order, N.table, N.identity, tuple((x, int(genmap[x])) for x in letters))


@lru_cache(maxsize=64)
def witness_library(
    M: Monoid,
    variety: str = "A",
    max_order: int = 4,
    include_expansion_towers: bool = True,
    depth: int = 2,
    tower_cap: int = 2000,
    curated: bool = True,
) -> tuple[tuple[WitnessMorphism, ...], Census]:
    """Witnesses for ``M`` in canonical order, with their census.

    Variety ``"A"``: every map from the letters of ``M`` onto a generating
    set of each aperiodic library monoid, followed by the expansion
    towers of ``M`` (when ``M`` is aperiodic) and of each library witness
    target, up to ``depth`` levels.  Variety ``"M"``: every library
    monoid including non-aperiodic ones, ``M`` itself, and the tower of
    ``M``.  Towers over ``tower_cap`` elements are skipped and counted.
    """
    census = Census(max_order=max_order, tower_depth=depth if include_expansion_towers else 0)
    if variety == "A":
        entries = aperiodic_library(max_order, curated)
    else:
        entries = exhaustive_library(max_order, False) + (curated_aperiodic() if curated else ())
    out: list[WitnessMorphism] = []
    bases: list[tuple[str, Monoid]] = []
    if variety == "M" or is_aperiodic(M):
        bases.append(("self", M))
        out.append(pair_relation(M, M, M.genmap, name="self", aperiodic=is_aperiodic(M)))
    for entry in entries:
        for genmap in _generating_maps(M, entry.monoid, entry.generating_sets):
            name = f"{entry.name}[{_mapname(genmap)}]"
            out.append(pair_relation(M, entry.monoid, genmap, name=name))
            bases.append((name, _xgenerated(entry.monoid, genmap, M.letters)))
    census.library_witnesses = len(out)
    if include_expansion_towers:
        if variety == "M":
            bases = bases[:1]
        for name, base in bases:
            for level, current in enumerate(_tower(base, depth, tower_cap), start=1):
                if current is None:
                    census.towers_skipped_over_cap += 1
                    break
                gens = current.genmap
                genmap = {x: gens[f"g{g}"] for x, g in base.generators}
                out.append(
                    pair_relation(
                        M,
                        current,
                        genmap,
                        name=f"hs{level}({name})",
                        aperiodic=is_aperiodic(base),
                    )
                )
                census.tower_witnesses += 1
    census.largest_target = max((w.target.order for w in out), default=0)
    return tuple(out), census


def _tower(base: Monoid, depth: int, cap: int) -> list[Monoid | None]:
    """Expansion levels of ``base`` over the set of its generator images.

    Level ``k`` has one generator ``g<id>`` per distinct generator image
    ``id`` of ``base``; the tower does not depend on which letter maps
    where, so it is shared between all such assignments.  A ``None``
    level marks a level over the cap; nothing follows it.
    """
    images = sorted({g for _, g in base.generators})
    key = Monoid(base.order, base.table, base.identity, tuple((f"g{g}", g) for g in images))
    return _tower_cached(key, depth, cap)


@lru_cache(maxsize=4096)
def _tower_cached(base: Monoid, depth: int, cap: int) -> list[Monoid | None]:
    levels: list[Monoid | None] = []
    current = base
    for _ in range(depth):
        try:
            current = expand(current, cap).monoid
        except SizeLimitExceeded:
            levels.append(None)
            break
        levels.append(current)
    return levels


def witness_sweep(graph: LabelledGraph, M: Monoid, config: SweepConfig = SweepConfig()) -> SweepResult:
    """Check ``graph`` against every library witness for ``M``.

    The first refuting witness in canonical library order is reported,
    independent of ``config.threads``.
    """
    witnesses, census = witness_library(
        M,
        config.variety,
        config.max_order,
        config.include_expansion_towers,
        config.depth,
        config.tower_cap,
        config.curated,
    )
    if config.variety == "A":
        witnesses = tuple(w for w in witnesses if w.aperiodic)

    def fails(w: WitnessMorphism) -> bool:
        return not check_labelling(graph, w)[0]

    if config.threads > 1:
        with ThreadPoolExecutor(config.threads) as pool:
            verdicts = list(pool.map(fails, witnesses))
        first = next((i for i, bad in enumerate(verdicts) if bad), None)
    else:
        first = next((i for i, w in enumerate(witnesses) if fails(w)), None)
    if first is None:
        return SweepResult(False, None, census, len(witnesses))
    return SweepResult(True, witnesses[first].name, census, first + 1)
