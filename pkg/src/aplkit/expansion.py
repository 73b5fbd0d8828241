"""Henckell-Schützenberger expansion.

An element of the expansion of ``M`` is stored as its diagonal entry
``m`` together with the set of cut pairs ``(u, v)``; the upper-triangular
matrix form is never materialized.  Products follow

    (m, C)(m', C') = (mm', mC' | Cm'),   m(u, v) = (mu, v),  (u, v)m = (u, vm).
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

from aplkit.errors import BaseMismatch, UnknownLetter
from aplkit.monoid import (
    Monoid,
    closure_monoid,
    cyclic_orbit,
    green_within,
    stabilizer,
)

DEFAULT_CAP = 20000


@dataclass(frozen=True)
class ExpansionElement:
    diag: int
    cuts: frozenset[tuple[int, int]]
    base: Monoid = field(compare=False, repr=False)

    def sorted_cuts(self) -> list[tuple[int, int]]:
        return sorted(self.cuts)


@dataclass(frozen=True, eq=False)
class ExpansionMonoid:
    base: Monoid
    elements: tuple[ExpansionElement, ...]
    monoid: Monoid
    eta: tuple[int, ...]

    @property
    def table(self):
        return self.monoid.table

    @property
    def order(self) -> int:
        return self.monoid.order


def identity_element(M: Monoid) -> ExpansionElement:
    return ExpansionElement(M.identity, frozenset(), M)


def generator_element(M: Monoid, g: int) -> ExpansionElement:
    return ExpansionElement(g, frozenset({(M.identity, g), (g, M.identity)}), M)


def hs_word(M: Monoid, word: Sequence[str]) -> ExpansionElement:
    """Expansion element of a word, straight from its factorizations."""
    gens = M.genmap
    for letter in word:
        if letter not in gens:
            raise UnknownLetter(f"unknown letter {letter!r}")
    word = list(word)
    if not word:
        return identity_element(M)
    cuts = frozenset(
        (M.evaluate(word[:k]), M.evaluate(word[k:])) for k in range(len(word) + 1)
    )
    return ExpansionElement(M.evaluate(word), cuts, M)


def _mul(M: Monoid, e1: ExpansionElement, e2: ExpansionElement) -> ExpansionElement:
    t = M.table
    m1, m2 = e1.diag, e2.diag
    cuts = {(t[m1][u], v) for u, v in e2.cuts}
    cuts.update((u, t[v][m2]) for u, v in e1.cuts)
    return ExpansionElement(t[m1][m2], frozenset(cuts), M)


def hs_multiply(e1: ExpansionElement, e2: ExpansionElement) -> ExpansionElement:
    if e1.base is not e2.base and e1.base != e2.base:
        raise BaseMismatch("expansion elements come from different base monoids")
    return _mul(e1.base, e1, e2)


def expand(M: Monoid, cap: int = DEFAULT_CAP) -> ExpansionMonoid:
    """The expansion of ``M`` over its own generators."""
    return _expand_cached(M, cap)


@lru_cache(maxsize=64)
def _expand_cached(M: Monoid, cap: int) -> ExpansionMonoid:
    gens = [(letter, generator_element(M, g)) for letter, g in M.generators]
    monoid, values = closure_monoid(
        identity_element(M),
        gens,
        lambda a, b: _mul(M, a, b),
        cap=cap,
        what="expansion",
    )
    eta = tuple(v.diag for v in values)
    return ExpansionMonoid(M, tuple(values), monoid, eta)


def expand_iterated(M: Monoid, depth: int, cap: int = DEFAULT_CAP) -> list[ExpansionMonoid]:
    """Levels ``[expand(M), expand(expand(M)), ...]`` of the expansion tower."""
    levels = []
    current = M
    for _ in range(depth):
        level = expand(current, cap)
        levels.append(level)
        current = level.monoid
    return levels


def tower_projection(levels: Sequence[ExpansionMonoid]) -> tuple[int, ...]:
    """Composite projection from the top of a tower down to the base monoid."""
    proj = tuple(range(levels[-1].order))
    for level in reversed(levels):
        proj = tuple(level.eta[p] for p in proj)
    return proj


def stab_projection(
    M: Monoid, word: Sequence[str], cap: int = DEFAULT_CAP
) -> tuple[list[int], bool]:
    """Project the stabilizer of ``[word]`` in the expansion down to ``M``.

    Returns the projected elements ordered from L-greatest to L-least
    and whether they are pairwise <=_L comparable inside the stabilizer
    of ``[word]_M``.
    """
    X = expand(M, cap)
    chain, ok = _stab_projection_at(X, X.monoid.evaluate(word))
    return list(chain), ok


@lru_cache(maxsize=1 << 16)
def _stab_projection_at(X: ExpansionMonoid, w: int) -> tuple[tuple[int, ...], bool]:
    M = X.base
    image = sorted({X.eta[s] for s in stabilizer(X.monoid, w)})
    S = sorted(stabilizer(M, X.eta[w]))
    pos = {a: i for i, a in enumerate(S)}
    leq = green_within(M, S).leq_L
    ok = all(
        leq[pos[a], pos[b]] or leq[pos[b], pos[a]] for a in image for b in image
    )
    chain = sorted(
        image, key=lambda a: (-sum(bool(leq[pos[b], pos[a]]) for b in image), a)
    )
    return tuple(chain), ok


def eta_fibers_aperiodic(X: ExpansionMonoid) -> dict[int, bool]:
    """For each idempotent of the base, whether its eta-fiber is aperiodic."""
    out = {}
    mul = X.monoid.mul
    for e in sorted(X.base.idempotents):
        fiber = [i for i, d in enumerate(X.eta) if d == e]
        out[e] = all(cyclic_orbit(a, mul)[2] == 1 for a in fiber)
    return out


def expansion_to_json(X: ExpansionMonoid) -> dict:
    from aplkit.monoid import monoid_to_json

    out = monoid_to_json(X.monoid)
    out["eta"] = list(X.eta)
    out["elements"] = [
        {"diag": e.diag, "cuts": [list(c) for c in e.sorted_cuts()]} for e in X.elements
    ]
    return out


def all_words(letters: Iterable[str], max_length: int):
    """Every word of length ``<= max_length``, shortlex order."""
    letters = list(letters)
    level = [()]
    yield ()
    for _ in range(max_length):
        level = [w + (x,) for w in level for x in letters]
        yield from level
