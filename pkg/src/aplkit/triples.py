"""Aperiodic triples.

A triple ``(A, B, C)`` of nonempty subsets is accepted when it is
dominated componentwise by pointlikes ``(A', B', C')`` meeting one of

1. ``B'C' = B'``
2. ``A'B'T = A'`` and ``C' = TB'`` for some pointlike ``T``
3. ``A' = A'TS``, ``B' = (TS)^i T`` and ``C' = ST`` for pointlikes ``S, T``
   and some ``i >= 1``

Cases are tried in that order and, inside a case, pointlikes are tried
in canonical order, so certificates are deterministic.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from aplkit.errors import EmptySet
from aplkit.monoid import Monoid, cyclic_orbit
from aplkit.pointlikes import (
    PowerMonoid,
    canonical_key,
    from_mask,
    henckell_closure,
    is_pointlike,
    maximal_pointlike_masks,
    to_mask,
)


@dataclass
class TripleReport:
    A: frozenset[int]
    B: frozenset[int]
    C: frozenset[int]
    verdict: bool
    case: int | None = None
    A_prime: frozenset[int] | None = None
    B_prime: frozenset[int] | None = None
    C_prime: frozenset[int] | None = None
    S: frozenset[int] | None = None
    T: frozenset[int] | None = None
    i: int | None = None

    def to_json(self) -> dict:
        out = {"A": sorted(self.A), "B": sorted(self.B), "C": sorted(self.C), "verdict": self.verdict}
        if self.verdict:
            cert = {
                "case": self.case,
                "A_prime": sorted(self.A_prime),
                "B_prime": sorted(self.B_prime),
                "C_prime": sorted(self.C_prime),
            }
            if self.case in (2, 3):
                cert["T"] = sorted(self.T)
            if self.case == 3:
                cert["S"] = sorted(self.S)
                cert["i"] = self.i
            out["certificate"] = cert
        return out


def _sup(PL: PowerMonoid, z: int) -> list[int]:
    return [m for m in PL.masks if m & z == z]


def _powers_times(PL: PowerMonoid, p: int, t: int) -> list[tuple[int, int]]:
    """``(i, (P^i) T)`` for every distinct power ``P^i``, ``i >= 1``."""
    mul = PL.setmul
    powers, _, _ = cyclic_orbit(p, mul)
    return [(k + 1, mul(q, t)) for k, q in enumerate(powers)]


def _report(A, B, C, case, a, b, c, s=None, t=None, i=None) -> TripleReport:
    return TripleReport(
        A, B, C, True, case,
        from_mask(a), from_mask(b), from_mask(c),
        None if s is None else from_mask(s),
        None if t is None else from_mask(t),
        i,
    )


def a_triple_decide(M: Monoid, A: Iterable[int], B: Iterable[int], C: Iterable[int]) -> TripleReport:
    A, B, C = frozenset(A), frozenset(B), frozenset(C)
    if not (A and B and C):
        raise EmptySet("A, B and C must be nonempty")
    PL = henckell_closure(M)
    mul = PL.setmul
    a, b, c = to_mask(A), to_mask(B), to_mask(C)
    supA, supB, supC = _sup(PL, a), _sup(PL, b), _sup(PL, c)
    if not (supA and supB and supC):
        return TripleReport(A, B, C, False)

    for bp in supB:
        for cp in supC:
            if mul(bp, cp) == bp:
                return _report(A, B, C, 1, supA[0], bp, cp)

    for t in PL.masks:
        for bp in supB:
            cp = mul(t, bp)
            if cp & c != c:
                continue
            bt = mul(bp, t)
            for ap in supA:
                if mul(ap, bt) == ap:
                    return _report(A, B, C, 2, ap, bp, cp, t=t)

    for s in PL.masks:
        for t in PL.masks:
            cp = mul(s, t)
            if cp & c != c:
                continue
            ts = mul(t, s)
            fixed = [ap for ap in supA if mul(ap, ts) == ap]
            if not fixed:
                continue
            for i, bp in _powers_times(PL, ts, t):
                if bp & b == b:
                    return _report(A, B, C, 3, fixed[0], bp, cp, s=s, t=t, i=i)
    return TripleReport(A, B, C, False)


def _case_triples(PL: PowerMonoid, tops: list[int]):
    """Yield ``(triple_masks, certificate)`` covering every triple that meets a case.

    Case 1 leaves ``A'`` free, so only the maximal pointlikes are used for it.
    """
    mul = PL.setmul
    masks = PL.masks
    for bp in masks:
        for cp in masks:
            if mul(bp, cp) == bp:
                for ap in tops:
                    yield (ap, bp, cp), (1, None, None, None)
    for t in masks:
        for bp in masks:
            cp = mul(t, bp)
            bt = mul(bp, t)
            for ap in masks:
                if mul(ap, bt) == ap:
                    yield (ap, bp, cp), (2, None, t, None)
    for s in masks:
        for t in masks:
            cp = mul(s, t)
            ts = mul(t, s)
            fixed = [ap for ap in masks if mul(ap, ts) == ap]
            if not fixed:
                continue
            for i, bp in _powers_times(PL, ts, t):
                for ap in fixed:
                    yield (ap, bp, cp), (3, s, t, i)


def maximal_triples(triples: Iterable[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
    kept: list[tuple[int, int, int]] = []
    order = sorted(set(triples), key=lambda x: (-sum(m.bit_count() for m in x), x))
    for x in order:
        if not any(all(p | q == q for p, q in zip(x, k)) for k in kept):
            kept.append(x)
    return sorted(kept, key=lambda x: tuple(canonical_key(m) for m in x))


def a_triple_maximal(M: Monoid) -> list[TripleReport]:
    PL = henckell_closure(M)
    tops = [m for m, _ in maximal_pointlike_masks(M)]
    certs: dict[tuple[int, int, int], tuple] = {}
    for x, cert in _case_triples(PL, tops):
        if x not in certs or cert[0] < certs[x][0]:
            certs[x] = cert
    out = []
    for x in maximal_triples(certs):
        case, s, t, i = certs[x]
        A, B, C = (from_mask(m) for m in x)
        out.append(_report(A, B, C, case, *x, s=s, t=t, i=i))
    return out


def verify_triple_certificate(M: Monoid, report: TripleReport) -> bool:
    """Recheck a positive report with direct setwise products."""
    if not report.verdict:
        return False
    Ap, Bp, Cp = report.A_prime, report.B_prime, report.C_prime
    if not (report.A <= Ap and report.B <= Bp and report.C <= Cp):
        return False
    if not all(is_pointlike(M, z) for z in (Ap, Bp, Cp)):
        return False
    prod = M.set_product
    if report.case == 1:
        return prod(Bp, Cp) == Bp
    T = report.T
    if T is None or not is_pointlike(M, T):
        return False
    if report.case == 2:
        return prod(prod(Ap, Bp), T) == Ap and Cp == prod(T, Bp)
    if report.case == 3:
        S, i = report.S, report.i
        if S is None or not is_pointlike(M, S) or i is None or i < 1:
            return False
        TS = prod(T, S)
        power = TS
        for _ in range(i - 1):
            power = prod(power, TS)
        return prod(Ap, TS) == Ap and Bp == prod(power, T) and Cp == prod(S, T)
    return False
