"""Command-line front end.

Every subcommand prints one JSON report on stdout.  Exit status is 0 when
the computation finished (whatever the verdict), 1 on bad input and 2
when a size cap was hit.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from aplkit import __version__
from aplkit.cache import cache_dir, maximal_pointlikes_cached
from aplkit.errors import InputError, OrderTooLarge, SizeLimitExceeded
from aplkit.expansion import DEFAULT_CAP, expand_iterated, tower_projection
from aplkit.inevitability import (
    SweepConfig,
    check_labelling,
    graph_from_json,
    pair_relation,
    witness_sweep,
)
from aplkit.library import MAX_EXHAUSTIVE_ORDER, aperiodic_library, exhaustive_library, save_library
from aplkit.monoid import (
    Monoid,
    cayley_dot,
    eggbox_dot,
    is_aperiodic,
    is_ER,
    minimal_ideal,
    monoid_from_json,
    monoid_to_json,
)
from aplkit.pointlikes import (
    DEFAULT_FAMILY_CAP,
    bits,
    down_closure,
    is_pointlike,
    maximal_masks,
    to_mask,
)
from aplkit.stable_pairs import a_stable_maximal, m_stable_maximal, stable_decide
from aplkit.triples import a_triple_decide, a_triple_maximal


class FieldError(InputError):
    """Bad input attributed to a named flag or field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which this tool reserves for caps
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


# ------------------------------------------------------------------ inputs


def _load_json(value: str, field: str):
    """Inline JSON when ``value`` looks like JSON, otherwise a file path."""
    text = value.strip()
    try:
        if text[:1] in "[{" or text.lstrip("-").isdigit():
            return json.loads(text)
        return json.loads(Path(value).read_text())
    except OSError as exc:
        raise FieldError(field, f"cannot read {value!r} ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise FieldError(field, f"invalid JSON ({exc.msg})") from None


def _load_monoid(args) -> Monoid:
    if not args.monoid:
        raise FieldError("--monoid", "required")
    obj = _load_json(args.monoid, "--monoid")
    if not isinstance(obj, dict):
        raise FieldError("--monoid", "expected a JSON object")
    try:
        return monoid_from_json(obj)
    except InputError as exc:
        raise FieldError("--monoid", str(exc)) from None
    except (TypeError, ValueError, IndexError) as exc:
        raise FieldError("--monoid", f"malformed monoid ({exc})") from None


def _point_set(M: Monoid, value, field: str) -> frozenset[int]:
    if isinstance(value, int):
        value = [value]
    if not isinstance(value, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in value):
        raise FieldError(field, "expected a list of element ids")
    bad = [a for a in value if not 0 <= a < M.order]
    if bad:
        raise FieldError(field, f"ids {bad} are outside 0..{M.order - 1}")
    return frozenset(value)


def _decide_fields(M: Monoid, values: list[str], names: tuple[str, ...]) -> dict[str, frozenset[int]]:
    """Read ``--decide`` as one object with the named keys or one value per name."""
    if len(values) == 1:
        obj = _load_json(values[0], "--decide")
        if isinstance(obj, dict):
            lowered = {k.lower(): v for k, v in obj.items()}
            missing = [n for n in names if n.lower() not in lowered]
            if missing:
                raise FieldError("--decide", f"missing keys {missing}")
            return {n: _point_set(M, lowered[n.lower()], f"--decide.{n}") for n in names}
        if len(names) == 1:
            return {names[0]: _point_set(M, obj, "--decide")}
        raise FieldError("--decide", f"expected an object with keys {list(names)}")
    if len(values) != len(names):
        raise FieldError("--decide", f"expected 1 or {len(names)} values, got {len(values)}")
    return {
        n: _point_set(M, _load_json(v, f"--decide.{n}"), f"--decide.{n}") for n, v in zip(names, values)
    }


# ---------------------------------------------------------------- commands


def _green_json(M: Monoid) -> dict:
    g = M.green

    def classes(cs):
        return sorted(sorted(c) for c in cs)

    return {
        "L": classes(g.L_classes),
        "R": classes(g.R_classes),
        "J": classes(g.J_classes),
        "H": classes(g.H_classes),
    }


def cmd_analyze(M: Monoid, args) -> dict:
    data = {
        "order": M.order,
        "identity": M.identity,
        "generators": dict(M.generators),
        "names": list(M.names),
        "aperiodic": is_aperiodic(M),
        "idempotents": sorted(M.idempotents),
        "green": _green_json(M),
        "minimal_ideal": sorted(minimal_ideal(M)),
        "ER": is_ER(M),
    }
    return {"data": data}


def cmd_expand(M: Monoid, args) -> dict:
    levels = expand_iterated(M, args.iterate, args.cap or DEFAULT_CAP)
    top = levels[-1]
    data = {
        "levels": [{"order": X.order, "eta": list(X.eta)} for X in levels],
        "projection_to_base": list(tower_projection(levels)),
        "monoid": monoid_to_json(top.monoid),
    }
    if args.iterate == 1:
        data["elements"] = [
            {"diag": e.diag, "cuts": [list(c) for c in e.sorted_cuts()]} for e in top.elements
        ]
    return {"data": data, "dot_monoid": top.monoid}


def cmd_pointlikes(M: Monoid, args) -> dict:
    tops = maximal_pointlikes_cached(M, cache_dir(args.cache))
    if args.decide:
        Z = _decide_fields(M, args.decide, ("Z",))["Z"]
        if not Z:
            raise FieldError("--decide", "pointlike candidates must be nonempty")
        verdict = any(to_mask(Z) | m == m for m, _ in tops)
        cert = None
        if verdict:
            top = min((m for m, _ in tops if to_mask(Z) | m == m), key=lambda m: (m.bit_count(), m))
            cert = {"contained_in": bits(top)}
        return {"verdicts": [{"Z": sorted(Z), "verdict": verdict}], "certificates": [cert]}
    if args.maximal:
        members = [{"set": bits(m), "provenance": tag} for m, tag in tops]
        return {"data": {"maximal": [x["set"] for x in members], "members": members}}
    family = down_closure(tops, args.cap or DEFAULT_FAMILY_CAP)
    if args.idempotent:
        from aplkit.pointlikes import SetProduct

        mul = SetProduct(M)
        idem = maximal_masks(m for m in family if mul(m, m) == m)
        return {"data": {"idempotent": [bits(m) for m in idem]}}
    return {
        "data": {
            "count": len(family),
            "members": [{"set": bits(m), "provenance": tag} for m, tag in family.items()],
        }
    }


def cmd_stable_pairs(M: Monoid, args) -> dict:
    variety = args.variety
    if args.decide:
        f = _decide_fields(M, args.decide, ("Y", "N"))
        report = stable_decide(M, f["Y"], f["N"], variety).to_json()
        cert = report.pop("certificate", None)
        return {"verdicts": [report], "certificates": [cert]}
    if not args.maximal:
        raise FieldError("--maximal", "give --maximal or --decide")
    reports = m_stable_maximal(M) if variety == "M" else a_stable_maximal(M)
    rows = [r.to_json() for r in reports]
    certs = [r.pop("certificate", None) for r in rows]
    return {"verdicts": rows, "certificates": certs}


def cmd_triples(M: Monoid, args) -> dict:
    if args.decide:
        f = _decide_fields(M, args.decide, ("A", "B", "C"))
        for n in ("A", "B", "C"):
            if not f[n]:
                raise FieldError(f"--decide.{n}", "must be nonempty")
        report = a_triple_decide(M, f["A"], f["B"], f["C"]).to_json()
        cert = report.pop("certificate", None)
        return {"verdicts": [report], "certificates": [cert]}
    if not args.maximal:
        raise FieldError("--maximal", "give --maximal or --decide")
    rows = [r.to_json() for r in a_triple_maximal(M)]
    certs = [r.pop("certificate", None) for r in rows]
    return {"verdicts": rows, "certificates": certs}


def cmd_inevitable(M: Monoid, args) -> dict:
    if not args.graph:
        raise FieldError("--graph", "required")
    obj = _load_json(args.graph, "--graph")
    try:
        graph = graph_from_json(obj, M.order)
    except InputError as exc:
        raise FieldError("--graph", str(exc)) from None
    except (ValueError, KeyError, TypeError) as exc:
        raise FieldError("--graph", f"malformed graph ({exc})") from None
    if not args.sweep:
        w = pair_relation(M, M, M.genmap, name="self")
        sat, assignment = check_labelling(graph, w)
        row = {"witness": "self", "verdict": "consistent" if sat else "refuted"}
        cert = None
        if sat:
            cert = {"assignment": {f"{k}{i}": n for (k, i), n in assignment.items()}}
        return {"verdicts": [row], "certificates": [cert]}
    config = SweepConfig(
        variety=args.variety,
        max_order=args.max_order,
        include_expansion_towers=args.towers > 0,
        depth=args.towers,
        tower_cap=args.cap or SweepConfig.tower_cap,
        threads=args.threads,
    )
    if config.max_order > MAX_EXHAUSTIVE_ORDER:
        raise FieldError("--max-order", f"at most {MAX_EXHAUSTIVE_ORDER}")
    result = witness_sweep(graph, M, config).to_json()
    census = result.pop("census")
    return {"verdicts": [result], "certificates": [None], "census": census}


def cmd_gen_library(args) -> dict:
    if args.max_order > MAX_EXHAUSTIVE_ORDER:
        raise OrderTooLarge(f"--max-order: exhaustive mode stops at {MAX_EXHAUSTIVE_ORDER}")
    if args.all:
        entries = exhaustive_library(args.max_order, False)
    else:
        entries = aperiodic_library(args.max_order, curated=not args.no_curated)
    if args.out:
        save_library(entries, args.out)
    data = {
        "count": len(entries),
        "entries": [
            {"name": e.name, "order": e.monoid.order, "generating_sets": len(e.generating_sets)}
            for e in entries
        ],
    }
    return {"data": data}


COMMANDS = {
    "analyze": cmd_analyze,
    "expand": cmd_expand,
    "pointlikes": cmd_pointlikes,
    "stable-pairs": cmd_stable_pairs,
    "triples": cmd_triples,
    "inevitable": cmd_inevitable,
}

# flags that change the answer and so belong in the input hash
_HASHED = ("variety", "maximal", "idempotent", "decide", "iterate", "cap", "graph", "sweep", "max_order", "towers", "all", "no_curated")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="aplkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"aplkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, monoid=True):
        if monoid:
            p.add_argument("--monoid", metavar="PATH", help="monoid JSON file (or inline JSON)")
        p.add_argument("--cap", type=int, default=None, help="size cap for generated structures")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--cache", metavar="DIR", help="cache directory (default: $APLKIT_CACHE_DIR)")
        p.add_argument("--dot", metavar="PATH", help="write Graphviz source here")
        return p

    p = common(sub.add_parser("analyze", help="Green structure and basic properties"))
    p.add_argument("--dot-kind", choices=("eggbox", "cayley"), default="eggbox")
    p = common(sub.add_parser("expand", help="iterated Henckell-Schützenberger expansion"))
    p.add_argument("--iterate", type=int, default=1)
    p = common(sub.add_parser("pointlikes", help="aperiodic pointlike sets"))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--maximal", action="store_true")
    g.add_argument("--idempotent", action="store_true")
    g.add_argument("--decide", nargs="+", metavar="JSON")
    p = common(sub.add_parser("stable-pairs", help="maximal or decided stable pairs"))
    p.add_argument("--variety", choices=("A", "M"), default="A")
    p.add_argument("--maximal", action="store_true")
    p.add_argument("--decide", nargs="+", metavar="JSON")
    p = common(sub.add_parser("triples", help="maximal or decided aperiodic triples"))
    p.add_argument("--maximal", action="store_true")
    p.add_argument("--decide", nargs="+", metavar="JSON")
    p = common(sub.add_parser("inevitable", help="check a labelled graph against witnesses"))
    p.add_argument("--graph", metavar="PATH")
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--variety", choices=("A", "M"), default="A")
    p.add_argument("--max-order", type=int, default=MAX_EXHAUSTIVE_ORDER)
    p.add_argument("--towers", type=int, default=2, metavar="DEPTH")
    p = common(sub.add_parser("gen-library", help="write the witness monoid library"), monoid=False)
    p.add_argument("--max-order", type=int, default=MAX_EXHAUSTIVE_ORDER)
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--all", action="store_true", help="include monoids that are not aperiodic")
    p.add_argument("--no-curated", action="store_true")
    return parser


def _input_hash(args, M: Monoid | None) -> str:
    payload = {"command": args.command}
    if M is not None:
        payload["monoid"] = monoid_to_json(M)
    for key in _HASHED:
        if hasattr(args, key):
            value = getattr(args, key)
            if key == "decide" and value:
                value = [_load_json(v, "--decide") for v in value]
            if key == "graph" and value:
                value = _load_json(value, "--graph")
            payload[key] = value
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def run(argv: list[str] | None = None) -> tuple[int, dict | None]:
    """Execute one command; returns ``(exit_code, report)``."""
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.threads < 1:
            raise FieldError("--threads", "must be at least 1")
        if args.cap is not None and args.cap < 1:
            raise FieldError("--cap", "must be positive")
        if args.command == "gen-library":
            M = None
            out = cmd_gen_library(args)
        else:
            M = _load_monoid(args)
            if args.command == "expand" and args.iterate < 1:
                raise FieldError("--iterate", "must be at least 1")
            out = COMMANDS[args.command](M, args)
        if args.dot:
            target = out.pop("dot_monoid", M)
            if target is None:
                raise FieldError("--dot", "this command has no monoid to draw")
            kind = getattr(args, "dot_kind", "eggbox" if args.command != "expand" else "cayley")
            Path(args.dot).write_text(cayley_dot(target) if kind == "cayley" else eggbox_dot(target))
        out.pop("dot_monoid", None)
        report = {
            "command": args.command,
            "input_hash": _input_hash(args, M),
            "version": __version__,
            "verdicts": out.get("verdicts", []),
            "certificates": out.get("certificates", []),
            "census": out.get("census"),
            "data": out.get("data"),
            "wall_time": round(time.perf_counter() - start, 6),
        }
        return 0, report
    except SizeLimitExceeded as exc:
        print(f"error: cap reached: {exc}", file=sys.stderr)
        return 2, None
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, None


def main(argv: list[str] | None = None) -> int:
    code, report = run(argv)
    if report is not None:
        json.dump(report, sys.stdout, sort_keys=False, separators=(",", ":"))
        sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
