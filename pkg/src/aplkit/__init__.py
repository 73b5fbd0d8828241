"""Decision procedures for aperiodic pointlikes, stable pairs and triples of
finite monoids, with an inevitability-based witness oracle."""

from __future__ import annotations

__version__ = "0.1.0"

from aplkit.errors import AplError, InputError, SizeLimitExceeded
from aplkit.expansion import expand, expand_iterated, hs_multiply, hs_word
from aplkit.inevitability import (
    LabelledGraph,
    SweepConfig,
    check_labelling,
    encode_pointlike,
    encode_stable_pair,
    encode_triple,
    pair_relation,
    witness_sweep,
)
from aplkit.library import aperiodic_library, corpus, exhaustive_library
from aplkit.monoid import (
    Monoid,
    build_from_table,
    build_from_transformations,
    green,
    monoid_from_json,
    monoid_to_json,
    stabilizer,
)
from aplkit.pointlikes import (
    henckell_closure,
    idempotent_pointlikes,
    is_pointlike,
    maximal_pointlikes,
)
from aplkit.stable_pairs import (
    a_stable_decide,
    a_stable_maximal,
    m_stable_decide,
    m_stable_maximal,
    stab_in_power,
)
from aplkit.triples import a_triple_decide, a_triple_maximal

__all__ = [
    "AplError",
    "InputError",
    "LabelledGraph",
    "Monoid",
    "SizeLimitExceeded",
    "SweepConfig",
    "a_stable_decide",
    "a_stable_maximal",
    "a_triple_decide",
    "a_triple_maximal",
    "aperiodic_library",
    "build_from_table",
    "build_from_transformations",
    "check_labelling",
    "corpus",
    "encode_pointlike",
    "encode_stable_pair",
    "encode_triple",
    "exhaustive_library",
    "expand",
    "expand_iterated",
    "green",
    "henckell_closure",
    "hs_multiply",
    "hs_word",
    "idempotent_pointlikes",
    "is_pointlike",
    "m_stable_decide",
    "m_stable_maximal",
    "maximal_pointlikes",
    "monoid_from_json",
    "monoid_to_json",
    "pair_relation",
    "stab_in_power",
    "stabilizer",
    "witness_sweep",
]
