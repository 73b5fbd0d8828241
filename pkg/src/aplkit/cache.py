"""On-disk cache of maximal pointlikes, keyed by monoid content hash.

The cache is an optimization only: a missing, unreadable or mismatched
entry is recomputed and rewritten.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from aplkit.monoid import Monoid, content_hash
from aplkit.pointlikes import bits, maximal_pointlike_masks, to_mask

CACHE_ENV = "APLKIT_CACHE_DIR"


def cache_dir(flag: str | None) -> Path | None:
    """The ``--cache`` flag wins; otherwise the environment variable, if set."""
    value = flag or os.environ.get(CACHE_ENV)
    return Path(value) if value else None


def maximal_pointlikes_cached(M: Monoid, directory: Path | None) -> tuple[tuple[int, str], ...]:
    """Maximal pointlike masks with provenance tags, read through the cache."""
    if directory is None:
        return maximal_pointlike_masks(M)
    key = content_hash(M)
    path = directory / f"pl-{key}.json"
    try:
        data = json.loads(path.read_text())
        if data.get("hash") == key:
            return tuple((to_mask(z), tag) for z, tag in data["maximal"])
    except (OSError, ValueError, KeyError, TypeError):
        pass
    result = maximal_pointlike_masks(M)
    directory.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(
        json.dumps({"hash": key, "maximal": [[bits(m), tag] for m, tag in result]}, sort_keys=True)
    )
    tmp.replace(path)
    return result
