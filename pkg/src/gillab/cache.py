"""Deterministic on-disk cache of built families.

One JSON file per (level, budget) pair, named by a hash of the build
parameters.  The payload holds the canonical interval-set text of every
member's stage covers plus each removal schedule, and carries a content
hash.  Loading rebuilds the family from scratch and insists the rebuilt
covers match the stored text byte for byte, so a cache file doubles as
a determinism certificate.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .cantor import (
    CantorAddress,
    CantorFamily,
    EdgeAnchor,
    IntermediateCantor,
    build_family,
)
from .errors import CacheError

FORMAT_VERSION = 1


def _params_string(level: int, budget: int) -> str:
    return f"gillab-family-v{FORMAT_VERSION}:level={level},budget={budget}"


def family_filename(level: int, budget: int) -> str:
    digest = hashlib.sha256(_params_string(level, budget).encode()).hexdigest()[:16]
    return f"family-L{level}-B{budget}-{digest}.json"


def _serialize_anchor(anchor) -> dict:
    if isinstance(anchor, EdgeAnchor):
        return {"kind": "edge", "point": str(anchor.point)}
    return {"kind": "address", "path": anchor.serialize()}


def _member_payload(gen, stages: int) -> dict:
    payload = {
        "describe": gen.describe(),
        "stages": [gen.stage(d).to_text() for d in range(stages + 1)],
    }
    if isinstance(gen, IntermediateCantor):
        sched = gen.schedule()
        payload["schedule"] = [
            {"index": e.index,
             "point": e.point.serialize() if isinstance(e.point, CantorAddress)
             else str(e.point),
             "createStage": e.create_stage,
             "a": _serialize_anchor(e.a),
             "b": _serialize_anchor(e.b)}
            for e in sched.entries
        ]
    return payload


def _family_payload(fam: CantorFamily, stages: int) -> dict:
    return {
        "version": FORMAT_VERSION,
        "level": fam.level,
        "budget": fam.stage_budget,
        "stages": stages,
        "members": {str(r): _member_payload(fam.member(r), stages)
                    for r in fam.grid()},
    }


def _content_hash(payload: dict) -> str:
    body = json.dumps(payload["members"], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


def save_family(fam: CantorFamily, stages: int, cache_dir: Path) -> Path:
    """Write the family's cover text and schedules; returns the file path."""
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    payload = _family_payload(fam, stages)
    payload["contentHash"] = _content_hash(payload)
    path = cache_dir / family_filename(fam.level, fam.stage_budget)
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    path.write_text(text)
    return path


def load_family(level: int, budget: int, cache_dir: Path,
                search_ceiling: int = 15) -> CantorFamily:
    """Rebuild the family and verify it against the cached covers."""
    path = Path(cache_dir) / family_filename(level, budget)
    if not path.exists():
        raise CacheError(f"family not built: no cache file {path}")
    try:
        payload = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as ex:
        raise CacheError(f"cache file {path} is unreadable: {ex}") from ex
    for key in ("version", "level", "budget", "stages", "members", "contentHash"):
        if key not in payload:
            raise CacheError(f"cache file {path} is missing field {key!r}")
    if _content_hash(payload) != payload["contentHash"]:
        raise CacheError(f"cache file {path} failed its content-hash check")
    if payload["level"] != level or payload["budget"] != budget:
        raise CacheError(f"cache file {path} was built with other parameters")
    fam = build_family(level, budget, search_ceiling)
    for key, member in payload["members"].items():
        gen = fam.members.get(_parse_index(key))
        if gen is None:
            raise CacheError(f"cached member {key} absent from rebuilt family")
        if gen.describe() != member["describe"]:
            raise CacheError(f"member {key} description changed; cache is stale")
        for d, text in enumerate(member["stages"]):
            if gen.stage(d).to_text() != text:
                raise CacheError(
                    f"member {key} stage {d} cover differs from cache")
    return fam


def _parse_index(text: str):
    from fractions import Fraction
    return Fraction(text)
