"""On-disk formats: segment archives and generation/blend manifests.

All writers emit canonical JSON (sorted keys, fixed separators, trailing
newline) so reruns with the same seed produce byte-identical files.
"""

from __future__ import annotations

import json

from .corpus import CorpusSplit, Provenance, Segment, segment_from_lines
from .errors import SchemaError
from .tiles import TileConfig

ARCHIVE_VERSION = 1
MANIFEST_VERSION = 1


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


# ---- segment archive --------------------------------------------------------

def archive_payload(split: CorpusSplit) -> dict:
    segments = list(split.all_segments)
    games: dict[str, int] = {}
    for seg in segments:
        games[seg.provenance.game] = games.get(seg.provenance.game, 0) + 1
    return {
        "format_version": ARCHIVE_VERSION,
        "seed": split.seed,
        "games": games,
        "segments": [
            {
                "id": seg.id,
                "game": seg.provenance.game,
                "level": seg.provenance.level,
                "slot": seg.provenance.slot,
                "tiles": list(seg.grid),
            }
            for seg in segments
        ],
        "split": {
            "train": [s.id for s in split.train],
            "test": [s.id for s in split.test],
            "validation": [s.id for s in split.validation],
        },
    }


def save_archive(split: CorpusSplit, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(archive_payload(split)))


def load_archive(path, config: TileConfig | None = None) -> CorpusSplit:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict) or raw.get("format_version") != ARCHIVE_VERSION:
        raise SchemaError(f"not a segment archive: {path}")
    by_id: dict[str, Segment] = {}
    for entry in raw["segments"]:
        prov = Provenance(entry["game"], entry["level"], entry["slot"])
        seg = segment_from_lines(entry["tiles"], prov, config)
        if seg.id != entry["id"]:
            raise SchemaError(f"archive id {entry['id']} does not match provenance {seg.id}")
        by_id[entry["id"]] = seg

    def pick(ids):
        missing = [i for i in ids if i not in by_id]
        if missing:
            raise SchemaError(f"split references unknown segment ids {missing[:4]}")
        return tuple(by_id[i] for i in ids)

    return CorpusSplit(
        train=pick(raw["split"]["train"]),
        test=pick(raw["split"]["test"]),
        validation=pick(raw["split"]["validation"]),
        seed=raw["seed"],
    )


# ---- generation / blend manifests -------------------------------------------

def manifest_payload(entries, seed: int, kind: str) -> dict:
    """entries: iterable of (id, t-or-"random", Segment)."""
    return {
        "format_version": MANIFEST_VERSION,
        "kind": kind,
        "seed": seed,
        "entries": [
            {"id": eid, "t": t, "tiles": list(seg.grid)}
            for eid, t, seg in entries
        ],
    }


def save_manifest(entries, seed: int, kind: str, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(manifest_payload(entries, seed, kind)))


def load_manifest(path, config: TileConfig | None = None):
    """Returns (kind, seed, [(id, t, Segment)])."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict) or raw.get("format_version") != MANIFEST_VERSION:
        raise SchemaError(f"not a manifest: {path}")
    out = []
    for i, entry in enumerate(raw["entries"]):
        prov = Provenance("GEN", i, "GENERATED")
        out.append((entry["id"], entry["t"], segment_from_lines(entry["tiles"], prov, config)))
    return raw["kind"], raw["seed"], out
