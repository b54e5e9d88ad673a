"""Deterministic seed derivation: all randomness flows from one top-level seed."""

from __future__ import annotations

import hashlib


def derive_seed(seed: int, label: str) -> int:
    """Stable 63-bit sub-seed for (seed, label), independent of platform."""
    digest = hashlib.sha256(f"{seed}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little") & (2**63 - 1)
