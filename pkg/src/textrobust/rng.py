"""Deterministic random streams keyed by (master seed, image, corruption, severity).

Every random decision in the toolkit flows through a stream derived here, so
output is reproducible regardless of process count, scheduling, or call order.
Streams are backed by the counter-based Philox generator keyed with a 128-bit
BLAKE2 hash of the derivation tuple; normal variates come from numpy's
ziggurat transform of the underlying uniform stream.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass

import numpy as np

__all__ = ["SeedSpec", "derive_key", "derive_rng"]


@dataclass(frozen=True)
class SeedSpec:
    """Identifies one random stream of the benchmark.

    ``severity`` 0 is reserved for per-image randomness that is shared across
    severity levels (e.g. a blur direction), so that raising the severity
    intensifies the same degradation instead of drawing a fresh one.
    """

    master_seed: int
    image_id: str = ""
    corruption_id: str = ""
    severity: int = 0

    def rng(self) -> np.random.Generator:
        return derive_rng(self.master_seed, self.image_id, self.corruption_id, self.severity)


def derive_key(master_seed: int, image_id: str = "", corruption_id: str = "", severity: int = 0) -> int:
    """Hash the derivation tuple to a 128-bit Philox key.

    Components are length-delimited so distinct tuples cannot collide by
    concatenation (("ab", "c") vs ("a", "bc")).
    """
    if master_seed < 0 or master_seed > 0xFFFFFFFFFFFFFFFF:
        raise ValueError("master_seed must fit in an unsigned 64-bit integer")
    h = hashlib.blake2b(digest_size=16)
    h.update(struct.pack("<Q", master_seed))
    for part in (image_id.encode("utf-8"), corruption_id.encode("utf-8")):
        h.update(struct.pack("<I", len(part)))
        h.update(part)
    h.update(struct.pack("<q", severity))
    return int.from_bytes(h.digest(), "little")


def derive_rng(master_seed: int, image_id: str = "", corruption_id: str = "", severity: int = 0) -> np.random.Generator:
    """Return the deterministic generator for a derivation tuple."""
    key = derive_key(master_seed, image_id, corruption_id, severity)
    return np.random.Generator(np.random.Philox(key=key))
