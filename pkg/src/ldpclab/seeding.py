"""Deterministic, order-independent random streams.

Every consumer derives its stream by hashing a tuple of labels and
integers with SHA-256 and keying a counter-based Philox generator with the
digest. Streams are therefore stable across platforms, processes, and
scheduling order, which is what makes simulation results independent of
the worker count.
"""

from __future__ import annotations

import hashlib

import numpy as np


def derive_key(*parts) -> int:
    """128-bit integer derived from the given labels/values."""
    text = "\x1f".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:16], "little")


def derive_seed(*parts) -> int:
    """63-bit non-negative integer seed (for APIs that want a small seed)."""
    return derive_key(*parts) & (2**63 - 1)


def stream(*parts) -> np.random.Generator:
    """Generator on a Philox stream keyed by the given labels/values."""
    return np.random.Generator(np.random.Philox(key=derive_key(*parts)))
