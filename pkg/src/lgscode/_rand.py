"""Seeded randomness with labelled sub-seed derivation."""

from __future__ import annotations

import hashlib
import os

import numpy as np


def seed_bytes(seed) -> bytes:
    """Normalise an ``int``/``str``/``bytes`` seed (or a tuple of them) to bytes."""
    if isinstance(seed, tuple):
        return hashlib.sha256(b"|".join(seed_bytes(s) for s in seed)).digest()
    if isinstance(seed, bytes):
        return seed
    if isinstance(seed, str):
        return seed.encode()
    if isinstance(seed, (int, np.integer)):
        n = int(seed)
        return n.to_bytes(max(1, (n.bit_length() + 8) // 8), "little", signed=True)
    raise TypeError(f"unsupported seed type {type(seed).__name__}")


def derive(seed, *labels) -> bytes:
    """32-byte sub-seed ``H(seed | label_1 | ...)``."""
    h = hashlib.sha256(seed_bytes(seed))
    for label in labels:
        h = hashlib.sha256(h.digest() + b"/" + seed_bytes(label))
    return h.digest()


def fresh_seed() -> bytes:
    return os.urandom(32)


def as_rng(seed=None, *labels) -> np.random.Generator:
    """Generator for ``seed``; an existing Generator is returned unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        seed = fresh_seed()
    return np.random.default_rng(int.from_bytes(derive(seed, *labels), "little"))
