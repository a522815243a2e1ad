"""Packed bit vectors: one bit per dataset row, little-endian in uint64 words.

Bit r of a vector lives at ``words[r >> 6] >> (r & 63) & 1``. Both kernel
backends produce and consume this layout, so supports can move between them
freely.
"""

from __future__ import annotations

import numpy as np


def n_words(n_rows: int) -> int:
    return (n_rows + 63) >> 6


def pack_mask(mask: np.ndarray) -> np.ndarray:
    """Pack a boolean row mask into uint64 words (zero-padded at the top)."""
    m = mask.shape[0]
    packed = np.packbits(mask, bitorder="little")
    out = np.zeros(n_words(m) * 8, dtype=np.uint8)
    out[: packed.shape[0]] = packed
    return out.view(np.uint64)


def unpack_words(words: np.ndarray, n_rows: int) -> np.ndarray:
    """Inverse of pack_mask; returns a bool array of length n_rows."""
    return np.unpackbits(
        words.view(np.uint8), count=n_rows, bitorder="little"
    ).astype(bool)


def popcount(words: np.ndarray) -> int:
    return int(np.bitwise_count(words).sum())


def is_subset(inner: np.ndarray, outer: np.ndarray) -> bool:
    """True iff every set bit of `inner` is also set in `outer`."""
    return not np.any(inner & ~outer)
