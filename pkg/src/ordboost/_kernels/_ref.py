"""Pure-numpy kernel backend.

Functionally equivalent to the compiled backend in ``_fast.pyx``; used when
the extension is unavailable (and as the reference side of the kernel
benchmark). Candidate loops run in Python with vectorized row math, which is
fine for interactive use but roughly an order of magnitude slower on deep
searches.
"""

from __future__ import annotations

import numpy as np

from .bits import pack_mask, unpack_words

BACKEND = "ref"


def _fulfill_mask(pos: np.ndarray, items0: np.ndarray, base: np.ndarray | None) -> np.ndarray:
    mask = np.ones(pos.shape[0], dtype=bool) if base is None else base.copy()
    prev = pos[:, items0[0]]
    for col in items0[1:]:
        cur = pos[:, col]
        mask &= prev < cur
        prev = cur
    return mask


def support_words(
    pos: np.ndarray, items0: np.ndarray, within: np.ndarray | None = None
) -> tuple[np.ndarray, int]:
    """Support of one constraint (0-based item columns) as packed words."""
    base = None if within is None else unpack_words(within, pos.shape[0])
    mask = _fulfill_mask(pos, np.asarray(items0, dtype=np.int32), base)
    return pack_mask(mask), int(mask.sum())


def masked_stats(words: np.ndarray, delta: np.ndarray) -> tuple[float, int, float, float]:
    """(signed residual sum, popcount, positive mass, negative mass) over set bits."""
    mask = unpack_words(words, delta.shape[0])
    sel = delta[mask]
    pos_mass = float(sel[sel > 0.0].sum())
    neg_mass = float(-sel[sel < 0.0].sum())
    return float(sel.sum()), int(mask.sum()), pos_mass, neg_mass


def eval_candidates(
    pos: np.ndarray,
    delta: np.ndarray,
    cands: np.ndarray,
    within: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Score a batch of equal-length candidates (0-based (q, k) item matrix).

    Returns per-candidate signed residual sums, support sizes, and the
    positive/negative residual masses over the support.
    """
    q = cands.shape[0]
    signed = np.zeros(q, dtype=np.float64)
    count = np.zeros(q, dtype=np.int64)
    pos_mass = np.zeros(q, dtype=np.float64)
    neg_mass = np.zeros(q, dtype=np.float64)
    base = None if within is None else unpack_words(within, pos.shape[0])
    for j in range(q):
        mask = _fulfill_mask(pos, cands[j], base)
        sel = delta[mask]
        signed[j] = sel.sum()
        count[j] = mask.sum()
        pos_mass[j] = sel[sel > 0.0].sum()
        neg_mass[j] = -sel[sel < 0.0].sum()
    return signed, count, pos_mass, neg_mass
