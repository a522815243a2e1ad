"""Constraint fulfillment tests and batch feature evaluation.

A constraint maps every dataset row to one bit: set iff the constraint's
items appear in that relative order in the row's permutation. Supports are
kept packed (uint64 words plus a popcount) because the boosting search
evaluates thousands of them per step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._kernels.bits import unpack_words
from .core import Constraint, Dataset, Permutation


@dataclass(frozen=True, eq=False)
class SupportVector:
    """Packed indicator of the rows fulfilling one constraint."""

    words: np.ndarray
    n_rows: int
    count: int

    @property
    def bits(self) -> np.ndarray:
        """The support as a plain bool array of length n_rows."""
        return unpack_words(self.words, self.n_rows)

    def same_bits(self, other: "SupportVector") -> bool:
        return self.n_rows == other.n_rows and bool(
            np.array_equal(self.words, other.words)
        )


def _columns(c: Constraint) -> np.ndarray:
    # kernel arrays index items 0-based; every public surface stays 1-based
    return np.asarray(c.items, dtype=np.int32) - 1


def fulfills(perm: Permutation, c: Constraint) -> bool:
    """True iff the items of `c` occur in this relative order in `perm`."""
    c.validate_for(perm.n)
    prev = perm.positions[c.items[0] - 1]
    for item in c.items[1:]:
        cur = perm.positions[item - 1]
        if prev >= cur:
            return False
        prev = cur
    return True


def support_vector(dataset: Dataset, c: Constraint) -> SupportVector:
    """Evaluate `c` on every row of `dataset`."""
    c.validate_for(dataset.n_items)
    words, count = _kernels.support_words(dataset.positions(), _columns(c))
    return SupportVector(words=words, n_rows=len(dataset), count=count)


def feature_matrix(dataset: Dataset, cs: list[Constraint]) -> list[SupportVector]:
    """One support column per constraint, in the given order."""
    return [support_vector(dataset, c) for c in cs]
