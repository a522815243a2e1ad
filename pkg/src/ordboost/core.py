"""Core domain types: permutations, order constraints, datasets, models.

Item ids are 1-based everywhere (in memory, in files, over the API). A
permutation stores the item placed at each position; an order constraint is
an ordered tuple of distinct items that a permutation either fulfills (the
items appear in that relative order) or not.

All types are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateConstraint,
    DuplicateItem,
    EmptyDataset,
    IncompatibleDatasets,
    InvalidHyperparams,
    ItemOutOfRange,
    Malformed,
    NonFiniteTarget,
    OutOfRangeItem,
    WrongLength,
)

MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Permutation:
    """A total order of the items 1..n; ``items[k]`` is the item placed k-th."""

    items: tuple[int, ...]
    # positions[item-1] = 0-based position of `item`; precomputed because
    # fulfillment tests are the innermost operation of the whole engine.
    positions: tuple[int, ...] = field(repr=False, compare=False, hash=False, default=())

    def __post_init__(self) -> None:
        if not self.positions:
            pos = [0] * len(self.items)
            for idx, item in enumerate(self.items):
                pos[item - 1] = idx
            object.__setattr__(self, "positions", tuple(pos))

    @property
    def n(self) -> int:
        return len(self.items)

    def position_of(self, item: int) -> int:
        """0-based position of `item`; raises ItemOutOfRange for foreign items."""
        if not 1 <= item <= len(self.items):
            raise ItemOutOfRange(f"item {item} not in 1..{len(self.items)}")
        return self.positions[item - 1]


def validate_permutation(items: Sequence[int], n: int) -> Permutation:
    """Check that `items` is a bijection on 1..n and wrap it."""
    items = tuple(int(x) for x in items)
    if len(items) != n:
        raise WrongLength(f"expected {n} items, got {len(items)}")
    seen = set()
    for x in items:
        if not 1 <= x <= n:
            raise OutOfRangeItem(f"item {x} not in 1..{n}")
        if x in seen:
            raise DuplicateItem(f"item {x} appears more than once")
        seen.add(x)
    return Permutation(items)


@dataclass(frozen=True)
class Constraint:
    """An ordered subset of items; fulfilled when its items occur in this
    relative order (as a subsequence) in a permutation."""

    items: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(int(x) for x in self.items))
        if len(self.items) < 2:
            raise WrongLength("a constraint needs at least two items")
        if len(set(self.items)) != len(self.items):
            raise DuplicateItem(f"repeated item in constraint {self.items}")

    def __len__(self) -> int:
        return len(self.items)

    def validate_for(self, n_items: int) -> None:
        if len(self.items) > n_items:
            raise WrongLength(
                f"constraint of length {len(self.items)} over {n_items} items"
            )
        for x in self.items:
            if not 1 <= x <= n_items:
                raise ItemOutOfRange(f"item {x} not in 1..{n_items}")

    def label(self) -> str:
        return " < ".join(str(x) for x in self.items)


class Dataset:
    """Immutable collection of (permutation, target) rows over a shared item set.

    Derived arrays (the item->position matrix and the target vector) are
    computed lazily and cached; they back all vectorized evaluation.
    """

    def __init__(self, n_items: int, rows: Iterable[tuple[Permutation, float]]):
        rows = tuple((p, float(y)) for p, y in rows)
        if n_items < 1:
            raise EmptyDataset(f"n_items must be positive, got {n_items}")
        if not rows:
            raise EmptyDataset("a dataset needs at least one row")
        for i, (perm, y) in enumerate(rows):
            if perm.n != n_items:
                raise WrongLength(
                    f"row {i}: permutation of length {perm.n}, expected {n_items}"
                )
            if not math.isfinite(y):
                raise NonFiniteTarget(f"row {i}: target {y!r} is not finite")
        self.n_items = n_items
        self.rows = rows
        self._positions: np.ndarray | None = None
        self._targets: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.n_items == other.n_items and self.rows == other.rows

    def positions(self) -> np.ndarray:
        """(m, n) int32 matrix; entry [r, i] is the position of item i+1 in row r."""
        if self._positions is None:
            mat = np.empty((len(self.rows), self.n_items), dtype=np.int32)
            for r, (perm, _) in enumerate(self.rows):
                mat[r, :] = perm.positions
            self._positions = mat
        return self._positions

    def targets(self) -> np.ndarray:
        if self._targets is None:
            self._targets = np.array([y for _, y in self.rows], dtype=np.float64)
        return self._targets


@dataclass(frozen=True)
class Model:
    """Transparent linear predictor: baseline plus one coefficient per constraint."""

    mu: float
    terms: tuple[tuple[Constraint, float], ...] = ()

    def __post_init__(self) -> None:
        cs = [c for c, _ in self.terms]
        if len(set(cs)) != len(cs):
            raise DuplicateConstraint("model holds the same constraint twice")

    @property
    def constraints(self) -> tuple[Constraint, ...]:
        return tuple(c for c, _ in self.terms)

    def with_term(self, constraint: Constraint, beta: float) -> "Model":
        return Model(self.mu, self.terms + ((constraint, float(beta)),))

    def to_dict(self) -> dict:
        return {
            "format": MODEL_FORMAT_VERSION,
            "mu": self.mu,
            "terms": [
                {"items": list(c.items), "beta": b} for c, b in self.terms
            ],
        }

    @staticmethod
    def from_dict(doc: dict) -> "Model":
        try:
            if doc.get("format") != MODEL_FORMAT_VERSION:
                raise Malformed(f"unsupported model format {doc.get('format')!r}")
            terms = tuple(
                (Constraint(tuple(t["items"])), float(t["beta"]))
                for t in doc["terms"]
            )
            return Model(float(doc["mu"]), terms)
        except (KeyError, TypeError, ValueError) as exc:
            raise Malformed(f"bad model document: {exc}") from exc


@dataclass(frozen=True)
class Hyperparams:
    """Interactive-session hyperparameters: constraints added per step and
    the shrinkage applied to every fitted coefficient."""

    l: int
    learning_rate: float

    def __post_init__(self) -> None:
        if not isinstance(self.l, int) or not 1 <= self.l <= 20:
            raise InvalidHyperparams(f"l must be an integer in 1..20, got {self.l!r}")
        lr = self.learning_rate
        if not (isinstance(lr, (int, float)) and math.isfinite(lr) and 1e-6 <= lr <= 1.0):
            raise InvalidHyperparams(
                f"learning_rate must be in [1e-6, 1], got {lr!r}"
            )
        object.__setattr__(self, "learning_rate", float(lr))


def check_same_item_set(*datasets: Dataset) -> int:
    """All datasets must share n_items; returns it."""
    ns = {d.n_items for d in datasets}
    if len(ns) != 1:
        raise IncompatibleDatasets(f"datasets disagree on item count: {sorted(ns)}")
    return ns.pop()
