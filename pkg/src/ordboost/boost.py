"""Gradient boosting over order constraints.

One boosting step scores candidate constraints by the absolute sum of the
current residuals over their support (greedy largest-gradient selection),
picks the winner, and fits its coefficient as the learning-rate-scaled mean
residual over the support, which is the exact squared-error line search for
a binary feature.

The candidate space is searched breadth-first: every ordered pair is a root,
and each constraint's children insert one new item at every slot. A child's
support is a subset of its parent's, so the positive/negative residual mass
over a node's support bounds every descendant's score; subtrees whose bound
cannot beat the best score found so far are pruned without changing the
result.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .core import Constraint, Dataset, Model, Permutation
from .errors import (
    DuplicateConstraint,
    InvalidHyperparams,
    LengthMismatch,
    NoViableCandidate,
    SaturatedConstraint,
)
from .featurize import SupportVector, fulfills, support_vector

# Residual vector: delta[i] = target[i] - prediction[i], one entry per row.
Residuals = np.ndarray


@dataclass(frozen=True)
class ScoredConstraint:
    """A constraint with its gradient score tau = |signed_sum|."""

    constraint: Constraint
    tau: float
    signed_sum: float


def predict(model: Model, perm: Permutation) -> float:
    """Baseline plus the coefficients of every fulfilled constraint."""
    y = model.mu
    for c, beta in model.terms:
        if fulfills(perm, c):
            y += beta
    return y


def predict_batch(model: Model, dataset: Dataset) -> np.ndarray:
    """Vectorized predict over all rows; term order is fixed, so the float
    accumulation is reproducible."""
    pred = np.full(len(dataset), model.mu, dtype=np.float64)
    for c, beta in model.terms:
        pred[support_vector(dataset, c).bits] += beta
    return pred


def residuals(model: Model, dataset: Dataset) -> Residuals:
    return dataset.targets() - predict_batch(model, dataset)


def _check_lengths(z: SupportVector, delta: Residuals) -> None:
    if z.n_rows != delta.shape[0]:
        raise LengthMismatch(f"support over {z.n_rows} rows, residuals over {delta.shape[0]}")


def gradient_score(z: SupportVector, delta: Residuals) -> tuple[float, float]:
    """(signed residual sum over the support, its absolute value tau)."""
    _check_lengths(z, delta)
    signed, _, _, _ = _kernels.masked_stats(z.words, delta)
    return signed, abs(signed)


def upper_bound(z: SupportVector, delta: Residuals) -> float:
    """Bound on tau for every constraint whose support is a subset of this one.

    Any sub-support's signed sum lies between -(negative mass) and +(positive
    mass), so the larger mass dominates all descendants' scores.
    """
    _check_lengths(z, delta)
    _, _, pmass, nmass = _kernels.masked_stats(z.words, delta)
    return max(pmass, nmass)


def fit_coefficient(z: SupportVector, delta: Residuals, learning_rate: float) -> float:
    """Learning-rate-scaled mean residual over the support; 0 on empty support."""
    _check_lengths(z, delta)
    if z.count == 0:
        return 0.0
    signed, count, _, _ = _kernels.masked_stats(z.words, delta)
    return learning_rate * signed / count


def generate_children(n: int, parent: Constraint) -> list[Constraint]:
    """All one-item extensions of `parent`: each unused item (ascending)
    inserted at each slot (front to back). Exactly (n-k)(k+1) children."""
    parent.validate_for(n)
    if len(parent) >= n:
        raise SaturatedConstraint(f"constraint {parent.items} already uses all {n} items")
    return [Constraint(items) for items in _child_tuples(n, parent.items)]


def _child_tuples(n: int, items: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    used = set(items)
    for c in range(1, n + 1):
        if c in used:
            continue
        for slot in range(len(items) + 1):
            yield items[:slot] + (c,) + items[slot:]


def minimal_constraints(n: int) -> list[Constraint]:
    """All ordered pairs, in canonical enumeration order.

    The order is the one the breadth-first search induces: growing each
    singleton (a) by every other item y gives (y, a) then (a, y), and the
    first occurrence wins, which leaves, for each a, the pairs with partners
    above a. Tie-breaking everywhere refers to this enumeration.
    """
    out = []
    for a in range(1, n + 1):
        for y in range(a + 1, n + 1):
            out.append(Constraint((y, a)))
            out.append(Constraint((a, y)))
    return out


def _score_candidates(
    dataset: Dataset, delta: Residuals, candidates: Sequence[Constraint]
) -> tuple[np.ndarray, np.ndarray]:
    """(signed_sum, count) per candidate; mixed lengths are grouped so each
    kernel call sees a rectangular batch."""
    pos = dataset.positions()
    signed = np.zeros(len(candidates), dtype=np.float64)
    count = np.zeros(len(candidates), dtype=np.int64)
    by_len: dict[int, list[int]] = {}
    for idx, c in enumerate(candidates):
        by_len.setdefault(len(c), []).append(idx)
    for k, idxs in by_len.items():
        mat = np.array([candidates[i].items for i in idxs], dtype=np.int32) - 1
        s, cnt, _, _ = _kernels.eval_candidates(pos, delta, mat)
        signed[idxs] = s
        count[idxs] = cnt
    return signed, count


def select_top_l(
    candidates: Sequence[Constraint], dataset: Dataset, delta: Residuals, l: int
) -> list[Constraint]:
    """The l candidates with the largest tau; candidates nobody fulfills are
    dropped (their coefficient would be 0/0), ties go to the earlier
    candidate, and the result is ordered by descending tau then position."""
    if l < 1:
        raise InvalidHyperparams(f"l must be at least 1, got {l}")
    if delta.shape[0] != len(dataset):
        raise LengthMismatch(f"{delta.shape[0]} residuals for {len(dataset)} rows")
    for c in candidates:
        c.validate_for(dataset.n_items)
    signed, count = _score_candidates(dataset, delta, candidates)
    viable = [i for i in range(len(candidates)) if count[i] > 0]
    if not viable:
        raise NoViableCandidate("every candidate has an empty support")
    viable.sort(key=lambda i: (-abs(signed[i]), i))
    return [candidates[i] for i in viable[:l]]


@dataclass
class _SearchNode:
    items: tuple[int, ...]
    bound: float
    parent_words: np.ndarray | None  # packed support of the parent constraint


def search_best_constraint(
    dataset: Dataset,
    delta: Residuals,
    max_len: int,
    exclude: Iterable[Constraint] = (),
) -> ScoredConstraint:
    """Best-scoring constraint of length 2..max_len under the current residuals.

    Equivalent to exhaustively scoring every constraint in breadth-first
    enumeration order (pairs first, then children per the insertion order,
    first occurrence of each constraint counted): strictly larger tau wins,
    earlier enumeration breaks ties, and only subtrees whose residual-mass
    bound exceeds the best tau so far are descended into. Constraints in
    `exclude` are traversed but never returned. Raises NoViableCandidate when
    no eligible constraint scores above zero.
    """
    if max_len < 2:
        raise InvalidHyperparams(f"max_len must be at least 2, got {max_len}")
    if delta.shape[0] != len(dataset):
        raise LengthMismatch(f"{delta.shape[0]} residuals for {len(dataset)} rows")
    n = dataset.n_items
    pos = dataset.positions()
    excluded = {c.items for c in exclude}

    best: tuple[tuple[int, ...], float, float] | None = None  # (items, tau, signed)
    best_tau = 0.0

    def consider(items: tuple[int, ...], signed: float) -> None:
        nonlocal best, best_tau
        tau = abs(signed)
        if tau > best_tau and items not in excluded:
            best = (items, tau, signed)
            best_tau = tau

    pairs = [c.items for c in minimal_constraints(n)]
    visited = set(pairs)
    queue: deque[_SearchNode] = deque()
    if pairs:
        mat = np.array(pairs, dtype=np.int32) - 1
        signed, _, pmass, nmass = _kernels.eval_candidates(pos, delta, mat)
        for j, items in enumerate(pairs):
            consider(items, float(signed[j]))
            bound = max(float(pmass[j]), float(nmass[j]))
            if max_len > 2 and bound > best_tau:
                queue.append(_SearchNode(items, bound, None))

    while queue:
        node = queue.popleft()
        if node.bound <= best_tau:
            continue
        words, _ = _kernels.support_words(
            pos, np.asarray(node.items, dtype=np.int32) - 1, node.parent_words
        )
        fresh = []
        for child in _child_tuples(n, node.items):
            if child not in visited:
                visited.add(child)
                fresh.append(child)
        if not fresh:
            continue
        mat = np.array(fresh, dtype=np.int32) - 1
        signed, _, pmass, nmass = _kernels.eval_candidates(pos, delta, mat, words)
        deeper = len(node.items) + 1 < max_len
        for j, items in enumerate(fresh):
            consider(items, float(signed[j]))
            if deeper:
                bound = max(float(pmass[j]), float(nmass[j]))
                if bound > best_tau:
                    queue.append(_SearchNode(items, bound, words))

    if best is None:
        raise NoViableCandidate("no constraint correlates with the residuals")
    items, tau, signed_sum = best
    return ScoredConstraint(Constraint(items), tau, signed_sum)


def fit_sequential(
    model: Model,
    new_constraints: Sequence[Constraint],
    dataset: Dataset,
    learning_rate: float,
) -> Model:
    """Append the given constraints one at a time, each coefficient fitted on
    the residuals of the model extended so far."""
    existing = {c.items for c in model.constraints}
    for c in new_constraints:
        if c.items in existing:
            raise DuplicateConstraint(f"constraint {c.items} already present")
        existing.add(c.items)
    delta = residuals(model, dataset)
    for c in new_constraints:
        z = support_vector(dataset, c)
        beta = fit_coefficient(z, delta, learning_rate)
        model = model.with_term(c, beta)
        delta[z.bits] -= beta
    return model


def fit_auto(
    dataset: Dataset,
    l: int,
    learning_rate: float,
    max_len: int | None = None,
) -> Model:
    """Fully automatic fit: baseline = mean target, then up to `l` boosting
    steps, each adding the best-scoring constraint not already in the model.
    Stops early when nothing correlates with the residuals any more."""
    if l < 1:
        raise InvalidHyperparams(f"l must be at least 1, got {l}")
    if not 0.0 < learning_rate <= 1.0:
        raise InvalidHyperparams(f"learning_rate must be in (0, 1], got {learning_rate}")
    if max_len is None:
        max_len = dataset.n_items
    max_len = max(2, min(max_len, dataset.n_items))

    targets = dataset.targets()
    model = Model(float(np.mean(targets)))
    delta = targets - model.mu
    for _ in range(l):
        try:
            found = search_best_constraint(dataset, delta, max_len, exclude=model.constraints)
        except NoViableCandidate:
            break
        z = support_vector(dataset, found.constraint)
        beta = fit_coefficient(z, delta, learning_rate)
        model = model.with_term(found.constraint, beta)
        delta = delta.copy()
        delta[z.bits] -= beta
    return model
