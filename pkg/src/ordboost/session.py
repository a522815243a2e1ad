"""Interactive refinement sessions.

A session owns the train/validation/test splits, a forest of constraint
nodes (the roots are pair constraints; children refine a parent by one
inserted item), and an append-only history of iterations. Every mutating
action appends a full snapshot, so any previous state can be reloaded, and
the best iteration (lowest validation MAE, earliest on ties) is tracked for
final testing.

Each session is a single-writer state machine: callers must serialize
mutating calls per session (the HTTP layer does this with a per-session
lock); distinct sessions are independent.
"""

from __future__ import annotations

import time
import uuid
from dataclasses import dataclass, field

import numpy as np

from .boost import (
    fit_sequential,
    generate_children,
    minimal_constraints,
    predict_batch,
    residuals,
    select_top_l,
)
from .core import Constraint, Dataset, Hyperparams, Model, check_same_item_set
from .errors import (
    AlreadyFinalized,
    EmptyModel,
    IndexOutOfRange,
    NodeActive,
    NodeInactive,
    NoViableCandidate,
    SaturatedConstraint,
    UnknownNode,
)
from .metrics import MetricsReport, evaluate, mae


@dataclass
class ConstraintNode:
    id: int
    constraint: Constraint
    parent_id: int | None
    child_ids: list[int]
    active: bool
    beta: float

    def clone(self) -> "ConstraintNode":
        return ConstraintNode(
            self.id, self.constraint, self.parent_id, list(self.child_ids),
            self.active, self.beta,
        )


@dataclass(frozen=True)
class Action:
    kind: str  # init | expand | collapse | simplify | restart | revert
    node_id: int | None = None
    source_index: int | None = None

    def to_dict(self) -> dict:
        doc: dict = {"kind": self.kind}
        if self.node_id is not None:
            doc["node_id"] = self.node_id
        if self.source_index is not None:
            doc["source_index"] = self.source_index
        return doc


@dataclass(frozen=True)
class Iteration:
    index: int
    action: Action
    nodes: dict[int, ConstraintNode]  # full snapshot, self-contained
    model: Model
    val_mae: float


@dataclass
class Session:
    id: str
    train: Dataset
    validation: Dataset
    test: Dataset
    hyperparams: Hyperparams
    history: list[Iteration] = field(default_factory=list)
    best_index: int = 0
    finalized: bool = False
    test_metrics: MetricsReport | None = None
    action_log: list[dict] = field(default_factory=list)
    nodes: dict[int, ConstraintNode] = field(default_factory=dict)
    _next_id: int = 1

    @property
    def n_items(self) -> int:
        return self.train.n_items

    @property
    def mu(self) -> float:
        return float(np.mean(self.train.targets()))

    def node(self, node_id: int) -> ConstraintNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNode(f"no node {node_id}") from None

    def current_model(self) -> Model:
        return _model_from_nodes(self.mu, self.nodes)


def _model_from_nodes(mu: float, nodes: dict[int, ConstraintNode]) -> Model:
    # term order is node-id order (creation order): keeps predictions and
    # their float accumulation reproducible across snapshot replays
    terms = tuple(
        (node.constraint, node.beta)
        for node in sorted(nodes.values(), key=lambda nd: nd.id)
        if node.active
    )
    return Model(mu, terms)


def _require_open(session: Session) -> None:
    if session.finalized:
        raise AlreadyFinalized(f"session {session.id} is finalized")


def _append(session: Session, action: Action) -> Iteration:
    model = session.current_model()
    val_mae = mae(session.validation.targets(), predict_batch(model, session.validation))
    it = Iteration(
        index=len(session.history),
        action=action,
        nodes={nid: nd.clone() for nid, nd in session.nodes.items()},
        model=model,
        val_mae=val_mae,
    )
    session.history.append(it)
    if val_mae < session.history[session.best_index].val_mae:
        session.best_index = it.index
    session.action_log.append(
        {"index": it.index, "action": action.to_dict(), "time": time.time()}
    )
    return it


def _new_node(session: Session, c: Constraint, beta: float, parent_id: int | None) -> ConstraintNode:
    node = ConstraintNode(
        id=session._next_id, constraint=c, parent_id=parent_id,
        child_ids=[], active=True, beta=beta,
    )
    session._next_id += 1
    session.nodes[node.id] = node
    return node


def _init_forest(session: Session) -> None:
    """Roots: the top-l pair constraints against the baseline residuals,
    coefficients fitted one after another."""
    base = Model(session.mu)
    delta = residuals(base, session.train)
    try:
        selected = select_top_l(
            minimal_constraints(session.n_items), session.train, delta,
            session.hyperparams.l,
        )
    except NoViableCandidate:
        selected = []
    model = fit_sequential(base, selected, session.train, session.hyperparams.learning_rate)
    session.nodes = {}
    for c, beta in model.terms:
        _new_node(session, c, beta, parent_id=None)


def create_session(
    train: Dataset, validation: Dataset, test: Dataset, hp: Hyperparams
) -> Session:
    check_same_item_set(train, validation, test)
    session = Session(
        id=uuid.uuid4().hex,
        train=train, validation=validation, test=test,
        hyperparams=hp,
    )
    _init_forest(session)
    _append(session, Action("init"))
    return session


def expand(session: Session, node_id: int) -> Iteration:
    """Deactivate a node and attach its top-l children, fitted against the
    residuals of the model without that node's term. If no child is viable
    the node is reactivated unchanged and NoViableCandidate is raised."""
    _require_open(session)
    node = session.node(node_id)
    if not node.active:
        raise NodeInactive(f"node {node_id} is inactive")
    if len(node.constraint) >= session.n_items:
        raise SaturatedConstraint(f"node {node_id} uses every item")

    node.active = False
    try:
        reduced = session.current_model()
        delta = residuals(reduced, session.train)
        in_tree = {nd.constraint.items for nd in session.nodes.values()}
        candidates = [
            c
            for c in generate_children(session.n_items, node.constraint)
            if c.items not in in_tree
        ]
        if not candidates:
            raise NoViableCandidate(f"all children of node {node_id} are already in the tree")
        selected = select_top_l(candidates, session.train, delta, session.hyperparams.l)
    except NoViableCandidate:
        node.active = True
        raise
    fitted = fit_sequential(reduced, selected, session.train, session.hyperparams.learning_rate)
    for c, beta in fitted.terms[len(reduced.terms):]:
        child = _new_node(session, c, beta, parent_id=node.id)
        node.child_ids.append(child.id)
    return _append(session, Action("expand", node_id=node_id))


def collapse(session: Session, node_id: int) -> Iteration:
    """Delete the node's descendants and reactivate it with the coefficient
    it carried when it was deactivated, undoing the expansion exactly."""
    _require_open(session)
    node = session.node(node_id)
    if node.active:
        raise NodeActive(f"node {node_id} is active")
    _delete_subtree(session, node)
    node.active = True
    return _append(session, Action("collapse", node_id=node_id))


def _delete_subtree(session: Session, node: ConstraintNode) -> None:
    stack = list(node.child_ids)
    node.child_ids = []
    while stack:
        child = session.nodes.pop(stack.pop())
        stack.extend(child.child_ids)


def simplify(session: Session) -> Iteration:
    """Keep only the l active nodes with the largest absolute coefficients
    as new roots and refit them, strongest first, from baseline residuals."""
    _require_open(session)
    active = [nd for nd in session.nodes.values() if nd.active]
    if not active:
        raise EmptyModel("no active constraints to simplify")
    active.sort(key=lambda nd: (-abs(nd.beta), nd.id))
    kept = active[: session.hyperparams.l]
    model = fit_sequential(
        Model(session.mu), [nd.constraint for nd in kept],
        session.train, session.hyperparams.learning_rate,
    )
    session.nodes = {}
    for nd, (_, beta) in zip(kept, model.terms):
        nd.parent_id = None
        nd.child_ids = []
        nd.active = True
        nd.beta = beta
        session.nodes[nd.id] = nd
    return _append(session, Action("simplify"))


def restart(session: Session, hp: Hyperparams) -> Iteration:
    """Replace the hyperparameters and rebuild the initial forest; the
    previous history stays available for revert."""
    _require_open(session)
    session.hyperparams = hp
    _init_forest(session)
    return _append(session, Action("restart"))


def revert(session: Session, source_index: int) -> Iteration:
    """Append a copy of a previous iteration's state; nothing is truncated."""
    _require_open(session)
    if not 0 <= source_index < len(session.history):
        raise IndexOutOfRange(
            f"iteration {source_index} not in 0..{len(session.history) - 1}"
        )
    src = session.history[source_index]
    session.nodes = {nid: nd.clone() for nid, nd in src.nodes.items()}
    return _append(session, Action("revert", source_index=source_index))


def finalize(session: Session) -> MetricsReport:
    """Score the best iteration's model on the test split and freeze the
    session against further mutation."""
    if session.finalized:
        raise AlreadyFinalized(f"session {session.id} is already finalized")
    best = session.history[session.best_index]
    rep = evaluate(best.model, session.test)
    session.finalized = True
    session.test_metrics = rep
    session.action_log.append(
        {"index": len(session.history) - 1, "action": {"kind": "finalize"}, "time": time.time()}
    )
    return rep


def export_session(session: Session) -> dict:
    """Self-describing JSON document: hyperparameters, full history with
    snapshots and validation errors, and the final test metrics if any."""
    return {
        "format": 1,
        "session_id": session.id,
        "n_items": session.n_items,
        "hyperparams": {
            "l": session.hyperparams.l,
            "learning_rate": session.hyperparams.learning_rate,
        },
        "best_index": session.best_index,
        "finalized": session.finalized,
        "test_metrics": session.test_metrics.to_dict() if session.test_metrics else None,
        "history": [
            {
                "index": it.index,
                "action": it.action.to_dict(),
                "val_mae": it.val_mae,
                "model": it.model.to_dict(),
                "nodes": [
                    {
                        "id": nd.id,
                        "items": list(nd.constraint.items),
                        "parent_id": nd.parent_id,
                        "active": nd.active,
                        "beta": nd.beta,
                    }
                    for nd in sorted(it.nodes.values(), key=lambda nd: nd.id)
                ],
            }
            for it in session.history
        ],
        "action_log": list(session.action_log),
    }
