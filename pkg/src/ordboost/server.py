"""HTTP/JSON service exposing sessions to the browser UI and scripted clients.

Every mutating endpoint returns the updated session view; errors carry a
machine-readable ``{code, message}`` body whose code is the engine error
class name. Mutations on one session are serialized behind a per-session
lock; distinct sessions run concurrently.
"""

from __future__ import annotations

import os
import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import session as sess
from .core import Dataset, Hyperparams
from .data import SplitSpec, parse_csv_text, split
from .errors import InvalidSpec, OrdboostError, UnknownDataset, UnknownSession

_STATUS_BY_CODE = {
    "UnknownSession": 404,
    "UnknownDataset": 404,
    "UnknownNode": 404,
    "NodeInactive": 409,
    "NodeActive": 409,
    "AlreadyFinalized": 409,
    "NoViableCandidate": 409,
    "EmptyModel": 409,
}


def _status_for(exc: OrdboostError) -> int:
    # anything not session-state related is a request-content problem
    return _STATUS_BY_CODE.get(exc.code, 422)


@dataclass
class Settings:
    max_sessions: int = int(os.environ.get("ORDBOOST_MAX_SESSIONS", "256"))
    max_dataset_rows: int = int(os.environ.get("ORDBOOST_MAX_ROWS", "1000000"))


@dataclass
class _SessionSlot:
    session: sess.Session
    lock: threading.Lock = field(default_factory=threading.Lock)


class HyperparamsBody(BaseModel):
    l: int
    learning_rate: float


class SplitBody(BaseModel):
    train: int
    validation: int
    test: int
    seed: int = 0


class DatasetBody(BaseModel):
    csv: str
    name: str | None = None


class CreateSessionBody(BaseModel):
    hyperparams: HyperparamsBody
    dataset_id: str | None = None
    csv: str | None = None
    split: SplitBody | None = None
    train_dataset_id: str | None = None
    validation_dataset_id: str | None = None
    test_dataset_id: str | None = None


class NodeBody(BaseModel):
    node_id: int


class RestartBody(BaseModel):
    hyperparams: HyperparamsBody


class RevertBody(BaseModel):
    iteration: int


def session_view(session: sess.Session) -> dict:
    """The UI-facing snapshot of the latest iteration.

    ``normalized_beta`` rescales coefficients by the largest active
    magnitude (the UI's saturation channel); inactive nodes contribute
    nothing to the model and report 0.
    """
    cur = session.history[-1]
    denom = max((abs(nd.beta) for nd in cur.nodes.values() if nd.active), default=0.0)
    nodes = []
    for nd in sorted(cur.nodes.values(), key=lambda nd: nd.id):
        norm = nd.beta / denom if nd.active and denom > 0.0 else 0.0
        nodes.append(
            {
                "id": nd.id,
                "items": list(nd.constraint.items),
                "parent_id": nd.parent_id,
                "active": nd.active,
                "beta": nd.beta,
                "normalized_beta": norm,
            }
        )
    view = {
        "session_id": session.id,
        "hyperparams": {
            "l": session.hyperparams.l,
            "learning_rate": session.hyperparams.learning_rate,
        },
        "iteration_index": cur.index,
        "nodes": nodes,
        "val_mae_history": [it.val_mae for it in session.history],
        "best_index": session.best_index,
        "finalized": session.finalized,
    }
    if session.test_metrics is not None:
        view["test_metrics"] = session.test_metrics.to_dict()
    return view


def create_app(settings: Settings | None = None, static_dir: str | None = None) -> FastAPI:
    settings = settings or Settings()
    app = FastAPI(title="ordboost", version="0.1.0")
    datasets: dict[str, Dataset] = {}
    slots: dict[str, _SessionSlot] = {}
    registry_lock = threading.Lock()

    @app.exception_handler(OrdboostError)
    async def _engine_error(request: Request, exc: OrdboostError) -> JSONResponse:
        return JSONResponse(
            status_code=_status_for(exc),
            content={"code": exc.code, "message": str(exc)},
        )

    def _slot(session_id: str) -> _SessionSlot:
        try:
            return slots[session_id]
        except KeyError:
            raise UnknownSession(f"no session {session_id}") from None

    def _dataset(dataset_id: str) -> Dataset:
        try:
            return datasets[dataset_id]
        except KeyError:
            raise UnknownDataset(f"no dataset {dataset_id}") from None

    def _check_rows(ds: Dataset) -> Dataset:
        if len(ds) > settings.max_dataset_rows:
            raise InvalidSpec(
                f"dataset of {len(ds)} rows exceeds the limit of {settings.max_dataset_rows}"
            )
        return ds

    @app.post("/v1/datasets")
    def register_dataset(body: DatasetBody) -> dict:
        ds = _check_rows(parse_csv_text(body.csv, origin=body.name or "<upload>"))
        dataset_id = uuid.uuid4().hex[:12]
        with registry_lock:
            datasets[dataset_id] = ds
        return {"dataset_id": dataset_id, "n_items": ds.n_items, "n_rows": len(ds)}

    @app.post("/v1/sessions")
    def create_session(body: CreateSessionBody) -> dict:
        hp = Hyperparams(body.hyperparams.l, body.hyperparams.learning_rate)
        if body.train_dataset_id and body.validation_dataset_id and body.test_dataset_id:
            train = _dataset(body.train_dataset_id)
            validation = _dataset(body.validation_dataset_id)
            test = _dataset(body.test_dataset_id)
        else:
            if body.dataset_id:
                ds = _dataset(body.dataset_id)
            elif body.csv is not None:
                ds = _check_rows(parse_csv_text(body.csv))
            else:
                raise InvalidSpec(
                    "provide dataset_id, inline csv, or three pre-split dataset ids"
                )
            if body.split is None:
                raise InvalidSpec("a split spec is required with a single dataset")
            train, validation, test = split(
                ds,
                SplitSpec(
                    body.split.train, body.split.validation, body.split.test,
                    body.split.seed,
                ),
            )
        with registry_lock:
            if len(slots) >= settings.max_sessions:
                raise InvalidSpec(f"session limit of {settings.max_sessions} reached")
            session = sess.create_session(train, validation, test, hp)
            slots[session.id] = _SessionSlot(session)
        return session_view(session)

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return session_view(_slot(session_id).session)

    def _mutate(session_id: str, fn) -> dict:
        slot = _slot(session_id)
        with slot.lock:
            fn(slot.session)
            return session_view(slot.session)

    @app.post("/v1/sessions/{session_id}/expand")
    def expand(session_id: str, body: NodeBody) -> dict:
        return _mutate(session_id, lambda s: sess.expand(s, body.node_id))

    @app.post("/v1/sessions/{session_id}/collapse")
    def collapse(session_id: str, body: NodeBody) -> dict:
        return _mutate(session_id, lambda s: sess.collapse(s, body.node_id))

    @app.post("/v1/sessions/{session_id}/simplify")
    def simplify(session_id: str) -> dict:
        return _mutate(session_id, sess.simplify)

    @app.post("/v1/sessions/{session_id}/restart")
    def restart(session_id: str, body: RestartBody) -> dict:
        hp = Hyperparams(body.hyperparams.l, body.hyperparams.learning_rate)
        return _mutate(session_id, lambda s: sess.restart(s, hp))

    @app.post("/v1/sessions/{session_id}/revert")
    def revert(session_id: str, body: RevertBody) -> dict:
        return _mutate(session_id, lambda s: sess.revert(s, body.iteration))

    @app.post("/v1/sessions/{session_id}/finalize")
    def finalize(session_id: str) -> dict:
        slot = _slot(session_id)
        with slot.lock:
            sess.finalize(slot.session)
            return session_view(slot.session)

    @app.get("/v1/sessions/{session_id}/export")
    def export(session_id: str) -> dict:
        return sess.export_session(_slot(session_id).session)

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
