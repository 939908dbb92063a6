"""HTTP facade for exploration sessions.

One JSON file per session under a data directory; the engine snapshot is the
record. Requests for the same session serialize on an in-process lock, writes
go through a temp file and an atomic replace, and every successful answer is
persisted before the response leaves.
"""

from __future__ import annotations

import json
import os
import re
import secrets
import threading
from datetime import datetime, timezone
from typing import Literal, Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from .context import ObjectRow, family_from_json, triadic_from_json
from .errors import InconsistentAnswer, RejectedAnswer, TriexError
from .exploration import (ORDERS, VARIANTS, Answer, ExplorationEngine,
                          FamilyCounterexample, transcript_csv)
from .lattice import implication_lattice

SESSION_ID = re.compile(r"^[A-Za-z0-9_-]{1,64}$")
MAX_CONDITIONS = 12  # the schedule is every nonempty condition subset


class CounterexamplePayload(BaseModel):
    name: str = Field(min_length=1)
    table: Optional[list[tuple[str, str]]] = None   # triadic sessions
    expert: Optional[str] = None                    # family sessions
    attributes: Optional[list[str]] = None          # family sessions


class AnswerPayload(BaseModel):
    holds_for: list[str]
    counterexample: Optional[CounterexamplePayload] = None


class CreateSessionPayload(BaseModel):
    mode: Literal["triadic", "family"] = "triadic"
    attributes: list[str] = Field(min_length=1)
    conditions: list[str] = Field(min_length=1)
    variant: Literal[VARIANTS] = "record-partial-holds"  # type: ignore[valid-type]
    order: Literal[ORDERS] = "lex"  # type: ignore[valid-type]
    examples: Optional[dict] = None


class SessionStore:
    """Directory of session files with per-session write locks."""

    def __init__(self, root: str):
        self.root = root
        os.makedirs(root, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def lock(self, sid: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(sid, threading.Lock())

    def _path(self, sid: str) -> str:
        return os.path.join(self.root, f"{sid}.json")

    def fresh_id(self) -> str:
        while True:
            sid = secrets.token_urlsafe(16)
            if not os.path.exists(self._path(sid)):
                return sid

    def read(self, sid: str) -> Optional[dict]:
        if not SESSION_ID.match(sid):
            return None
        try:
            with open(self._path(sid), "r", encoding="utf-8") as fh:
                return json.load(fh)
        except FileNotFoundError:
            return None

    def write(self, sid: str, record: dict) -> None:
        path = self._path(sid)
        tmp = f"{path}.tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(record, fh, ensure_ascii=False)
        os.replace(tmp, path)


def _error(status: int, code: str, reason: str) -> JSONResponse:
    return JSONResponse({"error": code, "reason": reason}, status_code=status)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _session_view(sid: str, record: dict, engine: ExplorationEngine) -> dict:
    return {
        "id": sid,
        "status": engine.status,
        "mode": engine.mode,
        "variant": engine.variant,
        "order": engine.order,
        "attributes": list(engine.attributes),
        "conditions": list(engine.conditions),
        "created": record["created"],
        "updated": record["updated"],
        "answered": engine.answered,
        "node_index": engine.node_index,
        "schedule_size": len(engine.schedule),
        "question": engine.pending_json(),
        "done": engine.finished,
    }


def _build_examples(payload: CreateSessionPayload):
    body = payload.examples
    if body is None:
        return None
    if not isinstance(body, dict):
        raise TriexError("examples must be an object")
    body = dict(body)
    if payload.mode == "triadic":
        body.setdefault("attributes", payload.attributes)
        body.setdefault("conditions", payload.conditions)
        body.setdefault("objects", [])
        body.setdefault("incidence", [])
        return triadic_from_json(body)
    body.setdefault("attributes", payload.attributes)
    body.setdefault("members", {})
    for e in payload.conditions:
        body["members"].setdefault(e, {"objects": [], "incidence": []})
    return family_from_json(body)


def _to_answer(engine: ExplorationEngine, payload: AnswerPayload):
    cex = payload.counterexample
    if cex is None:
        return Answer(payload.holds_for), None
    if engine.mode == "triadic":
        if cex.table is None:
            return None, "triadic counterexamples need a 'table' of [attribute, condition] pairs"
        return Answer(payload.holds_for, ObjectRow(cex.name, cex.table)), None
    if cex.expert is None or cex.attributes is None:
        return None, "family counterexamples need 'expert' and 'attributes'"
    return Answer(payload.holds_for,
                  FamilyCounterexample(cex.expert, cex.name, cex.attributes)), None


def create_app(data_dir: str, static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="triex", docs_url=None, redoc_url=None)
    store = SessionStore(data_dir)

    @app.exception_handler(RequestValidationError)
    async def on_validation(request: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        where = ".".join(str(x) for x in first.get("loc", ()))
        msg = first.get("msg", "invalid request")
        return _error(422, "validation-error", f"{where}: {msg}" if where else msg)

    def load(sid: str):
        record = store.read(sid)
        if record is None:
            return None, None
        return record, ExplorationEngine.restore(record["snapshot"])

    @app.post("/api/sessions", status_code=201)
    def create_session(payload: CreateSessionPayload):
        if len(payload.conditions) > MAX_CONDITIONS:
            return _error(422, "validation-error",
                          f"more than {MAX_CONDITIONS} conditions; the schedule "
                          "would enumerate every nonempty subset")
        try:
            examples = _build_examples(payload)
            engine = ExplorationEngine(mode=payload.mode,
                                       attributes=payload.attributes,
                                       conditions=payload.conditions,
                                       examples=examples,
                                       variant=payload.variant,
                                       order=payload.order)
        except TriexError as exc:
            return _error(422, "validation-error", str(exc))
        sid = store.fresh_id()
        now = _now()
        record = {"id": sid, "created": now, "updated": now,
                  "snapshot": engine.snapshot()}
        store.write(sid, record)
        return _session_view(sid, record, engine)

    @app.get("/api/sessions/{sid}")
    def get_session(sid: str):
        record, engine = load(sid)
        if record is None:
            return _error(404, "not-found", f"no session {sid!r}")
        return _session_view(sid, record, engine)

    @app.get("/api/sessions/{sid}/question")
    def get_question(sid: str):
        record, engine = load(sid)
        if record is None:
            return _error(404, "not-found", f"no session {sid!r}")
        return {"status": engine.status, "done": engine.pending is None,
                "question": engine.pending_json()}

    @app.post("/api/sessions/{sid}/answer")
    def post_answer(sid: str, payload: AnswerPayload):
        with store.lock(sid):
            record, engine = load(sid)
            if record is None:
                return _error(404, "not-found", f"no session {sid!r}")
            if engine.inconsistent:
                return _error(409, "conflict", "session is flagged inconsistent")
            if engine.pending is None:
                return _error(409, "conflict", "no pending question")
            answer, problem = _to_answer(engine, payload)
            if problem is not None:
                return _error(422, "validation-error", problem)
            try:
                engine.submit(answer)
            except RejectedAnswer as exc:
                return _error(409, exc.reason, exc.detail)
            except InconsistentAnswer as exc:
                record["updated"] = _now()
                record["snapshot"] = engine.snapshot()
                store.write(sid, record)
                return _error(409, "inconsistency-report",
                              exc.report.get("detail", "inconsistent answer"))
            record["updated"] = _now()
            record["snapshot"] = engine.snapshot()
            store.write(sid, record)
            return _session_view(sid, record, engine)

    @app.get("/api/sessions/{sid}/lattice")
    def get_lattice(sid: str):
        record, engine = load(sid)
        if record is None:
            return _error(404, "not-found", f"no session {sid!r}")
        return implication_lattice(engine.kc).to_json()

    @app.get("/api/sessions/{sid}/transcript")
    def get_transcript(sid: str):
        record, engine = load(sid)
        if record is None:
            return _error(404, "not-found", f"no session {sid!r}")
        return PlainTextResponse(transcript_csv(engine.transcript),
                                 media_type="text/csv")

    @app.get("/api/sessions/{sid}/export")
    def get_export(sid: str):
        record, engine = load(sid)
        if record is None:
            return _error(404, "not-found", f"no session {sid!r}")
        return JSONResponse(record["snapshot"])

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
