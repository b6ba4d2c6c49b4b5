"""HTTP facade over the design pipeline.

JSON in, JSON out; every failure body carries a machine code from the
closed error set. Requests touching the same session are serialized by a
per-session lock; distinct sessions proceed in parallel. With
CHOROCOLOR_OFFLINE=1 the gateway replays committed fixtures and the whole
API works with no network access.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
from pathlib import Path

from fastapi import Body, FastAPI, Request
from fastapi.responses import JSONResponse

from .colorspace import parse_hex
from .dataset import dataset_from_obj, parse_dataset, summarize, validate_dataset
from .errors import ChorocolorError, MalformedInput, SessionNotFound
from .gateway import LlmGateway, ProviderConfig, offline_gateway
from .parsing import concept_patch_from_fields, scheme_patch_from_dict
from .session import DirectEdit, Pipeline, Session, new_session

log = logging.getLogger("chorocolor.service")

DEFAULT_MAX_BODY = 20 * 1024 * 1024

_STATUS_BY_CODE = {
    "MALFORMED_INPUT": 400,
    "MISSING_FIELD": 400,
    "INVALID_GEOJSON": 400,
    "BAD_K": 400,
    "DEGENERATE_DATA": 400,
    "TIE_COLLAPSE": 400,
    "TOO_FEW_VALUES": 400,
    "ALL_METHODS_FAILED": 400,
    "VALUE_OUT_OF_RANGE": 400,
    "BAD_HEX": 400,
    "LENGTH_MISMATCH": 400,
    "PATCH_OUT_OF_RANGE": 400,
    "NO_CANDIDATES": 400,
    "SESSION_NOT_FOUND": 404,
    "STAGE_INCOMPLETE": 409,
    "CONCEPT_INVALID": 422,
    "UNPARSEABLE_RESPONSE": 422,
    "BAD_SCHEME_TYPE": 422,
    "WRONG_COLOR_COUNT": 422,
    "RATE_LIMITED": 429,
    "CORRUPT_PALETTE_FILE": 500,
    "AUTH_FAILURE": 502,
    "PROVIDER_ERROR": 502,
    "TIMEOUT": 502,
    "FIXTURE_MISS": 502,
}


class SessionStore:
    """In-memory session store with one mutation lock per session."""

    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def create(self) -> Session:
        s = new_session()
        with self._guard:
            self._sessions[s.id] = s
            self._locks[s.id] = threading.Lock()
        return s

    def get(self, sid: str) -> Session:
        try:
            return self._sessions[sid]
        except KeyError:
            raise SessionNotFound(f"unknown session {sid!r}") from None

    def put(self, session: Session) -> None:
        self._sessions[session.id] = session

    def lock(self, sid: str) -> threading.Lock:
        with self._guard:
            if sid not in self._locks:
                self.get(sid)  # raises for unknown ids
            return self._locks[sid]


class FileSessionStore(SessionStore):
    """Same contract, but sessions persist as one JSON document each."""

    def __init__(self, root: str | Path):
        super().__init__()
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        for path in self.root.glob("*.json"):
            s = Session.from_json(path.read_text("utf-8"))
            self._sessions[s.id] = s
            self._locks[s.id] = threading.Lock()

    def create(self) -> Session:
        s = super().create()
        self._write(s)
        return s

    def put(self, session: Session) -> None:
        super().put(session)
        self._write(session)

    def _write(self, session: Session) -> None:
        (self.root / f"{session.id}.json").write_text(session.to_json(), "utf-8")


class BodyLimitMiddleware:
    """Rejects oversized requests up front with a 413."""

    def __init__(self, app, max_bytes: int):
        self.app = app
        self.max_bytes = max_bytes

    async def __call__(self, scope, receive, send):
        if scope["type"] == "http":
            for name, value in scope.get("headers", []):
                if name == b"content-length" and int(value) > self.max_bytes:
                    response = JSONResponse(
                        status_code=413,
                        content={"code": "PAYLOAD_TOO_LARGE",
                                 "message": f"request body exceeds {self.max_bytes} bytes",
                                 "details": None})
                    await response(scope, receive, send)
                    return
        await self.app(scope, receive, send)


def _session_view(session: Session) -> dict:
    """Everything a client needs, minus the bulky geometry and records."""
    doc = session.to_dict()
    doc.pop("geometry", None)
    if doc.get("dataset"):
        doc["dataset"] = {
            "value_field": doc["dataset"]["value_field"],
            "title": doc["dataset"]["title"],
            "count": len(doc["dataset"]["records"]),
        }
    doc["session_id"] = doc.pop("id")
    doc["stage1_done"] = session.stage1_done
    doc["stage2_done"] = session.stage2_done
    doc["stage3_done"] = session.stage3_done
    return doc


def _scheme_view(session: Session) -> dict:
    return {
        "scheme": session.scheme.to_dict() if session.scheme else None,
        "match": session.match.to_dict() if session.match else None,
        "lint": session.lint.to_dict() if session.lint else None,
        "active_scheme": session.active_scheme,
    }


def build_pipeline_from_env(env=os.environ) -> Pipeline:
    if env.get("CHOROCOLOR_OFFLINE") == "1":
        fixtures = env.get("CHOROCOLOR_FIXTURES", "fixtures/llm")
        gateway = offline_gateway(fixtures, ProviderConfig.from_env(env))
    else:
        gateway = LlmGateway(ProviderConfig.from_env(env))
    return Pipeline(gateway)


def create_app(pipeline: Pipeline | None = None, store: SessionStore | None = None,
               max_body_bytes: int | None = None) -> FastAPI:
    pipeline = pipeline or build_pipeline_from_env()
    store = store or _store_from_env()
    max_body = max_body_bytes or int(os.environ.get("CHOROCOLOR_MAX_BODY", DEFAULT_MAX_BODY))

    app = FastAPI(title="chorocolor", docs_url=None, redoc_url=None)
    app.add_middleware(BodyLimitMiddleware, max_bytes=max_body)

    @app.exception_handler(ChorocolorError)
    async def _domain_error(request: Request, exc: ChorocolorError):
        status = _STATUS_BY_CODE.get(exc.code, 500)
        return JSONResponse(status_code=status,
                            content={"code": exc.code, "message": str(exc),
                                     "details": exc.details})

    @app.exception_handler(Exception)
    async def _unexpected_error(request: Request, exc: Exception):
        log.exception("unhandled error on %s %s", request.method, request.url.path)
        return JSONResponse(status_code=500,
                            content={"code": "INTERNAL", "message": "internal error",
                                     "details": None})

    @app.middleware("http")
    async def _request_log(request: Request, call_next):
        start = time.perf_counter()
        response = await call_next(request)
        log.info(json.dumps({
            "method": request.method,
            "path": request.url.path,
            "status": response.status_code,
            "duration_ms": round((time.perf_counter() - start) * 1000, 2),
        }))
        return response

    @app.post("/sessions", status_code=201)
    def create_session():
        s = store.create()
        return {"session_id": s.id}

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        return _session_view(store.get(sid))

    @app.post("/sessions/{sid}/data")
    def upload_data(sid: str, payload: dict = Body(...)):
        with store.lock(sid):
            session = store.get(sid)
            value_field = payload.get("value_field")
            if not value_field:
                raise MalformedInput("missing 'value_field'")
            data = payload.get("data")
            if isinstance(data, str):
                dataset = parse_dataset(data, value_field, payload.get("title"))
            else:
                dataset = dataset_from_obj(data, value_field, payload.get("title"))
            session = Session(id=session.id, dataset=dataset,
                              chat_history=session.chat_history)
            report = validate_dataset(dataset)
            summary = summarize(dataset)
            join = None
            geojson = payload.get("geojson")
            if geojson is not None:
                session = pipeline.attach_geometry(
                    session, geojson, payload.get("name_property", "name"))
                join = session.join.to_dict()
            store.put(session)
            return {"validation": report.to_dict(),
                    "summary": summary.__dict__,
                    "join": join}

    @app.post("/sessions/{sid}/classify")
    def classify_data(sid: str, payload: dict = Body(...)):
        with store.lock(sid):
            session = store.get(sid)
            k = payload.get("k")
            session = pipeline.run_stage1(session, k, int(payload.get("seed", 0)))
            store.put(session)
            return {
                "results": [r.to_dict() for r in session.results],
                "selected": session.selected_method,
                "skipped": dict(session.skipped),
                "scheme_type": session.scheme_type,
                "analysis": session.analysis.to_dict(),
            }

    @app.patch("/sessions/{sid}/classify")
    def select_method(sid: str, payload: dict = Body(...)):
        with store.lock(sid):
            session = pipeline.select_method(store.get(sid), payload.get("method"))
            store.put(session)
            return {"selected": session.selected_method}

    @app.post("/sessions/{sid}/concept")
    def design_concept(sid: str, payload: dict = Body(...)):
        with store.lock(sid):
            session = store.get(sid)
            intent = payload.get("intent") or ""
            if not intent.strip():
                raise MalformedInput("missing 'intent'")
            session = pipeline.run_stage2(session, intent)
            store.put(session)
            return session.concept.to_dict()

    @app.patch("/sessions/{sid}/concept")
    def patch_concept(sid: str, payload: dict = Body(...)):
        with store.lock(sid):
            session = store.get(sid)
            patch = concept_patch_from_fields(payload)
            session = pipeline.apply_patch(session, patch)
            store.put(session)
            return session.concept.to_dict()

    @app.post("/sessions/{sid}/scheme")
    def design_scheme(sid: str):
        with store.lock(sid):
            session = pipeline.run_stage3(store.get(sid))
            store.put(session)
            return _scheme_view(session)

    @app.patch("/sessions/{sid}/scheme")
    def patch_scheme(sid: str, payload: dict = Body(...)):
        with store.lock(sid):
            session = store.get(sid)
            if "index" in payload and "color" in payload:
                idx = payload["index"]
                if not isinstance(idx, int) or isinstance(idx, bool):
                    raise MalformedInput("'index' must be an integer")
                patch = DirectEdit(idx, parse_hex(payload["color"]))
            else:
                expected_k = session.scheme.k if session.scheme else None
                patch = scheme_patch_from_dict(payload, expected_k)
            session = pipeline.apply_patch(session, patch)
            store.put(session)
            return _scheme_view(session)

    @app.post("/sessions/{sid}/scheme/active")
    def set_active(sid: str, payload: dict = Body(...)):
        with store.lock(sid):
            session = pipeline.set_active_scheme(store.get(sid), payload.get("active"))
            store.put(session)
            return _scheme_view(session)

    @app.post("/sessions/{sid}/chat")
    def chat(sid: str, payload: dict = Body(...)):
        with store.lock(sid):
            session = store.get(sid)
            utterance = payload.get("utterance") or ""
            session, assistant, effect = pipeline.chat(session, utterance)
            store.put(session)
            return {"assistant": assistant, "effect": effect,
                    **_scheme_view(session),
                    "concept": session.concept.to_dict() if session.concept else None}

    @app.get("/sessions/{sid}/map")
    def styled_map(sid: str):
        return pipeline.render_styled_map(store.get(sid)).to_dict()

    @app.get("/sessions/{sid}/export")
    def export(sid: str):
        return pipeline.export_bundle(store.get(sid))

    return app


def _store_from_env(env=os.environ) -> SessionStore:
    root = env.get("CHOROCOLOR_SESSION_DIR")
    return FileSessionStore(root) if root else SessionStore()


app = create_app()
