"""Session-based HTTP/JSON API over helices, tilting and web exploration.

Sessions are in-memory: a current helix plus the history of tilts, each
undoable.  Mutating requests on one session are serialized by a
per-session lock; distinct sessions are independent.  When a state
directory is configured, each session is snapshotted to JSON after every
mutation.

Status codes: 400 malformed body, 404 unknown session, 422 validation
failure with a machine-readable ``reason`` field.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .errors import HelixwebError, InputError
from .helices import Helix, enumerate_height_functions, geometric_failure
from .jsonio import (
    bmatrix_to_json,
    helix_from_json,
    helix_to_json,
    object_to_json,
    quiver_to_json,
)
from .quivers import TiltReport, cross_check_tilt, helix_quiver, rolled_b_matrix
from .seeds import SEED_NAMES, seed_helix
from .web import web_bfs

UI_DIR = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"


@dataclass
class Session:
    id: str
    helix: Helix
    history: list[tuple[Helix, dict[str, Any]]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


def _error(status: int, reason: str, detail: str = "") -> JSONResponse:
    body = {"reason": reason}
    if detail:
        body["detail"] = detail
    return JSONResponse(body, status_code=status)


def _object_view(o) -> dict[str, Any]:
    out = object_to_json(o)
    s = o.surface
    num, den = s.slope_num_den(o.cls)
    out["label"] = o.describe()
    out["slope"] = "inf" if den == 0 else str(Fraction(num, den))
    half, odd = divmod(o.cls.ch2_x2, 2)
    out["ch2"] = f"{o.cls.ch2_x2}/2" if odd else str(half)
    return out


def _state(session: Session, extra: dict[str, Any] | None = None) -> dict[str, Any]:
    h = session.helix
    quiver = helix_quiver(h)
    out = {
        "id": session.id,
        "helix": helix_to_json(h),
        "objects": [_object_view(o) for o in h.thread.objects],
        "quiver": quiver_to_json(quiver),
        "b_matrix": bmatrix_to_json(rolled_b_matrix(h)),
        "history_length": len(session.history),
    }
    if extra:
        out.update(extra)
    return out


def _cross_check_json(report: TiltReport) -> dict[str, Any]:
    return {
        "match": report.match,
        "vertex": report.vertex,
        "psi": list(report.psi),
        "b_mutated": bmatrix_to_json(report.b_mutated),
        "b_tilted": bmatrix_to_json(report.b_tilted),
    }


def create_app(state_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="helixweb", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()
    snapshot_dir = Path(state_dir) if state_dir else None
    if snapshot_dir:
        snapshot_dir.mkdir(parents=True, exist_ok=True)

    def snapshot(session: Session) -> None:
        if not snapshot_dir:
            return
        payload = {
            "id": session.id,
            "helix": helix_to_json(session.helix),
            "history": [
                {"helix": helix_to_json(h), "move": move}
                for h, move in session.history
            ],
        }
        path = snapshot_dir / f"{session.id}.json"
        path.write_text(json.dumps(payload, indent=2), encoding="utf-8")

    async def body_json(request: Request) -> Any:
        raw = await request.body()
        if not raw:
            return {}
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON body: {exc}") from exc

    def get_session(session_id: str) -> Session | None:
        with registry_lock:
            return sessions.get(session_id)

    @app.get("/healthz")
    def healthz() -> dict[str, str]:
        return {"status": "ok"}

    @app.get("/seeds")
    def seeds() -> dict[str, Any]:
        return {"seeds": list(SEED_NAMES)}

    @app.post("/sessions")
    async def create_session(request: Request):
        try:
            data = await body_json(request)
        except InputError as exc:
            return _error(400, "malformed_body", str(exc))
        if not isinstance(data, dict):
            return _error(400, "malformed_body", "body must be a JSON object")
        try:
            if "seed" in data:
                helix = seed_helix(data["seed"])
            else:
                helix = helix_from_json(data)
        except InputError as exc:
            return _error(400, "malformed_body", str(exc))
        except HelixwebError as exc:
            return _error(422, "invalid_helix", str(exc))
        failure = geometric_failure(helix)
        if failure is not None:
            return _error(422, "not_geometric", failure)
        session = Session(uuid.uuid4().hex, helix)
        with registry_lock:
            sessions[session.id] = session
        snapshot(session)
        return _state(session)

    @app.get("/sessions/{session_id}")
    def get_state(session_id: str):
        session = get_session(session_id)
        if session is None:
            return _error(404, "unknown_session")
        with session.lock:
            return _state(session)

    @app.post("/sessions/{session_id}/tilt")
    async def tilt_session(session_id: str, request: Request):
        session = get_session(session_id)
        if session is None:
            return _error(404, "unknown_session")
        try:
            data = await body_json(request)
        except InputError as exc:
            return _error(400, "malformed_body", str(exc))
        if not isinstance(data, dict) or "vertex" not in data:
            return _error(400, "malformed_body", "body needs a 'vertex' field")
        vertex = data["vertex"]
        direction = data.get("direction", "left")
        if not isinstance(vertex, int) or direction not in ("left", "right"):
            return _error(400, "malformed_body", "bad 'vertex' or 'direction'")
        with session.lock:
            if not 0 <= vertex < session.helix.n:
                return _error(422, "bad_vertex", f"vertex {vertex} out of range")
            try:
                report = cross_check_tilt(session.helix, vertex, direction)
            except HelixwebError as exc:
                return _error(422, "tilt_failed", str(exc))
            session.history.append(
                (session.helix, {"vertex": vertex, "direction": direction})
            )
            session.helix = report.tilted
            snapshot(session)
            return _state(session, {"cross_check": _cross_check_json(report)})

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str):
        session = get_session(session_id)
        if session is None:
            return _error(404, "unknown_session")
        with session.lock:
            if not session.history:
                return _error(422, "history_empty", "nothing to undo")
            previous, _ = session.history.pop()
            session.helix = previous
            snapshot(session)
            return _state(session)

    @app.get("/sessions/{session_id}/height")
    def height(session_id: str, vertex: int = 0, bound: int = 3):
        session = get_session(session_id)
        if session is None:
            return _error(404, "unknown_session")
        with session.lock:
            if not 0 <= vertex < session.helix.n:
                return _error(422, "bad_vertex", f"vertex {vertex} out of range")
            if not 0 <= bound <= 9:
                return _error(422, "bad_bound", "bound must be in 0..9")
            levellings = enumerate_height_functions(
                session.helix.thread, vertex, bound
            )
            return {
                "vertex": vertex,
                "bound": bound,
                "height_functions": [list(v) for v in levellings],
            }

    @app.get("/sessions/{session_id}/web")
    def web(session_id: str, depth: int = 2):
        session = get_session(session_id)
        if session is None:
            return _error(404, "unknown_session")
        with session.lock:
            if depth < 0 or depth > 6:
                return _error(422, "bad_depth", "depth must be in 0..6")
            return web_bfs(session.helix, depth).to_json()

    if UI_DIR.is_dir():
        app.mount("/ui", StaticFiles(directory=str(UI_DIR), html=True), name="ui")

    return app


app = create_app()
