"""HTTP service for interactive seed exploration.

Sessions live in memory; each holds an initial double-word seed and the
history of mutated vertices.  The current seed is always reproducible by
replaying the history from the initial seed, and undo works by popping
the history and replaying.  Requests to one session are serialized.
"""

from __future__ import annotations

import json
import os
import threading
import uuid

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import bfz, clustercore, rootweyl

RANK_GUARD = 4
SNAPSHOT_ENV = "MINORLAB_API_SNAPSHOT"


class Session:
    def __init__(self, sid: str, kind: str, word: tuple[int, ...]):
        self.sid = sid
        self.kind = kind
        self.word = word
        self.datum = rootweyl.cartan_matrix(kind)
        self.double_word = bfz.DoubleWord(self.datum, word)
        self.initial = bfz.build_seed(self.double_word, regularity=False)
        self.history: list[int] = []
        self.current = self.initial
        self.lock = threading.Lock()

    def replay(self) -> None:
        self.current = clustercore.mutate_sequence(self.initial, self.history)

    def mutate(self, vertex: int):
        self.current = clustercore.mutate(self.current, vertex)
        self.history.append(vertex)
        return self.current

    def undo(self) -> None:
        self.history.pop()
        self.replay()

    def payload(self) -> dict:
        seed = self.current
        data = clustercore.seed_to_json(seed)
        data["type"] = self.kind
        data["word"] = list(self.word)
        data["frozen"] = list(seed.frozen)
        data["history"] = list(self.history)
        data["id"] = self.sid
        return data


class SeedRequest(BaseModel):
    type: str
    rank: int | None = None
    word: list[int]


class MutationRequest(BaseModel):
    vertex: int


class SessionStore:
    def __init__(self, snapshot_path: str | None = None):
        self.sessions: dict[str, Session] = {}
        self.lock = threading.Lock()
        self.snapshot_path = snapshot_path
        if snapshot_path and os.path.exists(snapshot_path):
            self._load(snapshot_path)

    def _load(self, path: str) -> None:
        with open(path) as fh:
            data = json.load(fh)
        for item in data.get("sessions", []):
            s = Session(item["id"], item["type"], tuple(item["word"]))
            s.history = list(item["history"])
            s.replay()
            self.sessions[s.sid] = s

    def snapshot(self) -> None:
        if not self.snapshot_path:
            return
        data = {
            "sessions": [
                {"id": s.sid, "type": s.kind, "word": list(s.word), "history": list(s.history)}
                for s in self.sessions.values()
            ]
        }
        tmp = self.snapshot_path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(data, fh)
        os.replace(tmp, self.snapshot_path)


def create_app(snapshot_path: str | None = None) -> FastAPI:
    snapshot_path = snapshot_path or os.environ.get(SNAPSHOT_ENV)
    store = SessionStore(snapshot_path)
    app = FastAPI(title="minorlab explorer api")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store

    def error(status: int, message: str) -> JSONResponse:
        return JSONResponse(status_code=status, content={"error": message})

    @app.post("/api/v1/seeds", status_code=201)
    def create_seed(req: SeedRequest):
        kind = req.type.strip().upper().replace("_", "")
        if req.rank is not None and not any(ch.isdigit() for ch in kind):
            kind = f"{kind}{req.rank}"
        try:
            datum = rootweyl.cartan_matrix(kind)
        except ValueError as exc:
            return error(400, str(exc))
        if datum.n > RANK_GUARD:
            return error(422, f"rank {datum.n} exceeds the interactive guard {RANK_GUARD}")
        try:
            session = Session(uuid.uuid4().hex, kind, tuple(req.word))
        except ValueError as exc:
            return error(400, f"invalid word: {exc}")
        with store.lock:
            store.sessions[session.sid] = session
        store.snapshot()
        return session.payload()

    @app.get("/api/v1/seeds/{sid}")
    def get_seed(sid: str):
        session = store.sessions.get(sid)
        if session is None:
            return error(404, "unknown session")
        with session.lock:
            return session.payload()

    @app.post("/api/v1/seeds/{sid}/mutations")
    def mutate(sid: str, req: MutationRequest):
        session = store.sessions.get(sid)
        if session is None:
            return error(404, "unknown session")
        with session.lock:
            if req.vertex not in set(session.current.exchangeable):
                return error(409, f"vertex {req.vertex} is frozen or absent")
            seed = session.mutate(req.vertex)
            payload = session.payload()
            payload["variable"] = {
                "label": req.vertex,
                "laurent": seed.variables[req.vertex].canonical_str(),
            }
        store.snapshot()
        return payload

    @app.delete("/api/v1/seeds/{sid}/mutations/last")
    def undo(sid: str):
        session = store.sessions.get(sid)
        if session is None:
            return error(404, "unknown session")
        with session.lock:
            if not session.history:
                return error(409, "history is empty")
            session.undo()
            payload = session.payload()
        store.snapshot()
        return payload

    return app


app = create_app()
