"""Local HTTP service backing the studio UI and scripted clients.

Reads serve an immutable lexicon snapshot; writes parse and validate a
whole replacement lexicon, persist it atomically (temp file + rename),
and publish it with a bumped revision. Optimistic concurrency uses the
revision as an ETag; stale If-Match writes get 409. Discourse loci are
kept per session id, in memory only, with LRU eviction.
"""

from __future__ import annotations

import json
import os
import threading
from collections import OrderedDict
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .compiler import TransitionPolicy, concatenate
from .errors import SignforgeError
from .lexicon import (
    Lexicon,
    parse_lexicon,
    parse_sign_fragment,
    serialize_lexicon,
    serialize_sign_fragment,
    validate_lexicon,
)
from .planner import (
    LociMap,
    citation_item,
    compile_plan_item,
    document_from_obj,
    fingerspell,
    no_duplicate_keys,
    translate_many,
)
from .rotation import ypr_gimbal_tolerant
from .x3d import EmissionOptions, emit_html, emit_x3d

MAX_SESSIONS = 256
X3D_MEDIA_TYPE = "model/x3d+xml"


class ServiceState:
    def __init__(
        self,
        lexicon_path: str | os.PathLike,
        policy: TransitionPolicy | None = None,
        options: EmissionOptions | None = None,
    ):
        self.path = Path(lexicon_path)
        self.lexicon: Lexicon = parse_lexicon(self.path.read_text("utf-8"))
        self.revision = 1
        self.policy = policy or TransitionPolicy()
        self.options = options or EmissionOptions()
        self._write_lock = threading.Lock()
        self._session_lock = threading.Lock()
        self._sessions: OrderedDict[str, tuple[LociMap, threading.Lock]] = OrderedDict()

    @property
    def etag(self) -> str:
        return f'"{self.revision}"'

    def matches_revision(self, if_match: str | None) -> bool:
        if if_match is None:
            return True
        return if_match.strip().strip('"') == str(self.revision)

    def publish(self, lexicon: Lexicon) -> None:
        """Persist and swap in an already-validated lexicon."""
        with self._write_lock:
            tmp = self.path.with_name(self.path.name + ".tmp")
            tmp.write_text(serialize_lexicon(lexicon), encoding="utf-8")
            os.replace(tmp, self.path)
            self.lexicon = lexicon
            self.revision += 1

    def session(self, session_id: str) -> tuple[LociMap, threading.Lock]:
        with self._session_lock:
            if session_id not in self._sessions:
                self._sessions[session_id] = (LociMap(), threading.Lock())
                while len(self._sessions) > MAX_SESSIONS:
                    self._sessions.popitem(last=False)
            self._sessions.move_to_end(session_id)
            return self._sessions[session_id]

    def store_session(self, session_id: str, loci: LociMap) -> None:
        with self._session_lock:
            lock = self._sessions[session_id][1]
            self._sessions[session_id] = (loci, lock)
            self._sessions.move_to_end(session_id)


def _diagnostics_response(status: int, diagnostics) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={
            "diagnostics": [
                {"severity": d.severity, "gloss": d.gloss, "message": d.message}
                if hasattr(d, "severity")
                else {"severity": "error", "gloss": None, "message": str(d)}
                for d in diagnostics
            ]
        },
    )


def _error_response(status: int, exc: Exception) -> JSONResponse:
    from .errors import LexiconValidationError

    if isinstance(exc, LexiconValidationError):
        return _diagnostics_response(status, exc.diagnostics)
    return _diagnostics_response(status, [exc])


def create_app(
    lexicon_path: str | os.PathLike,
    policy: TransitionPolicy | None = None,
    options: EmissionOptions | None = None,
) -> FastAPI:
    state = ServiceState(lexicon_path, policy, options)
    app = FastAPI(title="signforge", version="0.1.0")
    app.state.signforge = state
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=["ETag", "X-Loci"],
    )

    @app.get("/lexicon")
    def get_lexicon_summary():
        lex = state.lexicon
        return JSONResponse(
            content={
                "language": lex.language,
                "signs": len(lex.signs),
                "revision": state.revision,
            },
            headers={"ETag": state.etag},
        )

    @app.get("/signs")
    def get_signs():
        lex = state.lexicon
        return JSONResponse(
            content=[
                {
                    "gloss": g,
                    "category": lex.signs[g].syntax.category,
                    "agreement": lex.signs[g].syntax.agreement,
                    "lemma": lex.signs[g].semantics.lemma,
                    "frame": lex.signs[g].semantics.frame,
                    "compound": lex.signs[g].is_compound,
                }
                for g in sorted(lex.signs)
            ],
            headers={"ETag": state.etag},
        )

    @app.get("/signs/{gloss}")
    def get_sign(gloss: str):
        entry = state.lexicon.signs.get(gloss)
        if entry is None:
            return _error_response(404, KeyError(f"unknown gloss {gloss!r}"))
        return Response(
            content=serialize_sign_fragment(entry),
            media_type="application/xml",
            headers={"ETag": state.etag},
        )

    @app.put("/signs/{gloss}")
    async def put_sign(gloss: str, request: Request):
        if not state.matches_revision(request.headers.get("If-Match")):
            return JSONResponse(
                status_code=409,
                content={"error": "stale revision", "revision": state.revision},
            )
        body = (await request.body()).decode("utf-8")
        try:
            entry = parse_sign_fragment(body)
        except SignforgeError as exc:
            return _error_response(400, exc)
        if entry.gloss != gloss:
            return _diagnostics_response(
                400, [f"fragment gloss {entry.gloss!r} does not match URL gloss {gloss!r}"]
            )
        created = gloss not in state.lexicon.signs
        candidate = state.lexicon.with_sign(entry)
        errors = [d for d in validate_lexicon(candidate) if d.severity == "error"]
        if errors:
            return _diagnostics_response(400, errors)
        state.publish(candidate)
        return JSONResponse(
            status_code=201 if created else 200,
            content={"gloss": gloss, "revision": state.revision},
            headers={"ETag": state.etag},
        )

    @app.delete("/signs/{gloss}")
    def delete_sign(gloss: str, request: Request):
        if gloss not in state.lexicon.signs:
            return _error_response(404, KeyError(f"unknown gloss {gloss!r}"))
        if not state.matches_revision(request.headers.get("If-Match")):
            return JSONResponse(
                status_code=409,
                content={"error": "stale revision", "revision": state.revision},
            )
        candidate = state.lexicon.without_sign(gloss)
        errors = [d for d in validate_lexicon(candidate) if d.severity == "error"]
        if errors:
            return _diagnostics_response(400, errors)
        state.publish(candidate)
        return JSONResponse(
            content={"gloss": gloss, "revision": state.revision},
            headers={"ETag": state.etag},
        )

    @app.get("/alphabet")
    def get_alphabet():
        return JSONResponse(
            content=dict(sorted(state.lexicon.alphabet.items())), headers={"ETag": state.etag}
        )

    @app.get("/handshapes")
    def get_handshapes():
        lex = state.lexicon
        content = {}
        for name in sorted(lex.handshapes):
            joints = {}
            for key, rot in sorted(lex.handshapes[name].items()):
                e = ypr_gimbal_tolerant(rot)
                joints[key] = [e.yaw, e.pitch, e.roll]
            content[name] = joints
        return JSONResponse(content=content, headers={"ETag": state.etag})

    @app.post("/compile")
    async def post_compile(request: Request):
        payload = await request.json()
        glosses = payload.get("signs")
        if not isinstance(glosses, list) or not glosses:
            return _diagnostics_response(400, ['body must carry a non-empty "signs" list'])
        lex = state.lexicon
        docs = []
        for gloss in glosses:
            entry = lex.signs.get(gloss)
            if entry is None:
                return _error_response(404, KeyError(f"unknown gloss {gloss!r}"))
            try:
                docs.extend(compile_plan_item(citation_item(entry), lex, state.policy))
            except SignforgeError as exc:
                return _error_response(400, exc)
        try:
            doc = concatenate(docs, state.policy)
        except SignforgeError as exc:
            return _error_response(400, exc)
        return Response(content=emit_x3d(doc, state.options), media_type=X3D_MEDIA_TYPE)

    @app.post("/translate")
    async def post_translate(request: Request):
        body = (await request.body()).decode("utf-8")
        try:
            payload = json.loads(body, object_pairs_hook=no_duplicate_keys)
        except (json.JSONDecodeError, SignforgeError) as exc:
            return _diagnostics_response(400, [f"invalid JSON body: {exc}"])
        session_id = payload.get("session") or "default"
        sentences_obj = payload.get("sentences")
        if not isinstance(sentences_obj, list) or not sentences_obj:
            return _diagnostics_response(400, ['body must carry a non-empty "sentences" list'])
        try:
            sentences = [document_from_obj(obj) for obj in sentences_obj]
        except SignforgeError as exc:
            return _error_response(400, exc)
        loci, session_lock = state.session(session_id)
        with session_lock:
            loci, _ = state.session(session_id)
            try:
                doc, updated = translate_many(sentences, state.lexicon, loci, state.policy)
            except SignforgeError as exc:
                return _error_response(400, exc)
            state.store_session(session_id, updated)
        headers = {"X-Loci": updated.as_json()}
        if payload.get("html"):
            return Response(
                content=emit_html(doc, state.options), media_type="text/html", headers=headers
            )
        return Response(
            content=emit_x3d(doc, state.options), media_type=X3D_MEDIA_TYPE, headers=headers
        )

    @app.post("/fingerspell")
    async def post_fingerspell(request: Request):
        payload = await request.json()
        word = payload.get("word")
        if not isinstance(word, str) or not word:
            return _diagnostics_response(400, ['body must carry a non-empty "word"'])
        lex = state.lexicon
        try:
            docs = compile_plan_item(fingerspell(word, lex), lex, state.policy)
            doc = concatenate(docs, state.policy)
        except SignforgeError as exc:
            return _error_response(400, exc)
        return Response(content=emit_x3d(doc, state.options), media_type=X3D_MEDIA_TYPE)

    return app
