"""HTTP front end for the session store.

Plain-text in, plain-text out: request and response bodies are the same
documents the store persists.  Errors come back as ``error:``/``detail:``
lines with the taxonomy code, and CORS is open so the web console can be
served from anywhere.

    POST /sessions                                  create (config + matrix)
    POST /sessions/{id}/participants                register (participant doc)
    POST /sessions/{id}/participants/import-legacy  register (legacy file, ?weight=)
    POST /sessions/{id}/rank                        rank everyone
    POST /sessions/{id}/negotiate                   run the protocol
    GET  /sessions/{id}                             full session document
    GET  /sessions/{id}/rankings | /trace | /result
"""

from __future__ import annotations

import logging
import re
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from .errors import DecisionError, SessionNotFound, ValidationFailed
from .store import SessionStore, parse_session_request

log = logging.getLogger(__name__)

_SESSION = re.compile(r"^/sessions/([^/]+)$")
_SUB = re.compile(r"^/sessions/([^/]+)/([a-z-]+(?:/[a-z-]+)?)$")

_CORS = (
    ("Access-Control-Allow-Origin", "*"),
    ("Access-Control-Allow-Methods", "GET, POST, OPTIONS"),
    ("Access-Control-Allow-Headers", "Content-Type"),
)


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    @property
    def store(self) -> SessionStore:
        return self.server.store

    def log_message(self, fmt, *args):  # route through logging, not stderr
        log.debug("%s %s", self.address_string(), fmt % args)

    def _reply(self, status: int, text: str):
        body = text.encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "text/plain; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        for key, value in _CORS:
            self.send_header(key, value)
        self.end_headers()
        self.wfile.write(body)

    def _fail(self, exc: DecisionError):
        self._reply(exc.http_status, f"error: {exc.code}\ndetail: {exc}\n")

    def _body(self) -> str:
        length = int(self.headers.get("Content-Length") or 0)
        return self.rfile.read(length).decode("utf-8")

    def do_OPTIONS(self):
        self._reply(204, "")

    def do_GET(self):
        path = urlsplit(self.path).path
        try:
            match = _SESSION.match(path)
            if match:
                self._reply(200, self.store.session_doc(match.group(1)))
                return
            match = _SUB.match(path)
            if match:
                sid, leaf = match.groups()
                reader = {
                    "rankings": self.store.rankings_doc,
                    "trace": self.store.trace_doc,
                    "result": self.store.result_doc,
                }.get(leaf)
                if reader is not None:
                    self._reply(200, reader(sid))
                    return
            self._fail(SessionNotFound(f"no resource at {path}"))
        except DecisionError as exc:
            self._fail(exc)

    def do_POST(self):
        parts = urlsplit(self.path)
        path, query = parts.path, parse_qs(parts.query)
        try:
            if path == "/sessions":
                matrix, config = parse_session_request(self._body())
                sid = self.store.create_session(matrix, config)
                self._reply(201, f"id: {sid}\n")
                return
            match = _SUB.match(path)
            if match:
                sid, leaf = match.groups()
                if leaf == "participants":
                    pid = self.store.register_participant_doc(sid, self._body())
                    self._reply(201, f"id: {pid}\n")
                    return
                if leaf == "participants/import-legacy":
                    weight = _weight_param(query)
                    pid = self.store.import_legacy(sid, self._body(), weight)
                    self._reply(201, f"id: {pid}\n")
                    return
                if leaf == "rank":
                    self.store.rank_all(sid)
                    self._reply(200, self.store.rankings_doc(sid))
                    return
                if leaf == "negotiate":
                    self.store.negotiate(sid)
                    self._reply(200, self.store.result_doc(sid))
                    return
            self._fail(SessionNotFound(f"no resource at {path}"))
        except DecisionError as exc:
            self._fail(exc)


def _weight_param(query) -> float:
    raw = query.get("weight", ["1"])[0]
    try:
        return float(raw)
    except ValueError:
        raise ValidationFailed(f"weight {raw!r} is not a number") from None


class SessionServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, store: SessionStore, host: str = "127.0.0.1", port: int = 0):
        self.store = store
        super().__init__((host, port), _Handler)


def serve(data_dir, port: int, host: str = "127.0.0.1"):
    """Run the service until interrupted."""
    server = SessionServer(SessionStore(data_dir), host, port)
    log.info("serving on %s:%d, data in %s", host, server.server_address[1], data_dir)
    try:
        server.serve_forever()
    finally:
        server.server_close()
