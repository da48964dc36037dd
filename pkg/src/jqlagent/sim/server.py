"""Optional HTTP surface over the issue store.

GET /search?jql=...&startAt=...&maxResults=...
GET /values?field=...&projects=A,B&startAt=...&maxResults=...
GET /schema

Responses carry exactly the JSON the in-process operations produce (see
docs/wire.md). The clock is frozen at serve time; the store is read-only,
so requests are handled concurrently with no shared mutable state.
"""

from __future__ import annotations

import datetime as dt
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from ..jsonio import dump_json
from .search import (
    DEFAULT_MAX_RESULTS,
    DEFAULT_VALUE_PAGE_SIZE,
    ERROR,
    NotEnumerable,
    search,
    unique_values,
)
from .store import IssueStore


class BindFailure(OSError):
    """The requested bind address is unavailable."""


@dataclass
class ServerHandle:
    host: str
    port: int
    _server: ThreadingHTTPServer
    _thread: threading.Thread

    @property
    def url(self) -> str:
        return f"http://{self.host}:{self.port}"

    def shutdown(self) -> None:
        self._server.shutdown()
        self._thread.join(timeout=5)
        self._server.server_close()


def serve_http(
    store: IssueStore, bind: str = "127.0.0.1:0", *, now: dt.datetime | None = None
) -> ServerHandle:
    """Start the HTTP server in a daemon thread; returns a running handle.

    bind is "host:port"; port 0 picks an ephemeral port. `now` freezes the
    clock for relative-date queries (defaults to startup time, frozen).
    """
    host, _, port_text = bind.rpartition(":")
    host = host or "127.0.0.1"
    try:
        port = int(port_text)
    except ValueError:
        raise BindFailure(f"bad bind address {bind!r}") from None
    clock = now or dt.datetime.now(dt.timezone.utc)
    handler = _make_handler(store, clock)
    try:
        server = ThreadingHTTPServer((host, port), handler)
    except OSError as exc:
        raise BindFailure(f"cannot bind {bind}: {exc}") from exc
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return ServerHandle(host, server.server_address[1], server, thread)


def _make_handler(store: IssueStore, now: dt.datetime):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args) -> None:  # keep test output quiet
            pass

        def do_GET(self) -> None:
            url = urlparse(self.path)
            params = parse_qs(url.query)
            try:
                if url.path == "/schema":
                    self._reply(200, store.schema.to_json())
                elif url.path == "/search":
                    self._search(params)
                elif url.path == "/values":
                    self._values(params)
                else:
                    self._reply(404, {"error": f"no such endpoint {url.path!r}"})
            except _BadRequest as exc:
                self._reply(400, {"error": str(exc)})

        def _search(self, params: dict) -> None:
            jql = _single(params, "jql")
            if jql is None:
                raise _BadRequest("missing required parameter 'jql'")
            start_at = _int_param(params, "startAt", 0)
            max_results = _int_param(params, "maxResults", DEFAULT_MAX_RESULTS)
            response = search(store, jql, now, start_at=start_at, max_results=max_results)
            self._reply(400 if response.signal == ERROR else 200, response.to_json())

        def _values(self, params: dict) -> None:
            field = _single(params, "field")
            if field is None:
                raise _BadRequest("missing required parameter 'field'")
            raw_projects = _single(params, "projects")
            projects = [p for p in raw_projects.split(",") if p] if raw_projects else None
            start_at = _int_param(params, "startAt", 0)
            max_results = _int_param(params, "maxResults", DEFAULT_VALUE_PAGE_SIZE)
            try:
                page = unique_values(
                    store, field, projects, start_at=start_at, max_results=max_results
                )
            except NotEnumerable as exc:
                raise _BadRequest(str(exc)) from None
            self._reply(200, page.to_json())

        def _reply(self, status: int, payload: dict) -> None:
            body = dump_json(payload).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

    return Handler


class _BadRequest(ValueError):
    pass


def _single(params: dict, name: str) -> str | None:
    values = params.get(name)
    return values[0] if values else None


def _int_param(params: dict, name: str, default: int) -> int:
    raw = _single(params, name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise _BadRequest(f"parameter {name!r} must be an integer") from None
    if value < 0:
        raise _BadRequest(f"parameter {name!r} must be non-negative")
    return value
