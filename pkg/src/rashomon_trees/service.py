"""HTTP service exposing the set, its geometry, filtering, and curation.

Everything except the favorites store is served from immutable in-memory
state, so identical GETs return byte-identical bodies.  The companion
browser UI is a pure renderer of these payloads.
"""

from __future__ import annotations

import json
import mimetypes
import re
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import curation
from .colors import assign_colors
from .enumeration import RashomonSet, load_set
from .errors import (
    InvalidDepth,
    PrefixNotFound,
    RashomonTreesError,
    UnknownFeature,
    UnknownTreeId,
    ValidationError,
)
from .query import apply_filter, feature_importance, spec_from_wire
from .sunburst import colors_document, layout, layout_document
from .trees import extract_paths, metrics_to_dict, node_to_dict
from .trie import RuleTrie, build_trie, hierarchy_document, restrict, subtrie

DEFAULT_PORT = 8080
PORT_ENV_VAR = "RASHOMON_TREES_PORT"

_TREE_ROUTE = re.compile(r"^/api/trees/(\d+)$")
_FAVORITE_ROUTE = re.compile(r"^/api/favorites/(\d+)$")


@dataclass(frozen=True)
class ServiceConfig:
    port: int
    rashomon_file: str | Path
    session_dir: str | Path
    static_dir: str | Path | None = None

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise ValidationError(f"port {self.port} outside [1, 65535]")


class AppState:
    """Immutable set, trie, and palette plus the mutable favorites store."""

    def __init__(self, rset: RashomonSet, session_dir: str | Path | None, static_dir=None):
        self.rset = rset
        self.trie = build_trie(rset)
        self.colors = assign_colors(rset.conditions)
        self.store = curation.CurationStore(rset, session_dir)
        self.default_depth = max(1, self.trie.height)
        self.static_dir = Path(static_dir).resolve() if static_dir else None


def build_state(config: ServiceConfig) -> AppState:
    return AppState(load_set(config.rashomon_file), config.session_dir, config.static_dir)


def _meta_document(state: AppState) -> dict:
    rset = state.rset
    return {
        "size": rset.size,
        "config": {
            "lambda": rset.config.lam,
            "epsilon": rset.config.epsilon,
            "depth_cap": rset.config.depth_cap,
        },
        "dataset_hash": rset.dataset_hash,
        "optimal_objective": rset.optimal_objective,
        "conditions": [
            {
                "id": c.id,
                "display_name": c.display_name,
                "source_feature": c.source_feature,
                "range_label": c.range_label,
            }
            for c in rset.conditions
        ],
        "colors": colors_document(state.colors),
        "trie": {
            "height": state.trie.height,
            "total_trees": state.trie.total_trees,
            "total_path_links": state.trie.total_path_links,
        },
        "default_depth": state.default_depth,
        "importance": {
            feat: {
                "root_fraction": imp.root_fraction,
                "any_depth_fraction": imp.any_depth_fraction,
            }
            for feat, imp in feature_importance(rset).items()
        },
    }


def _tree_document(state: AppState, tree_id: int) -> dict | None:
    member = state.rset.member(tree_id)
    if member is None:
        return None
    paths = extract_paths(member.tree, member.metrics)
    return {
        "id": tree_id,
        "tree": node_to_dict(member.tree.root),
        "metrics": metrics_to_dict(member.metrics),
        "paths": [
            {
                "steps": [
                    {"condition": step.condition, "direction": "true" if step.direction else "false"}
                    for step in path.steps
                ],
                "prediction": path.prediction,
                "leaf_accuracy": path.leaf_accuracy,
                "sample_fraction": path.sample_fraction,
            }
            for path in paths
        ],
    }


def _parse_prefix(query: dict) -> list[int]:
    raw = query.get("prefix", [""])[0]
    if not raw:
        return []
    try:
        return [int(part) for part in raw.split(",")]
    except ValueError:
        raise ValidationError(f"prefix must be comma-separated condition ids, got {raw!r}") from None


def _parse_depth(query: dict, default: int) -> int:
    raw = query.get("depth", [None])[0]
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"depth must be an integer, got {raw!r}") from None


class _Handler(BaseHTTPRequestHandler):
    state: AppState  # assigned by make_server
    protocol_version = "HTTP/1.1"

    def log_message(self, format, *args):  # silence request logging
        pass

    def _send(self, code: int, body: bytes, content_type: str, extra: dict | None = None):
        self.send_response(code)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        for key, value in (extra or {}).items():
            self.send_header(key, value)
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, code: int, doc: dict, extra: dict | None = None):
        body = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")
        self._send(code, body, "application/json; charset=utf-8", extra)

    def _error(self, code: int, message: str, field: str | None = None):
        doc = {"error": message}
        if field:
            doc["field"] = field
        self._send_json(code, doc)

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length", 0))
        raw = self.rfile.read(length) if length else b""
        try:
            return json.loads(raw.decode("utf-8")) if raw else {}
        except (json.JSONDecodeError, UnicodeDecodeError):
            raise ValidationError("request body is not valid JSON") from None

    def do_GET(self):
        try:
            self._route_get()
        except RashomonTreesError as exc:
            self._map_error(exc)

    def do_POST(self):
        try:
            self._route_post()
        except RashomonTreesError as exc:
            self._map_error(exc)

    def do_DELETE(self):
        try:
            self._route_delete()
        except RashomonTreesError as exc:
            self._map_error(exc)

    def _map_error(self, exc: RashomonTreesError):
        if isinstance(exc, (UnknownTreeId, PrefixNotFound)):
            self._error(404, str(exc))
        elif isinstance(exc, (ValidationError, UnknownFeature, InvalidDepth)):
            self._error(400, str(exc))
        else:
            self._error(500, str(exc))

    def _route_get(self):
        state = self.state
        url = urlparse(self.path)
        query = parse_qs(url.query)
        path = url.path
        if path == "/api/meta":
            self._send_json(200, _meta_document(state))
        elif path == "/api/rules":
            self._send_json(200, hierarchy_document(state.trie))
        elif path == "/api/hierarchy":
            depth = _parse_depth(query, state.default_depth)
            prefix = _parse_prefix(query)
            trie = subtrie(state.trie, prefix) if prefix else state.trie
            self._send_json(200, layout_document(layout(trie, depth)))
        elif _TREE_ROUTE.match(path):
            tree_id = int(_TREE_ROUTE.match(path).group(1))
            doc = _tree_document(state, tree_id)
            if doc is None:
                self._error(404, f"tree {tree_id} is not in the loaded set")
            else:
                self._send_json(200, doc)
        elif path == "/api/favorites":
            records = curation.list_bookmarks(state.store)
            self._send_json(200, {"records": [r.to_document() for r in records]})
        elif path == "/api/export":
            if len(state.store) == 0:
                self._error(409, "no bookmarked trees to export")
                return
            cfile = curation.curation_file(state.store)
            self._send(
                200,
                curation.curation_bytes(cfile),
                "application/json; charset=utf-8",
                {"Content-Disposition": "attachment; filename=curated-trees.json"},
            )
        else:
            self._serve_static(path)

    def _route_post(self):
        state = self.state
        url = urlparse(self.path)
        if url.path == "/api/filter":
            query = parse_qs(url.query)
            body = self._read_body()
            spec = spec_from_wire(body)
            depth = _parse_depth(query, state.default_depth)
            kept = apply_filter(state.rset, spec)
            doc = layout_document(layout(restrict(state.trie, kept), depth))
            self._send_json(200, {"ids": sorted(kept), "layout": doc})
        elif url.path == "/api/favorites":
            body = self._read_body()
            if "tree_id" not in body or not isinstance(body["tree_id"], int):
                raise ValidationError("favorites body needs an integer 'tree_id'")
            comment = body.get("comment", "")
            if not isinstance(comment, str):
                raise ValidationError("'comment' must be a string")
            record = curation.bookmark(state.store, body["tree_id"], comment)
            self._send_json(201, record.to_document())
        else:
            self._error(404, f"no such endpoint: POST {url.path}")

    def _route_delete(self):
        match = _FAVORITE_ROUTE.match(urlparse(self.path).path)
        if not match:
            self._error(404, f"no such endpoint: DELETE {self.path}")
            return
        curation.unbookmark(self.state.store, int(match.group(1)))
        self._send(204, b"", "application/json; charset=utf-8")

    def _serve_static(self, path: str):
        root = self.state.static_dir
        if root is None:
            self._error(404, f"no such endpoint: GET {path}")
            return
        relative = path.lstrip("/") or "index.html"
        target = (root / relative).resolve()
        if root not in target.parents and target != root:
            self._error(404, "not found")
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._error(404, f"not found: {path}")
            return
        content_type = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self._send(200, target.read_bytes(), content_type)


def make_server(state: AppState, host: str = "127.0.0.1", port: int = 0) -> ThreadingHTTPServer:
    """Bind a threading HTTP server; port 0 picks an ephemeral port."""
    handler = type("BoundHandler", (_Handler,), {"state": state})
    return ThreadingHTTPServer((host, port), handler)


def serve(config: ServiceConfig):
    """Run the service until interrupted."""
    state = build_state(config)
    server = make_server(state, host="0.0.0.0", port=config.port)
    try:
        server.serve_forever()
    finally:
        server.server_close()
