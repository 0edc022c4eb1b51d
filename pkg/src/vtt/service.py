"""Read-only HTTP facade over a compiled registry.

A hand-rolled WSGI app: every response is a pure function of (registry,
request), so identical requests get identical bodies.  The registry is an
immutable snapshot held by a single attribute; reload swaps in a freshly
imported snapshot atomically (attribute rebind), and SIGHUP triggers that
swap when serving from a file.
"""

from __future__ import annotations

import json
import mimetypes
import signal
import sys
from pathlib import Path
from socketserver import ThreadingMixIn
from typing import Callable, Iterable, Optional
from urllib.parse import parse_qs
from wsgiref.simple_server import WSGIRequestHandler, WSGIServer, make_server

from . import semantics
from .compose import is_irregular
from .dsl import print_glyph_literal
from .model import (
    Glyph,
    NotationError,
    Registry,
    canonical_form,
    canonical_id,
    canonical_key,
    glyph_literals,
    rule_source_matches,
    validate_glyph,
)
from .render import import_registry, render_glyph_svg

__all__ = ["RegistryService", "serve", "COMPOSE_BATCH_LIMIT", "DEFAULT_SIZE"]

COMPOSE_BATCH_LIMIT = 64
DEFAULT_SIZE = 100.0

_JSON = "application/json; charset=utf-8"
_SVG = "image/svg+xml; charset=utf-8"


def _json_bytes(payload) -> bytes:
    return (json.dumps(payload, sort_keys=True) + "\n").encode("utf-8")


class RegistryService:
    """WSGI application serving one registry snapshot at a time."""

    def __init__(self, registry: Registry,
                 source_path: Optional[str] = None,
                 ui_dir: Optional[str] = None):
        self.registry = registry
        self.source_path = source_path
        self.ui_dir = ui_dir

    # -- snapshot management ------------------------------------------------

    def swap(self, registry: Registry) -> None:
        """Atomically publish a new snapshot (single attribute rebind)."""
        self.registry = registry

    def reload(self) -> bool:
        """Re-import the source document and swap; keep the old snapshot on
        any failure."""
        if self.source_path is None:
            return False
        try:
            with open(self.source_path, "r", encoding="utf-8") as fh:
                fresh = import_registry(fh.read())
        except (OSError, NotationError) as err:
            print(f"reload failed, keeping previous registry: {err}",
                  file=sys.stderr)
            return False
        self.swap(fresh)
        return True

    # -- WSGI ----------------------------------------------------------------

    def __call__(self, environ, start_response) -> Iterable[bytes]:
        registry = self.registry  # one snapshot for the whole request
        method = environ.get("REQUEST_METHOD", "GET")
        path = environ.get("PATH_INFO", "/")
        query = parse_qs(environ.get("QUERY_STRING", ""))
        try:
            length = int(environ.get("CONTENT_LENGTH") or 0)
        except ValueError:
            length = 0
        body = environ["wsgi.input"].read(length) if length else b""

        static = self._static_response(method, path)
        if static is not None:
            status, content_type, payload = static
        else:
            status, content_type, payload = handle_request(
                registry, method, path, query, body
            )
        headers = [
            ("Content-Type", content_type),
            ("Content-Length", str(len(payload))),
            ("Access-Control-Allow-Origin", "*"),
            ("Access-Control-Allow-Methods", "GET, POST, OPTIONS"),
            ("Access-Control-Allow-Headers", "Content-Type"),
        ]
        start_response(f"{status} {_REASONS.get(status, 'OK')}", headers)
        return [payload]

    def _static_response(self, method: str,
                         path: str) -> Optional[tuple[int, str, bytes]]:
        """Serve composer UI assets when a UI directory is configured."""
        if self.ui_dir is None or method != "GET":
            return None
        if path.startswith(("/radicals", "/concepts", "/glyphs",
                            "/compose", "/health")):
            return None
        root = Path(self.ui_dir).resolve()
        name = path.lstrip("/") or "index.html"
        target = (root / name).resolve()
        if root not in target.parents and target != root:
            return _error(404, "not found")
        if not target.is_file():
            if path == "/":
                return _error(404, "no index.html in the UI directory")
            return None
        ctype = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        return 200, ctype, target.read_bytes()


_REASONS = {
    200: "OK",
    204: "No Content",
    400: "Bad Request",
    404: "Not Found",
    405: "Method Not Allowed",
    422: "Unprocessable Entity",
}


def _error(status: int, message: str, **extra) -> tuple[int, str, bytes]:
    return status, _JSON, _json_bytes({"error": {"message": message, **extra}})


def handle_request(registry: Registry, method: str, path: str,
                   query: dict, body: bytes) -> tuple[int, str, bytes]:
    """Pure request dispatcher: (registry, request) -> response triple."""
    if method == "OPTIONS":
        return 204, _JSON, b""
    if path == "/health":
        return _get_only(method) or _health(registry)
    if path == "/radicals":
        return _get_only(method) or _radicals(registry)
    if path.startswith("/radicals/"):
        return _get_only(method) or _radical_detail(registry, path[len("/radicals/"):])
    if path == "/concepts":
        return _get_only(method) or _concepts(registry, query)
    if path.startswith("/glyphs/") and path.endswith(".svg"):
        cid = path[len("/glyphs/"):-len(".svg")]
        return _get_only(method) or _glyph_svg(registry, cid, query)
    if path == "/compose":
        if method != "POST":
            return _error(405, "POST only")
        return _compose(registry, body)
    return _error(404, f"no route for {path}")


def _get_only(method: str) -> Optional[tuple[int, str, bytes]]:
    if method != "GET":
        return _error(405, "GET only")
    return None


def _health(registry: Registry) -> tuple[int, str, bytes]:
    return 200, _JSON, _json_bytes({
        "status": "ok",
        "radicals": len(registry.radicals),
        "concepts": len(registry.concepts),
        "bindings": len(registry.bindings),
    })


def _radical_summary(registry: Registry, radical) -> dict:
    return {
        "id": radical.id,
        "name": radical.name,
        "family": radical.family.value,
        "regions": len(radical.schema.regions),
        "catalog_key": radical.catalog_key,
    }


def _radicals(registry: Registry) -> tuple[int, str, bytes]:
    return 200, _JSON, _json_bytes({
        "radicals": [_radical_summary(registry, r) for r in registry.radicals],
    })


def _radical_detail(registry: Registry, rid: str) -> tuple[int, str, bytes]:
    radical = registry.find("radical", rid)
    if radical is None:
        return _error(404, f"no radical {rid!r}")
    regions = []
    for region in radical.schema.regions:
        constraint = registry.constraint(region.constraint)
        regions.append({
            "name": region.name,
            "constraint": constraint.id,
            "constraint_name": constraint.name,
            "negatable": constraint.negatable,
            "anchor": list(region.anchor),
            "extent": list(region.extent),
            "expandable": region.expandable,
        })
    rules = []
    for rule in registry.rules:
        probe = Glyph(radical=radical.id)
        if not rule_source_matches(rule, probe, registry):
            continue
        rules.append({
            "id": rule.id,
            "name": rule.name,
            "requires": list(rule.requires),
            "adds": [[l.constraint, l.polarity.sign]
                     for l in rule.literals_added],
            "concept": rule.target_concept,
        })
    return 200, _JSON, _json_bytes({
        **_radical_summary(registry, radical),
        "derives_from": radical.derives_from,
        "baseline": [[l.constraint, l.polarity.sign] for l in radical.baseline],
        "limit_file": radical.limit_file,
        "region_schema": regions,
        "rules": rules,
        "marks": [
            {"id": m.id, "polarity": m.polarity.value, "printable": m.printable}
            for m in registry.marks
        ],
    })


def _concepts(registry: Registry, query: dict) -> tuple[int, str, bytes]:
    needle = (query.get("query", [""])[0] or "").casefold()
    out = []
    for concept in registry.concepts:
        haystack = " ".join((concept.id, concept.name, *concept.aliases)).casefold()
        if needle and needle not in haystack:
            continue
        out.append({
            "id": concept.id,
            "name": concept.name,
            "aliases": list(concept.aliases),
            "area": concept.area,
            "crypto": concept.cryptomorphism_group,
        })
    return 200, _JSON, _json_bytes({"concepts": out})


def _parse_size(query: dict) -> float:
    raw = query.get("size", [None])[0]
    if raw is None:
        return DEFAULT_SIZE
    return float(raw)


def _glyph_svg(registry: Registry, cid: str, query: dict) -> tuple[int, str, bytes]:
    try:
        size = _parse_size(query)
    except ValueError:
        return _error(422, "size must be a number")
    for binding in registry.bindings:
        if canonical_id(binding.glyph, registry) == cid:
            svg = render_glyph_svg(binding.glyph, registry, size)
            return 200, _SVG, svg.encode("utf-8")
    return _error(404, f"no bound glyph with id {cid!r}")


def _glyph_from_spec(spec, where: str) -> Glyph:
    if not isinstance(spec, dict):
        raise NotationError(f"{where}: expected an object")
    radical = spec.get("radical")
    if not isinstance(radical, str):
        raise NotationError(f"{where}: missing radical id")
    assignment = spec.get("assignment") or {}
    if not isinstance(assignment, dict):
        raise NotationError(f"{where}: assignment must be an object")
    marks = tuple(sorted(
        (region, mark) for region, mark in assignment.items()
        if mark is not None
    ))
    rules = tuple(spec.get("rules") or ())
    embeds_spec = spec.get("embeds") or {}
    if not isinstance(embeds_spec, dict):
        raise NotationError(f"{where}: embeds must be an object")
    embeds = tuple(sorted(
        (region, _glyph_from_spec(sub, f"{where}.embeds.{region}"))
        for region, sub in embeds_spec.items()
    ))
    scales_spec = spec.get("region_scales") or {}
    scales = tuple(sorted(
        (region, float(s)) for region, s in scales_spec.items()
    ))
    return Glyph(
        radical=radical,
        marks=marks,
        derivations=rules,
        embeds=embeds,
        abbreviated=bool(spec.get("abbreviated", False)),
        region_scales=scales,
    )


def _compose_one(registry: Registry, spec, where: str) -> dict:
    g = _glyph_from_spec(spec, where)
    validate_glyph(g, registry)
    size = float(spec.get("size", DEFAULT_SIZE))
    svg = render_glyph_svg(g, registry, size)
    conjunction = glyph_literals(g, registry)
    concept = semantics.lookup_concept(g, registry)
    return {
        "svg": svg,
        "constraints": [[l.constraint, l.polarity.sign] for l in conjunction],
        "concept": ({"id": concept.id, "name": concept.name}
                    if concept is not None else None),
        "canonical_id": canonical_id(g, registry),
        "canonical_key": canonical_key(g, registry),
        "literal": print_glyph_literal(canonical_form(g, registry)),
        "irregular": is_irregular(g, registry),
    }


def _compose(registry: Registry, body: bytes) -> tuple[int, str, bytes]:
    try:
        payload = json.loads(body.decode("utf-8") or "{}")
    except (UnicodeDecodeError, json.JSONDecodeError) as err:
        return _error(400, f"request body is not valid JSON: {err}")
    try:
        if isinstance(payload, dict) and "glyphs" in payload:
            glyphs = payload["glyphs"]
            if not isinstance(glyphs, list):
                return _error(422, "glyphs must be a list")
            if len(glyphs) > COMPOSE_BATCH_LIMIT:
                return _error(
                    422,
                    f"batch of {len(glyphs)} exceeds the limit of "
                    f"{COMPOSE_BATCH_LIMIT} glyphs per request",
                )
            results = [
                _compose_one(registry, spec, f"glyphs[{i}]")
                for i, spec in enumerate(glyphs)
            ]
            return 200, _JSON, _json_bytes({"results": results})
        return 200, _JSON, _json_bytes(_compose_one(registry, payload, "glyph"))
    except NotationError as err:
        return _error(422, str(err))


class _ThreadingWSGIServer(ThreadingMixIn, WSGIServer):
    daemon_threads = True


class _QuietHandler(WSGIRequestHandler):
    def log_message(self, format, *args):  # noqa: A002 - stdlib signature
        pass


def serve(registry_path: str, bind: str = "127.0.0.1:8437",
          ui_dir: Optional[str] = None,
          ready: Optional[Callable[[str], None]] = None) -> None:
    """Serve a registry interchange file until interrupted.

    SIGHUP re-imports the file and atomically swaps the snapshot.
    """
    with open(registry_path, "r", encoding="utf-8") as fh:
        registry = import_registry(fh.read())
    service = RegistryService(registry, source_path=registry_path,
                              ui_dir=ui_dir)

    host, _, port_text = bind.rpartition(":")
    if not host or not port_text:
        raise ValueError(f"bind address must be host:port, got {bind!r}")
    port = int(port_text)

    if hasattr(signal, "SIGHUP"):
        signal.signal(signal.SIGHUP, lambda *_: service.reload())

    server = make_server(host, port, service,
                         server_class=_ThreadingWSGIServer,
                         handler_class=_QuietHandler)
    address = f"http://{server.server_address[0]}:{server.server_address[1]}"
    print(f"serving {registry_path} at {address}", flush=True)
    if ready is not None:
        ready(address)
    try:
        server.serve_forever()
    finally:
        server.server_close()
