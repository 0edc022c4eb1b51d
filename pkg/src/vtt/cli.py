"""Command-line entry points: compile, validate, render, lookup, enumerate,
emit-tex, serve.

Exit status 0 on success, 1 on compile/validate/render failures, 2 on usage
errors (argparse's convention).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import dsl, render, semantics, service, validate
from .model import Glyph, NotationError, Registry, canonical_id

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vtt",
        description="Compile, validate, render, and serve absence-loaded "
                    "glyph systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a definition source to an "
                                       "interchange document")
    p.add_argument("source", help="definition source file (.vtt)")
    p.add_argument("-o", "--output", help="output path (default: stdout)")

    p = sub.add_parser("validate", help="lint a compiled registry")
    p.add_argument("registry", help="interchange document (.json)")

    p = sub.add_parser("render", help="render glyphs to SVG files")
    p.add_argument("registry")
    p.add_argument("--glyph", help="concept id, radical id, or glyph literal "
                                   "(default: every bound glyph)")
    p.add_argument("--size", type=float, default=service.DEFAULT_SIZE)
    p.add_argument("-o", "--output", required=True, help="output directory")

    p = sub.add_parser("lookup", help="resolve a glyph literal to a concept")
    p.add_argument("registry")
    p.add_argument("--glyph-literal", required=True)

    p = sub.add_parser("enumerate", help="enumerate a radical's glyph family")
    p.add_argument("registry")
    p.add_argument("--radical", required=True)
    p.add_argument("--limit", type=int, default=20,
                   help="print at most this many glyphs (default 20)")

    p = sub.add_parser("emit-tex", help="emit the TeX macro package and "
                                        "artwork for bound glyphs")
    p.add_argument("registry")
    p.add_argument("-o", "--output", required=True, help="output directory")

    p = sub.add_parser("serve", help="serve a registry over HTTP (read-only)")
    p.add_argument("registry")
    p.add_argument("--bind", default="127.0.0.1:8437")
    p.add_argument("--ui", help="directory of composer UI assets to serve")

    return parser


def _load_registry(path: str) -> Registry:
    with open(path, "r", encoding="utf-8") as fh:
        return render.import_registry(fh.read())


def _resolve_glyph(registry: Registry, spec: str) -> Glyph:
    """A concept id (its precedence glyph), a radical id, or a literal."""
    if "(" in spec:
        g = dsl.parse_glyph_literal(spec)
        from .model import validate_glyph
        validate_glyph(g, registry)
        return g
    if registry.find("concept", spec) is not None:
        candidates = [b for b in registry.bindings if b.concept == spec]
        if candidates:
            chosen = next((b for b in candidates if b.precedence), candidates[0])
            return chosen.glyph
    if registry.find("radical", spec) is not None:
        return Glyph(radical=spec)
    raise NotationError(f"nothing renderable named {spec!r}")


def _cmd_compile(args) -> int:
    with open(args.source, "r", encoding="utf-8") as fh:
        source = dsl.DefinitionSource(text=fh.read(), path=args.source)
    document = dsl.parse(source)
    registry = dsl.compile_document(document)
    text = render.export_json(registry)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_validate(args) -> int:
    # Lenient import: documents carrying violations still get linted, so the
    # violation surfaces as an error finding instead of an import failure.
    with open(args.registry, "r", encoding="utf-8") as fh:
        registry = render.import_registry(fh.read(), lenient=True)
    report = validate.lint(registry)
    sys.stdout.write(validate.report_text(report))
    return 0 if report.ok else 1


def _cmd_render(args) -> int:
    registry = _load_registry(args.registry)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    if args.glyph:
        glyphs = [_resolve_glyph(registry, args.glyph)]
    else:
        glyphs = [b.glyph for b in registry.bindings]
    written = []
    for g in sorted(glyphs, key=lambda g: canonical_id(g, registry)):
        cid = canonical_id(g, registry)
        svg = render.render_glyph_svg(g, registry, args.size)
        path = out / f"{cid}.svg"
        path.write_text(svg, encoding="utf-8")
        written.append(path)
    for path in written:
        print(path)
    return 0


def _cmd_lookup(args) -> int:
    registry = _load_registry(args.registry)
    g = dsl.parse_glyph_literal(args.glyph_literal)
    concept = semantics.lookup_concept(g, registry)
    conjunction = semantics.constraint_of(g, registry)
    print(concept.name if concept is not None else "unbound")
    print(f"constraints: {conjunction}")
    return 0


def _cmd_enumerate(args) -> int:
    registry = _load_registry(args.registry)
    family = semantics.enumerate_family(args.radical, list(registry.marks),
                                        registry)
    print(f"count {family.count}")
    for i, g in enumerate(family):
        if i >= args.limit:
            print("...")
            break
        print(dsl.print_glyph_literal(g))
    return 0


def _cmd_emit_tex(args) -> int:
    registry = _load_registry(args.registry)
    bundle = render.emit_tex(registry)
    out = Path(args.output)
    artwork = out / "vtt-artwork"
    artwork.mkdir(parents=True, exist_ok=True)
    (out / "vttglyphs.sty").write_text(bundle.sty, encoding="utf-8")
    (out / "vtt-index.txt").write_text(bundle.index, encoding="utf-8")
    for _, cid, _concept in bundle.entries:
        g = next(b.glyph for b in registry.bindings
                 if canonical_id(b.glyph, registry) == cid)
        svg = render.render_glyph_svg(g, registry, service.DEFAULT_SIZE)
        (artwork / f"{cid}.svg").write_text(svg, encoding="utf-8")
    print(out / "vttglyphs.sty")
    print(out / "vtt-index.txt")
    return 0


def _cmd_serve(args) -> int:
    service.serve(args.registry, bind=args.bind, ui_dir=args.ui)
    return 0


_COMMANDS = {
    "compile": _cmd_compile,
    "validate": _cmd_validate,
    "render": _cmd_render,
    "lookup": _cmd_lookup,
    "enumerate": _cmd_enumerate,
    "emit-tex": _cmd_emit_tex,
    "serve": _cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except NotationError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
