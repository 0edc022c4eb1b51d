"""Deterministic vector layout, SVG emission, TeX macros, interchange files.

Layout happens in unit-box coordinates and is scaled once at the end, with
every coordinate quantized to three decimals after scaling, so equal inputs
produce byte-identical documents on every platform and run.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from . import dsl
from .compose import effective_strokes
from .model import (
    Binding,
    Concept,
    DerivationRule,
    Glyph,
    Literal,
    LiteralConjunction,
    Mark,
    NotationError,
    Polarity,
    PropertyConstraint,
    Radical,
    Region,
    RegionSchema,
    Registry,
    Stroke,
    StrokeEdit,
    STROKE_WIDTHS,
    WidthClass,
    canonical_form,
    canonical_id,
    canonical_key,
    new_registry,
    validate_glyph,
)

__all__ = [
    "Geometry",
    "PlacedStroke",
    "PlacedMark",
    "BoxFrame",
    "layout",
    "to_svg",
    "render_expression",
    "render_glyph_svg",
    "emit_tex",
    "TexBundle",
    "TexNameCollisionError",
    "export",
    "export_json",
    "import_registry",
    "SchemaViolationError",
    "VersionMismatchError",
    "INTERCHANGE_VERSION",
]

INTERCHANGE_VERSION = 1

SVG_NS = "http://www.w3.org/2000/svg"

# Embedded sub-glyphs are inset slightly inside their region frame.
EMBED_INSET = 0.92
MARK_RADIUS_FACTOR = 0.3


class TexNameCollisionError(NotationError):
    pass


class SchemaViolationError(NotationError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class VersionMismatchError(NotationError):
    pass


# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlacedStroke:
    kind: str  # line | dot | circle | arc
    points: tuple[tuple[float, float], ...]
    width: float
    radius: float = 0.0
    start_angle: float = 0.0
    end_angle: float = 0.0
    group: str = ""


@dataclass(frozen=True)
class PlacedMark:
    shape: str
    center: tuple[float, float]
    radius: float
    region: str = ""


@dataclass(frozen=True)
class BoxFrame:
    region: str
    origin: tuple[float, float]
    size: tuple[float, float]
    strokes: tuple[PlacedStroke, ...] = ()
    marks: tuple[PlacedMark, ...] = ()
    boxes: tuple["BoxFrame", ...] = ()


@dataclass(frozen=True)
class Geometry:
    width: float
    height: float
    strokes: tuple[PlacedStroke, ...] = ()
    marks: tuple[PlacedMark, ...] = ()
    boxes: tuple[BoxFrame, ...] = ()


def _q(value: float) -> float:
    out = round(value, 3)
    return 0.0 if out == 0 else out


def _scale_stroke(s: PlacedStroke, k: float, dx: float, dy: float,
                  quantize: bool) -> PlacedStroke:
    pts = tuple(
        ((_q(px * k + dx), _q(py * k + dy)) if quantize
         else (px * k + dx, py * k + dy))
        for px, py in s.points
    )
    radius = _q(s.radius * k) if quantize else s.radius * k
    width = _q(s.width * k) if quantize else s.width * k
    return PlacedStroke(kind=s.kind, points=pts, width=width, radius=radius,
                        start_angle=s.start_angle, end_angle=s.end_angle,
                        group=s.group)


def _scale_mark(m: PlacedMark, k: float, dx: float, dy: float,
                quantize: bool) -> PlacedMark:
    cx, cy = m.center[0] * k + dx, m.center[1] * k + dy
    r = m.radius * k
    if quantize:
        cx, cy, r = _q(cx), _q(cy), _q(r)
    return PlacedMark(shape=m.shape, center=(cx, cy), radius=r, region=m.region)


def _scale_box(b: BoxFrame, k: float, dx: float, dy: float,
               quantize: bool) -> BoxFrame:
    ox, oy = b.origin[0] * k + dx, b.origin[1] * k + dy
    w, h = b.size[0] * k, b.size[1] * k
    if quantize:
        ox, oy, w, h = _q(ox), _q(oy), _q(w), _q(h)
    return BoxFrame(
        region=b.region, origin=(ox, oy), size=(w, h),
        strokes=tuple(_scale_stroke(s, k, dx, dy, quantize) for s in b.strokes),
        marks=tuple(_scale_mark(m, k, dx, dy, quantize) for m in b.marks),
        boxes=tuple(_scale_box(sub, k, dx, dy, quantize) for sub in b.boxes),
    )


@dataclass(frozen=True)
class _UnitCell:
    """Unquantized unit-box geometry, composed before the final scale."""

    strokes: tuple[PlacedStroke, ...] = ()
    marks: tuple[PlacedMark, ...] = ()
    boxes: tuple[BoxFrame, ...] = ()

    def transformed(self, k: float, dx: float, dy: float) -> "_UnitCell":
        return _UnitCell(
            strokes=tuple(_scale_stroke(s, k, dx, dy, False) for s in self.strokes),
            marks=tuple(_scale_mark(m, k, dx, dy, False) for m in self.marks),
            boxes=tuple(_scale_box(b, k, dx, dy, False) for b in self.boxes),
        )

    def merged(self, other: "_UnitCell") -> "_UnitCell":
        return _UnitCell(
            strokes=self.strokes + other.strokes,
            marks=self.marks + other.marks,
            boxes=self.boxes + other.boxes,
        )


def _unit_strokes(g: Glyph, registry: Registry) -> tuple[PlacedStroke, ...]:
    strokes = effective_strokes(g, registry, include_suppressed=False)
    placed = []
    for s in strokes:
        placed.append(PlacedStroke(
            kind=s.kind, points=s.points, width=STROKE_WIDTHS[s.width],
            radius=s.radius, start_angle=s.start_angle,
            end_angle=s.end_angle, group=s.group,
        ))
    return tuple(placed)


def _layout_unit(g: Glyph, registry: Registry) -> _UnitCell:
    radical = registry.radical(g.radical)
    cell = _UnitCell(strokes=_unit_strokes(g, registry))

    marks = []
    for region_name, mark_id in g.marks:
        if mark_id is None:
            continue
        region = radical.schema.region(region_name)
        mark = registry.mark(mark_id)
        scale = g.scale_of(region_name)
        w, h = region.extent[0] * scale, region.extent[1] * scale
        marks.append(PlacedMark(
            shape=mark.printable, center=region.anchor,
            radius=MARK_RADIUS_FACTOR * min(w, h), region=region_name,
        ))
    cell = cell.merged(_UnitCell(marks=tuple(marks)))

    boxes = []
    for region_name, sub in g.embeds:
        region = radical.schema.region(region_name)
        scale = g.scale_of(region_name)
        x0, y0, x1, y1 = region.rect(scale)
        side = min(x1 - x0, y1 - y0) * EMBED_INSET
        ox = (x0 + x1) / 2 - side / 2
        oy = (y0 + y1) / 2 - side / 2
        sub_cell = _layout_unit(sub, registry).transformed(side, ox, oy)
        boxes.append(BoxFrame(
            region=region_name, origin=(ox, oy), size=(side, side),
            strokes=sub_cell.strokes, marks=sub_cell.marks,
            boxes=sub_cell.boxes,
        ))
    return cell.merged(_UnitCell(boxes=tuple(boxes)))


def _finalize(cell: _UnitCell, width: float, height: float,
              size: float) -> Geometry:
    return Geometry(
        width=_q(width * size),
        height=_q(height * size),
        strokes=tuple(_scale_stroke(s, size, 0, 0, True) for s in cell.strokes),
        marks=tuple(_scale_mark(m, size, 0, 0, True) for m in cell.marks),
        boxes=tuple(_scale_box(b, size, 0, 0, True) for b in cell.boxes),
    )


def layout(g: Glyph, registry: Registry, size: float = 100.0) -> Geometry:
    """Place a glyph's strokes, marks, and embedded frames deterministically.

    Marks are centered in their regions; embedded sub-glyphs are scaled into
    a square inset inside their region frame; an abbreviated glyph omits its
    radical's limit-file stroke group.
    """
    if size <= 0:
        raise NotationError(f"size must be positive, got {size}")
    validate_glyph(g, registry)
    normalized = canonical_form(g, registry, keep_visual=True)
    return _finalize(_layout_unit(normalized, registry), 1.0, 1.0, size)


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------

def resolve_glyph_ref(ref: dsl.GlyphRef, registry: Registry) -> Glyph:
    """Resolve a reference: inline literal, concept id, or radical id."""
    if ref.literal is not None:
        validate_glyph(ref.literal, registry)
        return ref.literal
    name = ref.name or ""
    if registry.find("concept", name) is not None:
        candidates = [b for b in registry.bindings if b.concept == name]
        if candidates:
            chosen = next((b for b in candidates if b.precedence), candidates[0])
            return chosen.glyph
    if registry.find("radical", name) is not None:
        return Glyph(radical=name)
    raise NotationError(f"unresolved glyph reference {name!r}")


def _arrow_cell(node: dsl.Arrow, registry: Registry) -> tuple[_UnitCell, float]:
    """An arrow occupies a 2 x 1 unit cell: objects above, morphisms below."""
    shaft_y = 0.52
    cell = _UnitCell(strokes=(
        PlacedStroke(kind="line", points=((0.15, shaft_y), (1.85, shaft_y)),
                     width=STROKE_WIDTHS[WidthClass.REGULAR], group="arrow"),
        PlacedStroke(kind="line", points=((1.73, shaft_y - 0.07), (1.85, shaft_y)),
                     width=STROKE_WIDTHS[WidthClass.REGULAR], group="arrow"),
        PlacedStroke(kind="line", points=((1.73, shaft_y + 0.07), (1.85, shaft_y)),
                     width=STROKE_WIDTHS[WidthClass.REGULAR], group="arrow"),
    ))
    objects = _layout_unit(resolve_glyph_ref(node.objects, registry), registry)
    cell = cell.merged(objects.transformed(0.42, 0.79, 0.04))
    if node.morphisms is not None:
        morphisms = _layout_unit(resolve_glyph_ref(node.morphisms, registry),
                                 registry)
        cell = cell.merged(morphisms.transformed(0.38, 0.81, 0.58))
    return cell, 2.0


_REL_SYM_STROKES: dict[str, tuple[tuple[tuple[float, float], tuple[float, float]], ...]] = {
    "=": (((0.3, 0.44), (0.7, 0.44)), ((0.3, 0.58), (0.7, 0.58))),
    "<": (((0.68, 0.36), (0.32, 0.51)), ((0.32, 0.51), (0.68, 0.66))),
    ">": (((0.32, 0.36), (0.68, 0.51)), ((0.68, 0.51), (0.32, 0.66))),
    "<=": (((0.68, 0.32), (0.32, 0.45)), ((0.32, 0.45), (0.68, 0.58)),
           ((0.32, 0.66), (0.68, 0.66))),
    ">=": (((0.32, 0.32), (0.68, 0.45)), ((0.68, 0.45), (0.32, 0.58)),
           ((0.32, 0.66), (0.68, 0.66))),
}


def _wave(y: float) -> tuple[tuple[float, float], ...]:
    return ((0.3, y), (0.4, y - 0.05), (0.6, y + 0.05), (0.7, y))


def _symbol_cell(symbol: str) -> _UnitCell:
    width = STROKE_WIDTHS[WidthClass.REGULAR]
    if symbol == "~":
        return _UnitCell(strokes=(
            PlacedStroke(kind="line", points=_wave(0.51), width=width,
                         group="relsym"),
        ))
    if symbol == "~~":
        return _UnitCell(strokes=(
            PlacedStroke(kind="line", points=_wave(0.44), width=width,
                         group="relsym"),
            PlacedStroke(kind="line", points=_wave(0.58), width=width,
                         group="relsym"),
        ))
    segments = _REL_SYM_STROKES.get(symbol)
    if segments is None:
        raise NotationError(f"no schematic form for relation symbol {symbol!r}")
    return _UnitCell(strokes=tuple(
        PlacedStroke(kind="line", points=seg, width=width, group="relsym")
        for seg in segments
    ))


def _side_cell(node, registry: Registry) -> tuple[_UnitCell, float]:
    if isinstance(node, dsl.Arrow):
        return _arrow_cell(node, registry)
    if isinstance(node, dsl.Standalone):
        return _layout_unit(resolve_glyph_ref(node.ref, registry), registry), 1.0
    if isinstance(node, dsl.Relation):
        left = _layout_unit(resolve_glyph_ref(node.left, registry), registry)
        right = _layout_unit(resolve_glyph_ref(node.right, registry), registry)
        cell = left.transformed(0.9, 0.05, 0.05)
        cell = cell.merged(_symbol_cell(node.symbol).transformed(1.0, 1.0, 0.0))
        cell = cell.merged(right.transformed(0.9, 2.05, 0.05))
        if node.annotation is not None:
            ann = _layout_unit(resolve_glyph_ref(node.annotation, registry),
                               registry)
            cell = cell.merged(ann.transformed(0.34, 1.33, 0.62))
        return cell, 3.0
    raise NotationError(f"cannot lay out expression node {node!r}")


def render_expression(node, registry: Registry, size: float = 100.0) -> Geometry:
    """Lay out an expression: arrows, relations, dualities, standalones."""
    if isinstance(node, dsl.Duality):
        left, lw = _side_cell(node.left, registry)
        right, rw = _side_cell(node.right, registry)
        cell = left.merged(_symbol_cell("~~").transformed(1.0, lw, 0.0))
        cell = cell.merged(right.transformed(1.0, lw + 1.0, 0.0))
        return _finalize(cell, lw + 1.0 + rw, 1.0, size)
    cell, width = _side_cell(node, registry)
    return _finalize(cell, width, 1.0, size)


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

def _fmt(value: float) -> str:
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _svg_stroke(s: PlacedStroke) -> str:
    w = _fmt(s.width)
    if s.kind == "line":
        d = f"M {_fmt(s.points[0][0])} {_fmt(s.points[0][1])}"
        for px, py in s.points[1:]:
            d += f" L {_fmt(px)} {_fmt(py)}"
        return (f'<path d="{d}" fill="none" stroke="#000" stroke-width="{w}"'
                f' stroke-linecap="round"/>')
    cx, cy = s.points[0]
    if s.kind == "dot":
        return (f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(s.radius)}"'
                f' fill="#000"/>')
    if s.kind == "circle":
        return (f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(s.radius)}"'
                f' fill="none" stroke="#000" stroke-width="{w}"/>')
    # arc: endpoints from the quantized center/radius/angles
    a0 = math.radians(s.start_angle)
    a1 = math.radians(s.end_angle)
    x0, y0 = _q(cx + s.radius * math.cos(a0)), _q(cy + s.radius * math.sin(a0))
    x1, y1 = _q(cx + s.radius * math.cos(a1)), _q(cy + s.radius * math.sin(a1))
    sweep = (s.end_angle - s.start_angle) % 360
    large = 1 if sweep > 180 else 0
    r = _fmt(s.radius)
    return (f'<path d="M {_fmt(x0)} {_fmt(y0)} A {r} {r} 0 {large} 1 '
            f'{_fmt(x1)} {_fmt(y1)}" fill="none" stroke="#000"'
            f' stroke-width="{w}" stroke-linecap="round"/>')


def _svg_mark(m: PlacedMark) -> str:
    cx, cy, r = _fmt(m.center[0]), _fmt(m.center[1]), _fmt(m.radius)
    if m.shape == "filled-dot":
        return f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="#000"/>'
    if m.shape == "open-circle":
        return (f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="none"'
                f' stroke="#000" stroke-width="{_fmt(m.radius * 0.35)}"/>')
    if m.shape in ("filled-square", "open-square"):
        x = _fmt(m.center[0] - m.radius)
        y = _fmt(m.center[1] - m.radius)
        side = _fmt(m.radius * 2)
        if m.shape == "filled-square":
            return f'<rect x="{x}" y="{y}" width="{side}" height="{side}" fill="#000"/>'
        return (f'<rect x="{x}" y="{y}" width="{side}" height="{side}"'
                f' fill="none" stroke="#000" stroke-width="{_fmt(m.radius * 0.35)}"/>')
    # cross-mark
    w = _fmt(m.radius * 0.35)
    x0, x1 = _fmt(m.center[0] - m.radius), _fmt(m.center[0] + m.radius)
    y0, y1 = _fmt(m.center[1] - m.radius), _fmt(m.center[1] + m.radius)
    return (f'<path d="M {x0} {y0} L {x1} {y1} M {x0} {y1} L {x1} {y0}"'
            f' fill="none" stroke="#000" stroke-width="{w}"/>')


def _svg_box(b: BoxFrame) -> list[str]:
    lines = [f'<g class="embed" data-region="{b.region}">']
    lines.extend(_svg_stroke(s) for s in b.strokes)
    lines.extend(_svg_mark(m) for m in b.marks)
    for sub in b.boxes:
        lines.extend(_svg_box(sub))
    lines.append("</g>")
    return lines


def to_svg(geometry: Geometry) -> str:
    """Standalone SVG text: fixed element and attribute order, 3-decimal
    coordinates, byte-identical across runs for equal geometry."""
    w, h = _fmt(geometry.width), _fmt(geometry.height)
    lines = [
        f'<svg xmlns="{SVG_NS}" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
    ]
    lines.extend(_svg_stroke(s) for s in geometry.strokes)
    lines.extend(_svg_mark(m) for m in geometry.marks)
    for box in geometry.boxes:
        lines.extend(_svg_box(box))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_glyph_svg(g: Glyph, registry: Registry, size: float = 100.0) -> str:
    return to_svg(layout(g, registry, size))


# ---------------------------------------------------------------------------
# TeX emission
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TexBundle:
    sty: str
    index: str
    entries: tuple[tuple[str, str, str], ...]  # (macro, canonical id, concept)


def _macro_name(cid: str) -> str:
    words = [w for w in re.split(r"[^A-Za-z]+", cid) if w]
    return "vtt" + "".join(w[:1].upper() + w[1:] for w in words)


def emit_tex(registry: Registry,
             selection: Optional[Sequence[Glyph]] = None) -> TexBundle:
    """One macro per glyph referencing its artwork, plus a concept index.

    Macro names keep only the letters of the canonical id (TeX command names
    cannot carry digits or punctuation); a post-sanitization collision is an
    error naming both source ids.
    """
    glyphs = ([b.glyph for b in registry.bindings]
              if selection is None else list(selection))
    entries = []
    by_macro: dict[str, str] = {}
    for g in glyphs:
        validate_glyph(g, registry)
        cid = canonical_id(g, registry)
        macro = _macro_name(cid)
        if macro in by_macro and by_macro[macro] != cid:
            raise TexNameCollisionError(
                f"glyph ids {by_macro[macro]!r} and {cid!r} both sanitize "
                f"to macro {macro!r}"
            )
        if macro in by_macro:
            continue
        by_macro[macro] = cid
        binding = registry.binding_for(canonical_key(g, registry))
        concept = ""
        if binding is not None:
            concept = registry.concept(binding.concept).name
        entries.append((macro, cid, concept))
    entries.sort(key=lambda e: e[1])

    sty_lines = [
        "% vttglyphs: absence-loaded glyph macros (generated, do not edit)",
        "\\NeedsTeXFormat{LaTeX2e}",
        "\\ProvidesPackage{vttglyphs}[2026/08/08 v0.1 vtt glyph macros]",
        "\\RequirePackage{graphicx}",
    ]
    for macro, cid, _ in entries:
        sty_lines.append(
            f"\\newcommand{{\\{macro}}}"
            f"{{\\includegraphics[height=1em]{{vtt-artwork/{cid}}}}}"
        )
    sty_lines.append("\\endinput")
    index_lines = [f"\\{macro}\t{cid}\t{concept}" for macro, cid, concept in entries]
    return TexBundle(
        sty="\n".join(sty_lines) + "\n",
        index="\n".join(index_lines) + ("\n" if index_lines else ""),
        entries=tuple(entries),
    )


# ---------------------------------------------------------------------------
# Interchange
# ---------------------------------------------------------------------------

def _glyph_doc(g: Glyph) -> dict:
    doc: dict = {"radical": g.radical}
    if g.marks:
        doc["marks"] = [[r, m] for r, m in g.marks]
    if g.derivations:
        doc["rules"] = list(g.derivations)
    if g.embeds:
        doc["embeds"] = [[r, _glyph_doc(sub)] for r, sub in g.embeds]
    if g.abbreviated:
        doc["abbreviated"] = True
    if g.region_scales:
        doc["region_scales"] = [[r, s] for r, s in g.region_scales]
    return doc


def _stroke_doc(s: Stroke) -> dict:
    return {
        "kind": s.kind,
        "group": s.group,
        "points": [[x, y] for x, y in s.points],
        "radius": s.radius,
        "start_angle": s.start_angle,
        "end_angle": s.end_angle,
        "width": s.width.value,
    }


def _edit_doc(e: StrokeEdit) -> dict:
    return {
        "kind": e.kind,
        "group": e.group,
        "strokes": [_stroke_doc(s) for s in e.strokes],
        "delta": list(e.delta),
        "center": list(e.center),
        "radius": e.radius,
    }


def export(registry: Registry) -> dict:
    """Structured interchange document; import(export(r)) == r."""
    return {
        "version": INTERCHANGE_VERSION,
        "constraints": [
            {"id": c.id, "name": c.name, "statement": c.statement,
             "negatable": c.negatable}
            for c in registry.constraints
        ],
        "marks": [
            {"id": m.id, "polarity": m.polarity.value, "printable": m.printable}
            for m in registry.marks
        ],
        "radicals": [
            {
                "id": r.id,
                "name": r.name,
                "family": r.family.value,
                "strokes": [_stroke_doc(s) for s in r.strokes],
                "regions": [
                    {"name": rg.name, "constraint": rg.constraint,
                     "anchor": list(rg.anchor), "extent": list(rg.extent),
                     "expandable": rg.expandable}
                    for rg in r.schema.regions
                ],
                "derives_from": r.derives_from,
                "baseline": [[l.constraint, l.polarity.sign] for l in r.baseline],
                "limit_file": r.limit_file,
                "catalog_key": r.catalog_key,
            }
            for r in registry.radicals
        ],
        "rules": [
            {
                "id": r.id,
                "name": r.name,
                "source": r.source,
                "edits": [_edit_doc(e) for e in r.stroke_edits],
                "adds": [[l.constraint, l.polarity.sign] for l in r.literals_added],
                "concept": r.target_concept,
                "requires": list(r.requires),
            }
            for r in registry.rules
        ],
        "concepts": [
            {"id": c.id, "name": c.name, "aliases": list(c.aliases),
             "area": c.area, "crypto": c.cryptomorphism_group}
            for c in registry.concepts
        ],
        "bindings": [
            {"glyph": _glyph_doc(b.glyph), "concept": b.concept,
             "precedence": b.precedence}
            for b in registry.bindings
        ],
    }


def export_json(registry: Registry) -> str:
    return json.dumps(export(registry), indent=2, sort_keys=True) + "\n"


_MISSING = object()


class _Reader:
    """Schema-checked access into a JSON document, tracking paths."""

    def __init__(self, value, path: str):
        self.value = value
        self.path = path

    def expect(self, kind, what: str):
        if not isinstance(self.value, kind):
            raise SchemaViolationError(self.path, f"expected {what}")
        return self.value

    def key(self, name: str, kind, what: str, default=_MISSING):
        mapping = self.expect(dict, "an object")
        if name not in mapping or mapping[name] is None:
            if default is _MISSING:
                raise SchemaViolationError(self.path, f"missing key {name!r}")
            return default
        sub = _Reader(mapping[name], f"{self.path}.{name}")
        sub.expect(kind, what)
        return mapping[name]

    def items(self, name: str) -> list["_Reader"]:
        mapping = self.expect(dict, "an object")
        if name not in mapping:
            raise SchemaViolationError(self.path, f"missing key {name!r}")
        sub = _Reader(mapping[name], f"{self.path}.{name}")
        sub.expect(list, "a list")
        return [_Reader(v, f"{self.path}.{name}[{i}]")
                for i, v in enumerate(mapping[name])]


def _read_point(reader: _Reader) -> tuple[float, float]:
    value = reader.expect(list, "an [x, y] pair")
    if len(value) != 2:
        raise SchemaViolationError(reader.path, "expected an [x, y] pair")
    return (float(value[0]), float(value[1]))


def _read_literals(reader: _Reader) -> LiteralConjunction:
    value = reader.expect(list, "a list of [constraint, sign] pairs")
    out = []
    for i, pair in enumerate(value):
        if (not isinstance(pair, list) or len(pair) != 2
                or pair[1] not in ("+", "-")):
            raise SchemaViolationError(
                f"{reader.path}[{i}]", "expected [constraint, '+'|'-']"
            )
        out.append(Literal(pair[0], Polarity.from_sign(pair[1])))
    return LiteralConjunction.of(out)


def _read_stroke(reader: _Reader) -> Stroke:
    reader.expect(dict, "a stroke object")
    points = [
        _read_point(_Reader(p, f"{reader.path}.points[{i}]"))
        for i, p in enumerate(reader.key("points", list, "a list"))
    ]
    width = reader.key("width", str, "a string", "regular")
    if width not in (w.value for w in WidthClass):
        raise SchemaViolationError(f"{reader.path}.width",
                                   f"unknown width class {width!r}")
    return Stroke(
        kind=reader.key("kind", str, "a string"),
        group=reader.key("group", str, "a string"),
        points=tuple(points),
        radius=float(reader.key("radius", (int, float), "a number", 0.0)),
        start_angle=float(reader.key("start_angle", (int, float), "a number", 0.0)),
        end_angle=float(reader.key("end_angle", (int, float), "a number", 0.0)),
        width=WidthClass(width),
    )


def _read_glyph(reader: _Reader) -> Glyph:
    reader.expect(dict, "a glyph object")
    marks = []
    for i, pair in enumerate(reader.key("marks", list, "a list", [])):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaViolationError(f"{reader.path}.marks[{i}]",
                                       "expected [region, mark|null]")
        marks.append((pair[0], pair[1]))
    embeds = []
    for i, pair in enumerate(reader.key("embeds", list, "a list", [])):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaViolationError(f"{reader.path}.embeds[{i}]",
                                       "expected [region, glyph]")
        embeds.append((pair[0],
                       _read_glyph(_Reader(pair[1],
                                           f"{reader.path}.embeds[{i}][1]"))))
    scales = []
    for i, pair in enumerate(reader.key("region_scales", list, "a list", [])):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaViolationError(f"{reader.path}.region_scales[{i}]",
                                       "expected [region, scale]")
        scales.append((pair[0], float(pair[1])))
    return Glyph(
        radical=reader.key("radical", str, "a string"),
        marks=tuple(marks),
        derivations=tuple(reader.key("rules", list, "a list", [])),
        embeds=tuple(embeds),
        abbreviated=bool(reader.key("abbreviated", bool, "a boolean", False)),
        region_scales=tuple(scales),
    )


def import_registry(document: Union[str, Mapping],
                    lenient: bool = False) -> Registry:
    """Parse and compile an interchange document back into a Registry.

    ``lenient`` skips the construction-time invariant checks (used by the
    validator so that documents carrying violations can still be linted and
    reported as findings rather than rejected outright).
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as err:
            raise SchemaViolationError("$", f"not valid JSON: {err}") from err
    root = _Reader(document, "$")
    root.expect(dict, "an object")
    version = root.key("version", int, "an integer")
    if version != INTERCHANGE_VERSION:
        raise VersionMismatchError(
            f"unsupported interchange version {version!r}; "
            f"expected {INTERCHANGE_VERSION}"
        )

    constraints = [
        PropertyConstraint(
            id=r.key("id", str, "a string"),
            name=r.key("name", str, "a string"),
            statement=r.key("statement", str, "a string", ""),
            negatable=bool(r.key("negatable", bool, "a boolean", False)),
        )
        for r in root.items("constraints")
    ]
    marks = [
        Mark(
            id=r.key("id", str, "a string"),
            polarity=Polarity(r.key("polarity", str, "a string")),
            printable=r.key("printable", str, "a string"),
        )
        for r in root.items("marks")
    ]
    radicals = []
    for r in root.items("radicals"):
        regions = []
        for i, rg in enumerate(r.key("regions", list, "a list")):
            reader = _Reader(rg, f"{r.path}.regions[{i}]")
            reader.expect(dict, "a region object")
            regions.append(Region(
                name=reader.key("name", str, "a string"),
                constraint=reader.key("constraint", str, "a string"),
                anchor=_read_point(_Reader(reader.key("anchor", list, "a list"),
                                           f"{reader.path}.anchor")),
                extent=_read_point(_Reader(reader.key("extent", list, "a list"),
                                           f"{reader.path}.extent")),
                expandable=bool(reader.key("expandable", bool, "a boolean", False)),
            ))
        strokes = [
            _read_stroke(_Reader(s, f"{r.path}.strokes[{i}]"))
            for i, s in enumerate(r.key("strokes", list, "a list"))
        ]
        radicals.append(Radical(
            id=r.key("id", str, "a string"),
            name=r.key("name", str, "a string"),
            family=_read_family(r),
            strokes=tuple(strokes),
            schema=RegionSchema(tuple(regions)),
            derives_from=r.key("derives_from", str, "a string", None),
            baseline=_read_literals(_Reader(r.key("baseline", list, "a list", []),
                                            f"{r.path}.baseline")),
            limit_file=r.key("limit_file", str, "a string", None),
            catalog_key=r.key("catalog_key", str, "a string", None),
        ))
    rules = []
    for r in root.items("rules"):
        edits = []
        for i, e in enumerate(r.key("edits", list, "a list", [])):
            reader = _Reader(e, f"{r.path}.edits[{i}]")
            reader.expect(dict, "an edit object")
            edits.append(StrokeEdit(
                kind=reader.key("kind", str, "a string"),
                group=reader.key("group", str, "a string", ""),
                strokes=tuple(
                    _read_stroke(_Reader(s, f"{reader.path}.strokes[{j}]"))
                    for j, s in enumerate(reader.key("strokes", list, "a list", []))
                ),
                delta=_read_point(_Reader(reader.key("delta", list, "a list", [0.0, 0.0]),
                                          f"{reader.path}.delta")),
                center=_read_point(_Reader(reader.key("center", list, "a list", [0.5, 0.5]),
                                           f"{reader.path}.center")),
                radius=float(reader.key("radius", (int, float), "a number", 0.18)),
            ))
        rules.append(DerivationRule(
            id=r.key("id", str, "a string"),
            name=r.key("name", str, "a string"),
            source=r.key("source", str, "a string"),
            stroke_edits=tuple(edits),
            literals_added=_read_literals(_Reader(r.key("adds", list, "a list", []),
                                                  f"{r.path}.adds")),
            target_concept=r.key("concept", str, "a string", None),
            requires=tuple(r.key("requires", list, "a list", [])),
        ))
    concepts = [
        Concept(
            id=r.key("id", str, "a string"),
            name=r.key("name", str, "a string"),
            aliases=tuple(r.key("aliases", list, "a list", [])),
            area=r.key("area", str, "a string", ""),
            cryptomorphism_group=r.key("crypto", str, "a string", None),
        )
        for r in root.items("concepts")
    ]
    bindings = [
        Binding(
            glyph=_read_glyph(_Reader(r.key("glyph", dict, "an object"),
                                      f"{r.path}.glyph")),
            concept=r.key("concept", str, "a string"),
            precedence=bool(r.key("precedence", bool, "a boolean", False)),
        )
        for r in root.items("bindings")
    ]
    if lenient:
        return Registry(constraints=tuple(constraints), marks=tuple(marks),
                        radicals=tuple(radicals), rules=tuple(rules),
                        concepts=tuple(concepts), bindings=tuple(bindings))
    return new_registry(constraints=constraints, marks=marks,
                        radicals=radicals, rules=rules, concepts=concepts,
                        bindings=bindings)


def _read_family(r: _Reader):
    from .model import Family
    value = r.key("family", str, "a string")
    try:
        return Family(value)
    except ValueError:
        raise SchemaViolationError(f"{r.path}.family",
                                   f"unknown family {value!r}") from None
