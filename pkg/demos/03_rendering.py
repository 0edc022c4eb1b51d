"""Deterministic SVG rendering: glyphs, abbreviation, expressions.

Writes a handful of SVG files into demos/out/.  Running this script twice
produces byte-identical files.
"""

from pathlib import Path

from vtt import (
    Glyph,
    abbreviate,
    canonical_id,
    glyph,
    layout,
    parse_expression,
    render_expression,
    render_glyph_svg,
    seed_registry,
    to_svg,
)

registry = seed_registry()
out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

showcase = [
    Glyph(radical="set"),
    glyph("set", rules=["group", "abelian"]),
    glyph("hausdorff-space", {"center": "dot"}),
    glyph("category", rules=["topos"]),
    abbreviate(glyph("category", rules=["topos"]), registry),
    glyph("kolmogorov-space", embeds={"geometric": Glyph(radical="category")}),
]

for g in showcase:
    cid = canonical_id(g, registry)
    suffix = "-abbreviated" if g.abbreviated else ""
    path = out / f"{cid}{suffix}.svg"
    path.write_text(render_glyph_svg(g, registry, size=160), encoding="utf-8")
    print("wrote", path)

expression = parse_expression(
    "[ lattice -> process ] ~~ [ kolmogorov-space -> process ]"
)
geometry = render_expression(expression, registry, size=160)
(out / "duality.svg").write_text(to_svg(geometry), encoding="utf-8")
print("wrote", out / "duality.svg")

geometry = layout(glyph("hausdorff-space", {"center": "dot"}), registry, 160)
print()
print(f"compact Hausdorff geometry: {len(geometry.strokes)} strokes, "
      f"{len(geometry.marks)} mark(s), viewbox {geometry.width:g}")
