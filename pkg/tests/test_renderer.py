"""Layout, SVG determinism and distinctness, TeX emission, interchange."""

from __future__ import annotations

import itertools
import json

import pytest

from vtt import dsl
from vtt.compose import abbreviate
from vtt.model import Glyph, canonical_id, glyph, new_registry
from vtt.render import (
    SchemaViolationError,
    TexNameCollisionError,
    VersionMismatchError,
    emit_tex,
    export,
    export_json,
    import_registry,
    layout,
    render_expression,
    render_glyph_svg,
)
from vtt.semantics import lookup_concept


# ---------------------------------------------------------------------------
# layout
# ---------------------------------------------------------------------------

def test_set_radical_layout_contents(seed):
    geometry = layout(Glyph(radical="set"), seed, size=100)
    kinds = [s.kind for s in geometry.strokes]
    assert kinds.count("line") == 1
    assert kinds.count("dot") == 2
    assert geometry.marks == ()
    assert geometry.boxes == ()


def test_compact_hausdorff_adds_one_centered_mark(seed):
    geometry = layout(glyph("hausdorff-space", {"center": "dot"}), seed, 100)
    assert len(geometry.marks) == 1
    mark = geometry.marks[0]
    assert mark.shape == "filled-dot"
    assert mark.center == (50.0, 50.0)


def test_abbreviated_topos_omits_limit_file_strokes(seed):
    topos = glyph("category", rules=["topos"])
    full = layout(topos, seed, 100)
    short = layout(abbreviate(topos, seed), seed, 100)
    full_groups = {s.group for s in full.strokes}
    short_groups = {s.group for s in short.strokes}
    assert "limit" in full_groups
    assert "limit" not in short_groups
    assert len(short.strokes) < len(full.strokes)


def test_embedded_subglyph_scaled_into_region(seed):
    tvs = glyph("hausdorff-space", embeds={
        "algebraic": glyph("set", rules=["group", "abelian", "vector-space"]),
    })
    geometry = layout(tvs, seed, 100)
    assert len(geometry.boxes) == 1
    box = geometry.boxes[0]
    assert box.region == "algebraic"
    ox, oy = box.origin
    w, h = box.size
    for stroke in box.strokes:
        for x, y in stroke.points:
            assert ox - 0.001 <= x <= ox + w + 0.001
            assert oy - 0.001 <= y <= oy + h + 0.001


def test_all_coordinates_inside_viewbox(seed):
    for binding in seed.bindings:
        geometry = layout(binding.glyph, seed, 100)
        def check(stroke_list):
            for s in stroke_list:
                for x, y in s.points:
                    assert -0.001 <= x <= 100.001
                    assert -0.001 <= y <= 100.001
        check(geometry.strokes)
        stack = list(geometry.boxes)
        while stack:
            box = stack.pop()
            check(box.strokes)
            stack.extend(box.boxes)


def test_coordinates_quantized_to_three_decimals(seed):
    geometry = layout(glyph("hausdorff-space", {"center": "dot"}), seed, 100)
    for s in geometry.strokes:
        for x, y in s.points:
            assert x == round(x, 3)
            assert y == round(y, 3)


# ---------------------------------------------------------------------------
# to_svg
# ---------------------------------------------------------------------------

def test_equal_glyphs_render_byte_identical(seed):
    g = glyph("hausdorff-space", {"center": "dot"})
    assert render_glyph_svg(g, seed) == render_glyph_svg(g, seed)


def test_27_enumerated_glyphs_render_pairwise_distinct(triple):
    documents = []
    options = [None, "dot", "circle"]
    for combo in itertools.product(options, repeat=3):
        assignment = {f"r{i + 1}": m for i, m in enumerate(combo) if m}
        documents.append(render_glyph_svg(glyph("probe", assignment), triple))
    assert len(set(documents)) == 27


def test_scale_covariance(seed):
    small = layout(Glyph(radical="set"), seed, 100)
    large = layout(Glyph(radical="set"), seed, 200)
    assert large.width == pytest.approx(2 * small.width)
    for a, b in zip(small.strokes, large.strokes):
        for (ax, ay), (bx, by) in zip(a.points, b.points):
            assert bx == pytest.approx(2 * ax, abs=2e-2)
            assert by == pytest.approx(2 * ay, abs=2e-2)


def test_svg_document_shape(seed):
    svg = render_glyph_svg(Glyph(radical="set"), seed, 100)
    assert svg.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
    assert 'viewBox="0 0 100 100"' in svg
    assert svg.rstrip().endswith("</svg>")


# ---------------------------------------------------------------------------
# expressions
# ---------------------------------------------------------------------------

def test_duality_renders_two_arrows_and_wave(seed):
    node = dsl.parse_expression(
        "[ lattice -> process ] ~~ [ kolmogorov-space -> process ]"
    )
    geometry = render_expression(node, seed, 100)
    arrow_strokes = [s for s in geometry.strokes if s.group == "arrow"]
    wave_strokes = [s for s in geometry.strokes if s.group == "relsym"]
    assert len(arrow_strokes) == 6  # two arrows, three strokes each
    assert len(wave_strokes) == 2
    assert geometry.width == 500.0


def test_standalone_renders_plain_glyph(seed):
    node = dsl.parse_expression("hausdorff-space")
    direct = layout(Glyph(radical="hausdorff-space"), seed, 100)
    assert render_expression(node, seed, 100) == direct


def test_relation_with_annotation_below(seed):
    node = dsl.parse_expression("lattice <= process under set( )")
    geometry = render_expression(node, seed, 100)
    assert geometry.width == 300.0
    assert any(s.group == "relsym" for s in geometry.strokes)


def test_unresolved_reference_is_an_error(seed):
    node = dsl.parse_expression("no-such-thing")
    with pytest.raises(Exception) as err:
        render_expression(node, seed, 100)
    assert "no-such-thing" in str(err.value)


# ---------------------------------------------------------------------------
# emit_tex
# ---------------------------------------------------------------------------

def test_tex_package_has_one_macro_per_bound_glyph(seed):
    bundle = emit_tex(seed)
    assert len(bundle.entries) == len(seed.bindings)
    assert bundle.sty.count("\\newcommand") == len(seed.bindings)
    for macro, cid, concept in bundle.entries:
        assert macro.startswith("vtt")
        assert f"vtt-artwork/{cid}" in bundle.sty
    # index maps every macro to its concept name
    assert len(bundle.index.splitlines()) == len(seed.bindings)


def test_tex_empty_selection_is_header_only(seed):
    bundle = emit_tex(seed, selection=[])
    assert bundle.entries == ()
    assert "\\newcommand" not in bundle.sty
    assert "\\ProvidesPackage" in bundle.sty


def test_tex_name_collision_reported(triple):
    # "r1.dot"/"r2.dot" style ids collide once letters-only sanitization
    # cannot tell r1 from r2 apart (digits are dropped).
    a = glyph("probe", {"r1": "dot"})
    b = glyph("probe", {"r2": "dot"})
    with pytest.raises(TexNameCollisionError) as err:
        emit_tex(triple, selection=[a, b])
    assert "probe" in str(err.value)


def test_abbreviated_and_expanded_share_index_entries(seed):
    topos = glyph("category", rules=["topos"])
    short = abbreviate(topos, seed)
    bundle_full = emit_tex(seed, selection=[topos])
    bundle_short = emit_tex(seed, selection=[short])
    assert bundle_full.entries == bundle_short.entries
    assert lookup_concept(short, seed) == lookup_concept(topos, seed)
    # but the drawn artwork differs
    assert (render_glyph_svg(topos, seed)
            != render_glyph_svg(short, seed))


# ---------------------------------------------------------------------------
# interchange
# ---------------------------------------------------------------------------

def test_seed_round_trip_structural_equality(seed):
    assert import_registry(export(seed)) == seed
    assert import_registry(export_json(seed)) == seed


def test_empty_registry_round_trip():
    empty = new_registry()
    assert import_registry(export(empty)) == empty


def test_round_trip_preserves_canonical_glyphs(seed):
    back = import_registry(export(seed))
    for a, b in zip(seed.bindings, back.bindings):
        assert canonical_id(a.glyph, seed) == canonical_id(b.glyph, back)


def test_unknown_version_is_version_mismatch(seed):
    doc = export(seed)
    doc["version"] = 99
    with pytest.raises(VersionMismatchError):
        import_registry(doc)


def test_schema_violation_names_the_path(seed):
    doc = export(seed)
    doc["radicals"][0]["strokes"] = "nope"
    with pytest.raises(SchemaViolationError) as err:
        import_registry(doc)
    assert "radicals[0]" in str(err.value)


def test_export_json_is_byte_stable(seed):
    assert export_json(seed) == export_json(seed)
    assert json.loads(export_json(seed)) == export(seed)


def test_duality_over_relation_sides(seed):
    node = dsl.parse_expression("lattice = process ~~ hausdorff-space")
    geometry = render_expression(node, seed, 100)
    # relation cell (3 wide) + wave cell + standalone cell
    assert geometry.width == 500.0
    assert any(s.group == "relsym" for s in geometry.strokes)
