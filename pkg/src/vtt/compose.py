"""Glyph construction: marks, derivation rules, combination, abbreviation.

Every operation here is a pure value transformation: the input glyph is
never mutated, and visual-only operations (abbreviate, expand,
expand_region) never change what a glyph means.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Optional, Union

from .model import (
    Family,
    Glyph,
    InvalidGlyphError,
    NotationError,
    Radical,
    Registry,
    Stroke,
    StrokeEdit,
    applied_rules,
    canonical_form,
    check_region_fit,
    glyph_literals,
    rule_source_matches,
    validate_glyph,
)

__all__ = [
    "place_mark",
    "apply_derivation",
    "combine",
    "abbreviate",
    "expand",
    "canonicalize",
    "expand_region",
    "effective_strokes",
    "is_irregular",
    "RuleApplicationError",
    "CombineError",
    "NoLimitFileError",
]


class RuleApplicationError(NotationError):
    """A derivation rule's precondition failed or its literals conflict."""


class CombineError(NotationError):
    """Structure and topological glyphs cannot be combined as requested."""


class NoLimitFileError(NotationError):
    """The glyph's radical declares no suppressible stroke group."""


def place_mark(g: Glyph, region: str, mark: Optional[str],
               registry: Registry) -> Glyph:
    """Set or clear the mark of one region; last write wins."""
    remaining = tuple((r, m) for r, m in g.marks if r != region)
    if mark is None:
        result = replace(g, marks=remaining)
    else:
        result = replace(g, marks=(*remaining, (region, mark)))
    validate_glyph(result, registry)
    return result


def apply_derivation(g: Glyph, rule_id: str, registry: Registry) -> Glyph:
    """Apply a named derivation rule, growing the glyph's literal set.

    Rejected when the rule's source precondition does not match the glyph's
    radical lineage, when a required rule has not been applied anywhere in
    the glyph tree, when the rule was already applied, or when its literals
    duplicate or contradict literals the glyph already asserts.
    """
    validate_glyph(g, registry)
    rule = registry.rule(rule_id)
    if not rule_source_matches(rule, g, registry):
        raise RuleApplicationError(
            f"rule {rule_id!r} applies to {rule.source!r}, not to "
            f"radical {g.radical!r}"
        )
    already = applied_rules(g)
    if rule_id in already:
        raise RuleApplicationError(f"rule {rule_id!r} already applied")
    missing = set(rule.requires) - already
    if missing:
        raise RuleApplicationError(
            f"rule {rule_id!r} requires {sorted(missing)} first"
        )
    current = glyph_literals(g, registry)
    for lit in rule.literals_added:
        sign = current.sign_of(lit.constraint)
        if sign is lit.polarity:
            raise RuleApplicationError(
                f"rule {rule_id!r} duplicates literal {lit}"
            )
        if sign is not None:
            raise RuleApplicationError(
                f"rule {rule_id!r} adds {lit}, conflicting with the glyph's "
                f"{lit.constraint}{sign.sign}"
            )
    result = replace(g, derivations=(*g.derivations, rule_id))
    validate_glyph(result, registry)
    return result


def _expandable_region(radical: Radical) -> Optional[str]:
    names = [r.name for r in radical.schema.regions if r.expandable]
    if len(names) == 1:
        return names[0]
    if "algebraic" in names:
        return "algebraic"
    return names[0] if names else None


def combine(structure: Glyph, topological: Union[Radical, str],
            registry: Registry, region: Optional[str] = None) -> Glyph:
    """Embed a structure glyph into a region of a topological radical.

    The default target is the radical's expandable (algebraic) region;
    naming any other region produces an irregular glyph.  The result's
    literal set is the union of the embedded glyph's literals and the
    topological radical's baseline.
    """
    validate_glyph(structure, registry)
    rad = registry.radical(topological) if isinstance(topological, str) else topological
    if registry.radical(structure.radical).family is not Family.STRUCTURE:
        raise CombineError(
            f"glyph on radical {structure.radical!r} is not structure-family"
        )
    if rad.family is not Family.TOPOLOGICAL:
        raise CombineError(f"radical {rad.id!r} is not topological-family")
    default = _expandable_region(rad)
    if default is None:
        raise CombineError(f"radical {rad.id!r} has no expandable region")
    target = region if region is not None else default
    if target not in rad.schema.names():
        raise CombineError(f"radical {rad.id!r} has no region {target!r}")
    if structure.depth() + 1 > 2:
        raise CombineError("embedding would exceed the depth limit of 2")
    result = Glyph(radical=rad.id, embeds=((target, structure),))
    validate_glyph(result, registry)
    return result


def is_irregular(g: Glyph, registry: Registry) -> bool:
    """True when any sub-glyph sits outside the expandable region."""
    rad = registry.radical(g.radical)
    for region, sub in g.embeds:
        if not rad.schema.region(region).expandable:
            return True
        if is_irregular(sub, registry):
            return True
    return False


def abbreviate(g: Glyph, registry: Registry) -> Glyph:
    """Suppress the limit file.  Visual only: meaning is unchanged."""
    rad = registry.radical(g.radical)
    if rad.limit_file is None:
        raise NoLimitFileError(f"radical {rad.id!r} declares no limit file")
    return replace(g, abbreviated=True)


def expand(g: Glyph, registry: Registry) -> Glyph:
    """Undo abbreviation; identity on a glyph that is not abbreviated."""
    if not g.abbreviated:
        return g
    return replace(g, abbreviated=False)


def canonicalize(g: Glyph, registry: Registry) -> Glyph:
    """Identity-defining normal form; idempotent.

    Drops explicit absent entries and visual state, orders marks by schema
    region order and derivations by rule-dependency order, and recurses into
    embedded sub-glyphs.
    """
    validate_glyph(g, registry)
    return canonical_form(g, registry)


def expand_region(g: Glyph, region: str, scale: float,
                  registry: Registry) -> Glyph:
    """Scale an expandable region's extent.  Visual only.

    The new effective scale multiplies any already-applied scale; scales
    that push the region out of the unit box or into a neighbor are
    rejected.
    """
    validate_glyph(g, registry)
    rad = registry.radical(g.radical)
    r = rad.schema.region(region)
    if scale <= 0:
        raise InvalidGlyphError(f"scale must be positive, got {scale}")
    if not r.expandable and scale != 1.0:
        raise InvalidGlyphError(f"region {region!r} is not expandable")
    new_scale = g.scale_of(region) * scale
    scales = tuple((n, s) for n, s in g.region_scales if n != region)
    if new_scale != 1.0:
        scales = (*scales, (region, new_scale))
    result = replace(g, region_scales=scales)
    check_region_fit(result, rad)
    return result


def effective_strokes(g: Glyph, registry: Registry,
                      include_suppressed: bool = True) -> tuple[Stroke, ...]:
    """Radical strokes with all derivation edits applied, in canonical order.

    ``include_suppressed`` keeps limit-file strokes regardless of the
    abbreviated flag (density counts them in both states); layout passes
    False for abbreviated glyphs.
    """
    rad = registry.radical(g.radical)
    strokes = list(rad.strokes)
    ordered = sorted(set(g.derivations), key=registry.rule_order_key)
    for rule_id in ordered:
        for edit in registry.rule(rule_id).stroke_edits:
            strokes = _apply_edit(strokes, edit)
    if not include_suppressed and g.abbreviated and rad.limit_file is not None:
        strokes = [s for s in strokes if s.group != rad.limit_file]
    return tuple(strokes)


def _apply_edit(strokes: list[Stroke], edit: StrokeEdit) -> list[Stroke]:
    if edit.kind == "add-stroke":
        return [*strokes, *edit.strokes]
    if edit.kind == "add-center-circle":
        circle = Stroke(kind="circle", group="derived",
                        points=(edit.center,), radius=edit.radius)
        return [*strokes, circle]
    if edit.kind == "extend-stroke":
        out = []
        dx, dy = edit.delta
        for s in strokes:
            if s.group == edit.group and s.kind == "line":
                last = s.points[-1]
                out.append(replace(s, points=(*s.points,
                                              (last[0] + dx, last[1] + dy))))
            else:
                out.append(s)
        return out
    if edit.kind == "replace-strokes":
        out = [s for s in strokes if s.group != edit.group]
        return [*out, *edit.strokes]
    if edit.kind == "cross-transform":
        targets = [s for s in strokes if s.group == edit.group]
        if not targets:
            return list(strokes)
        xs, ys = [], []
        for s in targets:
            for (px, py) in s.points:
                xs.append(px)
                ys.append(py)
        cx, cy = sum(xs) / len(xs), sum(ys) / len(ys)
        arm = edit.radius
        cross = [
            Stroke(kind="line", group=edit.group,
                   points=((cx - arm, cy), (cx + arm, cy))),
            Stroke(kind="line", group=edit.group,
                   points=((cx, cy - arm), (cx, cy + arm))),
        ]
        out = [s for s in strokes if s.group != edit.group]
        return [*out, *cross]
    raise InvalidGlyphError(f"unknown stroke edit kind {edit.kind!r}")
