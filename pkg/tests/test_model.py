"""Registry construction, lookups, and canonical forms."""

from __future__ import annotations

import pytest

from vtt.model import (
    Binding,
    Concept,
    DanglingReferenceError,
    DuplicateIdError,
    Family,
    Glyph,
    InvalidDefinitionError,
    InvalidGlyphError,
    LiteralConflictError,
    Literal,
    LiteralConjunction,
    Mark,
    NotFoundError,
    Polarity,
    PropertyConstraint,
    Radical,
    Region,
    RegionSchema,
    RegionOverlapError,
    Stroke,
    canonical_form,
    canonical_id,
    canonical_key,
    get,
    glyph,
    literals,
    new_registry,
    validate_glyph,
)

from conftest import toy_registry


def test_empty_definition_set_builds_empty_registry():
    registry = new_registry()
    assert registry.radicals == ()
    assert registry.bindings == ()


def test_seed_registry_has_catalog_radicals(seed):
    assert len(seed.radicals) >= 23


def test_dangling_concept_reference_is_rejected(pair):
    with pytest.raises(DanglingReferenceError) as err:
        new_registry(
            constraints=pair.constraints,
            marks=pair.marks,
            radicals=pair.radicals,
            bindings=[Binding(glyph=Glyph(radical="probe"),
                              concept="missing-concept")],
        )
    assert "missing-concept" in str(err.value)


def test_duplicate_ids_are_rejected():
    c = PropertyConstraint(id="a", name="a")
    with pytest.raises(DuplicateIdError):
        new_registry(constraints=[c, c])


def test_get_returns_entities_and_not_found(seed):
    assert get(seed, "radical", "set").name == "set"
    assert get(seed, "concept", "hilbert-space").name == "Hilbert space"
    with pytest.raises(NotFoundError):
        get(seed, "radical", "nonexistent")
    with pytest.raises(ValueError):
        get(seed, "galaxy", "set")  # malformed kind, not a missing entity


def test_construction_is_deterministic(pair):
    again = toy_registry(2)
    assert again == pair
    assert again.constraints == pair.constraints


def test_meaning_map_functionality_enforced(pair):
    concepts = [Concept(id="one", name="one"), Concept(id="two", name="two")]
    g = glyph("probe", {"r1": "dot"})
    with pytest.raises(InvalidDefinitionError):
        new_registry(
            constraints=pair.constraints, marks=pair.marks,
            radicals=pair.radicals, concepts=concepts,
            bindings=[Binding(glyph=g, concept="one"),
                      Binding(glyph=g, concept="two")],
        )
    # Same concept twice is fine: the map stays a function.
    registry = new_registry(
        constraints=pair.constraints, marks=pair.marks,
        radicals=pair.radicals, concepts=concepts,
        bindings=[Binding(glyph=g, concept="one"),
                  Binding(glyph=g, concept="one")],
    )
    assert len(registry.bindings) == 2


def test_marks_limited_to_one_per_polarity():
    with pytest.raises(InvalidDefinitionError):
        new_registry(marks=[
            Mark(id="dot", polarity=Polarity.POSITIVE, printable="filled-dot"),
            Mark(id="square", polarity=Polarity.POSITIVE,
                 printable="filled-square"),
        ])


def test_overlapping_regions_rejected():
    with pytest.raises(RegionOverlapError):
        RegionSchema((
            Region(name="a", constraint="c1", anchor=(0.5, 0.5),
                   extent=(0.4, 0.4)),
            Region(name="b", constraint="c1", anchor=(0.6, 0.5),
                   extent=(0.4, 0.4)),
        )).validate()


def test_structure_radical_needs_lineage():
    stroke = Stroke(kind="line", group="g", points=((0.1, 0.1), (0.9, 0.9)))
    orphan = Radical(id="loose", name="loose", family=Family.STRUCTURE,
                     strokes=(stroke,))
    with pytest.raises(InvalidDefinitionError):
        new_registry(radicals=[orphan])


def test_literal_conjunction_rejects_both_signs():
    with pytest.raises(LiteralConflictError):
        literals(("a", "+"), ("a", "-"))


def test_literal_conjunction_is_sorted_and_deduplicated():
    lits = LiteralConjunction.of([
        Literal("b", Polarity.POSITIVE),
        Literal("a", Polarity.NEGATIVE),
        Literal("b", Polarity.POSITIVE),
    ])
    assert [str(l) for l in lits] == ["a-", "b+"]


def test_validate_glyph_rejects_unknown_region(pair):
    with pytest.raises(InvalidGlyphError):
        validate_glyph(glyph("probe", {"nowhere": "dot"}), pair)


def test_validate_glyph_rejects_negative_on_non_negatable():
    registry = toy_registry(2, negatable=False)
    with pytest.raises(InvalidGlyphError):
        validate_glyph(glyph("probe", {"r1": "circle"}), registry)
    validate_glyph(glyph("probe", {"r1": "dot"}), registry)


def test_canonical_form_drops_absent_and_visual_state(pair):
    messy = Glyph(radical="probe",
                  marks=(("r2", None), ("r1", "dot")),
                  abbreviated=False,
                  region_scales=(("r1", 1.0),))
    c = canonical_form(messy, pair)
    assert c.marks == (("r1", "dot"),)
    assert c.region_scales == ()
    assert canonical_form(c, pair) == c  # idempotent


def test_canonical_key_and_id_are_stable(seed):
    g = glyph("set", rules=["group", "abelian"])
    assert canonical_key(g, seed) == "set(;rules:group,abelian)"
    assert canonical_id(g, seed) == "set_r.group_r.abelian"
    shuffled = glyph("set", rules=["abelian", "group"])
    assert canonical_key(shuffled, seed) == canonical_key(g, seed)


def test_every_entity_comes_from_the_definition_set(pair):
    ids = {c.id for c in pair.constraints}
    for radical in pair.radicals:
        for region in radical.schema.regions:
            assert region.constraint in ids
