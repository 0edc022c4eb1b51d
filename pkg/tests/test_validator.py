"""Meaning-map checks, density scoring, catalog coverage, fuzzed violations."""

from __future__ import annotations

import math
import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vtt.compose import abbreviate, expand_region
from vtt.model import (
    Binding,
    Concept,
    Family,
    Glyph,
    Radical,
    Stroke,
    glyph,
    new_registry,
)
from vtt.validate import (
    CATALOG_KEYS,
    check_meaning_map,
    check_universality,
    density,
    lint,
    report_json,
    report_text,
)

from conftest import fuzz_clean_registry, inject_overload, strip_precedence


# ---------------------------------------------------------------------------
# check_meaning_map
# ---------------------------------------------------------------------------

def test_seed_registry_is_clean(seed):
    report = check_meaning_map(seed)
    assert report.errors == ()


def test_cryptomorphism_with_precedence_is_clean(pair):
    registry = new_registry(
        constraints=pair.constraints, marks=pair.marks, radicals=pair.radicals,
        concepts=[Concept(id="lattice", name="lattice",
                          cryptomorphism_group="lattice-defs")],
        bindings=[
            Binding(glyph=glyph("probe", {"r1": "dot"}), concept="lattice",
                    precedence=True),
            Binding(glyph=glyph("probe", {"r2": "dot"}), concept="lattice"),
        ],
    )
    assert check_meaning_map(registry).errors == ()


def test_missing_precedence_is_an_error(pair):
    registry = new_registry(
        constraints=pair.constraints, marks=pair.marks, radicals=pair.radicals,
        concepts=[Concept(id="lattice", name="lattice",
                          cryptomorphism_group="lattice-defs")],
        bindings=[
            Binding(glyph=glyph("probe", {"r1": "dot"}), concept="lattice"),
            Binding(glyph=glyph("probe", {"r2": "dot"}), concept="lattice"),
        ],
    )
    report = check_meaning_map(registry)
    assert [f.code for f in report.errors] == ["missing-precedence"]


def test_multiple_precedence_is_an_error(pair):
    registry = new_registry(
        constraints=pair.constraints, marks=pair.marks, radicals=pair.radicals,
        concepts=[Concept(id="lattice", name="lattice",
                          cryptomorphism_group="lattice-defs")],
        bindings=[
            Binding(glyph=glyph("probe", {"r1": "dot"}), concept="lattice",
                    precedence=True),
            Binding(glyph=glyph("probe", {"r2": "dot"}), concept="lattice",
                    precedence=True),
        ],
    )
    assert [f.code for f in check_meaning_map(registry).errors] == [
        "multiple-precedence"
    ]


def test_overload_detected_on_directly_built_registry(pair):
    clean = new_registry(
        constraints=pair.constraints, marks=pair.marks, radicals=pair.radicals,
        concepts=[Concept(id="one", name="one"), Concept(id="two", name="two")],
        bindings=[Binding(glyph=glyph("probe", {"r1": "dot"}), concept="one")],
    )
    # Bypass construction the way a corrupted document would.
    dirty = replace(clean, bindings=(
        clean.bindings[0],
        Binding(glyph=glyph("probe", {"r1": "dot"}), concept="two"),
    ))
    report = check_meaning_map(dirty)
    assert [f.code for f in report.errors] == ["glyph-overload"]


def test_unbound_concept_is_a_warning(pair):
    registry = new_registry(
        constraints=pair.constraints, marks=pair.marks, radicals=pair.radicals,
        concepts=[Concept(id="silent", name="silent")],
    )
    report = check_meaning_map(registry)
    assert report.errors == ()
    assert any(f.code == "unbound-concept" for f in report.findings)


# ---------------------------------------------------------------------------
# density
# ---------------------------------------------------------------------------

def test_all_absent_glyph_scores_zero(seed):
    assert density(Glyph(radical="set"), seed) == 0.0


def test_density_matches_direct_formula_evaluation(pair):
    # 2 constrained regions, 2-mark vocabulary, 1 stroke in the toy radical.
    g = glyph("probe", {"r1": "dot", "r2": "circle"})
    assert density(g, pair) == pytest.approx(2 * math.log2(3) / 1)

    # The worked figure: 2 constrained regions over 3 strokes.
    three_stroke = replace(
        pair.radical("probe"),
        strokes=tuple(
            Stroke(kind="line", group="base", points=((0.1, y), (0.9, y)))
            for y in (0.2, 0.3, 0.4)
        ),
    )
    registry = new_registry(constraints=pair.constraints, marks=pair.marks,
                            radicals=[three_stroke])
    assert density(g, registry) == pytest.approx(2 * math.log2(3) / 3)
    assert density(g, registry) == pytest.approx(1.057, abs=5e-4)


def test_density_strictly_grows_with_marked_regions(seven):
    scores = []
    for k in range(8):
        assignment = {f"r{i + 1}": "dot" for i in range(k)}
        scores.append(density(glyph("probe", assignment), seven))
    assert scores == sorted(scores)
    assert all(b > a for a, b in zip(scores, scores[1:]))


def test_density_invariant_under_abbreviation(seed):
    topos = glyph("category", rules=["topos"])
    assert density(abbreviate(topos, seed), seed) == density(topos, seed)


def test_density_invariant_under_region_expansion(seed):
    g = glyph("hausdorff-space", {"center": "dot"})
    grown = expand_region(g, "algebraic", 1.4, seed)
    assert density(grown, seed) == density(g, seed)


def test_density_counts_rule_literals(seed):
    base = Glyph(radical="set")
    grown = glyph("set", rules=["group"])
    # group: replaces two dots with two lines (stroke count stays 3) and
    # adds one literal.
    assert density(grown, seed) > density(base, seed)


# ---------------------------------------------------------------------------
# check_universality
# ---------------------------------------------------------------------------

def test_seed_covers_the_whole_catalog(seed):
    report = check_universality(seed)
    present = {f.subjects[0] for f in report.findings
               if f.code == "catalog-present"}
    assert present == set(CATALOG_KEYS)
    assert not any(f.code == "catalog-missing" for f in report.findings)


def test_missing_catalog_radical_is_reported(seed):
    pruned = replace(seed, radicals=tuple(
        r for r in seed.radicals if r.id != "lambda-calculus"
    ))
    report = check_universality(pruned)
    missing = [f for f in report.findings if f.code == "catalog-missing"]
    assert [f.subjects[0] for f in missing] == ["lambda-calculus"]


def test_orphan_structure_radical_warns(pair):
    stroke = Stroke(kind="line", group="g", points=((0.1, 0.1), (0.9, 0.9)))
    orphan = Radical(id="loose", name="loose", family=Family.STRUCTURE,
                     strokes=(stroke,))
    dirty = replace(pair, radicals=(*pair.radicals, orphan))
    report = check_universality(dirty)
    assert any(f.code == "orphan-structure-radical" for f in report.findings)


# ---------------------------------------------------------------------------
# report determinism and serialization
# ---------------------------------------------------------------------------

def test_equal_registries_give_byte_equal_reports(seed):
    import json
    a = json.dumps(report_json(lint(seed)), sort_keys=True)
    b = json.dumps(report_json(lint(seed)), sort_keys=True)
    assert a == b
    assert "ok" in report_text(lint(seed))


# ---------------------------------------------------------------------------
# fuzzing: every injected violation is caught, clean registries stay clean
# ---------------------------------------------------------------------------

@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
@settings(max_examples=60, deadline=None)
def test_fuzzed_violations_are_always_flagged(seed_value):
    rnd = random.Random(seed_value)
    base = fuzz_clean_registry(rnd.randint(2, 5), rnd)
    assert check_meaning_map(base).errors == ()
    if rnd.random() < 0.5:
        dirty = inject_overload(base, rnd)
        expected = "glyph-overload"
    else:
        dirty = strip_precedence(base)
        expected = "missing-precedence"
    codes = {f.code for f in check_meaning_map(dirty).errors}
    assert expected in codes


def test_density_zero_strokes_is_an_error(pair):
    from vtt.model import NotationError
    bare = replace(pair.radical("probe"), strokes=())
    dirty = replace(pair, radicals=(bare,))
    with pytest.raises(NotationError):
        density(Glyph(radical="probe"), dirty)
