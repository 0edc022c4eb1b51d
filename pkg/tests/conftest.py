"""Shared fixtures: the seed registry, small synthetic registries, and
violation-injection helpers for the validator fuzz tests."""

from __future__ import annotations

import random
from dataclasses import replace

import pytest

from vtt.model import (
    Binding,
    Concept,
    Family,
    Mark,
    Polarity,
    PropertyConstraint,
    Radical,
    Region,
    RegionSchema,
    Registry,
    Stroke,
    glyph,
    new_registry,
)
from vtt.seed import seed_registry


def row_regions(constraint_ids, y=0.5, extent=0.1):
    """Non-overlapping regions in a horizontal row, one per constraint."""
    n = len(constraint_ids)
    regions = []
    for i, cid in enumerate(constraint_ids):
        x = (i + 1) / (n + 1)
        regions.append(Region(name=f"r{i + 1}", constraint=cid,
                              anchor=(x, y), extent=(extent, extent)))
    return tuple(regions)


def toy_registry(n_regions: int, negatable: bool = True,
                 extent: float = 0.1) -> Registry:
    """A one-radical registry with n row regions and a dot/circle vocabulary."""
    constraint_ids = [f"c{i + 1}" for i in range(n_regions)]
    constraints = [
        PropertyConstraint(id=cid, name=f"constraint {cid}",
                           negatable=negatable)
        for cid in constraint_ids
    ]
    radical = Radical(
        id="probe",
        name="probe",
        family=Family.OTHER,
        strokes=(Stroke(kind="line", group="base",
                        points=((0.1, 0.3), (0.9, 0.3))),),
        schema=RegionSchema(row_regions(constraint_ids, extent=extent)),
    )
    return new_registry(
        constraints=constraints,
        marks=[
            Mark(id="dot", polarity=Polarity.POSITIVE, printable="filled-dot"),
            Mark(id="circle", polarity=Polarity.NEGATIVE,
                 printable="open-circle"),
        ],
        radicals=[radical],
    )


@pytest.fixture(scope="session")
def seed():
    return seed_registry()


@pytest.fixture(scope="session")
def pair():
    """Two absence-loaded regions: the two-set worked example."""
    return toy_registry(2)


@pytest.fixture(scope="session")
def triple():
    return toy_registry(3)


@pytest.fixture(scope="session")
def seven():
    return toy_registry(7)


# ---------------------------------------------------------------------------
# Violation injection (validator fuzzing)
# ---------------------------------------------------------------------------

def fuzz_clean_registry(n_concepts: int, rnd: random.Random) -> Registry:
    """A violation-free registry with one cryptomorphism group."""
    base = toy_registry(3)
    concepts = [Concept(id=f"k{i}", name=f"concept {i}",
                        cryptomorphism_group=("g0" if i == 0 else None))
                for i in range(n_concepts)]
    bindings = []
    used = set()
    names = ["r1", "r2", "r3"]
    for i, concept in enumerate(concepts):
        while True:
            assignment = {r: rnd.choice([None, "dot", "circle"])
                          for r in names}
            assignment = {r: m for r, m in assignment.items() if m}
            key = tuple(sorted(assignment.items()))
            if key not in used:
                used.add(key)
                break
        bindings.append(Binding(glyph=glyph("probe", assignment),
                                concept=concept.id, precedence=(i == 0)))
    second = {"r1": "dot", "r2": "dot", "r3": "dot"}
    if tuple(sorted(second.items())) not in used:
        bindings.append(Binding(glyph=glyph("probe", second), concept="k0"))
    return new_registry(constraints=base.constraints, marks=base.marks,
                        radicals=base.radicals, concepts=concepts,
                        bindings=bindings)


def inject_overload(registry: Registry, rnd: random.Random) -> Registry:
    """Bind one existing glyph to a second concept, bypassing construction."""
    victim = rnd.choice(registry.bindings)
    others = [c.id for c in registry.concepts if c.id != victim.concept]
    clone = Binding(glyph=victim.glyph, concept=rnd.choice(others))
    return replace(registry, bindings=(*registry.bindings, clone))


def strip_precedence(registry: Registry) -> Registry:
    """Clear every precedence flag, starving the cryptomorphism group."""
    return replace(registry, bindings=tuple(
        replace(b, precedence=False) for b in registry.bindings
    ))
