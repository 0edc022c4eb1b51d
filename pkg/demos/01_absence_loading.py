"""Absence loading from first principles: two sets on a loaded line.

Two regions of a glyph's bounding box are loaded with membership
constraints for sets A and B.  A filled dot asserts membership, an open
circle asserts non-membership, and an empty region asserts nothing, so the
four fully-marked glyphs carve the universe into the four classic classes.
"""

from vtt import (
    Glyph,
    Mark,
    Polarity,
    PropertyConstraint,
    Radical,
    Region,
    RegionSchema,
    Stroke,
    constraint_of,
    denote,
    glyph,
    new_registry,
    universe,
)
from vtt.model import Family

registry = new_registry(
    constraints=[
        PropertyConstraint(id="in-a", name="membership in A", negatable=True),
        PropertyConstraint(id="in-b", name="membership in B", negatable=True),
    ],
    marks=[
        Mark(id="dot", polarity=Polarity.POSITIVE, printable="filled-dot"),
        Mark(id="circle", polarity=Polarity.NEGATIVE, printable="open-circle"),
    ],
    radicals=[
        Radical(
            id="line", name="loaded line", family=Family.OTHER,
            strokes=(Stroke(kind="line", group="base",
                            points=((0.1, 0.35), (0.9, 0.35))),),
            schema=RegionSchema((
                Region(name="a", constraint="in-a", anchor=(0.35, 0.6),
                       extent=(0.2, 0.2)),
                Region(name="b", constraint="in-b", anchor=(0.65, 0.6),
                       extent=(0.2, 0.2)),
            )),
        ),
    ],
)

# A little universe: numbers 1..6, A = {1,2,3}, B = {3,4,5}.
model = universe(
    ["1", "2", "3", "4", "5", "6"],
    {"in-a": ["1", "2", "3"], "in-b": ["3", "4", "5"]},
)

print("The vacant glyph asserts nothing and denotes all of U:")
print("   ", sorted(denote(Glyph(radical="line"), model, registry)))
print()

for a_mark, b_mark, label in [
    ("dot", "dot", "A and B          (dot, dot)"),
    ("dot", "circle", "A without B      (dot, circle)"),
    ("circle", "dot", "B without A      (circle, dot)"),
    ("circle", "circle", "outside both     (circle, circle)"),
    ("dot", None, "just A, B ignored (dot, vacant)"),
]:
    assignment = {"a": a_mark}
    if b_mark is not None:
        assignment["b"] = b_mark
    g = glyph("line", assignment)
    reading = constraint_of(g, registry)
    members = sorted(denote(g, model, registry))
    print(f"{label}: reads {reading}, denotes {members}")
