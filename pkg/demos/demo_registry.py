"""Tiny registry builder shared by the demo scripts."""

from vtt import (
    Mark,
    Polarity,
    PropertyConstraint,
    Radical,
    Region,
    RegionSchema,
    Stroke,
    new_registry,
)
from vtt.model import Family


def rows(n: int):
    """One radical with n absence-loaded regions in a row."""
    constraints = [
        PropertyConstraint(id=f"c{i + 1}", name=f"condition {i + 1}",
                           negatable=True)
        for i in range(n)
    ]
    regions = tuple(
        Region(name=f"r{i + 1}", constraint=f"c{i + 1}",
               anchor=((i + 1) / (n + 1), 0.6), extent=(0.08, 0.08))
        for i in range(n)
    )
    radical = Radical(
        id="probe", name="probe", family=Family.OTHER,
        strokes=(Stroke(kind="line", group="base",
                        points=((0.05, 0.35), (0.95, 0.35))),),
        schema=RegionSchema(regions),
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
