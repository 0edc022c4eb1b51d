"""Core vocabulary for absence-loaded glyph systems.

A glyph system pairs a set of base glyphs (radicals) with spatial regions of
the unit bounding box, each region loaded with a logical constraint.  Marks
placed in a region assert the constraint positively or negatively; an empty
region asserts nothing.  A compiled Registry holds the whole system: the
constraint vocabulary, the mark vocabulary, the radicals with their stroke
geometry and region schemas, the derivation rules that grow new glyphs out of
old ones, the concept ontology, and the meaning map binding canonical glyphs
to concepts.

Everything in this module is an immutable value; construction via
:func:`new_registry` checks every cross-reference and invariant up front, so
downstream code can assume a well-formed registry.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Iterator, Mapping, Optional, Sequence


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

class NotationError(Exception):
    """Base class for all registry, glyph, and semantics errors."""


class DuplicateIdError(NotationError):
    pass


class DanglingReferenceError(NotationError):
    """A definition refers to an id that is not in the definition set."""

    def __init__(self, kind: str, missing: str, referrer: str = ""):
        self.kind = kind
        self.missing = missing
        self.referrer = referrer
        where = f" (referenced by {referrer})" if referrer else ""
        super().__init__(f"unknown {kind} id {missing!r}{where}")


class NotFoundError(NotationError):
    def __init__(self, kind: str, entity_id: str):
        self.kind = kind
        self.entity_id = entity_id
        super().__init__(f"no {kind} with id {entity_id!r}")


class InvalidDefinitionError(NotationError):
    """A definition violates a structural invariant (bad id, bad geometry)."""


class InvalidGlyphError(NotationError):
    """A glyph is not well formed against its registry."""


class LiteralConflictError(NotationError):
    """A constraint would carry both a positive and a negative sign."""


class RegionOverlapError(InvalidGlyphError):
    """Two regions intersect at their effective extents."""


# ---------------------------------------------------------------------------
# Literals
# ---------------------------------------------------------------------------

class Polarity(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    @property
    def sign(self) -> str:
        return "+" if self is Polarity.POSITIVE else "-"

    @classmethod
    def from_sign(cls, sign: str) -> "Polarity":
        if sign == "+":
            return cls.POSITIVE
        if sign == "-":
            return cls.NEGATIVE
        raise ValueError(f"not a sign: {sign!r}")


@dataclass(frozen=True, order=True)
class Literal:
    """A signed constraint: the logical content of one marked region."""

    constraint: str
    polarity: Polarity

    def __str__(self) -> str:
        return f"{self.constraint}{self.polarity.sign}"


@dataclass(frozen=True)
class LiteralConjunction:
    """A set of literals with at most one sign per constraint.

    Stored as a sorted tuple so iteration order, equality, and every
    serialization derived from it are independent of hash seeding.
    """

    literals: tuple[Literal, ...] = ()

    @classmethod
    def of(cls, literals: Iterable[Literal]) -> "LiteralConjunction":
        seen: dict[str, Polarity] = {}
        for lit in literals:
            prev = seen.get(lit.constraint)
            if prev is not None and prev is not lit.polarity:
                raise LiteralConflictError(
                    f"constraint {lit.constraint!r} carries both signs"
                )
            seen[lit.constraint] = lit.polarity
        items = tuple(sorted(Literal(c, p) for c, p in seen.items()))
        return cls(items)

    def union(self, other: "LiteralConjunction") -> "LiteralConjunction":
        return LiteralConjunction.of((*self.literals, *other.literals))

    def issuperset(self, other: "LiteralConjunction") -> bool:
        return set(self.literals) >= set(other.literals)

    def sign_of(self, constraint: str) -> Optional[Polarity]:
        for lit in self.literals:
            if lit.constraint == constraint:
                return lit.polarity
        return None

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __contains__(self, lit: object) -> bool:
        return lit in self.literals

    def __str__(self) -> str:
        return "{" + ", ".join(str(l) for l in self.literals) + "}"


EMPTY_CONJUNCTION = LiteralConjunction()


def literals(*pairs: tuple[str, str]) -> LiteralConjunction:
    """Shorthand: literals(("a", "+"), ("b", "-"))."""
    return LiteralConjunction.of(
        Literal(c, Polarity.from_sign(s)) for c, s in pairs
    )


# ---------------------------------------------------------------------------
# Vocabulary entities
# ---------------------------------------------------------------------------

_IDENT = re.compile(r"^[a-z][a-z0-9-]*$")

MARK_SHAPES = (
    "filled-dot",
    "open-circle",
    "filled-square",
    "open-square",
    "cross-mark",
)


def _check_ident(kind: str, value: str) -> None:
    if not _IDENT.match(value):
        raise InvalidDefinitionError(
            f"{kind} {value!r} is not a lowercase identifier ([a-z][a-z0-9-]*)"
        )


@dataclass(frozen=True)
class PropertyConstraint:
    """A named logical constraint a region can be loaded with."""

    id: str
    name: str
    statement: str = ""
    negatable: bool = False


@dataclass(frozen=True)
class Mark:
    """A small shape placed in a loaded region, carrying one polarity."""

    id: str
    polarity: Polarity
    printable: str


class Family(str, Enum):
    STRUCTURE = "structure"
    TOPOLOGICAL = "topological"
    OTHER = "other"


class WidthClass(str, Enum):
    REGULAR = "regular"
    HEAVY = "heavy"


# Unit-box stroke widths per class.
STROKE_WIDTHS = {WidthClass.REGULAR: 0.035, WidthClass.HEAVY: 0.06}


@dataclass(frozen=True)
class Stroke:
    """A schematic stroke in the unit box.

    kind "line" uses two or more vertices in ``points``; "dot" (filled) and
    "circle" (outline) use a single center point plus ``radius``; "arc" adds
    start/end angles in degrees, counterclockwise from east.
    """

    kind: str
    group: str
    points: tuple[tuple[float, float], ...]
    radius: float = 0.0
    start_angle: float = 0.0
    end_angle: float = 0.0
    width: WidthClass = WidthClass.REGULAR

    def validate(self) -> None:
        if self.kind not in ("line", "dot", "circle", "arc"):
            raise InvalidDefinitionError(f"unknown stroke kind {self.kind!r}")
        _check_ident("stroke group", self.group)
        if self.kind == "line":
            if len(self.points) < 2:
                raise InvalidDefinitionError("line stroke needs >= 2 points")
        else:
            if len(self.points) != 1:
                raise InvalidDefinitionError(
                    f"{self.kind} stroke takes exactly one center point"
                )
            if self.radius <= 0:
                raise InvalidDefinitionError(f"{self.kind} stroke needs radius > 0")


@dataclass(frozen=True)
class Region:
    """A named absence-loaded region of the bounding box."""

    name: str
    constraint: str
    anchor: tuple[float, float]
    extent: tuple[float, float]
    expandable: bool = False

    def rect(self, scale: float = 1.0) -> tuple[float, float, float, float]:
        """Axis-aligned box (x0, y0, x1, y1) centered at the anchor."""
        ax, ay = self.anchor
        w, h = self.extent[0] * scale, self.extent[1] * scale
        return (ax - w / 2, ay - h / 2, ax + w / 2, ay + h / 2)


def rects_overlap(a: tuple[float, float, float, float],
                  b: tuple[float, float, float, float]) -> bool:
    return a[0] < b[2] and b[0] < a[2] and a[1] < b[3] and b[1] < a[3]


@dataclass(frozen=True)
class RegionSchema:
    regions: tuple[Region, ...] = ()

    def region(self, name: str) -> Region:
        for r in self.regions:
            if r.name == name:
                return r
        raise NotFoundError("region", name)

    def names(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.regions)

    def validate(self) -> None:
        seen = set()
        for r in self.regions:
            _check_ident("region name", r.name)
            if r.name in seen:
                raise DuplicateIdError(f"duplicate region name {r.name!r}")
            seen.add(r.name)
            x0, y0, x1, y1 = r.rect()
            if not (0 <= x0 < x1 <= 1 and 0 <= y0 < y1 <= 1):
                raise InvalidDefinitionError(
                    f"region {r.name!r} extends outside the unit box"
                )
        for i, a in enumerate(self.regions):
            for b in self.regions[i + 1:]:
                if rects_overlap(a.rect(), b.rect()):
                    raise RegionOverlapError(
                        f"regions {a.name!r} and {b.name!r} overlap"
                    )


@dataclass(frozen=True)
class Radical:
    """A basic glyph: stroke geometry plus an absence-loaded region schema."""

    id: str
    name: str
    family: Family
    strokes: tuple[Stroke, ...]
    schema: RegionSchema = RegionSchema()
    derives_from: Optional[str] = None
    baseline: LiteralConjunction = EMPTY_CONJUNCTION
    limit_file: Optional[str] = None
    catalog_key: Optional[str] = None


@dataclass(frozen=True)
class StrokeEdit:
    """One schematic geometry edit a derivation rule applies.

    Kinds: add-stroke (append ``strokes``), extend-stroke (translate the last
    vertex of each line in ``group`` by ``delta``), replace-strokes (swap the
    ``group`` strokes for ``strokes``), add-center-circle (append a circle at
    ``center``/``radius``), cross-transform (replace the ``group`` strokes by
    a cross through their centroid, arm length ``radius``).
    """

    kind: str
    group: str = ""
    strokes: tuple[Stroke, ...] = ()
    delta: tuple[float, float] = (0.0, 0.0)
    center: tuple[float, float] = (0.5, 0.5)
    radius: float = 0.18

    EDIT_KINDS = (
        "add-stroke",
        "extend-stroke",
        "replace-strokes",
        "add-center-circle",
        "cross-transform",
    )

    def validate(self) -> None:
        if self.kind not in self.EDIT_KINDS:
            raise InvalidDefinitionError(f"unknown stroke edit kind {self.kind!r}")
        if self.kind in ("extend-stroke", "replace-strokes", "cross-transform"):
            _check_ident("stroke group", self.group)
        if self.kind in ("add-stroke", "replace-strokes") and not self.strokes:
            raise InvalidDefinitionError(f"{self.kind} edit needs strokes")
        for s in self.strokes:
            s.validate()


@dataclass(frozen=True)
class DerivationRule:
    """A named transformation from an existing glyph to a refined one."""

    id: str
    name: str
    source: str  # radical id, or a Family value for family-wide rules
    stroke_edits: tuple[StrokeEdit, ...] = ()
    literals_added: LiteralConjunction = EMPTY_CONJUNCTION
    target_concept: Optional[str] = None
    requires: tuple[str, ...] = ()


@dataclass(frozen=True)
class Concept:
    id: str
    name: str
    aliases: tuple[str, ...] = ()
    area: str = ""
    cryptomorphism_group: Optional[str] = None


@dataclass(frozen=True)
class Glyph:
    """A radical with marks, derivations, embedded sub-glyphs, visual state.

    ``marks`` holds (region, mark-id-or-None) pairs; a None mark is an
    explicitly stored absent entry and carries no information.  ``embeds``
    nests whole glyphs into regions (combine).  ``region_scales`` records
    size adjustments of expandable regions.  All of abbreviated/region_scales
    are visual only and vanish under canonicalization.
    """

    radical: str
    marks: tuple[tuple[str, Optional[str]], ...] = ()
    derivations: tuple[str, ...] = ()
    embeds: tuple[tuple[str, "Glyph"], ...] = ()
    abbreviated: bool = False
    region_scales: tuple[tuple[str, float], ...] = ()

    @property
    def assignment(self) -> dict[str, Optional[str]]:
        return dict(self.marks)

    def mark_at(self, region: str) -> Optional[str]:
        return self.assignment.get(region)

    @property
    def embedded(self) -> dict[str, "Glyph"]:
        return dict(self.embeds)

    def scale_of(self, region: str) -> float:
        return dict(self.region_scales).get(region, 1.0)

    def depth(self) -> int:
        if not self.embeds:
            return 0
        return 1 + max(sub.depth() for _, sub in self.embeds)


def glyph(radical: str,
          assignment: Optional[Mapping[str, Optional[str]]] = None,
          rules: Sequence[str] = (),
          embeds: Optional[Mapping[str, Glyph]] = None,
          abbreviated: bool = False,
          scales: Optional[Mapping[str, float]] = None) -> Glyph:
    """Convenience constructor with mapping-style arguments."""
    return Glyph(
        radical=radical,
        marks=tuple((assignment or {}).items()),
        derivations=tuple(rules),
        embeds=tuple((embeds or {}).items()),
        abbreviated=abbreviated,
        region_scales=tuple((scales or {}).items()),
    )


@dataclass(frozen=True)
class Binding:
    """One meaning-map entry: canonical glyph -> concept."""

    glyph: Glyph
    concept: str
    precedence: bool = False


@dataclass(frozen=True)
class UniverseModel:
    """A finite carrier plus one subset valuation per constraint."""

    carrier: frozenset[str]
    valuation: Mapping[str, frozenset[str]]

    def __post_init__(self) -> None:
        for cid, subset in self.valuation.items():
            if not subset <= self.carrier:
                raise InvalidDefinitionError(
                    f"valuation of {cid!r} is not a subset of the carrier"
                )


def universe(carrier: Iterable[str],
             valuations: Mapping[str, Iterable[str]]) -> UniverseModel:
    return UniverseModel(
        carrier=frozenset(carrier),
        valuation={cid: frozenset(v) for cid, v in valuations.items()},
    )


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

ENTITY_KINDS = ("constraint", "mark", "radical", "rule", "concept")

STRUCTURE_ROOTS = ("set", "category")

MAX_EMBED_DEPTH = 2


@dataclass(frozen=True)
class Registry:
    """A compiled glyph system.  Use :func:`new_registry` to build one."""

    constraints: tuple[PropertyConstraint, ...] = ()
    marks: tuple[Mark, ...] = ()
    radicals: tuple[Radical, ...] = ()
    rules: tuple[DerivationRule, ...] = ()
    concepts: tuple[Concept, ...] = ()
    bindings: tuple[Binding, ...] = ()

    _index: dict = field(default_factory=dict, init=False,
                         compare=False, repr=False)

    def __post_init__(self) -> None:
        idx: dict = {
            "constraint": {c.id: c for c in self.constraints},
            "mark": {m.id: m for m in self.marks},
            "radical": {r.id: r for r in self.radicals},
            "rule": {r.id: r for r in self.rules},
            "concept": {c.id: c for c in self.concepts},
        }
        object.__setattr__(self, "_index", idx)

    # -- lookups ----------------------------------------------------------

    def find(self, kind: str, entity_id: str):
        if kind not in ENTITY_KINDS:
            raise ValueError(f"unknown entity kind {kind!r}")
        return self._index[kind].get(entity_id)

    def get(self, kind: str, entity_id: str):
        entity = self.find(kind, entity_id)
        if entity is None:
            raise NotFoundError(kind, entity_id)
        return entity

    def constraint(self, cid: str) -> PropertyConstraint:
        return self.get("constraint", cid)

    def mark(self, mid: str) -> Mark:
        return self.get("mark", mid)

    def radical(self, rid: str) -> Radical:
        return self.get("radical", rid)

    def rule(self, rid: str) -> DerivationRule:
        return self.get("rule", rid)

    def concept(self, cid: str) -> Concept:
        return self.get("concept", cid)

    # -- derived structure -------------------------------------------------

    def lineage(self, radical_id: str) -> tuple[str, ...]:
        """The radical plus its derives_from ancestors, nearest first."""
        chain = []
        current: Optional[str] = radical_id
        while current is not None:
            if current in chain:
                break  # defensive; construction rejects cycles
            chain.append(current)
            rad = self.find("radical", current)
            current = rad.derives_from if rad is not None else None
        return tuple(chain)

    def rule_depth(self, rule_id: str) -> int:
        rule = self.rule(rule_id)
        if not rule.requires:
            return 0
        return 1 + max(self.rule_depth(r) for r in rule.requires)

    def rule_order_key(self, rule_id: str) -> tuple[int, str]:
        return (self.rule_depth(rule_id), rule_id)

    def binding_for(self, key: str) -> Optional[Binding]:
        for b in self.bindings:
            if canonical_key(b.glyph, self) == key:
                return b
        return None


def get(registry: Registry, kind: str, entity_id: str):
    """Module-level entity lookup; raises NotFoundError when absent."""
    return registry.get(kind, entity_id)


# ---------------------------------------------------------------------------
# Glyph validation and literals
# ---------------------------------------------------------------------------

def applied_rules(g: Glyph) -> set[str]:
    """Rule ids applied anywhere in the glyph tree, embeds included."""
    out = set(g.derivations)
    for _, sub in g.embeds:
        out |= applied_rules(sub)
    return out


def rule_source_matches(rule: DerivationRule, g: Glyph, registry: Registry) -> bool:
    if rule.source in (f.value for f in Family):
        return registry.radical(g.radical).family.value == rule.source
    return rule.source in registry.lineage(g.radical)


def validate_glyph(g: Glyph, registry: Registry) -> None:
    """Raise InvalidGlyphError unless the glyph is well formed."""
    radical = registry.find("radical", g.radical)
    if radical is None:
        raise InvalidGlyphError(f"unknown radical {g.radical!r}")
    names = set(radical.schema.names())

    marked = set()
    for region, mark_id in g.marks:
        if region not in names:
            raise InvalidGlyphError(
                f"unknown region {region!r} on radical {g.radical!r}"
            )
        if region in marked:
            raise InvalidGlyphError(f"region {region!r} assigned twice")
        marked.add(region)
        if mark_id is None:
            continue
        mark = registry.find("mark", mark_id)
        if mark is None:
            raise InvalidGlyphError(f"unknown mark {mark_id!r}")
        constraint = registry.constraint(radical.schema.region(region).constraint)
        if mark.polarity is Polarity.NEGATIVE and not constraint.negatable:
            raise InvalidGlyphError(
                f"negative mark on non-negatable constraint {constraint.id!r}"
            )

    if g.depth() > MAX_EMBED_DEPTH:
        raise InvalidGlyphError(
            f"embedding depth {g.depth()} exceeds {MAX_EMBED_DEPTH}"
        )
    for region, sub in g.embeds:
        if region not in names:
            raise InvalidGlyphError(
                f"unknown region {region!r} on radical {g.radical!r}"
            )
        if g.mark_at(region) is not None:
            raise InvalidGlyphError(
                f"region {region!r} both marked and embedded"
            )
        validate_glyph(sub, registry)

    seen_rules: set[str] = set()
    for rid in g.derivations:
        rule = registry.find("rule", rid)
        if rule is None:
            raise InvalidGlyphError(f"unknown rule {rid!r}")
        if rid in seen_rules:
            raise InvalidGlyphError(f"rule {rid!r} applied twice")
        seen_rules.add(rid)
        if not rule_source_matches(rule, g, registry):
            raise InvalidGlyphError(
                f"rule {rid!r} does not apply to radical {g.radical!r}"
            )
        missing = set(rule.requires) - applied_rules(g)
        if missing:
            raise InvalidGlyphError(
                f"rule {rid!r} requires {sorted(missing)} first"
            )

    for region, scale in g.region_scales:
        if region not in names:
            raise InvalidGlyphError(f"unknown region {region!r}")
        if scale <= 0:
            raise InvalidGlyphError(f"region scale must be positive, got {scale}")
        if scale != 1.0 and not radical.schema.region(region).expandable:
            raise InvalidGlyphError(f"region {region!r} is not expandable")
    check_region_fit(g, radical)

    glyph_literals(g, registry)  # raises LiteralConflictError on sign clash


def check_region_fit(g: Glyph, radical: Radical) -> None:
    """Regions at their effective scales must stay in-box and disjoint."""
    rects = []
    for r in radical.schema.regions:
        rect = r.rect(g.scale_of(r.name))
        x0, y0, x1, y1 = rect
        if not (0 <= x0 < x1 <= 1 and 0 <= y0 < y1 <= 1):
            raise RegionOverlapError(
                f"region {r.name!r} leaves the unit box at scale "
                f"{g.scale_of(r.name)}"
            )
        rects.append((r.name, rect))
    for i, (na, ra) in enumerate(rects):
        for nb, rb in rects[i + 1:]:
            if rects_overlap(ra, rb):
                raise RegionOverlapError(
                    f"regions {na!r} and {nb!r} overlap after expansion"
                )


def glyph_literals(g: Glyph, registry: Registry) -> LiteralConjunction:
    """All literals the glyph asserts: baseline + marks + rules + embeds."""
    radical = registry.radical(g.radical)
    items: list[Literal] = list(radical.baseline)
    for region, mark_id in g.marks:
        if mark_id is None:
            continue
        mark = registry.mark(mark_id)
        constraint = radical.schema.region(region).constraint
        items.append(Literal(constraint, mark.polarity))
    for rid in g.derivations:
        items.extend(registry.rule(rid).literals_added)
    for _, sub in g.embeds:
        items.extend(glyph_literals(sub, registry))
    return LiteralConjunction.of(items)


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------

def canonical_form(g: Glyph, registry: Registry, *, keep_visual: bool = False) -> Glyph:
    """Normal form defining glyph identity.

    Explicit absent entries are dropped, marks follow schema region order,
    derivations follow the rule-dependency order, embedded sub-glyphs are
    canonicalized recursively.  Unless ``keep_visual`` is set, the
    abbreviated flag and region scales are cleared: they never affect
    meaning.  Idempotent.
    """
    radical = registry.radical(g.radical)
    order = {name: i for i, name in enumerate(radical.schema.names())}
    marks = tuple(sorted(
        ((r, m) for r, m in g.marks if m is not None),
        key=lambda rm: order[rm[0]],
    ))
    rules = tuple(sorted(set(g.derivations), key=registry.rule_order_key))
    embeds = tuple(sorted(
        ((r, canonical_form(sub, registry, keep_visual=keep_visual))
         for r, sub in g.embeds),
        key=lambda rg: order[rg[0]],
    ))
    if keep_visual:
        scales = tuple(sorted(
            (r, s) for r, s in g.region_scales if s != 1.0
        ))
        abbreviated = g.abbreviated
    else:
        scales = ()
        abbreviated = False
    return Glyph(
        radical=g.radical,
        marks=marks,
        derivations=rules,
        embeds=embeds,
        abbreviated=abbreviated,
        region_scales=scales,
    )


def canonical_key(g: Glyph, registry: Registry) -> str:
    """Deterministic text key of the canonical form (meaning-map key)."""
    c = canonical_form(g, registry)
    parts = [f"{r}={m}" for r, m in c.marks]
    parts += [f"{r}=({canonical_key(sub, registry)})" for r, sub in c.embeds]
    body = ",".join(parts)
    rules = ",".join(c.derivations)
    return f"{c.radical}({body};rules:{rules})"


def canonical_id(g: Glyph, registry: Registry) -> str:
    """URL- and filename-safe slug of the canonical form."""
    c = canonical_form(g, registry)
    parts = [c.radical]
    parts += [f"{r}.{m}" for r, m in c.marks]
    parts += [f"e.{r}.({canonical_id(sub, registry)})" for r, sub in c.embeds]
    parts += [f"r.{rid}" for rid in c.derivations]
    return "_".join(parts)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _check_unique(kind: str, ids: Iterable[str]) -> None:
    seen = set()
    for i in ids:
        if i in seen:
            raise DuplicateIdError(f"duplicate {kind} id {i!r}")
        seen.add(i)


def _validate_radical_families(radicals: Sequence[Radical],
                               by_id: Mapping[str, Radical]) -> None:
    def rooted_in(rad: Radical, roots: tuple[str, ...]) -> bool:
        current: Optional[Radical] = rad
        seen = set()
        while current is not None:
            if current.id in roots:
                return True
            if current.id in seen:
                raise InvalidDefinitionError(
                    f"radical lineage cycle through {current.id!r}"
                )
            seen.add(current.id)
            current = by_id.get(current.derives_from) if current.derives_from else None
        return False

    topo_roots = [r.id for r in radicals
                  if r.family is Family.TOPOLOGICAL and r.derives_from is None]
    if len(topo_roots) > 2:
        raise InvalidDefinitionError(
            f"more than two topological root radicals: {sorted(topo_roots)}"
        )
    for rad in radicals:
        if rad.derives_from is not None and rad.derives_from not in by_id:
            raise DanglingReferenceError("radical", rad.derives_from, rad.id)
        if rad.family is Family.STRUCTURE and not rooted_in(rad, STRUCTURE_ROOTS):
            raise InvalidDefinitionError(
                f"structure radical {rad.id!r} has no lineage to "
                f"{' or '.join(STRUCTURE_ROOTS)}"
            )
        if rad.family is Family.TOPOLOGICAL and rad.derives_from is not None:
            parent = by_id[rad.derives_from]
            if parent.family is not Family.TOPOLOGICAL:
                raise InvalidDefinitionError(
                    f"topological radical {rad.id!r} derives from "
                    f"non-topological {parent.id!r}"
                )


def new_registry(*,
                 constraints: Sequence[PropertyConstraint] = (),
                 marks: Sequence[Mark] = (),
                 radicals: Sequence[Radical] = (),
                 rules: Sequence[DerivationRule] = (),
                 concepts: Sequence[Concept] = (),
                 bindings: Sequence[Binding] = ()) -> Registry:
    """Compile a definition set into an immutable, fully checked Registry.

    Deterministic: equal definition sets produce equal registries, and no
    entity is synthesized during construction.
    """
    constraints = tuple(constraints)
    marks = tuple(marks)
    radicals = tuple(radicals)
    rules = tuple(rules)
    concepts = tuple(concepts)

    for kind, entities in (("constraint", constraints), ("mark", marks),
                           ("radical", radicals), ("rule", rules),
                           ("concept", concepts)):
        _check_unique(kind, (e.id for e in entities))
        for e in entities:
            _check_ident(f"{kind} id", e.id)

    for c in constraints:
        if not c.name:
            raise InvalidDefinitionError(f"constraint {c.id!r} has empty name")

    by_polarity: dict[Polarity, str] = {}
    printables = set()
    for m in marks:
        if m.polarity in by_polarity:
            raise InvalidDefinitionError(
                f"marks {by_polarity[m.polarity]!r} and {m.id!r} share "
                f"polarity {m.polarity.value}"
            )
        by_polarity[m.polarity] = m.id
        if m.printable not in MARK_SHAPES:
            raise InvalidDefinitionError(
                f"mark {m.id!r} has unknown shape {m.printable!r}"
            )
        if m.printable in printables:
            raise InvalidDefinitionError(
                f"duplicate mark shape {m.printable!r}"
            )
        printables.add(m.printable)

    constraint_ids = {c.id for c in constraints}
    radical_ids = {r.id: r for r in radicals}

    for rad in radicals:
        if not rad.name:
            raise InvalidDefinitionError(f"radical {rad.id!r} has empty name")
        if not rad.strokes:
            raise InvalidDefinitionError(f"radical {rad.id!r} has no strokes")
        for s in rad.strokes:
            s.validate()
        rad.schema.validate()
        for region in rad.schema.regions:
            if region.constraint not in constraint_ids:
                raise DanglingReferenceError("constraint", region.constraint, rad.id)
        for lit in rad.baseline:
            if lit.constraint not in constraint_ids:
                raise DanglingReferenceError("constraint", lit.constraint, rad.id)
        if rad.limit_file is not None:
            if not any(s.group == rad.limit_file for s in rad.strokes):
                raise DanglingReferenceError("stroke group", rad.limit_file, rad.id)
    _validate_radical_families(radicals, radical_ids)

    concept_ids = {c.id for c in concepts}
    rule_ids = {r.id for r in rules}
    family_values = {f.value for f in Family}
    for rule in rules:
        if not rule.stroke_edits and not len(rule.literals_added):
            raise InvalidDefinitionError(
                f"rule {rule.id!r} has neither stroke edits nor literals"
            )
        if rule.source not in family_values and rule.source not in radical_ids:
            raise DanglingReferenceError("radical", rule.source, rule.id)
        for edit in rule.stroke_edits:
            edit.validate()
        for lit in rule.literals_added:
            if lit.constraint not in constraint_ids:
                raise DanglingReferenceError("constraint", lit.constraint, rule.id)
        if rule.target_concept is not None and rule.target_concept not in concept_ids:
            raise DanglingReferenceError("concept", rule.target_concept, rule.id)
        for req in rule.requires:
            if req not in rule_ids:
                raise DanglingReferenceError("rule", req, rule.id)

    registry = Registry(
        constraints=constraints,
        marks=marks,
        radicals=radicals,
        rules=rules,
        concepts=concepts,
        bindings=(),
    )

    # Rule requirement graph must be acyclic for the canonical order to exist.
    for rule in rules:
        _rule_depth_checked(registry, rule.id, ())

    canonical_bindings = []
    seen_keys: dict[str, str] = {}
    for b in bindings:
        if b.concept not in concept_ids:
            raise DanglingReferenceError("concept", b.concept, "binding")
        validate_glyph(b.glyph, registry)
        cglyph = canonical_form(b.glyph, registry)
        key = canonical_key(cglyph, registry)
        if key in seen_keys and seen_keys[key] != b.concept:
            raise InvalidDefinitionError(
                f"glyph {key} bound to both {seen_keys[key]!r} and {b.concept!r}"
            )
        seen_keys[key] = b.concept
        canonical_bindings.append(replace(b, glyph=cglyph))

    return replace(registry, bindings=tuple(canonical_bindings))


def _rule_depth_checked(registry: Registry, rule_id: str,
                        stack: tuple[str, ...]) -> int:
    if rule_id in stack:
        raise InvalidDefinitionError(
            f"rule requirement cycle: {' -> '.join((*stack, rule_id))}"
        )
    rule = registry.rule(rule_id)
    if not rule.requires:
        return 0
    return 1 + max(
        _rule_depth_checked(registry, r, (*stack, rule_id)) for r in rule.requires
    )
