"""Logical meaning of absence loading.

A glyph reads as a conjunction of signed constraint literals: one literal per
marked region, plus whatever its derivation rules and radical baseline
assert.  Vacant regions assert nothing.  Denotation evaluates that
conjunction over a finite universe model; refinement compares literal sets;
enumeration walks every mark assignment of a schema.
"""

from __future__ import annotations

from typing import Iterator, Optional, Sequence, Union

from .model import (
    Concept,
    Glyph,
    Literal,
    LiteralConjunction,
    Mark,
    NotationError,
    Polarity,
    Radical,
    Registry,
    UniverseModel,
    canonical_form,
    canonical_key,
    glyph_literals,
    validate_glyph,
)

__all__ = [
    "LiteralConjunction",
    "Literal",
    "constraint_of",
    "denote",
    "refines",
    "equivalent",
    "GlyphFamily",
    "enumerate_family",
    "invert",
    "lookup_concept",
    "MissingValuationError",
    "UnexpressibleError",
    "EnumerationRefusedError",
    "DEFAULT_ENUMERATION_CEILING",
]


class MissingValuationError(NotationError):
    """The model has no valuation for a constraint the glyph references."""


class UnexpressibleError(NotationError):
    """A literal has no region or rule home on the chosen radical."""


class EnumerationRefusedError(NotationError):
    """The family size exceeds the configured ceiling."""


DEFAULT_ENUMERATION_CEILING = 10_000_000


def constraint_of(g: Glyph, registry: Registry) -> LiteralConjunction:
    """The literal conjunction a glyph asserts."""
    validate_glyph(g, registry)
    return glyph_literals(g, registry)


def denote(g: Glyph, model: UniverseModel, registry: Registry) -> frozenset[str]:
    """Elements of the carrier satisfying every literal of the glyph.

    An element satisfies a positive literal when it lies in the constraint's
    valuation and a negative literal when it does not.  The empty conjunction
    denotes the whole carrier.
    """
    conjunction = constraint_of(g, registry)
    for lit in conjunction:
        if lit.constraint not in model.valuation:
            raise MissingValuationError(
                f"model has no valuation for constraint {lit.constraint!r}"
            )
    members = []
    for x in model.carrier:
        ok = True
        for lit in conjunction:
            inside = x in model.valuation[lit.constraint]
            if inside != (lit.polarity is Polarity.POSITIVE):
                ok = False
                break
        if ok:
            members.append(x)
    return frozenset(members)


def _lineage_set(g: Glyph, registry: Registry) -> frozenset[str]:
    out = set(registry.lineage(g.radical))
    for _, sub in g.embeds:
        out |= _lineage_set(sub, registry)
    return frozenset(out)


def refines(g1: Glyph, g2: Glyph, registry: Registry) -> Optional[bool]:
    """True iff g1's literal set contains g2's; None when unordered.

    Glyphs rooted in incompatible radical lineages are not comparable at
    all: the result is None rather than False, since neither direction of
    the ordering is meaningful for them.
    """
    validate_glyph(g1, registry)
    validate_glyph(g2, registry)
    l1, l2 = _lineage_set(g1, registry), _lineage_set(g2, registry)
    if not (l1 >= l2 or l2 >= l1):
        return None
    return constraint_of(g1, registry).issuperset(constraint_of(g2, registry))


def equivalent(g1: Glyph, g2: Glyph, registry: Registry) -> bool:
    """Visual indistinguishability: equality of canonical forms."""
    validate_glyph(g1, registry)
    validate_glyph(g2, registry)
    return canonical_form(g1, registry) == canonical_form(g2, registry)


class GlyphFamily:
    """Lazy enumeration of every mark assignment over a radical's schema.

    ``count`` is exact and computed up front; iteration yields canonical
    glyphs, pairwise non-equivalent by construction.
    """

    def __init__(self, radical: Radical, marks: Sequence[Mark],
                 registry: Registry,
                 ceiling: int = DEFAULT_ENUMERATION_CEILING):
        self.radical = radical
        self.registry = registry
        self._choices: list[list[Optional[str]]] = []
        for region in radical.schema.regions:
            constraint = registry.constraint(region.constraint)
            options: list[Optional[str]] = [None]
            for mark in marks:
                if mark.polarity is Polarity.NEGATIVE and not constraint.negatable:
                    continue
                options.append(mark.id)
            self._choices.append(options)
        count = 1
        for options in self._choices:
            count *= len(options)
        if count > ceiling:
            raise EnumerationRefusedError(
                f"family size {count} exceeds ceiling {ceiling}"
            )
        self.count = count

    def __iter__(self) -> Iterator[Glyph]:
        names = self.radical.schema.names()

        def walk(i: int, acc: tuple[tuple[str, str], ...]) -> Iterator[Glyph]:
            if i == len(names):
                yield Glyph(radical=self.radical.id, marks=acc)
                return
            for option in self._choices[i]:
                if option is None:
                    yield from walk(i + 1, acc)
                else:
                    yield from walk(i + 1, (*acc, (names[i], option)))

        return walk(0, ())

    def __len__(self) -> int:
        return self.count


def enumerate_family(radical: Union[Radical, str],
                     marks: Sequence[Union[Mark, str]],
                     registry: Registry,
                     ceiling: int = DEFAULT_ENUMERATION_CEILING) -> GlyphFamily:
    """Family of all glyphs assignable on a radical's schema.

    Regions whose constraint is not negatable admit only positive marks, so
    the exact count is the product of per-region choice counts; with a full
    two-mark vocabulary and negatable constraints that is 3^n.
    """
    rad = registry.radical(radical) if isinstance(radical, str) else radical
    if not rad.schema.regions:
        raise NotationError(f"radical {rad.id!r} has an empty region schema")
    resolved = [registry.mark(m) if isinstance(m, str) else m for m in marks]
    return GlyphFamily(rad, resolved, registry, ceiling)


def invert(target: LiteralConjunction, radical: Union[Radical, str],
           registry: Registry) -> Glyph:
    """A canonical glyph on ``radical`` whose constraint_of equals ``target``.

    Literals bound to schema regions become marks; any remainder must be
    covered exactly by a set of applicable derivation rules (smallest set,
    ties broken by rule ids).  Raises UnexpressibleError when no exact cover
    exists.
    """
    rad = registry.radical(radical) if isinstance(radical, str) else radical
    remaining = set(target)

    for lit in rad.baseline:
        if lit not in remaining:
            raise UnexpressibleError(
                f"radical {rad.id!r} always asserts {lit}, absent from target"
            )
        remaining.discard(lit)

    marks_by_polarity = {m.polarity: m for m in registry.marks}
    assignment: list[tuple[str, str]] = []
    for region in rad.schema.regions:
        for lit in sorted(remaining):
            if lit.constraint != region.constraint:
                continue
            mark = marks_by_polarity.get(lit.polarity)
            if mark is None:
                continue
            constraint = registry.constraint(region.constraint)
            if lit.polarity is Polarity.NEGATIVE and not constraint.negatable:
                continue
            assignment.append((region.name, mark.id))
            remaining.discard(lit)
            break

    rule_ids = _cover_with_rules(frozenset(remaining), rad, registry)
    g = Glyph(radical=rad.id, marks=tuple(assignment),
              derivations=tuple(rule_ids))
    result = canonical_form(g, registry)
    achieved = glyph_literals(result, registry)
    if set(achieved) != set(target):
        raise UnexpressibleError(
            f"target {target} is not expressible on radical {rad.id!r}"
        )
    return result


def _cover_with_rules(remaining: frozenset[Literal], radical: Radical,
                      registry: Registry) -> tuple[str, ...]:
    """Smallest rule set whose added literals cover ``remaining`` exactly."""
    if not remaining:
        return ()
    probe = Glyph(radical=radical.id)
    candidates = sorted(
        (r for r in registry.rules
         if _source_ok(r, radical, registry)
         and set(r.literals_added) <= remaining
         and len(r.literals_added)),
        key=lambda r: r.id,
    )
    # Breadth-first over subsets: rule sets are small, and this finds the
    # minimum-cardinality cover deterministically.
    frontier: list[tuple[frozenset[Literal], tuple[str, ...]]] = [(remaining, ())]
    for _ in range(len(candidates)):
        next_frontier = []
        for left, chosen in frontier:
            last = chosen[-1] if chosen else ""
            for rule in candidates:
                if rule.id <= last or rule.id in chosen:
                    continue
                added = set(rule.literals_added)
                if not added <= left:
                    continue
                picked = (*chosen, rule.id)
                rest = left - added
                if not rest and _requires_ok(picked, registry):
                    return picked
                next_frontier.append((frozenset(rest), picked))
        frontier = next_frontier
    raise UnexpressibleError(
        f"literals {sorted(str(l) for l in remaining)} have no region or "
        f"rule home on radical {radical.id!r}"
    )


def _source_ok(rule, radical: Radical, registry: Registry) -> bool:
    if rule.source == radical.family.value:
        return True
    return rule.source in registry.lineage(radical.id)


def _requires_ok(rule_ids: tuple[str, ...], registry: Registry) -> bool:
    chosen = set(rule_ids)
    return all(set(registry.rule(r).requires) <= chosen for r in rule_ids)


def lookup_concept(g: Glyph, registry: Registry) -> Optional[Concept]:
    """The concept bound to the glyph's canonical form, or None if unbound."""
    validate_glyph(g, registry)
    key = canonical_key(g, registry)
    for binding in registry.bindings:
        if canonical_key(binding.glyph, registry) == key:
            return registry.concept(binding.concept)
    return None
