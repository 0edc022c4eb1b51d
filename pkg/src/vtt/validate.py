"""Design-principle checks over a compiled registry.

Three checkers: meaning-map functionality and cryptomorphism precedence
(errors), density scoring (information per stroke), and coverage of the
basic radical catalog (informational).  Findings are plain data; reports
are deterministic for equal registries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from .compose import effective_strokes
from .model import (
    Glyph,
    NotationError,
    Registry,
    applied_rules,
    canonical_key,
    validate_glyph,
)

__all__ = [
    "Finding",
    "LintReport",
    "check_meaning_map",
    "check_universality",
    "density",
    "lint",
    "report_text",
    "report_json",
    "CATALOG_KEYS",
]

# The basic radical catalog: the seed system must cover every key.
CATALOG_KEYS = (
    "set",
    "kolmogorov-space",
    "hausdorff-space",
    "ring-field-algebra",
    "module-vector-space",
    "pairs-extensions",
    "group",
    "group-topological",
    "lie-algebra",
    "manifold-bundle",
    "classical-variety",
    "sheaf-geometric",
    "dynamical-system",
    "process",
    "topological-vector-space",
    "cw-complex",
    "simplicial-set",
    "category",
    "globular-set",
    "enriched-category",
    "order-lattice",
    "deduction-system",
    "lambda-calculus",
)

_SEVERITY_RANK = {"error": 0, "warning": 1, "info": 2}


@dataclass(frozen=True)
class Finding:
    severity: str  # error | warning | info
    code: str
    message: str
    subjects: tuple[str, ...] = ()

    def sort_key(self):
        return (_SEVERITY_RANK[self.severity], self.code, self.subjects,
                self.message)


@dataclass(frozen=True)
class LintReport:
    findings: tuple[Finding, ...] = ()
    density_table: tuple[tuple[str, float], ...] = ()

    @property
    def errors(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "error")

    @property
    def ok(self) -> bool:
        return not self.errors

    def merged(self, other: "LintReport") -> "LintReport":
        return LintReport(
            findings=tuple(sorted(self.findings + other.findings,
                                  key=Finding.sort_key)),
            density_table=tuple(sorted(
                dict((*self.density_table, *other.density_table)).items()
            )),
        )


def _sorted_report(findings, density_table=()) -> LintReport:
    return LintReport(
        findings=tuple(sorted(findings, key=Finding.sort_key)),
        density_table=tuple(sorted(density_table)),
    )


def check_meaning_map(registry: Registry) -> LintReport:
    """Functionality and precedence checks on the meaning map.

    Errors: a glyph bound to two concepts; a cryptomorphism group whose
    bindings carry zero or multiple precedence flags; a binding whose glyph
    does not validate.  Warnings: concepts with no glyph.  Info: the
    concept-to-glyph injectivity ratio.
    """
    findings = []
    by_key: dict[str, list] = {}
    for binding in registry.bindings:
        try:
            key = canonical_key(binding.glyph, registry)
            validate_glyph(binding.glyph, registry)
        except NotationError as err:
            findings.append(Finding(
                severity="error", code="invalid-binding",
                message=f"binding to {binding.concept!r} does not validate: {err}",
                subjects=(binding.concept,),
            ))
            continue
        by_key.setdefault(key, []).append(binding)

    for key in sorted(by_key):
        concepts = sorted({b.concept for b in by_key[key]})
        if len(concepts) > 1:
            findings.append(Finding(
                severity="error", code="glyph-overload",
                message=f"glyph {key} is bound to {len(concepts)} concepts",
                subjects=(key, *concepts),
            ))

    bound_concepts = {b.concept for bs in by_key.values() for b in bs}
    for concept in registry.concepts:
        if concept.id not in bound_concepts:
            findings.append(Finding(
                severity="warning", code="unbound-concept",
                message=f"concept {concept.id!r} has no glyph",
                subjects=(concept.id,),
            ))

    groups: dict[str, list] = {}
    for concept in registry.concepts:
        if concept.cryptomorphism_group is not None:
            groups.setdefault(concept.cryptomorphism_group, []).append(concept.id)
    for group_id in sorted(groups):
        members = set(groups[group_id])
        group_bindings = [b for bs in by_key.values() for b in bs
                          if b.concept in members]
        if not group_bindings:
            continue
        precedence = [b for b in group_bindings if b.precedence]
        if not precedence:
            findings.append(Finding(
                severity="error", code="missing-precedence",
                message=(f"cryptomorphism group {group_id!r} has "
                         f"{len(group_bindings)} bindings but none marked "
                         f"precedence"),
                subjects=(group_id,),
            ))
        elif len(precedence) > 1:
            findings.append(Finding(
                severity="error", code="multiple-precedence",
                message=(f"cryptomorphism group {group_id!r} has "
                         f"{len(precedence)} precedence bindings"),
                subjects=(group_id,),
            ))

    if by_key:
        ratio = len(bound_concepts) / len(by_key)
        findings.append(Finding(
            severity="info", code="injectivity-ratio",
            message=(f"{len(bound_concepts)} bound concepts over "
                     f"{len(by_key)} distinct glyphs: ratio {ratio:.3f}"),
        ))
    return _sorted_report(findings)


def _count_strokes(g: Glyph, registry: Registry) -> int:
    # Limit-file strokes count in both abbreviation states, so the score
    # is invariant under abbreviate/expand.
    total = len(effective_strokes(g, registry, include_suppressed=True))
    for _, sub in g.embeds:
        total += _count_strokes(sub, registry)
    return total


def _count_marked(g: Glyph) -> int:
    total = sum(1 for _, m in g.marks if m is not None)
    for _, sub in g.embeds:
        total += _count_marked(sub)
    return total


def density(g: Glyph, registry: Registry) -> float:
    """Information per stroke.

    score = (marked regions * log2(|marks| + 1) + rule-added literals)
            / stroke count after edits.
    """
    validate_glyph(g, registry)
    strokes = _count_strokes(g, registry)
    if strokes == 0:
        raise NotationError(f"glyph on {g.radical!r} has zero strokes")
    rule_literals = set()
    for rule_id in sorted(applied_rules(g)):
        rule_literals.update(registry.rule(rule_id).literals_added)
    marked = _count_marked(g)
    bits_per_region = math.log2(len(registry.marks) + 1)
    return (marked * bits_per_region + len(rule_literals)) / strokes


def check_universality(registry: Registry) -> LintReport:
    """Coverage of the basic radical catalog plus structure lineage checks."""
    findings = []
    present = {r.catalog_key for r in registry.radicals if r.catalog_key}
    for key in CATALOG_KEYS:
        if key in present:
            findings.append(Finding(
                severity="info", code="catalog-present",
                message=f"catalog radical {key!r} is present",
                subjects=(key,),
            ))
        else:
            findings.append(Finding(
                severity="warning", code="catalog-missing",
                message=f"catalog radical {key!r} is absent",
                subjects=(key,),
            ))
    from .model import Family, STRUCTURE_ROOTS
    for radical in registry.radicals:
        if radical.family is Family.STRUCTURE:
            if not any(a in STRUCTURE_ROOTS for a in registry.lineage(radical.id)):
                findings.append(Finding(
                    severity="warning", code="orphan-structure-radical",
                    message=(f"structure radical {radical.id!r} has no "
                             f"lineage to {' or '.join(STRUCTURE_ROOTS)}"),
                    subjects=(radical.id,),
                ))
    return _sorted_report(findings)


def lint(registry: Registry) -> LintReport:
    """All checks plus a density score per bound glyph."""
    table = []
    for binding in registry.bindings:
        try:
            key = canonical_key(binding.glyph, registry)
            table.append((key, density(binding.glyph, registry)))
        except NotationError:
            continue  # the meaning-map check reports the broken binding
    report = check_meaning_map(registry).merged(check_universality(registry))
    return LintReport(findings=report.findings,
                      density_table=tuple(sorted(table)))


def report_json(report: LintReport) -> dict:
    return {
        "findings": [
            {"severity": f.severity, "code": f.code, "message": f.message,
             "subjects": list(f.subjects)}
            for f in report.findings
        ],
        "density": [
            {"glyph": key, "score": score}
            for key, score in report.density_table
        ],
        "ok": report.ok,
    }


def report_text(report: LintReport) -> str:
    lines = []
    for f in report.findings:
        subjects = f" [{', '.join(f.subjects)}]" if f.subjects else ""
        lines.append(f"{f.severity}: {f.code}: {f.message}{subjects}")
    for key, score in report.density_table:
        lines.append(f"density: {key} = {score:.4f}")
    lines.append("ok" if report.ok else
                 f"failed with {len(report.errors)} error(s)")
    return "\n".join(lines) + "\n"
