"""Linting a registry: meaning-map checks, catalog coverage, density."""

from dataclasses import replace

from vtt import Glyph, density, glyph, lint, seed_registry
from vtt.model import Binding
from vtt.validate import report_text

registry = seed_registry()

report = lint(registry)
print("seed registry:", "clean" if report.ok else "NOT CLEAN")
print("findings:", len(report.findings),
      "(errors:", len(report.errors), ")")
print()

print("densest bound glyphs (information per stroke):")
for key, score in sorted(report.density_table, key=lambda kv: -kv[1])[:5]:
    print(f"  {score:5.3f}  {key}")
print()

print("the same glyph gets denser as regions are marked:")
for assignment in ({}, {"center": "dot"}, {"center": "dot", "connectivity": "dot"}):
    g = glyph("hausdorff-space", assignment)
    print(f"  {len(assignment)} marked region(s): {density(g, registry):.3f}")
print()

# Inject a violation the way a corrupted interchange file would carry one
# (construction would reject it, so we bypass it deliberately).
dirty = replace(registry, bindings=(
    *registry.bindings,
    Binding(glyph=glyph("hausdorff-space", {"center": "dot"}),
            concept="lattice"),
))
print("after injecting an overloaded binding:")
print(report_text(lint(dirty)).splitlines()[0])
