"""Growing structures by derivation: set to group to Hilbert space.

Each derivation rule edits the glyph's strokes and adds literals, so every
step strictly refines the one before it.  Combining a structure glyph with
the Hausdorff radical embeds it in the expandable algebraic region.
"""

from vtt import (
    Glyph,
    apply_derivation,
    combine,
    constraint_of,
    lookup_concept,
    refines,
    seed_registry,
)

registry = seed_registry()

chain = [Glyph(radical="set")]
for rule in ("group", "abelian", "vector-space"):
    chain.append(apply_derivation(chain[-1], rule, registry))
chain.append(combine(chain[-1], "hausdorff-space", registry))
for rule in ("banach", "hilbert"):
    chain.append(apply_derivation(chain[-1], rule, registry))

previous = None
for g in chain:
    concept = lookup_concept(g, registry)
    name = concept.name if concept else "(unbound)"
    literals = constraint_of(g, registry)
    print(f"{name:28s} {literals}")
    if previous is not None:
        assert refines(g, previous, registry) is True
    previous = g

print()
print("Every step refines the previous one; the reverse never holds:")
print("  refines(set, hilbert) =", refines(chain[0], chain[-1], registry))
print("  refines(hilbert, set) =", refines(chain[-1], chain[0], registry))

hausdorff = Glyph(radical="hausdorff-space")
group = apply_derivation(Glyph(radical="set"), "group", registry)
print("  refines(hausdorff, group) =", refines(hausdorff, group, registry),
      " (unordered: incompatible lineages)")
