"""vtt: a compiler, semantic engine, validator, and renderer for
absence-loaded glyph systems.

The core idea: a glyph is a radical whose bounding-box regions are loaded
with logical constraints; marks placed in those regions (or their absence)
read as a conjunction of signed literals.  This package compiles declarative
definitions of such systems into registries supporting denotation over
finite models, refinement ordering, family enumeration, deterministic SVG
rendering, TeX emission, and a read-only HTTP compose service.
"""

from .model import (
    Binding,
    Concept,
    DerivationRule,
    Family,
    Glyph,
    Literal,
    LiteralConjunction,
    Mark,
    NotationError,
    Polarity,
    PropertyConstraint,
    Radical,
    Region,
    RegionSchema,
    Registry,
    Stroke,
    StrokeEdit,
    UniverseModel,
    canonical_form,
    canonical_id,
    canonical_key,
    get,
    glyph,
    new_registry,
    universe,
)
from .semantics import (
    constraint_of,
    denote,
    enumerate_family,
    equivalent,
    invert,
    lookup_concept,
    refines,
)
from .compose import (
    abbreviate,
    apply_derivation,
    canonicalize,
    combine,
    expand,
    expand_region,
    is_irregular,
    place_mark,
)
from .dsl import (
    DefinitionSource,
    compile_document,
    parse,
    parse_expression,
    parse_glyph_literal,
    print_document,
    print_expression,
    print_glyph_literal,
)
from .validate import check_meaning_map, check_universality, density, lint
from .render import (
    emit_tex,
    export,
    export_json,
    import_registry,
    layout,
    render_expression,
    render_glyph_svg,
    to_svg,
)
from .seed import seed_document, seed_registry, seed_source

__version__ = "0.1.0"
