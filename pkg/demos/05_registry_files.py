"""The file surfaces: definition language, interchange JSON, TeX macros.

Everything round-trips: parse/print on the definition language, and
export/import on the interchange document.
"""

from pathlib import Path

from vtt import (
    compile_document,
    emit_tex,
    export_json,
    import_registry,
    parse,
    print_document,
    seed_source,
)

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

document = parse(seed_source())
print(f"seed source: {len(document.statements)} statements")

# The printer is a canonical formatter and a fixed point of parse.
printed = print_document(document)
assert parse(printed) == document
(out / "seed-formatted.vtt").write_text(printed, encoding="utf-8")
print("wrote", out / "seed-formatted.vtt")

registry = compile_document(document)
interchange = export_json(registry)
assert import_registry(interchange) == registry
(out / "registry.json").write_text(interchange, encoding="utf-8")
print("wrote", out / "registry.json")

bundle = emit_tex(registry)
(out / "vttglyphs.sty").write_text(bundle.sty, encoding="utf-8")
print("wrote", out / "vttglyphs.sty", f"({len(bundle.entries)} macros)")
print()
print("sample macros:")
for macro, cid, concept in bundle.entries[:4]:
    print(f"  \\{macro:34s} -> {concept}")
