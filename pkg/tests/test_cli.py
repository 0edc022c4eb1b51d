"""Command-line workflows: compile, validate, render, lookup, enumerate,
emit-tex."""

from __future__ import annotations

import json
import subprocess
import sys
from dataclasses import replace
from pathlib import Path

import pytest

from vtt import dsl, render
from vtt.cli import main
from vtt.model import Binding, glyph
from vtt.seed import seed_registry, seed_source


@pytest.fixture(scope="module")
def seed_vtt(tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("cli") / "seed.vtt"
    path.write_text(seed_source().text, encoding="utf-8")
    return path


@pytest.fixture(scope="module")
def registry_json(tmp_path_factory, seed_vtt) -> Path:
    out = tmp_path_factory.mktemp("cli-registry") / "registry.json"
    assert main(["compile", str(seed_vtt), "-o", str(out)]) == 0
    return out


def test_compile_equals_library_pipeline(registry_json, seed_vtt):
    expected = render.export_json(
        dsl.compile_document(dsl.parse(seed_vtt.read_text(encoding="utf-8")))
    )
    assert registry_json.read_text(encoding="utf-8") == expected


def test_compile_reports_errors_with_status_one(tmp_path, capsys):
    bad = tmp_path / "bad.vtt"
    bad.write_text('constraint warm negatable\n', encoding="utf-8")
    assert main(["compile", str(bad)]) == 1
    assert "error:" in capsys.readouterr().err


def test_validate_clean_registry(registry_json, capsys):
    assert main(["validate", str(registry_json)]) == 0
    out = capsys.readouterr().out
    assert "ok" in out.splitlines()[-1]


def test_validate_flags_injected_overload(tmp_path, capsys):
    registry = seed_registry()
    dirty = replace(registry, bindings=(
        *registry.bindings,
        Binding(glyph=glyph("hausdorff-space", {"center": "dot"}),
                concept="lattice"),
    ))
    path = tmp_path / "dirty.json"
    path.write_text(render.export_json(dirty), encoding="utf-8")
    assert main(["validate", str(path)]) == 1
    assert "glyph-overload" in capsys.readouterr().out


def test_render_single_glyph(registry_json, tmp_path, capsys):
    out = tmp_path / "svg"
    assert main(["render", str(registry_json), "--glyph",
                 "compact-hausdorff-space", "-o", str(out)]) == 0
    files = sorted(out.glob("*.svg"))
    assert len(files) == 1
    body = files[0].read_text(encoding="utf-8")
    assert body.startswith("<svg")


def test_render_accepts_glyph_literals(registry_json, tmp_path):
    out = tmp_path / "svg"
    assert main(["render", str(registry_json), "--glyph",
                 "set( ; rules: group )", "-o", str(out)]) == 0
    assert (out / "set_r.group.svg").exists()


def test_render_all_bound_glyphs(registry_json, tmp_path):
    out = tmp_path / "all"
    assert main(["render", str(registry_json), "-o", str(out)]) == 0
    assert len(list(out.glob("*.svg"))) == len(seed_registry().bindings)


def test_lookup_bound_and_unbound(registry_json, capsys):
    assert main(["lookup", str(registry_json), "--glyph-literal",
                 "hausdorff-space( center=dot )"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "compact Hausdorff space"

    assert main(["lookup", str(registry_json), "--glyph-literal",
                 "hausdorff-space( connectivity=dot )"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "unbound"


def test_enumerate_prints_count_and_literals(registry_json, capsys):
    assert main(["enumerate", str(registry_json), "--radical",
                 "hausdorff-space", "--limit", "5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "count 729"  # 3^6 regions
    assert len(lines) == 7  # count + 5 glyphs + ellipsis


def test_emit_tex_writes_package_and_artwork(registry_json, tmp_path):
    out = tmp_path / "tex"
    assert main(["emit-tex", str(registry_json), "-o", str(out)]) == 0
    sty = (out / "vttglyphs.sty").read_text(encoding="utf-8")
    assert sty.count("\\newcommand") == len(seed_registry().bindings)
    artwork = list((out / "vtt-artwork").glob("*.svg"))
    assert len(artwork) == len(seed_registry().bindings)


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as err:
        main(["render"])  # missing required arguments
    assert err.value.code == 2


def test_rendering_is_deterministic_across_processes(registry_json, tmp_path):
    """Two separate interpreter runs (different hash seeds) must produce
    byte-identical SVG for every bound glyph."""
    outputs = []
    for run, hash_seed in (("a", "1"), ("b", "9001")):
        out = tmp_path / run
        proc = subprocess.run(
            [sys.executable, "-m", "vtt.cli", "render", str(registry_json),
             "-o", str(out)],
            capture_output=True, text=True,
            env={"PYTHONHASHSEED": hash_seed, "PATH": "/usr/bin:/bin"},
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append({p.name: p.read_bytes() for p in out.glob("*.svg")})
    assert outputs[0] == outputs[1]
    assert len(outputs[0]) == len(seed_registry().bindings)
