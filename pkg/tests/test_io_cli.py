"""Serialization round-trips, workspace resolution, CLI exit codes, determinism."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from cogkit import groups, io as cio
from cogkit.cli import main
from cogkit.corpus import collapse_morphism
from cogkit.errors import ParseError, UnresolvedReference

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


# -- round trips ---------------------------------------------------------------

def test_group_round_trip():
    s4 = groups.symmetric_group(4)
    payload = cio.group_to_json(s4, id="s4")
    back = cio.group_from_json(payload)
    assert back.mult == s4.mult and back.identity == s4.identity


def test_scwol_round_trip(two_simplex):
    payload = cio.scwol_to_json(two_simplex, id="d2")
    back = cio.scwol_from_json(payload)
    assert back.objects == tuple(sorted(two_simplex.objects)) or set(back.objects) == set(
        two_simplex.objects
    )
    assert {m.id for m in back.morphisms} == {m.id for m in two_simplex.morphisms}
    assert back.comp == two_simplex.comp


def test_cog_round_trip(seg23, tmp_path):
    payload = cio.cog_to_json(seg23, id="seg23")
    (tmp_path / "seg23.json").write_text(cio.dumps(payload))
    ws = cio.Workspace.load(tmp_path)
    back = ws.cog("seg23")
    assert back.twist == seg23.twist
    assert {o: g.order for o, g in back.group_of.items()} == {
        o: g.order for o, g in seg23.group_of.items()
    }


def test_morphism_round_trips(seg23, seg23_to_z6, tmp_path):
    (tmp_path / "to-z6.json").write_text(
        cio.dumps(cio.morphism_to_group_to_json(seg23_to_z6, id="to-z6"))
    )
    ws = cio.Workspace.load(tmp_path)
    back = ws.morphism_to_group("to-z6")
    assert back.phi_edge == seg23_to_z6.phi_edge

    phi = collapse_morphism(seg23)
    (tmp_path / "collapse.json").write_text(cio.dumps(cio.cog_morphism_to_json(phi, id="collapse")))
    ws2 = cio.Workspace.load(tmp_path)
    back2 = ws2.cog_morphism("collapse")
    assert back2.phi_edge == phi.phi_edge


def test_workspace_errors(tmp_path):
    (tmp_path / "broken.json").write_text("{not json")
    with pytest.raises(ParseError):
        cio.Workspace.load(tmp_path)
    (tmp_path / "broken.json").unlink()
    ws = cio.Workspace.load(tmp_path)
    with pytest.raises(UnresolvedReference):
        ws.group("missing")


def test_invalid_cog_document_rejected(tmp_path):
    """A non-injective psi must be rejected at load time."""
    payload = {
        "schema": "cog/1",
        "id": "bad",
        "base": {
            "schema": "scwol/1",
            "id": "seg",
            "objects": ["m", "v0"],
            "morphisms": [{"id": "a", "i": "m", "t": "v0"}],
            "comp": [],
        },
        "groups": {
            "m": {"schema": "group/1", "id": "z2", "cayley": [[0, 1], [1, 0]], "identity": 0},
            "v0": {"schema": "group/1", "id": "z2", "cayley": [[0, 1], [1, 0]], "identity": 0},
        },
        "psi": {"a": [0, 0]},
        "twists": [],
    }
    (tmp_path / "bad.json").write_text(cio.dumps(payload))
    ws = cio.Workspace.load(tmp_path)
    with pytest.raises(ParseError):
        ws.cog("bad")


# -- CLI -----------------------------------------------------------------------

def run_cli(*argv) -> int:
    return main([str(a) for a in argv])


def test_cli_validate_fixtures(capsys):
    files = sorted(FIXTURES.glob("*.json"))
    assert run_cli("validate", *files, "--dir", FIXTURES) == 0
    out = capsys.readouterr().out
    assert out.count("OK ") == len(files)


def test_cli_validate_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert run_cli("validate", bad, "--dir", tmp_path) == 2


def test_cli_validate_invalid_document(tmp_path, capsys):
    payload = {
        "schema": "scwol/1",
        "id": "loop",
        "objects": ["x"],
        "morphisms": [{"id": "a", "i": "x", "t": "x"}],
        "comp": [],
    }
    p = tmp_path / "loop.json"
    p.write_text(cio.dumps(payload))
    assert run_cli("validate", p, "--dir", tmp_path) == 1
    assert "INVALID" in capsys.readouterr().out


def test_cli_abel_and_pi1(tmp_path, capsys):
    assert run_cli("abel", "--dir", FIXTURES, "--cog", "seg23") == 0
    assert capsys.readouterr().out.strip() == "[6]"
    assert run_cli("abel", "--dir", FIXTURES, "--cog", "circle-triv") == 0
    assert capsys.readouterr().out.strip() == "[0]"
    assert run_cli("abel", "--dir", FIXTURES, "--cog", "point-triv") == 0
    assert capsys.readouterr().out.strip() == "[]"
    pres = tmp_path / "p.json"
    assert run_cli("pi1", "--dir", FIXTURES, "--cog", "seg23", "--emit", pres) == 0
    assert run_cli("abel", "--pres", pres, "--dir", FIXTURES) == 0
    assert capsys.readouterr().out.strip() == "[6]"
    assert run_cli("export-pres", "--pres", pres, "--format", "cas", "--dir", FIXTURES) == 0
    assert "FreeGroup" in capsys.readouterr().out


def test_cli_develop_sizes(tmp_path):
    out = tmp_path / "dev.json"
    assert run_cli("develop", "--dir", FIXTURES, "--mor", "to-z6", "--emit", out) == 0
    payload = json.loads(out.read_text())
    assert len(payload["scwol"]["objects"]) == 11
    assert len(payload["scwol"]["morphisms"]) == 12


def test_cli_theta_development_iso_pipeline(tmp_path):
    """theta -> develop -> iso against local-dev, all through the CLI."""
    theta = tmp_path / "theta.json"
    assert run_cli("theta", "--dir", FIXTURES, "--cog", "star-s3", "--vertex", "g", "--emit", theta) == 0
    # development of the local complex wrt theta
    from cogkit.develop import build_development

    ws = cio.Workspace.load(tmp_path)
    phi = ws.morphism_to_group("star-s3.theta.g")
    D = build_development(phi.source, phi)
    dev = tmp_path / "dev.json"
    dev.write_text(cio.dumps(cio.development_to_json(D)))
    ldev = tmp_path / "ldev.json"
    assert run_cli("local-dev", "--dir", FIXTURES, "--cog", "star-s3", "--vertex", "g", "--emit", ldev) == 0
    wit = tmp_path / "iso.json"
    assert run_cli("iso", dev, ldev, "--dir", FIXTURES, "--emit", wit) == 0
    assert json.loads(wit.read_text())["isomorphic"] is True


def test_cli_iso_negative(tmp_path):
    assert run_cli("iso", FIXTURES / "seg.json", FIXTURES / "circle.json", "--dir", FIXTURES) == 1


def test_cli_immerse_negative(tmp_path, seg23):
    phi = collapse_morphism(seg23)
    doc = tmp_path / "collapse.json"
    doc.write_text(cio.dumps(cio.cog_morphism_to_json(phi, id="collapse")))
    report = tmp_path / "report.json"
    assert run_cli("immerse", "--dir", tmp_path, "--mor", "collapse", "--emit", report) == 1
    payload = json.loads(report.read_text())
    assert payload["overall"] is False
    assert payload["witnesses"]["algebraic_failures"]


def test_cli_immerse_positive(tmp_path):
    sigma = tmp_path / "sigma.json"
    assert run_cli("sigma", "--dir", FIXTURES, "--cog", "star-s3", "--vertex", "g", "--emit", sigma) == 0
    assert run_cli("immerse", "--dir", tmp_path, "--mor", "star-s3.sigma.g") == 0


def test_cli_realize_formats(tmp_path, capsys):
    assert run_cli("realize", "--dir", FIXTURES, "--scwol", "delta2", "--format", "off") == 0
    out = capsys.readouterr().out
    assert out.startswith("OFF\n7 6 12")
    assert run_cli("realize", "--dir", FIXTURES, "--scwol", "delta2") == 0
    payload = json.loads(capsys.readouterr().out)
    assert [len(level) for level in payload["cells"]] == [7, 12, 6]


def test_cli_gen_corpus_deterministic(tmp_path):
    out1, out2 = tmp_path / "c1", tmp_path / "c2"
    assert run_cli("gen-corpus", "--seed", 5, "--count", 4, "--out", out1, "--dir", tmp_path) == 0
    assert run_cli("gen-corpus", "--seed", 5, "--count", 4, "--out", out2, "--dir", tmp_path) == 0
    files1 = sorted(p.name for p in out1.glob("*.json"))
    assert files1 == sorted(p.name for p in out2.glob("*.json"))
    for name in files1:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    # generated corpus validates through the CLI
    assert run_cli("validate", *sorted(out1.glob("*.json")), "--dir", out1) == 0


def test_cli_unresolved_reference(capsys):
    assert run_cli("theta", "--dir", FIXTURES, "--cog", "missing", "--vertex", "g") == 2
