import json

import pytest

from icss.cli import main
from icss.errors import ParseError
from icss.io import document_from_map, emit_map, parse_map


def fold_text(fold):
    return emit_map(document_from_map(fold))


def test_document_round_trip(fold):
    text = fold_text(fold)
    doc = parse_map(text)
    f = doc.to_simplicial_map()
    assert f.valid
    assert f.source.labels == fold.source.labels
    assert f.vertex_map == fold.vertex_map
    # emit . parse . emit is byte stable
    assert emit_map(parse_map(text)) == text


def test_parse_errors_name_the_culprit():
    with pytest.raises(ParseError, match="invalid JSON"):
        parse_map("{")
    base = {
        "x": {"vertices": ["a"], "simplices": [["a"]]},
        "y": {"vertices": ["p"], "simplices": [["p"]]},
        "map": {"a": "p"},
    }
    bad = json.loads(json.dumps(base))
    bad["x"]["vertices"] = ["a", "a"]
    with pytest.raises(ParseError, match="'a'"):
        parse_map(json.dumps(bad))
    bad = json.loads(json.dumps(base))
    bad["x"]["simplices"] = [["q"]]
    with pytest.raises(ParseError, match="unknown vertex 'q'"):
        parse_map(json.dumps(bad))
    bad = json.loads(json.dumps(base))
    bad["map"] = {}
    with pytest.raises(ParseError, match="no image for vertex 'a'"):
        parse_map(json.dumps(bad))
    bad = json.loads(json.dumps(base))
    del bad["y"]
    with pytest.raises(ParseError, match="'y'"):
        parse_map(json.dumps(bad))


def write_doc(tmp_path, text, name="map.json"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_cli_validate_ok(tmp_path, capsys, fold):
    path = write_doc(tmp_path, fold_text(fold))
    assert main(["validate", path]) == 0
    out = capsys.readouterr().out
    assert "valid: True" in out


def test_cli_validate_failure_exits_1(tmp_path, capsys):
    doc = {
        "x": {"vertices": ["a"], "simplices": [["a"]]},
        "y": {"vertices": ["p", "q"], "simplices": [["p", "q"]]},
        "map": {"a": "p"},
    }
    path = write_doc(tmp_path, json.dumps(doc))
    assert main(["validate", path]) == 1


def test_cli_malformed_input_exits_2(tmp_path, capsys):
    path = write_doc(tmp_path, "{not json")
    assert main(["validate", path]) == 2
    assert main(["icss", str(tmp_path / "missing.json")]) == 2
    assert main(["fixtures", "no-such-fixture"]) == 2


def test_cli_fixture_listing(capsys):
    assert main(["--format", "json", "fixtures"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "fold" in payload["fixtures"]
    assert "disc_to_rp2" in payload["fixtures"]


def test_cli_fixture_emission_parses(capsys):
    assert main(["fixtures", "figure_eight"]) == 0
    text = capsys.readouterr().out
    assert parse_map(text).to_simplicial_map().valid


def test_cli_build(tmp_path, capsys, fold):
    path = write_doc(tmp_path, fold_text(fold))
    assert main(["--format", "json", "build", path, "--kind", "D", "--k", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["simplex_counts"] == [3, 2]


def test_cli_homology(tmp_path, capsys, disc_to_rp2):
    path = write_doc(tmp_path, fold_text(disc_to_rp2))
    assert main(["--format", "json", "homology", path]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["y"]["H_1"] == {"rank": 0, "torsion": [2]}


def test_cli_spectral_and_verify(tmp_path, capsys, fold):
    path = write_doc(tmp_path, fold_text(fold))
    for cmd in ("icss", "gvzss", "verify"):
        assert main(["--format", "json", cmd, path]) == 0, cmd
        payload = json.loads(capsys.readouterr().out)
        key = "passed" if cmd == "verify" else "converged"
        assert payload[key] is True


def test_cli_output_is_deterministic(tmp_path, capsys, fold):
    path = write_doc(tmp_path, fold_text(fold))
    outputs = []
    for _ in range(2):
        assert main(["--format", "json", "icss", path]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
