import json
import os

import pytest

from annigraph.cli import main
from annigraph.specs import (
    CORPUS_SPEC_STRINGS,
    SpecParseError,
    corpus_file_name,
    parse_ring_spec,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_basic_specs():
    assert parse_ring_spec("zn:12").build().size == 12
    assert parse_ring_spec("prod:(zn:2,zn:3)").build().size == 6
    assert parse_ring_spec("prod:(prod:(zn:2,zn:2),zn:3)").build().size == 12
    assert parse_ring_spec("gf:2:1,1,1").build().size == 4
    assert parse_ring_spec("polyq:3:0,0,1").build().size == 9
    assert parse_ring_spec("cat:f2xy_x2y2").build().size == 16
    assert parse_ring_spec("cat:k5").build().n_vertices == 5
    assert parse_ring_spec("cat:km:3:4").build().n_edges == 12


def test_parse_coeff_list_inside_product():
    ring = parse_ring_spec("prod:(gf:2:1,1,1,zn:2)").build()
    assert ring.size == 8


def test_parse_errors_cite_position():
    with pytest.raises(SpecParseError) as err:
        parse_ring_spec("zn:x")
    assert err.value.position == 3
    with pytest.raises(SpecParseError, match="trailing"):
        parse_ring_spec("zn:12extra")
    with pytest.raises(SpecParseError, match="whitespace"):
        parse_ring_spec("zn: 12")
    with pytest.raises(SpecParseError):
        parse_ring_spec("prod:(zn:2;zn:3)")


def test_parse_round_trip():
    for text in ("zn:12", "prod:(zn:2,zn:3)", "gf:2:1,1,1", "cat:k5"):
        spec = parse_ring_spec(text)
        assert str(spec) == text
        assert parse_ring_spec(str(spec)) == spec


def test_unknown_catalog_lists_names(capsys):
    code, _, err = run(capsys, "info", "cat:nonsense")
    assert code == 2
    assert "available" in err and "f2xy_x2y2" in err


def test_gf_rejects_reducible_polynomial(capsys):
    code, _, err = run(capsys, "info", "gf:2:1,0,1")  # x^2+1 = (x+1)^2 over F_2
    assert code == 2
    assert "not a field" in err


def test_info_subcommand(capsys):
    code, out, _ = run(capsys, "info", "zn:8")
    assert code == 0
    payload = json.loads(out)
    assert payload["is_spir"] is True
    assert payload["ideal_count"] == 4
    assert payload["vdim_profile"] == [1, 1]

    code, out, _ = run(capsys, "info", "zn:8", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("ring,ideal_count")


def test_ideals_subcommand(capsys):
    code, out, _ = run(capsys, "ideals", "zn:12")
    assert code == 0
    assert len(out.splitlines()) == 6
    code, out, _ = run(capsys, "ideals", "zn:12", "--format", "json")
    payload = json.loads(out)
    assert len(payload["ideals"]) == 6


def test_graph_subcommand_dot_and_json(capsys):
    code, out, _ = run(capsys, "graph", "zn:12", "--kind", "ag", "--format", "dot")
    assert code == 0
    assert out == (
        'graph AG {\n'
        '  "(6)";\n'
        '  "(4)";\n'
        '  "(3)";\n'
        '  "(2)";\n'
        '  "(6)" -- "(4)";\n'
        '  "(6)" -- "(2)";\n'
        '  "(4)" -- "(3)";\n'
        '}\n'
    )
    code, out, _ = run(capsys, "graph", "zn:6", "--kind", "zdg", "--format", "json")
    payload = json.loads(out)
    assert payload["vertices"] == ["2", "3", "4"]
    assert payload["edges"] == [[0, 1], [1, 2]]


def test_genus_subcommand(capsys):
    code, out, _ = run(capsys, "genus", "cat:k5")
    assert code == 0 and out == "exact 1\n"
    code, out, _ = run(capsys, "genus", "cat:km:3:3")
    assert code == 0 and out == "exact 1\n"
    code, out, _ = run(capsys, "genus", "zn:12")
    assert code == 0 and out == "exact 0\n"
    code, out, _ = run(capsys, "genus", "cat:k5", "--format", "json")
    payload = json.loads(out)
    assert payload["status"] == "exact" and payload["upper"] == 1
    assert payload["witness"] is not None


def test_genus_budget_exit_code(capsys):
    code, out, _ = run(capsys, "genus", "cat:k7", "--budget-nodes", "1")
    assert code == 3
    assert out.startswith("budget_exhausted")


def test_genus_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("ANNIGRAPH_BUDGET_MS", "60000")
    code, out, _ = run(capsys, "genus", "cat:k4")
    assert code == 0 and out == "exact 0\n"


def test_verify_subcommand(capsys):
    code, out, _ = run(capsys, "verify", "zn:8", "zn:12", "--suite", "lemmas")
    assert code == 0
    assert "summary:" in out
    code, out, _ = run(capsys, "verify", "zn:8", "--suite", "lemmas",
                       "--format", "json")
    payload = json.loads(out)
    assert payload["counts"]["fail"] == 0
    code, out, _ = run(capsys, "verify", "zn:8", "--suite", "lemmas",
                       "--format", "csv")
    assert out.splitlines()[0] == "check,ring,status,reason_or_detail"


def test_verify_default_corpus_all_green(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all")
    assert code == 0
    assert " 0 fail" in out


def test_corpus_roundtrip(capsys, tmp_path):
    out_dir = tmp_path / "corpus"
    code, out, _ = run(capsys, "corpus", "--out", str(out_dir))
    assert code == 0
    files = sorted(os.listdir(out_dir))
    assert len(files) == len(CORPUS_SPEC_STRINGS)
    # Reload one materialized table through the table: loader.
    path = out_dir / corpus_file_name("cat:f2xy_x2y2")
    assert path.exists()
    code, out, _ = run(capsys, "info", f"table:{path}")
    assert code == 0
    payload = json.loads(out)
    assert payload["ideal_count"] == 7


def test_sc_file_loader(capsys, tmp_path):
    blob = {
        "p": 2,
        "rank": 3,
        "basis": ["1", "x", "y"],
        "mul": [
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
            [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
        ],
    }
    path = tmp_path / "ring.json"
    path.write_text(json.dumps(blob))
    code, out, _ = run(capsys, "info", f"sc:{path}")
    assert code == 0
    payload = json.loads(out)
    assert payload["socle_dim"] == 2 and payload["is_gorenstein"] is False


def test_invalid_input_exit_code(capsys):
    code, _, err = run(capsys, "info", "zn:1")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "genus", "table:/no/such/file.json")
    assert code == 2
    code, _, err = run(capsys, "info", "cat:k5")  # graph where a ring is needed
    assert code == 2 and "needs a ring" in err


def test_output_to_file(capsys, tmp_path):
    target = tmp_path / "graph.dot"
    code, out, _ = run(capsys, "graph", "zn:12", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("graph AG {")
