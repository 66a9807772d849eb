"""Command line surface: exit codes, report shapes, artifact files."""

import json

import pytest

from quasifold.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --------------------------------------------------------------------------
# examples / analyze / construct
# --------------------------------------------------------------------------

def test_examples_lists_corpus(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    names = [line.split()[0] for line in out.strip().splitlines()]
    for expected in ("sphere", "pentagon", "octahedron", "teardrop-3", "cube"):
        assert expected in names


def test_analyze_pentagon(capsys):
    code, out, _ = run(capsys, "analyze", "--builtin", "pentagon")
    assert code == 0
    payload = json.loads(out)
    assert payload["simple"]["simple"] is True
    assert payload["rational"]["rational"] is False
    assert payload["delzant"] is None
    assert len(payload["vertices"]) == 5


def test_analyze_square(capsys):
    code, out, _ = run(capsys, "analyze", "--builtin", "square")
    assert code == 0
    payload = json.loads(out)
    assert payload["rational"]["rational"] is True
    assert payload["delzant"]["integral"] is True


def test_analyze_octahedron_reports_not_simple(capsys):
    code, out, _ = run(capsys, "analyze", "--builtin", "octahedron")
    assert code == 0
    assert json.loads(out)["simple"]["simple"] is False


def test_construct_teardrop(capsys):
    code, out, _ = run(capsys, "construct", "--builtin", "teardrop-3")
    assert code == 0
    payload = json.loads(out)
    assert payload["classification"]["kind"] == "orbifold"
    assert payload["classification"]["vertex_orders"] == [1, 3]


def test_construct_interval_sqrt2(capsys):
    code, out, _ = run(capsys, "construct", "--builtin", "interval-sqrt2")
    assert code == 0
    payload = json.loads(out)
    assert payload["classification"]["kind"] == "quasifold"
    assert all(chart["finite"] is False for chart in payload["charts"])


def test_construct_octahedron_exit_2(capsys):
    code, _, err = run(capsys, "construct", "--builtin", "octahedron")
    assert code == 2
    assert "NotSimple" in err


def test_unknown_builtin_exit_2(capsys):
    code, _, err = run(capsys, "analyze", "--builtin", "dodecahedron")
    assert code == 2


def test_missing_file_exit_1(capsys):
    code, _, err = run(capsys, "analyze", "--input", "/nonexistent/poly.json")
    assert code == 1
    assert "I/O error" in err


def test_malformed_json_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "analyze", "--input", str(bad))
    assert code == 2


def test_input_file_round_trip(capsys, tmp_path):
    from quasifold import builtin_document
    path = tmp_path / "tri.json"
    path.write_text(json.dumps(builtin_document("triangle-sqrt2")))
    code, out, _ = run(capsys, "construct", "--input", str(path))
    assert code == 0
    assert json.loads(out)["classification"]["kind"] == "quasifold"


def test_invalid_document_exit_2(capsys, tmp_path):
    path = tmp_path / "open.json"
    path.write_text(json.dumps({
        "dimension": 2,
        "facets": [{"normal": ["1", "0"], "offset": "0"},
                   {"normal": ["0", "1"], "offset": "0"}],
    }))
    code, _, err = run(capsys, "analyze", "--input", str(path))
    assert code == 2
    assert "UnboundedPolytope" in err


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------

def test_verify_writes_report_and_csv(capsys, tmp_path):
    out_json = tmp_path / "report.json"
    out_csv = tmp_path / "pairs.csv"
    code, _, _ = run(capsys, "verify", "--builtin", "square",
                     "--samples", "64", "--seed", "5",
                     "--out", str(out_json), "--csv", str(out_csv))
    assert code == 0
    payload = json.loads(out_json.read_text())
    assert payload["passed"] is True
    assert payload["sample_count"] == 64
    lines = out_csv.read_text().strip().splitlines()
    assert lines[0] == "mu_1,mu_2,phi_1,phi_2"
    assert len(lines) == 65


def test_verify_threshold_failure_exit_3(capsys):
    code, out, err = run(capsys, "verify", "--builtin", "square",
                         "--samples", "32", "--tol-roundtrip", "1e-30")
    assert code == 3
    assert "max_roundtrip_error" in err
    assert json.loads(out)["passed"] is False


def test_verify_stdout_byte_stable(capsys):
    _, first, _ = run(capsys, "verify", "--builtin", "teardrop-2",
                      "--samples", "40", "--seed", "9")
    _, second, _ = run(capsys, "verify", "--builtin", "teardrop-2",
                       "--samples", "40", "--seed", "9")
    assert first == second


# --------------------------------------------------------------------------
# plot
# --------------------------------------------------------------------------

def test_plot_pentagon_svg_and_csv(capsys, tmp_path):
    svg = tmp_path / "pent.svg"
    csv_path = tmp_path / "pent.csv"
    code, _, _ = run(capsys, "plot", "--builtin", "pentagon",
                     "--samples", "50", "--svg", str(svg), "--csv", str(csv_path))
    assert code == 0
    body = svg.read_text()
    assert body.startswith("<svg")
    assert "<polygon" in body
    assert body.count("<circle") == 50
    assert csv_path.read_text().splitlines()[0] == "mu_1,mu_2,phi_1,phi_2"


def test_plot_svg_requires_dimension_two(capsys, tmp_path):
    code, _, err = run(capsys, "plot", "--builtin", "sphere",
                       "--svg", str(tmp_path / "no.svg"))
    assert code == 2
    assert "DimensionUnsupported" in err


def test_plot_csv_only_for_interval(capsys, tmp_path):
    csv_path = tmp_path / "interval.csv"
    code, _, _ = run(capsys, "plot", "--builtin", "interval-sqrt2",
                     "--samples", "16", "--csv", str(csv_path))
    assert code == 0
    assert csv_path.read_text().splitlines()[0] == "mu_1,phi_1"


def test_plot_zero_samples_outline_only(capsys, tmp_path):
    svg = tmp_path / "outline.svg"
    code, _, _ = run(capsys, "plot", "--builtin", "square",
                     "--samples", "0", "--svg", str(svg))
    assert code == 0
    body = svg.read_text()
    assert "<polygon" in body
    assert "<circle" not in body


def test_plot_needs_some_output(capsys):
    code, _, err = run(capsys, "plot", "--builtin", "square")
    assert code == 2


# --------------------------------------------------------------------------
# precision env var
# --------------------------------------------------------------------------

def test_invalid_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("QUASIFOLD_PRECISION", "banana")
    code, _, err = run(capsys, "examples")
    assert code == 2
    assert "QUASIFOLD_PRECISION" in err


def test_precision_env_accepted(capsys, monkeypatch):
    monkeypatch.setenv("QUASIFOLD_PRECISION", "1e-10")
    code, out, _ = run(capsys, "construct", "--builtin", "sphere")
    assert code == 0
    json.loads(out)


def test_negative_samples_rejected(capsys):
    code, _, _ = run(capsys, "verify", "--builtin", "square", "--samples", "-3")
    assert code == 2
