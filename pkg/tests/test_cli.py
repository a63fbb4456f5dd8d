from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import EXAMPLE_NAMES, EXAMPLES
from hochquiv.cli import emit_report, input_digest, main


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_report_schema_order(capsys):
    code, rep = run_json(capsys, "hh", str(EXAMPLES / "dual.quiver"), "--max-degree", "4")
    assert code == 0
    assert list(rep) == ["version", "input_digest", "algebra", "command", "results", "timing_ms"]
    assert list(rep["algebra"]) == ["dim", "nilpotency", "monomial", "vertices", "arrows"]
    assert rep["results"]["hh_dimensions"] == [2, 1, 1, 1, 1]


def test_certify_dual(capsys):
    code, rep = run_json(capsys, "certify", str(EXAMPLES / "dual.quiver"), "--m", "3")
    assert code == 0
    r = rep["results"]
    assert r["hh_lower_bound"] is True and r["degree"] == 2
    assert {"is_cycle", "boundary_status", "degree"} <= r.keys()


def test_gldim_infinite_with_witness(capsys):
    _, rep = run_json(capsys, "gldim", "remark7")
    r = rep["results"]["monomial_exact"]
    assert r["value"] == "infinite" and r["witness"] == ["a2*a1"]


def test_cycles_empty_without_truncation(capsys):
    _, rep = run_json(capsys, "cycles", "examples/remark7.quiver", "--m", "2", "--max-length", "8")
    assert rep["results"]["witnesses"] == []


def test_pd_cutoff(capsys):
    _, rep = run_json(capsys, "pd", "remark7", "--vertex", "1", "--cutoff", "6")
    assert rep["results"]["cutoff"]["text"] == "at-least 7"


def test_compare(capsys):
    _, rep = run_json(capsys, "compare", "cycle3", "--max-degree", "3")
    assert rep["results"]["comparison"]["holds"] is True


def test_field_override_recorded(capsys):
    _, rep = run_json(capsys, "hh", "quantum_plane", "--field", "fp:5", "--max-degree", "2")
    assert rep["command"]["field"] == "F5"
    assert rep["command"]["field_override"] == {"file": "Q", "used": "F5"}


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.quiver"
    bad.write_text("vertices: 1 2\narrow a1: 1 -> 2\nrelation a1*a1\n")
    code, rep = run_json(capsys, "validate", str(bad))
    assert code == 1 and rep["error"]["code"] == "non_composable_path"
    code, rep = run_json(capsys, "hh", "remark7", "--max-degree", "8", "--cap", "20")
    assert code == 2 and rep["error"]["code"] == "resource_limit"
    assert rep["results"]["hh_dimensions"] == [3, 1]
    code, _ = run_json(capsys, "certify", "hereditary_a2")
    assert code == 1
    code, rep = run_json(capsys, "cycles", "dual", "--m", "1")
    assert code == 1 and rep["error"]["code"] == "invalid_argument"
    code, rep = run_json(capsys, "corpus", "--count", "1", "--check", "nope")
    assert code == 1 and rep["error"]["code"] == "invalid_argument"


def test_deterministic_output(capsys):
    outs = []
    for _ in range(2):
        _, rep = run_json(capsys, "hh", "cycle2", "--max-degree", "3")
        rep.pop("timing_ms")
        outs.append(emit_report(rep))
    assert outs[0] == outs[1]


def test_digest_ignores_comments_and_spacing():
    a = "vertices: 1\narrow a: 1 -> 1\nrelation a*a\n"
    b = "# header\nvertices:  1\n\narrow a: 1 -> 1   # loop\nrelation a*a\n"
    assert input_digest(a) == input_digest(b)


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_bundled_examples_round_trip(capsys, name, tmp_path):
    out = tmp_path / "r.json"
    assert main(["validate", str(EXAMPLES / f"{name}.quiver"), "--format", "json",
                 "--output", str(out)]) == 0
    assert json.loads(out.read_text())["results"]["ok"] is True
    assert main(["basis", name]) == 0
    assert "basis" in capsys.readouterr().out


def test_text_format(capsys):
    assert main(["cycles", "cycle2"]) == 0
    out = capsys.readouterr().out
    assert "witnesses:" in out and "cycle:" in out


def test_corpus_command(capsys):
    code, rep = run_json(capsys, "corpus", "--count", "3", "--check", "hh0,pd_oracle")
    assert code == 0 and rep["results"]["total_violations"] == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hochquiv", "basis", "dual", "--format", "json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["results"]["basis"] == ["e1", "a"]
