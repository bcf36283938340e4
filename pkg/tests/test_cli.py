import json
import os
import subprocess
import sys

import pytest

from kgraph.cli import main
from kgraph.fixtures import mutated_g4
from kgraph.graphio import print_graph

FIXDIR = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fixture_path(name):
    return os.path.join(FIXDIR, f"{name}.kg")


@pytest.fixture
def broken_graph_file(tmp_path):
    path = tmp_path / "broken.kg"
    path.write_text(print_graph(mutated_g4()), encoding="utf-8")
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_pass(capsys):
    code, out, _ = run(["validate", "--bound", "2,2", fixture_path("g4")], capsys)
    assert code == 0
    assert "PASS" in out


def test_validate_failure_exit_code(broken_graph_file, capsys):
    code, out, _ = run(["validate", "--bound", "2,2", broken_graph_file], capsys)
    assert code == 2
    assert "FAIL" in out
    assert "factorization" in out


def test_paths_command(capsys):
    code, out, _ = run(
        ["paths", "--vertex", "v", "--degree", "1,1", fixture_path("g4")], capsys
    )
    assert code == 0
    assert "a.f" in out and "b.f" in out


def test_eval_command(capsys):
    code, out, _ = run(
        ["eval", "--expr", "s(a)*adj(s(a)) + s(b)*adj(s(b))", fixture_path("g2")],
        capsys,
    )
    assert code == 0
    assert "grade 0" in out


def test_masa_commands(capsys):
    code, out, _ = run(["masa", fixture_path("g1")], capsys)
    assert code == 0
    assert "No" in out and "entrance" in out and "'e'" in out
    code, out, _ = run(["masa", fixture_path("g2")], capsys)
    assert code == 0
    assert "Yes" in out
    code, out, _ = run(["masa", "--depth", "3,3", fixture_path("g3")], capsys)
    assert code == 0
    assert "No" in out and "Z(e,f)" in out


def test_spectral_check_command(capsys, tmp_path):
    json_path = tmp_path / "out.json"
    code, out, _ = run(
        [
            "spectral-check",
            "--bound",
            "3",
            "--gens",
            "s(v)+s(e)",
            fixture_path("g1"),
            "--json",
            str(json_path),
        ],
        capsys,
    )
    assert code == 0
    assert "determined by spectrum: False" in out
    payload = json.loads(json_path.read_text())
    verdicts = {v["name"]: v["value"] for v in payload["verdicts"] if "name" in v}
    assert verdicts["determined_by_spectrum"] is False
    assert verdicts["ck_generated"] is False
    assert verdicts["gauge_invariant"] is False
    assert payload["timing_ms"] is None


def test_spectrum_and_a_of_commands(capsys):
    code, out, _ = run(
        ["spectrum", "--gens", "s(a)", "--bound", "2", fixture_path("g2")], capsys
    )
    assert code == 0
    assert "Z(" in out
    code, out, _ = run(
        ["a-of", "--cylinders", "a,a", "--bound", "2", fixture_path("g2")], capsys
    )
    assert code == 0
    assert "spectrum recovers P exactly: True" in out


def test_aperiodicity_command(capsys):
    code, out, _ = run(
        ["aperiodicity", "--pmax", "2", "--depth", "4", fixture_path("g2")], capsys
    )
    assert code == 0
    assert "aperiodic" in out


def test_usage_error_exit_code(capsys):
    assert main(["paths", fixture_path("g2")]) == 1
    assert main(["nonsense"]) == 1


def test_missing_file_exit_code(capsys):
    assert main(["validate", "no_such_file.kg"]) == 1


def test_json_reports_are_byte_identical(tmp_path, capsys):
    for name, argv in (
        ("masa", ["masa", fixture_path("g1")]),
        (
            "spectral",
            ["spectral-check", "--bound", "3", "--gens", "s(v)+s(e)", fixture_path("g1")],
        ),
        ("validate", ["validate", "--bound", "2,2", fixture_path("g4")]),
    ):
        paths = []
        for i in (0, 1):
            out = tmp_path / f"{name}{i}.json"
            assert main(argv + ["--json", str(out)]) == 0
            capsys.readouterr()
            paths.append(out.read_bytes())
        assert paths[0] == paths[1]


def test_cli_subprocess_entry():
    env = dict(os.environ)
    src = os.path.join(os.path.dirname(__file__), "..", "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    proc = subprocess.run(
        [sys.executable, "-m", "kgraph.cli", "masa", fixture_path("g1")],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 0
    assert "No" in proc.stdout
