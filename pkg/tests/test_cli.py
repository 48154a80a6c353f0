import json
import subprocess
import sys

import jsonschema
import pytest

from braidlab.cli import main
from braidlab.report import load_schema


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema())
    return code, doc


def checks(doc):
    return {c["name"]: c for c in doc["checks"]}


def test_spectrum_plateau(capsys):
    code, doc = run_json(capsys, "spectrum", "--level", "1/3", "--particles", "1..6")
    assert code == 0
    c = checks(doc)
    assert c["spectrum[1/3][N=02]"]["payload"]["plateau"] is None
    for N in range(3, 7):
        assert c[f"spectrum[1/3][N={N:02d}]"]["payload"]["plateau"] == 2


def test_spectrum_minus_one(capsys):
    code, doc = run_json(capsys, "spectrum", "--t", "-1,0", "--particles", "4")
    assert code == 0
    assert doc["checks"][0]["payload"]["energies"] == [0, 1, 2, 3, 4]


def test_spectrum_r_independent(capsys):
    _, a = run_json(capsys, "spectrum", "--level", "1/3", "--particles", "5")
    _, b = run_json(capsys, "spectrum", "--level", "2/3", "--particles", "5")
    assert a["checks"][0]["payload"]["energies"] == b["checks"][0]["payload"]["energies"]


def test_ladder_norms_serialized(capsys):
    code, doc = run_json(capsys, "ladder", "--level", "1/3", "--particles", "2")
    assert code == 0
    ladder = doc["checks"][0]["payload"]["ladder"]
    assert [e["norm2"]["exact"][0][0] for e in ladder] == ["1", "2", "1", "0"]
    assert ladder[3]["vanished"]


def test_verify_level_four(capsys):
    code, doc = run_json(capsys, "verify", "--level", "1/4")
    c = checks(doc)
    assert code == 0
    assert c["verify[1/4].yang_baxter"]["residual"] == 0
    assert c["verify[1/4].braid_order"]["payload"]["order"] == 4


def test_verify_t_two(capsys):
    code, doc = run_json(capsys, "verify", "--t", "2,0")
    c = checks(doc)
    assert code == 0
    assert c["verify[t=2,0].yang_baxter"]["passed"]
    assert c["verify[t=2,0].braid_order"]["payload"]["note"] == "no finite order <= 100"


def test_verify_level_two(capsys):
    code, doc = run_json(capsys, "verify", "--level", "1/2")
    c = checks(doc)
    assert code == 0 and c["verify.gl11"]["passed"]
    W = c["verify[1/2].exchange"]["payload"]["W_diagonal"]
    assert [w["approx"] for w in W] == [[0.0, -1.0], [0.0, 1.0]]


def test_qgroup_match(capsys):
    code, doc = run_json(capsys, "qgroup", "--level", "1/3", "--particles", "4")
    assert code == 0
    assert checks(doc)["qgroup[1/3].match_spectrum[N=04]"]["payload"]["match"]


def test_qgroup_energies_level_five(capsys):
    _, doc = run_json(capsys, "qgroup", "--level", "1/5", "--particles", "2")
    assert checks(doc)["qgroup[1/5].match_spectrum[N=02]"]["payload"]["tower_energies"] == [0, 1, 2]


def test_qgroup_singular_exit(capsys):
    code, doc = run_json(capsys, "qgroup", "--level", "1/4", "--particles", "2")
    assert code == 3
    assert "singular level" in doc["checks"][0]["error"]


def test_algebra_angles(capsys):
    code, doc = run_json(capsys, "algebra", "--level", "1/3", "--particles", "2")
    assert code == 0
    angles = checks(doc)["algebra[1/3][N=02].heisenberg"]["payload"]["angles"]
    assert angles["+1,+2"]["pi_rational"] == "5/6"
    assert angles["+2,+1"]["pi_rational"] == "-5/6"


def test_algebra_fermions(capsys):
    code, doc = run_json(capsys, "algebra", "--level", "1/2", "--particles", "2")
    assert code == 0
    angles = checks(doc)["algebra[1/2][N=02].heisenberg"]["payload"]["angles"]
    assert {a["pi_rational"] for k, a in angles.items() if "0" not in k.split(",")} <= {"0", "-1"}


def test_algebra_level_four_three_particles(capsys):
    code, doc = run_json(capsys, "algebra", "--level", "1/4", "--particles", "3")
    assert code == 0
    c = checks(doc)
    assert c["algebra[1/4][N=03].mixed_metaabelian"]["passed"]
    witness = c["algebra[1/4][N=03].ordinary_metaabelian_fails"]["payload"]["witness_triple"]
    assert witness["is_zero"]


@pytest.mark.parametrize("argv", [
    ["spectrum", "--level", "2/4"],
    ["spectrum", "--level", "1/1"],
    ["spectrum", "--level", "x"],
    ["spectrum", "--t", "0,0"],
    ["spectrum", "--level", "1/3", "--tol", "1e-6"],
    ["spectrum", "--level", "1/3", "--mode", "float", "--tol", "0"],
    ["spectrum", "--level", "1/3", "--particles", "0"],
    ["spectrum"],
    ["qgroup", "--t", "2,0"],
    ["algebra", "--level", "1/3", "--particles", "1"],
    ["spectrum", "--t", "random"],
])
def test_config_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_errors_are_config_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--mode", "fuzzy"])
    assert exc.value.code == 2


def test_bad_thread_env(capsys, monkeypatch):
    monkeypatch.setenv("BRAIDLAB_THREADS", "zero")
    code, _, _ = run(capsys, "spectrum", "--level", "1/3")
    assert code == 2


def test_failure_exit_code(capsys, monkeypatch):
    import braidlab.fock as fock

    monkeypatch.setattr(fock, "predicted_energies", lambda p, N, tol=0: [0])
    code, _, _ = run(capsys, "spectrum", "--level", "1/3", "--particles", "3")
    assert code == 1


def test_thread_count_does_not_change_output(capsys, monkeypatch):
    argv = ["spectrum", "--level", "1/3,1/4,2/5", "--particles", "1..5"]
    monkeypatch.setenv("BRAIDLAB_THREADS", "1")
    _, one, _ = run(capsys, *argv)
    monkeypatch.setenv("BRAIDLAB_THREADS", "4")
    _, four, _ = run(capsys, *argv)
    assert one == four


def test_level_range_expansion(capsys):
    _, doc = run_json(capsys, "spectrum", "--level", "2/3..6", "--particles", "2")
    assert doc["config"]["levels"] == [[2, 3], [2, 5]]


def test_random_t_uses_seed(capsys):
    argv = ["verify", "--t", "random:3", "--mode", "float", "--seed", "9"]
    _, a = run_json(capsys, *argv)
    _, b = run_json(capsys, *argv)
    _, c = run_json(capsys, *argv[:-1], "10")
    assert a["checks"] == b["checks"]
    assert a["checks"] != c["checks"]
    assert a["summary"]["all_passed"]


def test_csv_and_table(capsys):
    code, out, _ = run(capsys, "spectrum", "--level", "1/3", "--particles", "2..3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "command,name,passed,residual,error" and len(lines) == 3
    code, out, _ = run(capsys, "spectrum", "--level", "1/3", "--particles", "2..3", "--format", "table")
    assert "PASS" in out and out.strip().endswith("2/2 checks passed")


def test_out_path(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--level", "1/3", "--out", str(dest))
    assert code == 0 and out == ""
    jsonschema.validate(json.loads(dest.read_text()), load_schema())


def test_timing_is_opt_in(capsys):
    _, doc = run_json(capsys, "verify", "--level", "1/3")
    assert "duration_seconds" not in doc
    _, doc = run_json(capsys, "verify", "--level", "1/3", "--timing")
    assert doc["duration_seconds"] >= 0


def test_byte_identical_across_processes(tmp_path):
    argv = [sys.executable, "-m", "braidlab.cli", "algebra", "--level", "1/3", "--particles", "2"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
