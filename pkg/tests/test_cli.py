import json
import math

import numpy as np

from ebchannels.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_channel(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_analyze_identity_preset(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--preset", "identity")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"]["is_eb"] is False
    assert abs(data["verdict"]["margin"] - (-0.5)) < 1e-12
    assert data["seb_class"] == "not-eb"
    assert data["closed_form"]["method"] == "unital-closed-form"
    assert data["closed_form"]["agrees_with_numeric"] is True


def test_analyze_depolarizing_threshold_file(tmp_path, capsys):
    third = 1.0 / 3.0
    path = write_channel(
        tmp_path,
        "third.json",
        {
            "n": [0.0, 0.0, 0.0],
            "M": [[third, 0, 0], [0, third, 0], [0, 0, third]],
            "metadata": {"name": "threshold"},
        },
    )
    code, out, _ = run_cli(capsys, "analyze", "--channel", path)
    assert code == 0
    data = json.loads(out)
    assert data["verdict"]["is_eb"] is True
    assert data["closed_form"]["method"] == "unital-closed-form"
    assert data["closed_form"]["is_eb"] is True
    assert data["closed_form"]["agrees_with_numeric"] is True


def test_analyze_seb_preset(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--preset", "seb-example")
    assert code == 0
    data = json.loads(out)
    assert data["seb_class"] == "seb-rank-deficient"


def test_analyze_malformed_json_names_problem(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"n": [0, 0, 0], "M": ')
    code, _, err = run_cli(capsys, "analyze", "--channel", str(path))
    assert code == 1
    assert "invalid JSON" in err


def test_analyze_rejects_extra_keys(tmp_path, capsys):
    path = write_channel(
        tmp_path,
        "extra.json",
        {"n": [0, 0, 0], "M": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "spin": 7},
    )
    code, _, err = run_cli(capsys, "analyze", "--channel", str(path))
    assert code == 1
    assert "spin" in err


def test_analyze_rejects_bad_shapes(tmp_path, capsys):
    path = write_channel(
        tmp_path, "short.json", {"n": [0, 0], "M": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}
    )
    code, _, err = run_cli(capsys, "analyze", "--channel", str(path))
    assert code == 1
    assert '"n"' in err


def test_analyze_non_cp_exits_two(tmp_path, capsys):
    path = write_channel(
        tmp_path, "noncp.json", {"n": [0, 0, 0], "M": [[1, 0, 0], [0, 1, 0], [0, 0, -1]]}
    )
    code, out, _ = run_cli(capsys, "analyze", "--channel", str(path))
    assert code == 2
    data = json.loads(out)
    assert data["cptp"]["is_cp"] is False
    assert abs(data["cptp"]["min_choi_eig"] - (-0.5)) < 1e-10


def test_markov_depolarization_csv(tmp_path, capsys):
    out_path = tmp_path / "depol.csv"
    code, out, _ = run_cli(
        capsys,
        "markov",
        "--family",
        "depolarization",
        "--T",
        "1",
        "--t-max",
        "3",
        "--steps",
        "301",
        "--output",
        str(out_path),
    )
    assert code == 0
    onset = float(out.split("onset:")[1].strip())
    assert abs(onset - math.log(3.0)) < 1e-8
    lines = out_path.read_text().strip().split("\n")
    assert lines[0] == "t,lam1,lam2,lam3,margin,is_eb"
    assert len(lines) == 302
    # locale-independent floats with enough digits to round-trip
    row = lines[1].split(",")
    assert float(row[4]) < 0


def test_markov_decoherence_reports_no_onset(tmp_path, capsys):
    out_path = tmp_path / "deco.csv"
    code, out, _ = run_cli(
        capsys,
        "markov",
        "--family",
        "decoherence",
        "--T",
        "1",
        "--omega",
        "5",
        "--t-max",
        "50",
        "--steps",
        "51",
        "--output",
        str(out_path),
    )
    assert code == 0
    assert "onset: none" in out


def test_markov_homogenization_json(tmp_path, capsys):
    out_path = tmp_path / "homog.json"
    code, out, _ = run_cli(
        capsys,
        "markov",
        "--family",
        "homogenization",
        "--T1",
        "1",
        "--T2",
        "1",
        "--w",
        "0.5",
        "--t-max",
        "5",
        "--steps",
        "21",
        "--output",
        str(out_path),
        "--format",
        "json",
    )
    assert code == 0
    data = json.loads(out_path.read_text())
    assert data["family"] == "homogenization"
    assert {"f1", "f2", "f", "cf_eb"} <= set(data["rows"][0])


def test_markov_bad_config(tmp_path, capsys):
    code, _, err = run_cli(
        capsys,
        "markov",
        "--family",
        "depolarization",
        "--T",
        "-1",
        "--t-max",
        "3",
        "--output",
        str(tmp_path / "x.csv"),
    )
    assert code == 1
    assert "positive" in err


def test_markov_unwritable_output(capsys):
    code, _, err = run_cli(
        capsys,
        "markov",
        "--family",
        "depolarization",
        "--T",
        "1",
        "--t-max",
        "1",
        "--steps",
        "5",
        "--output",
        "/nonexistent-dir/scan.csv",
    )
    assert code == 3
    assert "cannot write" in err


def test_amend_local_deterministic_bytes(capsys):
    args = ("amend", "local", "--preset", "seb-example", "--layers", "3",
            "--trials", "50", "--seed", "7")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["amended"] is False
    assert data["base_is_eb"] is True
    assert data["seed"] == 7
    assert "PCG64" in data["prng"]
    assert len(data["best_unitaries"]) == 2


def test_amend_local_writes_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, _, _ = run_cli(
        capsys, "amend", "local", "--preset", "identity", "--layers", "2",
        "--trials", "10", "--seed", "1", "--output", str(out_path),
    )
    assert code == 0
    data = json.loads(out_path.read_text())
    assert data["base_is_eb"] is False
    assert abs(data["best_pt_min_eig"] - (-0.5)) < 1e-12


def test_amend_local_non_cp_exits_two(tmp_path, capsys):
    path = write_channel(
        tmp_path, "bad.json", {"n": [0, 0, 0], "M": [[1, 0, 0], [0, 1, 0], [0, 0, -1]]}
    )
    code, _, err = run_cli(
        capsys, "amend", "local", "--channel", path, "--layers", "2",
        "--trials", "5", "--seed", "0",
    )
    assert code == 2
    assert "not CP" in err


def test_amend_global_example_reports_failure(capsys):
    code, out, err = run_cli(capsys, "amend", "global-example")
    assert code == 2
    data = json.loads(out)
    assert data["reproduced_ordering"] is None
    assert len(data["attempts"]) == 2
    assert all("error" in attempt for attempt in data["attempts"])
    assert "no basis ordering reproduced" in err
    # the bundled reference state rides along for inspection
    ref = np.array([[c[0] + 1j * c[1] for c in row] for row in data["reference_state"]])
    assert abs(np.trace(ref).real - 1.0) < 1e-15


def test_unknown_preset(capsys):
    code, _, err = run_cli(capsys, "analyze", "--preset", "mystery")
    assert code == 1
    assert "unknown preset" in err


def test_bad_flags_exit_one(capsys):
    assert main(["markov", "--family", "nope", "--t-max", "1", "--output", "x"]) == 1
    capsys.readouterr()
