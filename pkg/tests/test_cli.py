"""CLI verbs, exit codes, formats, and byte-level determinism."""

import json
import math

from ruledgeo.cli import run


def run_to_file(tmp_path, name, argv):
    out = tmp_path / name
    code = run(argv + ["--out", str(out)])
    return code, out.read_bytes()


def write_spec(tmp_path, payload, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


HELICOID_SPEC = {"type": "gallery", "name": "right_helicoid", "params": {"c": 1.0}}


def test_gallery_emit_spec_and_summary(tmp_path, capsys):
    code, payload = run_to_file(
        tmp_path, "spec.json",
        ["gallery", "--name", "right_helicoid", "--param", "c=1.0", "--emit-spec"],
    )
    assert code == 0
    spec = json.loads(payload)
    assert spec == {"type": "gallery", "name": "right_helicoid", "params": {"c": 1}}
    assert run(["gallery", "--name", "right_helicoid"]) == 0
    assert "right_helicoid" in capsys.readouterr().out


def test_gallery_spec_classify_round_trip(tmp_path):
    code, payload = run_to_file(
        tmp_path, "spec.json",
        ["gallery", "--name", "right_helicoid", "--emit-spec"],
    )
    assert code == 0
    spec_path = tmp_path / "spec.json"
    code, out = run_to_file(
        tmp_path, "cls.json", ["classify", "--spec", str(spec_path)]
    )
    assert code == 0
    flags = json.loads(out)["flags"]
    assert flags["right_helicoid"] and flags["orthoid"] and flags["conoidal"]


def test_invariants_csv_and_json(tmp_path):
    spec = write_spec(tmp_path, HELICOID_SPEC)
    code, out = run_to_file(
        tmp_path, "inv.csv", ["invariants", "--spec", spec, "--grid", "5"]
    )
    assert code == 0
    lines = out.decode().strip().splitlines()
    assert lines[0] == "u,k,delta,sigma,lambda"
    assert len(lines) == 6
    row = lines[1].split(",")
    assert float(row[1]) == 0.0 and float(row[2]) == 1.0

    code, out = run_to_file(
        tmp_path, "inv.json",
        ["invariants", "--spec", spec, "--grid", "5", "--format", "json"],
    )
    data = json.loads(out)
    assert data["delta"] == [1.0] * 5
    assert data["lambda"] == [0.0] * 5


def test_invariants_rejects_nonstandard_without_flag(tmp_path, capsys):
    bad = write_spec(
        tmp_path,
        {
            "type": "expression",
            "cx": "0", "cy": "0", "cz": "u",
            "dx": "2*cos(u)", "dy": "2*sin(u)", "dz": "0",
            "domain": [0.0, 6.0],
        },
    )
    assert run(["invariants", "--spec", bad]) == 1
    err = capsys.readouterr().err
    assert "standard form" in err and "standardize" in err
    assert run(["invariants", "--spec", bad, "--standardize", "--grid", "3"]) == 0


def test_fit_command_matches_table(tmp_path):
    spec = write_spec(
        tmp_path,
        {"type": "gallery", "name": "conoidal_const_delta",
         "params": {"alpha": 2.0, "beta": 1.0}},
    )
    code, out = run_to_file(
        tmp_path, "fit.json", ["fit", "--family", "s3", "--spec", spec]
    )
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "fit" and data["n"] == -3
    assert all(abs(f + 2.0) < 1e-9 for _, f in data["f"])


def test_fit_zero_and_nofit_statuses(tmp_path):
    spec = write_spec(tmp_path, HELICOID_SPEC)
    code, out = run_to_file(
        tmp_path, "fit.json", ["fit", "--family", "s1", "--spec", spec]
    )
    assert code == 0 and json.loads(out)["status"] == "zero"

    gs = write_spec(
        tmp_path,
        {"type": "gallery", "name": "generic_skew", "params": {"seed": 1}},
        name="gs.json",
    )
    code, out = run_to_file(tmp_path, "nofit.json",
                            ["fit", "--family", "s1", "--spec", gs])
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "nofit" and data["best_residual"] > 1e-6


def test_trace_formats(tmp_path):
    spec = write_spec(tmp_path, HELICOID_SPEC)
    base = ["trace", "--spec", spec, "--family", "s1", "--u0", "1.0",
            "--v0", "0.5", "--steps", "4", "--step-size", "0.05"]
    code, csv_out = run_to_file(tmp_path, "tr.csv", base)
    assert code == 0
    lines = csv_out.decode().strip().splitlines()
    assert lines[0] == "u,v,x,y,z" and len(lines) == 6

    code, obj_out = run_to_file(tmp_path, "tr.obj", base + ["--format", "obj"])
    assert code == 0
    obj_lines = obj_out.decode().strip().splitlines()
    assert sum(1 for l in obj_lines if l.startswith("v ")) == 5
    assert obj_lines[-1].startswith("l 1 2 3 4 5")

    code, json_out = run_to_file(tmp_path, "tr.json", base + ["--format", "json"])
    data = json.loads(json_out)
    assert data["stop_reason"] == "completed"
    assert len(data["points"]) == 5
    assert math.isclose(data["arclength"], 0.2, rel_tol=1e-12)


def test_determinism_byte_identical(tmp_path):
    spec = write_spec(tmp_path, {"type": "gallery", "name": "generic_skew",
                                 "params": {"seed": 2}})
    runs = []
    for name in ("a.json", "b.json"):
        code, payload = run_to_file(
            tmp_path, name, ["fit", "--family", "lc1", "--spec", spec]
        )
        assert code == 0
        runs.append(payload)
    assert runs[0] == runs[1]

    runs = []
    for name in ("a.csv", "b.csv"):
        code, payload = run_to_file(
            tmp_path, name, ["invariants", "--spec", spec, "--grid", "17"]
        )
        assert code == 0
        runs.append(payload)
    assert runs[0] == runs[1]


def test_verify_single_prop(tmp_path):
    code, out = run_to_file(tmp_path, "v.json",
                            ["verify", "--prop", "4", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True and len(data["rows"]) == 3

    code, out = run_to_file(tmp_path, "vc.txt", ["verify", "--prop", "corollary"])
    assert code == 0
    assert b"corollary" in out and b"pass" in out


def test_verify_all_text_and_exit(tmp_path):
    code, out = run_to_file(tmp_path, "all.txt", ["verify", "--all"])
    assert code == 0
    text = out.decode()
    assert "overall: pass" in text
    assert text.count("\n") > 15  # 12 rows + negatives + corollary


def test_verify_failing_rows_exit_two(tmp_path):
    # an unattainable fit tolerance forces every non-zero row to fail
    code, out = run_to_file(
        tmp_path, "fail.txt", ["verify", "--prop", "1", "--tol-fit", "1e-30"]
    )
    assert code == 2
    assert b"FAIL" in out


def test_bad_inputs_exit_one(tmp_path, capsys):
    assert run(["invariants", "--spec", str(tmp_path / "missing.json")]) == 1
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{not json")
    assert run(["invariants", "--spec", str(bad_json)]) == 1
    wrong = write_spec(tmp_path, {"type": "mystery"}, name="wrong.json")
    assert run(["classify", "--spec", wrong]) == 1
    assert run(["gallery", "--name", "nope"]) == 1
    capsys.readouterr()


def test_json_float_formatting(tmp_path):
    # 17 significant digits in JSON output
    spec = write_spec(tmp_path, HELICOID_SPEC)
    code, out = run_to_file(
        tmp_path, "inv.json",
        ["invariants", "--spec", spec, "--grid", "3", "--format", "json"],
    )
    assert code == 0
    text = out.decode()
    assert "1.5707963267948966" in text  # pi/2 at full precision
