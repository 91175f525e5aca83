import json
import os

import jsonschema
import pytest

from bohrlab.cli import format_sweep, load_schema, run, sweep_rows


def run_json(tmp_path, argv):
    out = tmp_path / "out.json"
    code = run(argv + ["--json", str(out)])
    report = json.loads(out.read_text())
    jsonschema.validate(report, load_schema())
    return code, report, out.read_bytes()


def test_constants_report(tmp_path):
    code, report, _ = run_json(tmp_path, ["constants", "--id", "all"])
    ids = [r["id"] for r in report["results"]]
    assert "alpha" in ids and "lambda_139" in ids
    by_id = {r["id"]: r for r in report["results"]}
    assert by_id["alpha"]["pass"]
    # two reference values come from rounded roots and miss 1e-4
    assert not by_id["lambda_A1"]["pass"]
    assert code == (0 if report["pass"] else 1) == 1


def test_constants_subset_passes(tmp_path):
    code, report, _ = run_json(tmp_path, ["constants", "--id", "alpha", "beta", "lambda_A2"])
    assert code == 0 and report["pass"]


def test_constants_unknown_id(tmp_path):
    assert run(["constants", "--id", "omega", "--json", str(tmp_path / "x.json")]) == 2


def test_verify_a1(tmp_path):
    code, report, _ = run_json(tmp_path, ["verify", "--functional", "a1", "--family", "moebius", "--grid", "100x100"])
    assert code == 0
    assert report["results"][0]["pass"]
    assert report["results"][0]["spec_id"] == "a1"


def test_verify_harmonic_sweeps_k(tmp_path):
    code, report, _ = run_json(tmp_path, ["verify", "--functional", "harm-j", "--family", "harmonic-extremal",
                                          "--grid", "40x40"])
    assert code == 0
    assert len(report["results"]) == 5


def test_verify_with_K(tmp_path):
    code, report, _ = run_json(tmp_path, ["verify", "--functional", "sub-convex", "--K", "3", "--grid", "40x40"])
    assert code == 0
    assert report["results"][0]["params"]["k"] == 0.5


def test_verify_fails_with_large_lambda(tmp_path):
    code, report, _ = run_json(tmp_path, ["verify", "--functional", "a2", "--lambda", "13", "--grid", "100x100"])
    assert code == 1
    assert not report["pass"]


def test_probe(tmp_path):
    code, report, _ = run_json(tmp_path, ["probe", "--functional", "a1", "--lambda-scale", "1.01"])
    assert code == 0
    assert report["results"][0]["violated"]


def test_probe_expect_none(tmp_path):
    code, report, _ = run_json(tmp_path, ["probe", "--functional", "classical", "--radius-excess", "0",
                                          "--expect", "none"])
    assert code == 0
    assert not report["results"][0]["violated"]


def test_probe_harmonic_needs_k(tmp_path):
    assert run(["probe", "--functional", "harm-i1", "--radius-excess", "0.01"]) == 2


def test_envelope(tmp_path):
    code, report, _ = run_json(tmp_path, ["envelope", "--lemma", "L32", "--samples", "100"])
    assert code == 0


def test_usage_errors(tmp_path):
    assert run([]) == 2
    assert run(["verify", "--functional", "nope"]) == 2
    assert run(["verify", "--functional", "a1", "--grid", "abc"]) == 2
    assert run(["sweep", "--curve", "ru", "--values", ""]) == 2
    assert run(["verify", "--functional", "rogosinski", "--grid", "10x10"]) == 2


def test_unwritable_path(tmp_path):
    missing = tmp_path / "no" / "such" / "dir" / "out.csv"
    assert run(["sweep", "--curve", "ru", "--values", "0,1", "--out", str(missing)]) == 2
    assert run(["constants", "--id", "alpha", "--json", str(missing)]) == 2


def test_sweep_ru(tmp_path):
    out = tmp_path / "ru.csv"
    assert run(["sweep", "--curve", "ru", "--values", "0,0.25,0.5,0.75,1.0", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "param,value"
    values = [float(line.split(",")[1]) for line in lines[1:]]
    assert len(values) == 5
    assert all(x > y for x, y in zip(values, values[1:]))


def test_sweep_harm_j_values():
    rows = sweep_rows("harm-j", [1, 2, 5, 100])
    expected = [0.2, 3 / 17, 6 / 38, 101 / 703]
    for (_, v), e in zip(rows, expected):
        assert abs(v - e) < 1e-15
    assert abs(rows[1][1] - 0.176470) < 1e-6
    assert abs(rows[2][1] - 0.157894) < 1e-6


def test_sweep_bytes():
    text = format_sweep([(1.0, 0.2), (2.0, 3 / 17)])
    assert text == "param,value\n1,0.20000000000000001\n2,0.17647058823529413\n"


def test_sweep_out_dir_and_range(tmp_path):
    argv = ["sweep", "--curve", "r1", "--curve", "harm-j", "--values", "1:3:3", "--out-dir", str(tmp_path),
            "--json", str(tmp_path / "s.json")]
    assert run(argv) == 2  # k=2 is out of range for r1
    argv = ["sweep", "--curve", "r1", "--curve", "r2", "--values", "0:1:5", "--out-dir", str(tmp_path),
            "--json", str(tmp_path / "s.json")]
    assert run(argv) == 0
    assert sorted(os.listdir(tmp_path)) == ["r1.csv", "r2.csv", "s.json"]
    jsonschema.validate(json.loads((tmp_path / "s.json").read_text()), load_schema())


def test_byte_identical_reruns(tmp_path, monkeypatch):
    argv = ["verify", "--functional", "a3", "--family", "blaschke", "--samples", "30", "--grid", "30x30"]
    outputs = []
    for threads in ("1", "4"):
        monkeypatch.setenv("BOHRLAB_THREADS", threads)
        outputs.append(run_json(tmp_path, argv)[2])
    assert outputs[0] == outputs[1]
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    run(["sweep", "--curve", "rogosinski", "--values", "1:10:10", "--out", str(a)])
    run(["sweep", "--curve", "rogosinski", "--values", "1:10:10", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_csv_stdout(capsys):
    assert run(["constants", "--id", "alpha", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("id,")
