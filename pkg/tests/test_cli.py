import json

import pytest

from gapcorr.cli import parse_grid, run
from gapcorr.gaps import gap_spectrum
from gapcorr.generators import UniformRandom, VanDerCorput, generate
from gapcorr.paircorr import pair_correlation_curve
from gapcorr.torus import read_points


def test_generate_writes_points(tmp_path, capsys):
    out = tmp_path / "pts.txt"
    code = run(["generate", "--family", "kronecker", "--alpha", "0.618033988749895",
                "--n", "10", "--out", str(out)])
    assert code == 0
    values = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert len(values) == 10
    assert read_points(out).n == 10


def test_paircorr_csv(tmp_path, capsys):
    pts = tmp_path / "pts.txt"
    run(["generate", "--family", "kronecker", "--alpha", "golden", "--n", "10", "--out", str(pts)])
    assert run(["paircorr", "--in", str(pts), "--s-grid", "0.1:5.0:0.1", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "s,R_over_N"
    assert len(lines) == 51


def test_paircorr_json(capsys):
    assert run(["paircorr", "--family", "random", "--seed", "3", "--n", "100",
                "--s-grid", "0.5:1:0.5", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["n"] == 100 and d["s_grid"] == [0.5, 1.0] and len(d["values"]) == 2


def test_gaps_vdc_matches_library(capsys):
    assert run(["gaps", "--family", "vdc", "--base", "2", "--n", "1000"]) == 0
    d = json.loads(capsys.readouterr().out)
    sp = gap_spectrum(generate(VanDerCorput(2), 1000))
    assert d["k"] == sp.k <= 3
    assert d["gaps"] == list(sp.gaps) and d["counts"] == list(sp.counts)


def test_classify_csv(capsys):
    assert run(["classify", "--family", "kronecker", "--alpha", "sqrt2m1",
                "--n-values", "100,1000", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "N,rank,d,N_times_d,label"
    assert len(lines) > 2


def test_classify_json(capsys):
    assert run(["classify", "--family", "kronecker", "--alpha", "golden",
                "--n-values", "100,1000,10000", "--large-threshold", "100"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["large_threshold"] == 100 and len(d["labels"]) == 3


def test_batches(tmp_path, capsys):
    pts = tmp_path / "p.txt"
    pts.write_text("0.2\n0.2\n0.5\n")
    assert run(["batches", "--in", str(pts)]) == 0
    d = json.loads(capsys.readouterr().out)
    assert sorted(d["batch_sizes"]) == [1, 2]
    assert d["lower_bound"] == pytest.approx(2 / 3)


def test_probe(capsys):
    assert run(["probe", "--family", "kronecker", "--alpha", "golden", "--s", "1",
                "--n-values", "89,116"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "N,R_over_N" and len(lines) == 3


def test_report(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"spec": {"family": "random", "seed": 11},
                               "n_values": [100, 1000], "s_grid": [0.5, 1.0],
                               "target": "Poissonian"}))
    assert run(["report", "--config", str(cfg), "--out", str(tmp_path / "rep")]) == 0
    d = json.loads(capsys.readouterr().out)
    assert [r["N"] for r in d["rows"]] == [100, 1000]
    assert (tmp_path / "rep.csv").exists()


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["generate", "--bogus"],
    ["paircorr", "--n", "10"],
    ["generate", "--family", "kronecker", "--n", "10"],
    ["paircorr", "--family", "root", "--n", "10", "--s-grid", "1:0:1"],
    ["generate", "--family", "vdc", "--base", "1", "--n", "3"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv) == 2
    err = capsys.readouterr().err
    assert err.strip()


def test_runtime_error_exit_1(tmp_path, capsys):
    assert run(["gaps", "--in", str(tmp_path / "missing.txt")]) == 1
    err = capsys.readouterr().err
    assert len(err.strip().splitlines()) == 1


def test_bad_file_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("0.5\n1.5\n")
    assert run(["batches", "--in", str(bad)]) == 1


def test_grid_syntax():
    assert parse_grid("0.1:5.0:0.1") == [round(0.1 * k, 12) for k in range(1, 51)]
    assert parse_grid("0:1:0.3") == [0.0, 0.3, 0.6, 0.9]
    assert parse_grid("1:1:0.5") == [1.0]


def test_round_trip_bit_identical(tmp_path, capsys):
    pts = tmp_path / "r.txt"
    assert run(["generate", "--family", "random", "--seed", "42", "--n", "1500",
                "--out", str(pts)]) == 0
    assert run(["paircorr", "--in", str(pts), "--s-grid", "0.1:5.0:0.1"]) == 0
    cli_csv = capsys.readouterr().out
    lib_csv = pair_correlation_curve(generate(UniformRandom(42), 1500),
                                     parse_grid("0.1:5.0:0.1")).to_csv()
    assert cli_csv == lib_csv


def test_deterministic_output(capsys):
    argv = ["paircorr", "--family", "random", "--seed", "9", "--n", "2000"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first
