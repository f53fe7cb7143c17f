import json

import pytest

from nbspectra.cli import main, parse_complex


def run(args):
    return main(args)


def test_gen_regular(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert run(["gen", "--model", "regular", "--n", "50", "--d", "3", "--seed", "7", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["model"] == "regular" and doc["n"] == 50 and doc["d"] == 3


def test_gen_parity_error_exits_2(tmp_path, capsys):
    assert run(["gen", "--model", "regular", "--n", "5", "--d", "3"]) == 2
    assert "ParityError" in capsys.readouterr().err


def test_gen_missing_flags_exit_2():
    assert run(["gen", "--model", "hypergraph", "--n", "9", "--d", "2"]) == 2
    assert run(["gen", "--model", "rsbm", "--n", "8"]) == 2


def test_unknown_flag_exits_2(capsys):
    assert run(["gen", "--model", "regular", "--n", "10", "--d", "3", "--frobnicate"]) == 2


def test_unknown_command_exits_2():
    assert run(["transmogrify"]) == 2


def test_gen_writes_stdout_without_out(capsys):
    assert run(["gen", "--model", "regular", "--n", "10", "--d", "3", "--seed", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["n"] == 10


def test_spectrum_project_ks_pipeline(tmp_path, capsys):
    g = tmp_path / "g.json"
    s = tmp_path / "s.json"
    h = tmp_path / "h.csv"
    r = tmp_path / "ks.json"
    assert run(["gen", "--model", "regular", "--n", "200", "--d", "5", "--seed", "3", "--out", str(g)]) == 0
    assert run(["spectrum", "--in", str(g), "--out", str(s)]) == 0
    spec_doc = json.loads(s.read_text())
    assert len(spec_doc["pairs"]) == 200
    assert run(["project", "--in", str(s), "--rescale", "none", "--exclude-trivial", "--bins", "31", "--out", str(h)]) == 0
    lines = h.read_text().strip().split("\n")
    assert lines[0] == "bin_left,bin_right,count,density"
    assert sum(int(x.split(",")[2]) for x in lines[1:]) == 398
    assert run(["ks", "--in", str(s), "--law", "km", "--out", str(r)]) == 0
    rep = json.loads(r.read_text())
    assert rep["pass"] and rep["ks"] <= 0.06
    assert rep["n_samples"] == 398


def test_ks_threshold_failure_exits_1(tmp_path):
    g = tmp_path / "g.json"
    s = tmp_path / "s.json"
    run(["gen", "--model", "regular", "--n", "100", "--d", "5", "--seed", "3", "--out", str(g)])
    run(["spectrum", "--in", str(g), "--out", str(s)])
    assert run(["ks", "--in", str(s), "--law", "km", "--threshold", "0.0001"]) == 1


def test_ks_hyperalpha_requires_alpha(tmp_path):
    g = tmp_path / "g.json"
    s = tmp_path / "s.json"
    run(["gen", "--model", "hypergraph", "--n", "30", "--d", "2", "--k", "3", "--seed", "1", "--out", str(g)])
    run(["spectrum", "--in", str(g), "--out", str(s)])
    assert run(["ks", "--in", str(s), "--law", "hyperalpha"]) == 2
    assert run(["ks", "--in", str(s), "--law", "hyperalpha", "--alpha", "0.67", "--threshold", "0.9"]) == 0


def test_deloc_command(tmp_path):
    g = tmp_path / "g.json"
    r = tmp_path / "deloc.json"
    run(["gen", "--model", "regular", "--n", "60", "--d", "4", "--seed", "5", "--out", str(g)])
    assert run(["deloc", "--in", str(g), "--out", str(r)]) == 0
    rep = json.loads(r.read_text())
    assert rep["bound_violations"] == 0
    assert rep["ratio_monotonicity_violations"] == 0
    assert len(rep["records"]) == 120


def test_verify_command(tmp_path):
    g = tmp_path / "g.json"
    run(["gen", "--model", "regular", "--n", "10", "--d", "3", "--seed", "5", "--out", str(g)])
    assert run(["verify", "--in", str(g), "--trials", "8", "--seed", "2"]) == 0


def test_verify_explicit_z(tmp_path, capsys):
    g = tmp_path / "g.json"
    run(["gen", "--model", "regular", "--n", "4", "--d", "3", "--out", str(g)])
    assert run(["verify", "--in", str(g), "--z", "0.3+0.4i"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["trials"] == 1 and doc["all_ok"]


def test_verify_hypergraph(tmp_path):
    g = tmp_path / "h.json"
    run(["gen", "--model", "hypergraph", "--n", "9", "--d", "2", "--k", "3", "--seed", "1", "--out", str(g)])
    assert run(["verify", "--in", str(g), "--trials", "4", "--seed", "0"]) == 0


def test_rsbm_recover_command(tmp_path, capsys):
    r = tmp_path / "rec.json"
    code = run(["rsbm-recover", "--n", "100", "--d1", "8", "--d2", "1", "--seed", "0", "--trials", "3", "--out", str(r)])
    assert code == 0
    assert "exact: 3/3" in capsys.readouterr().err
    rep = json.loads(r.read_text())
    assert rep["exact_trials"] == 3
    assert rep["mu2"] == pytest.approx(5.561552812808830)


def test_rsbm_recover_non_detectable_exits_2():
    assert run(["rsbm-recover", "--n", "40", "--d1", "4", "--d2", "2", "--trials", "1"]) == 2


def test_missing_input_file_exits_2(tmp_path):
    assert run(["spectrum", "--in", str(tmp_path / "nope.json"), "--out", str(tmp_path / "s.json")]) == 2


def test_reproducibility_byte_identical(tmp_path):
    outs = []
    for tag in ("x", "y"):
        g = tmp_path / f"g{tag}.json"
        s = tmp_path / f"s{tag}.json"
        h = tmp_path / f"h{tag}.csv"
        v = tmp_path / f"v{tag}.json"
        r = tmp_path / f"r{tag}.json"
        run(["gen", "--model", "regular", "--n", "30", "--d", "3", "--seed", "9", "--out", str(g)])
        run(["spectrum", "--in", str(g), "--out", str(s)])
        run(["project", "--in", str(s), "--rescale", "none", "--exclude-trivial", "--out", str(h)])
        run(["verify", "--in", str(g), "--trials", "4", "--seed", "1", "--out", str(v)])
        run(["rsbm-recover", "--n", "40", "--d1", "8", "--d2", "1", "--seed", "2", "--trials", "2", "--out", str(r)])
        outs.append(tuple(p.read_bytes() for p in (g, s, h, v, r)))
    assert outs[0] == outs[1]


def test_parse_complex_forms():
    assert parse_complex("0.3+0.4i") == 0.3 + 0.4j
    assert parse_complex("-2i") == -2j
    assert parse_complex("1.5") == 1.5
    assert parse_complex("-1-1i") == -1 - 1j
    with pytest.raises(Exception):
        parse_complex("zebra")


def test_help_runs(capsys):
    assert run(["--help"]) == 0
    assert run(["gen", "--help"]) == 0
    capsys.readouterr()
