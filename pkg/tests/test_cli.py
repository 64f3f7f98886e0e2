import json

import pytest

from ruler_forge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "[0,2,5,8]", "--lm")
    assert code == 0
    assert "check lm: PASS" in out
    assert "max multiplicity: 2" in out


def test_verify_fail_exit_one(capsys):
    code, out, _ = run(capsys, "verify", "[0,1,2]", "--g", "1")
    assert code == 1
    assert "FAIL" in out
    assert "1 2" in out  # r(1) = 2 shown in the profile


def test_verify_golomb_pass(capsys):
    code, out, _ = run(capsys, "verify", "[0,1,4,6]", "--g", "1")
    assert code == 0


def test_verify_usage_errors(capsys):
    code, _, err = run(capsys, "verify", "nonsense", "--lm")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "verify", "[0,1,2]")  # missing predicate
    assert code == 2


def test_verify_json_round_trip(capsys):
    code, out, _ = run(capsys, "verify", "[0,2,5]", "--lm", "--emit", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True and doc["profile"] == {"2": 1, "3": 1, "5": 1}
    assert json.dumps(doc, sort_keys=True, separators=(",", ":")) == out.strip()


def test_construct_small_b(capsys):
    code, out, _ = run(capsys, "construct", "small-b", "5", "3")
    assert code == 0
    assert "[0, 1, 2, 3, 4, 6, 7, 9]" in out
    assert "diameter: 9" in out
    assert "PASS" in out


def test_construct_small_b_domain_error(capsys):
    code, _, err = run(capsys, "construct", "small-b", "1", "3")
    assert code == 2
    assert "g >= 2" in err


def test_construct_explicit_lm_json(capsys):
    code, out, _ = run(capsys, "construct", "explicit-lm", "6", "--emit", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["marks"] == [0, 3, 7, 10, 15, 20]
    assert doc["verified"] is True
    assert doc["construction_name"] == "explicit-lm"
    assert doc["diameter"] == 20


def test_construct_hole_complement(capsys):
    code, out, _ = run(capsys, "construct", "hole-complement", "3", "3")
    assert code == 0
    assert "[0, 1, 2, 4, 6, 7]" in out
    code, _, err = run(capsys, "construct", "hole-complement", "2", "5")
    assert code == 2
    assert "g >=" in err


def test_construct_greedy(capsys):
    code, out, _ = run(capsys, "construct", "greedy-lm", "10")
    assert code == 0
    assert "[0, 2, 5, 8, 12, 16, 20, 25, 30, 35]" in out


def test_construct_rejects_decimal_constant(capsys):
    code, _, err = run(capsys, "construct", "explicit-lm", "5", "--c", "1.75")
    assert code == 2
    assert "exact" in err


def test_search_text_and_json(capsys):
    code, out, _ = run(capsys, "search", "lm", "7", "--threads", "1")
    assert code == 0
    assert "min diameter: 20" in out
    assert "proven_optimal" in out
    code, out, _ = run(capsys, "search", "golomb", "2", "5", "--threads", "1", "--emit", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["min_diameter"] == 6 and doc["g"] == 2
    assert json.dumps(doc, sort_keys=True, separators=(",", ":")) == out.strip()


def test_search_trivial_interval(capsys):
    code, out, _ = run(capsys, "search", "golomb", "3", "3", "--threads", "1")
    assert code == 0
    assert "min diameter: 2" in out


def test_search_budget_exit_code(capsys):
    code, out, _ = run(
        capsys, "search", "golomb", "1", "8", "--max-nodes", "40", "--threads", "1"
    )
    assert code == 3
    assert "budget_exhausted_with_incumbent" in out


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--g", "3", "--b", "3")
    assert code == 0
    assert "lower 7" in out
    code, out, _ = run(capsys, "bounds", "--lm-n", "5")
    assert code == 0
    assert "lower 8" in out and "upper 15" in out and "optimal 12" in out
    code, out, _ = run(capsys, "bounds", "--lm-n", "1")
    assert code == 0
    assert "lower 0" in out
    code, _, _ = run(capsys, "bounds")
    assert code == 2
    code, _, _ = run(capsys, "bounds", "--g", "3")
    assert code == 2


def test_certify_small(tmp_path, capsys):
    base = str(tmp_path / "report")
    code, out, _ = run(capsys, "certify", "--dmax", "20", "--out", base, "--threads", "1")
    assert code == 0
    assert "verdict: PASS" in out
    log = (tmp_path / "report.log").read_text().splitlines()
    assert log[0] == "3 2 2 PASS"
    doc = json.loads((tmp_path / "report.json").read_text())
    assert doc["verdict"] == "pass"
    assert doc["d_max"] == 20


def test_certify_tampered_constant(tmp_path, capsys):
    base = str(tmp_path / "bad")
    code, out, _ = run(capsys, "certify", "--dmax", "20", "--c", "3/2", "--out", base, "--threads", "1")
    assert code == 1
    assert "verdict: FAIL" in out
    code, _, err = run(capsys, "certify", "--dmax", "20", "--c", "1.75", "--out", base)
    assert code == 2


def test_oeis_bfile(tmp_path, capsys):
    out_path = tmp_path / "b392517.txt"
    code, _, _ = run(capsys, "oeis", "A392517", "1..10", "--out", str(out_path), "--threads", "1")
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[-1] == "10 35"
    assert len(lines) == 10


def test_oeis_golomb_row(tmp_path, capsys):
    out_path = tmp_path / "row2.txt"
    code, _, _ = run(capsys, "oeis", "A392461", "3..6", "--out", str(out_path), "--threads", "1")
    assert code == 0
    assert out_path.read_text() == "3 2\n4 4\n5 6\n6 9\n"


def test_oeis_errors_and_empty(tmp_path, capsys):
    code, _, err = run(capsys, "oeis", "A000001", "1..3")
    assert code == 2 and "unsupported" in err
    out_path = tmp_path / "empty.txt"
    code, _, _ = run(capsys, "oeis", "A392517", "7..2", "--out", str(out_path))
    assert code == 0
    assert out_path.read_text() == ""
    code, _, err = run(capsys, "oeis", "A392517", "1-5", "--out", str(out_path))
    assert code == 2


def test_sweep_text_and_csv(capsys):
    code, out, _ = run(capsys, "sweep", "golomb", "--g-range", "1..2",
                       "--b-range", "1..3", "--threads", "1")
    assert code == 0
    assert "g\\b" in out
    code, out, _ = run(capsys, "sweep", "lm", "--n-range", "1..6",
                       "--emit", "csv", "--threads", "1")
    assert code == 0
    assert out.splitlines()[1:] == ["1,0", "2,2", "3,5", "4,8", "5,12", "6,16"]


def test_out_file_writing(tmp_path, capsys):
    target = tmp_path / "verify.txt"
    code, out, _ = run(capsys, "verify", "[0,2,5]", "--lm", "--out", str(target))
    assert code == 0
    assert out == ""
    assert "check lm: PASS" in target.read_text()


def test_threads_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("RULER_FORGE_THREADS", "1")
    code, out, _ = run(capsys, "search", "lm", "6")
    assert code == 0 and "min diameter: 16" in out
    monkeypatch.setenv("RULER_FORGE_THREADS", "zzz")
    code, _, err = run(capsys, "search", "lm", "6")
    assert code == 2 and "RULER_FORGE_THREADS" in err


def test_version_and_usage(capsys):
    code, _, _ = run(capsys, "--version")
    assert code == 0
    code, _, _ = run(capsys)
    assert code == 2
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2
