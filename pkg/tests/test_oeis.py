import pytest

from ruler_forge.oeis import bfile_lines, load_sequences, write_bfile


def test_load_sequences():
    seqs = load_sequences()
    assert set(seqs) == {
        "A003022", "A392461", "A392462", "A392463", "A395265", "A392517",
    }
    assert seqs["A392517"].kind == "lm" and seqs["A392517"].offset == 1
    assert seqs["A003022"].g == 1 and seqs["A003022"].offset == 2
    assert seqs["A395265"].g == 5
    assert all(s.source.startswith("https://oeis.org/") for s in seqs.values())


def test_lm_bfile_lines():
    spec = load_sequences()["A392517"]
    lines, last = bfile_lines(spec, 1, 10)
    assert lines == [
        "1 0", "2 2", "3 5", "4 8", "5 12",
        "6 16", "7 20", "8 25", "9 30", "10 35",
    ]
    assert last == 10


def test_golomb_bfile_matches_table_row():
    spec = load_sequences()["A392461"]
    lines, _ = bfile_lines(spec, 3, 8)
    assert lines == ["3 2", "4 4", "5 6", "6 9", "7 13", "8 18"]


def test_offset_enforced():
    spec = load_sequences()["A003022"]
    with pytest.raises(ValueError):
        bfile_lines(spec, 1, 4)


def test_write_bfile_format(tmp_path):
    spec = load_sequences()["A392517"]
    out = tmp_path / "b392517.txt"
    written, last = write_bfile(spec, 1, 5, str(out))
    assert written == 5 and last == 5
    assert out.read_bytes() == b"1 0\n2 2\n3 5\n4 8\n5 12\n"
    assert not (tmp_path / "b392517.txt.partial").exists()


def test_write_bfile_partial_sidecar(tmp_path):
    spec = load_sequences()["A392517"]
    out = tmp_path / "partial.txt"
    written, last = write_bfile(spec, 1, 12, str(out), max_nodes=20)
    assert written < 12
    sidecar = (tmp_path / "partial.txt.partial").read_text()
    assert "last proven term" in sidecar
    assert f"index {last}" in sidecar


def test_empty_range_bfile(tmp_path):
    spec = load_sequences()["A392517"]
    lines, last = bfile_lines(spec, 5, 4)
    assert lines == [] and last is None
