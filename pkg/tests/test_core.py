import random

import pytest

from ruler_forge.core import (
    MAX_MARKS,
    Ruler,
    diff_profile,
    format_ruler,
    holes,
    is_g_golomb,
    is_lm_ruler,
    max_multiplicity,
    parse_ruler,
)


def naive_pair_counts(marks):
    counts = {}
    for i in range(len(marks)):
        for j in range(len(marks)):
            d = marks[j] - marks[i]
            if d > 0:
                counts[d] = counts.get(d, 0) + 1
    return counts


def test_diff_profile_examples():
    assert diff_profile(Ruler([0, 1, 3])).counts == {1: 1, 2: 1, 3: 1}
    assert diff_profile(Ruler([0, 2, 5])).counts == {2: 1, 3: 1, 5: 1}
    assert diff_profile(Ruler([0, 1, 2])).counts == {1: 2, 2: 1}


def test_diff_profile_total_law():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 12)
        marks = rng.sample(range(61), n)
        p = diff_profile(Ruler(marks))
        assert p.total == n * (n - 1) // 2
        assert max(p.counts, default=0) <= Ruler(marks).diameter


def test_single_mark():
    r = Ruler([5])
    assert r.marks == (0,)
    assert diff_profile(r).counts == {}
    assert max_multiplicity(r) == 0
    assert holes(r).holes == ()


def test_normalization_and_invariance():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(2, 12)
        marks = rng.sample(range(61), n)
        r = Ruler(marks)
        assert r.marks[0] == 0
        t = rng.randint(-40, 40)
        assert diff_profile(r.translate(t)).counts == diff_profile(r).counts
        assert diff_profile(r.reflect()).counts == diff_profile(r).counts


def test_is_g_golomb_examples():
    assert is_g_golomb(Ruler([0, 1, 2, 3, 5]), 3)
    assert not is_g_golomb(Ruler([0, 1, 2]), 1)
    assert is_g_golomb(Ruler([0, 1, 2, 4, 6, 7]), 3)
    with pytest.raises(ValueError):
        is_g_golomb(Ruler([0, 1]), 0)


def test_is_lm_ruler_examples():
    assert is_lm_ruler(Ruler([0, 2, 5, 8, 12]))
    assert not is_lm_ruler(Ruler([0, 1]))
    assert not is_lm_ruler(Ruler([0, 2, 4]))


def test_lm_excludes_unit_distance():
    rng = random.Random(3)
    for _ in range(40):
        marks = sorted(rng.sample(range(40), rng.randint(2, 8)))
        r = Ruler(marks)
        if is_lm_ruler(r):
            assert 1 not in diff_profile(r).counts


def test_max_multiplicity_examples():
    assert max_multiplicity(Ruler([0, 1, 2])) == 2
    # not 1: the distance 3 is realized twice, by (2,5) and (5,8)
    assert max_multiplicity(Ruler([0, 2, 5, 8, 12])) == 2
    assert max_multiplicity(Ruler([0, 1, 2, 4, 6, 7])) == 3


def test_max_multiplicity_matches_naive_counter():
    rng = random.Random(17)
    for _ in range(80):
        n = rng.randint(2, 12)
        marks = sorted(rng.sample(range(61), n))
        r = Ruler(marks)
        naive = naive_pair_counts(marks)
        assert max_multiplicity(r) == max(naive.values())
        assert diff_profile(r).counts == naive
        for g in (1, 2, 3):
            assert is_g_golomb(r, g) == (max(naive.values()) <= g)


def test_max_multiplicity_defines_smallest_g():
    r = Ruler([0, 1, 2, 4, 6, 7])
    m = max_multiplicity(r)
    assert is_g_golomb(r, m)
    assert not is_g_golomb(r, m - 1)


def test_holes():
    assert holes(Ruler([0, 1, 2, 4, 6])).holes == (3, 5)
    assert holes(Ruler(range(8))).holes == ()
    assert holes(Ruler([0, 1, 2, 4, 6, 7])).holes == (3, 5)


def test_holes_partition():
    rng = random.Random(23)
    for _ in range(40):
        marks = sorted(rng.sample(range(50), rng.randint(1, 10)))
        r = Ruler(marks)
        h = holes(r)
        merged = sorted(set(r.marks) | set(h.holes))
        assert merged == list(range(r.diameter + 1))
        assert not set(r.marks) & set(h.holes)


def test_ruler_validation():
    with pytest.raises(ValueError):
        Ruler([])
    with pytest.raises(ValueError):
        Ruler([0, 3, 3])
    with pytest.raises(ValueError):
        Ruler(range(MAX_MARKS + 1))


def test_parse_and_format():
    assert parse_ruler("[0, 2, 5, 8]").marks == (0, 2, 5, 8)
    assert parse_ruler("0,2,5").marks == (0, 2, 5)
    assert parse_ruler("{3, 5, 8}").marks == (0, 2, 5)  # normalized
    assert format_ruler(Ruler([0, 2, 5])) == "[0, 2, 5]"
    assert parse_ruler(format_ruler(Ruler([0, 2, 5, 8]))).marks == (0, 2, 5, 8)
    for bad in ("", "[]", "0,,2", "0, 2.5", "abc", "[5, 3]"):
        with pytest.raises(ValueError):
            parse_ruler(bad)
