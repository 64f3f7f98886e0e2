import random
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest

from ruler_forge.bounds import (
    WindowModel,
    _cutoff_curve,
    beta_coefficient,
    gap_cutoff,
    gap_sum_bound,
    golomb_lower_bound,
    lm_lower_bound,
    sorted_gap_floor,
    tail_bound,
    tail_slack,
    window_count_bound,
    window_tilde,
    window_value,
)
from ruler_forge.certify import MarkCache, _max_m_below, _min_m_above
from ruler_forge.construct import OPTIMAL_LM_TABLE
from ruler_forge.intervals import Interval

C = Fraction(7, 4)


def test_golomb_lower_bound_examples():
    assert golomb_lower_bound(1, 1) == 1
    assert golomb_lower_bound(3, 3) == 7
    assert golomb_lower_bound(1, 4) == 7  # while the true minimum is 11
    with pytest.raises(ValueError):
        golomb_lower_bound(0, 1)


def test_lm_lower_bound_examples():
    assert lm_lower_bound(1) == 0
    assert lm_lower_bound(5) == 8
    assert lm_lower_bound(12) == 35


def test_lm_lower_bound_below_table_values():
    for n, (diam, _) in OPTIMAL_LM_TABLE.items():
        assert lm_lower_bound(n) <= diam


def test_lm_lower_bound_matches_high_precision_ceiling():
    getcontext().prec = 80  # beyond 256 bits of mantissa
    for n in list(range(1, 3001)) + [10**4, 10**5]:
        val = (Decimal(8 * (n - 1) ** 3)).sqrt() / 3
        floor = int(val.to_integral_value(rounding="ROUND_FLOOR"))
        expected = floor if val == floor else floor + 1
        assert lm_lower_bound(n) == expected


def test_sorted_gap_floor():
    assert sorted_gap_floor(1) == 2
    assert sorted_gap_floor(2) == 3  # sqrt(4) exact, strict inequality
    assert sorted_gap_floor(8) == 5  # sqrt(16) exact, strict inequality
    assert gap_sum_bound(12) == 43


def test_sorted_gaps_hold_on_optimal_rulers():
    for n, (_, marks) in OPTIMAL_LM_TABLE.items():
        gaps = sorted(b - a for a, b in zip(marks, marks[1:]))
        for i, gap in enumerate(gaps, start=1):
            assert gap >= sorted_gap_floor(i)


def test_window_value_enclosure():
    w = window_value(1, 1, C)
    # (7/4)(8 - 27^{1/2} - 1) = 3.1567332602633942089809...
    ref = Fraction(31567332602633942089809, 10**22)
    eps = Fraction(1, 10**21)
    assert ref - eps <= w.lo <= w.hi <= ref + eps
    assert w.width <= Fraction(1, 1 << 30)
    wt = window_tilde(1, 1, C)
    assert (wt - w).contains(C)  # W~ = W + C k


def test_window_value_monotone():
    rng = random.Random(5)
    for _ in range(25):
        k = rng.randint(1, 30)
        x = Fraction(rng.randint(1, 5000))
        assert window_value(k, x + 1, C).certainly_gt(window_value(k, x, C))
        assert window_value(k + 1, x, C).certainly_gt(window_value(k, x, C))


def test_window_tilde_trapezoid_inequality():
    rng = random.Random(9)
    for _ in range(40):
        k = rng.randint(1, 50)
        x = Fraction(rng.randint(1, 10**4))
        lhs = window_tilde(k, x, C)
        rhs = (
            Interval.point(Fraction(3, 4) * C * k)
            * (Interval.point(x + 2).sqrt() + Interval.point(x + k + 2).sqrt())
        )
        assert lhs.certainly_gt(rhs)


def test_gap_cutoff_bracket_and_width():
    for d in (1, 10, 4476, 9000):
        k = gap_cutoff(d, C)
        assert k.width <= Fraction(1, 1 << 20)
        target = Fraction(d + 1)
        assert _cutoff_curve(k.lo, C, 128).certainly_lt(target)
        assert _cutoff_curve(k.hi, C, 128).certainly_gt(target)


def test_gap_cutoff_monotone():
    prev = gap_cutoff(100, C)
    for d in (101, 150, 400):
        cur = gap_cutoff(d, C)
        assert cur.lo > prev.hi
        prev = cur


def test_gap_cutoff_at_split_is_below_194():
    k = gap_cutoff(4476, C)
    assert k.hi < 194
    assert k.lo > 193


def test_window_count_bound_exact_value():
    nk = window_count_bound(1, 1, C)
    assert nk.lo == nk.hi == Fraction(512, 441) + Fraction(64, 63) + 1


def test_window_count_bound_vanishing_tail():
    vals = [window_count_bound(k, 7, C).lo for k in (1, 10, 100, 10**6)]
    assert vals == sorted(vals, reverse=True)
    assert vals[-1] - 1 < Fraction(1, 10**4)


def test_window_count_bound_dominates_true_count():
    cache = MarkCache(C)
    p, q = cache.p, cache.q
    rng = random.Random(13)
    for _ in range(40):
        k = rng.randint(1, 12)
        d = rng.randint(3, 300)
        m_hi = _max_m_below(p, q, k, d + 1)
        if m_hi == 0:
            true_count = 0
        else:
            m_lo = _min_m_above(p, q, k, d - 1, known_true=m_hi + 1)
            true_count = max(0, m_hi - m_lo + 1)
        assert true_count <= window_count_bound(k, d, C).lo


def test_beta_coefficient():
    b = beta_coefficient(C)
    assert b.certainly_lt(Fraction(955, 1000))
    # pi^2 is between 9.8696044 and 9.8696045
    assert Fraction(128, 1323) * Fraction(98696044, 10**7) < b.lo
    assert b.hi < Fraction(128, 1323) * Fraction(98696045, 10**7)
    # below the viability threshold the coefficient exceeds 1
    assert beta_coefficient(Fraction(3, 2)).certainly_gt(1)


def test_tail_slack_signs():
    assert tail_slack(4476, C).strictly_positive()
    assert tail_slack(10, C).strictly_negative()
    assert tail_slack(5000, C).certainly_gt(tail_slack(4476, C))


def test_tail_bound_linear_coefficient_is_beta():
    # B(d) - beta (d+1) has no d-linear part: over a step of 100 in d
    # the residual is just the slow cutoff-plus-log growth (about 2.2)
    b1 = tail_bound(10_000, C)
    b2 = tail_bound(10_100, C)
    beta = beta_coefficient(C)
    growth = (b2 - b1) - beta * 100
    assert Fraction(0) < growth.lo and growth.hi < 5


def test_window_model():
    m = WindowModel.build(4476, C)
    assert m.slack.strictly_positive()
    assert m.cutoff.width <= Fraction(1, 1 << 20)
    assert m.bound.contains((Fraction(4475) - m.slack.lo) - (m.bound.width / 2))
