"""Generalized Golomb rulers and linear-multiplicity rulers: exact
verification, explicit constructions, certified analytic bounds, and
proven-optimal diameter search."""

__version__ = "0.1.0"

from .bounds import (
    WindowModel,
    beta_coefficient,
    gap_cutoff,
    gap_sum_bound,
    golomb_lower_bound,
    lm_lower_bound,
    sorted_gap_floor,
    tail_bound,
    tail_slack,
    window_count_bound,
    window_value,
)
from .certify import (
    CertificationReport,
    MarkCache,
    certify_lm_sequence,
    explicit_rep_count,
    prefix_rep_counts,
)
from .construct import (
    DEFAULT_C,
    OPTIMAL_LM_TABLE,
    default_holes,
    explicit_lm_mark,
    explicit_lm_prefix,
    greedy_lm,
    hole_complement_ruler,
    known_lm_diameter,
    known_lm_witness,
    small_b_ruler,
)
from .core import (
    DifferenceProfile,
    HoleSet,
    Ruler,
    diff_profile,
    format_ruler,
    holes,
    is_g_golomb,
    is_lm_ruler,
    max_multiplicity,
    parse_ruler,
)
from .search import (
    BudgetExhaustedError,
    SearchProblem,
    SearchResult,
    brute_force_oracle,
    feasible_at_diameter,
    min_diameter,
    table_sweep,
)

__all__ = [
    "__version__",
    "Ruler",
    "DifferenceProfile",
    "HoleSet",
    "diff_profile",
    "is_g_golomb",
    "is_lm_ruler",
    "max_multiplicity",
    "holes",
    "parse_ruler",
    "format_ruler",
    "DEFAULT_C",
    "OPTIMAL_LM_TABLE",
    "small_b_ruler",
    "hole_complement_ruler",
    "default_holes",
    "explicit_lm_mark",
    "explicit_lm_prefix",
    "greedy_lm",
    "known_lm_diameter",
    "known_lm_witness",
    "golomb_lower_bound",
    "lm_lower_bound",
    "sorted_gap_floor",
    "gap_sum_bound",
    "window_value",
    "window_count_bound",
    "gap_cutoff",
    "tail_bound",
    "tail_slack",
    "beta_coefficient",
    "WindowModel",
    "MarkCache",
    "explicit_rep_count",
    "prefix_rep_counts",
    "certify_lm_sequence",
    "CertificationReport",
    "SearchProblem",
    "SearchResult",
    "BudgetExhaustedError",
    "feasible_at_diameter",
    "min_diameter",
    "brute_force_oracle",
    "table_sweep",
]
