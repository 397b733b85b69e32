"""Exact statistics of runs of ones in binary strings."""

from .bijection import (
    Composition,
    RunPlacement,
    composition_to_alternating_pair,
    compositions,
    count_parts_equal,
    count_parts_in_compositions,
    enumerate_placements,
    placement_to_string,
)
from .closedform import (
    RunCountQuery,
    binomial_extended,
    f_fraction,
    r_closed,
    r_combinatorial,
    r_recursive,
    r_recursive_alt,
    r_unrolled,
    t_closed,
    t_combinatorial,
)
from .core import (
    ENUMERABLE_LIMIT,
    BitString,
    RunSpectrum,
    extract_runs,
    index_to_string,
    run_start_positions,
    string_to_index,
)
from .enumeration import SpectrumTable, analyze_stream, enumerate_table, total_runs
from .sequences import a001792, a045623, cross_check
from .stochastic import (
    SampleReport,
    asymptotic_fraction,
    expected_runs_of_length,
    expected_total,
    monte_carlo,
    prob_run_of_length_at,
    prob_run_starts_at,
)

__version__ = "0.1.0"
