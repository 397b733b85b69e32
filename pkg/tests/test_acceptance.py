"""Exit criteria. Each test logs a PASS/FAIL line in the terminal summary."""

import io
import time
from fractions import Fraction

import pytest

from runspectra.bijection import (
    Composition,
    RunPlacement,
    count_parts_in_compositions,
    enumerate_placements,
    placement_to_string,
)
from runspectra.cli import main
from runspectra.closedform import (
    f_fraction,
    r_closed,
    r_combinatorial,
    r_recursive,
    r_recursive_alt,
    r_unrolled,
    t_closed,
    t_combinatorial,
)
from runspectra.enumeration import enumerate_table, run_occurrences, run_start_frequencies
from runspectra.sequences import a001792, a045623
from runspectra.stochastic import (
    expected_runs_of_length,
    monte_carlo,
    prob_run_of_length_at,
    prob_run_starts_at,
)

from test_bijection import WORKED_I1, WORKED_I2


def cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.criterion("1 paper tables n=2,3,4 via `table`")
def test_paper_tables(criterion):
    expected = {2: ([2, 1], 3), 3: ([5, 2, 1], 8), 4: ([12, 5, 2, 1], 20)}
    for n, (rows, total) in expected.items():
        for extra in ((), ("--oracle",)):
            code, text = cli("table", str(n), *extra)
            lines = text.splitlines()
            assert code == 0
            assert [int(line.split()[1]) for line in lines[2 : 2 + n]] == rows
            assert lines[-1] == f"t(n) = {total}"
    assert criterion() < 1


@pytest.mark.criterion("2 exhaustive enumeration = closed form, n <= 16")
def test_oracle_equivalence(criterion):
    for n in range(1, 17):
        aggregate = enumerate_table(n).aggregate
        assert aggregate.to_list() == [r_closed(n, i) for i in range(1, n + 1)]
        assert aggregate[n] == 1
    assert criterion() < 60


@pytest.mark.criterion("3 four routes agree n <= 256; unrolled k-independent n <= 64")
def test_four_routes(criterion):
    for n in range(1, 257):
        for i in range(1, n + 1):
            value = r_closed(n, i)
            assert r_recursive(n, i) == value
            assert r_combinatorial(n, i) == value
            if n >= 2:
                assert r_recursive_alt(n, i) == value
    for n in range(3, 65):
        for i in range(1, n - 1):
            value = r_closed(n, i)
            assert all(r_unrolled(n, i, k) == value for k in range(n - i))
    assert criterion() < 30


@pytest.mark.criterion("4 totals identities (compositions n <= 24, OEIS n <= 512)")
def test_totals(criterion):
    for n in range(1, 25):
        row = sum(r_closed(n, i) for i in range(1, n + 1))
        assert row == t_closed(n) == t_combinatorial(n) == count_parts_in_compositions(n)
    for n in range(1, 513):
        assert t_closed(n) == a001792(n - 1)
        for i in range(1, n):
            assert r_closed(n, i) == a045623(n - i)
    assert criterion() < 60


@pytest.mark.criterion("5 placement bijection complete n <= 12; worked rows verbatim")
def test_bijection_completeness(criterion):
    for n in range(1, 13):
        for i in range(1, n + 1):
            pairs = [(str(s), k) for s, k in enumerate_placements(n, i)]
            assert len(pairs) == len(set(pairs))
            assert set(pairs) == run_occurrences(n, i)
    for worked, i in ((WORKED_I1, 1), (WORKED_I2, 2)):
        for (parts, slot), row in worked.items():
            s, k = placement_to_string(RunPlacement(Composition.of(*parts), slot, i), 4)
            assert (str(s), k) == row
    assert criterion() < 120


@pytest.mark.criterion("6 probability decomposition n <= 256; positional frequencies n <= 12")
def test_probability_decomposition(criterion):
    for n in range(1, 257):
        for i in range(1, n + 1):
            exp = expected_runs_of_length(n, i)
            assert sum(prob_run_of_length_at(n, k, i) for k in range(1, n + 1)) == exp
            assert exp * 2**n == r_closed(n, i)
    for n in range(1, 13):
        freq = run_start_frequencies(n)
        for k in range(1, n + 1):
            assert Fraction(sum(freq[k - 1]), 2**n) == prob_run_starts_at(n, k)
            for i in range(1, n + 1):
                assert Fraction(freq[k - 1][i - 1], 2**n) == prob_run_of_length_at(n, k, i)
    criterion()


@pytest.mark.criterion("7 f_n(2) = 1/4 for 3 <= n <= 128")
def test_quarter(criterion):
    assert all(f_fraction(n, 2) == Fraction(1, 4) for n in range(3, 129))
    criterion()


@pytest.mark.criterion("8 Monte Carlo n=20 i=3 10^6 samples seed 42 within 1% of 5/8")
def test_monte_carlo(criterion):
    report = monte_carlo(20, 3, samples=10**6, seed=42)
    assert report.exact_mean == Fraction(5, 8)
    assert report.rel_error < 0.01
    assert criterion() < 30


@pytest.mark.criterion("9 r(1000,17) by closed form = recursion = A045623(983)")
def test_large_n(criterion):
    start = time.perf_counter()
    value = r_closed(1000, 17)
    assert r_recursive(1000, 17) == value == a045623(983)
    assert time.perf_counter() - start < 1
    criterion()


@pytest.mark.criterion("10 `verify 12` identical with --threads 1 and --threads 8")
def test_determinism(criterion):
    one = cli("verify", "12", "--threads", "1")
    eight = cli("verify", "12", "--threads", "8")
    assert one[0] == eight[0] == 0
    assert one[1].encode() == eight[1].encode()
    criterion()
