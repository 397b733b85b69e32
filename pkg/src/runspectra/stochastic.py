"""Run statistics of a uniformly random n-string: exact probabilities and sampling.

Sampling uses SplitMix64 in counter mode. Word ``c`` of the stream for seed
``s`` is ``mix(s + (c + 1) * 0x9E3779B97F4A7C15 mod 2**64)``, i.e. the
``c + 1``-th output of a SplitMix64 generator seeded with ``s``. Sample ``j``
of length ``n`` takes words ``j*W .. j*W + W - 1`` with ``W = ceil(n / 64)``,
concatenates them big-endian and keeps the leading ``n`` bits. Because every
sample is a pure function of ``(seed, j)``, sharding samples across workers
cannot change any result.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import ENUMERABLE_LIMIT, BitString, exact_run_start_masks, extract_runs, run_start_mask

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MAX_SAMPLE_BITS = 1 << 20
#: Cap on samples * n, the total number of random bits drawn.
MAX_TOTAL_BITS = 1 << 34
SHARD_SAMPLES = 1 << 16


class ResourceLimitError(ValueError):
    pass


def _check_k(n: int, k: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 1 <= k <= n:
        raise ValueError(f"position k={k} outside 1..{n}")


def prob_run_starts_at(n: int, k: int) -> Fraction:
    _check_k(n, k)
    return Fraction(1, 2) if k == 1 else Fraction(1, 4)


def prob_run_of_length_at(n: int, k: int, i: int) -> Fraction:
    """Probability that a run of exactly ``i`` ones starts at position ``k``."""
    _check_k(n, k)
    if not 1 <= i <= n:
        raise ValueError(f"run length {i} outside 1..{n}")
    start_weight = 1 if k == 1 else 2  # log2 of 1 / Pr(run starts at k)
    if k <= n - i:
        # i ones then a closing zero
        return Fraction(1, 2 ** (i + start_weight))
    if k == n - i + 1:
        # the string end closes the run
        return Fraction(1, 2 ** (i - 1 + start_weight))
    return Fraction(0)


def expected_total(n: int) -> Fraction:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return Fraction(n + 1, 4)


def expected_runs_of_length(n: int, i: int) -> Fraction:
    if n < 1 or not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= n, got n={n}, i={i}")
    if i == n:
        return Fraction(1, 2**n)
    return Fraction(n - i + 3, 2 ** (i + 2))


def asymptotic_fraction(i: int) -> Fraction:
    if i < 1:
        raise ValueError(f"run length must be >= 1, got {i}")
    return Fraction(1, 2**i)


def splitmix64(seed: int, counters: np.ndarray) -> np.ndarray:
    """SplitMix64 outputs at the given 0-based stream positions."""
    if not 0 <= seed < 1 << 64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    c = np.asarray(counters, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + (c + np.uint64(1)) * np.uint64(GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def sample_strings(n: int, first: int, count: int, seed: int) -> list[BitString]:
    """Samples ``first .. first + count - 1`` of the stream as bit strings."""
    width = -(-n // 64)
    words = splitmix64(seed, np.arange(first * width, (first + count) * width, dtype=np.uint64))
    rows = words.reshape(count, width).tolist()
    pad = width * 64 - n
    out = []
    for row in rows:
        row[-1] &= ~((1 << pad) - 1) & ((1 << 64) - 1)
        out.append(BitString(n, tuple(row)))
    return out


def _shard_total(n: int, i: int | None, lo: int, hi: int, seed: int) -> int:
    if n <= ENUMERABLE_LIMIT:
        x = splitmix64(seed, np.arange(lo, hi, dtype=np.uint64)) >> np.uint64(64 - n)
        mask = run_start_mask(x) if i is None else exact_run_start_masks(x, n)[i - 1]
        return int(np.bitwise_count(mask).sum(dtype=np.int64))
    total = 0
    for s in sample_strings(n, lo, hi - lo, seed):
        spectrum = extract_runs(s)
        total += spectrum.total() if i is None else spectrum[i]
    return total


@dataclass(frozen=True)
class SampleReport:
    n: int
    i: int | None
    samples: int
    seed: int
    observed_total: int
    empirical_mean: float
    exact_mean: Fraction
    abs_error: float
    rel_error: float

    @property
    def empirical_fraction(self) -> Fraction:
        return Fraction(self.observed_total, self.samples)


def monte_carlo(
    n: int,
    i: int | None = None,
    samples: int = 100_000,
    seed: int = 0,
    threads: int | None = None,
) -> SampleReport:
    """Mean number of runs (of length ``i``, or of any length) over seeded random n-strings."""
    if not 1 <= n <= MAX_SAMPLE_BITS:
        raise ResourceLimitError(f"n={n} outside 1..{MAX_SAMPLE_BITS}")
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if samples * n > MAX_TOTAL_BITS:
        raise ResourceLimitError(f"{samples} samples of {n} bits exceed the bit budget")
    if i is not None and not 1 <= i <= n:
        raise ValueError(f"run length {i} outside 1..{n}")
    if not 0 <= seed < 1 << 64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")

    shards = [(lo, min(lo + SHARD_SAMPLES, samples)) for lo in range(0, samples, SHARD_SAMPLES)]
    if threads == 1 or len(shards) == 1:
        partials = [_shard_total(n, i, lo, hi, seed) for lo, hi in shards]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(lambda s: _shard_total(n, i, s[0], s[1], seed), shards))
    observed = sum(partials)

    exact = expected_total(n) if i is None else expected_runs_of_length(n, i)
    mean = Fraction(observed, samples)
    abs_error = abs(mean - exact)
    return SampleReport(
        n=n,
        i=i,
        samples=samples,
        seed=seed,
        observed_total=observed,
        empirical_mean=float(mean),
        exact_mean=exact,
        abs_error=float(abs_error),
        rel_error=float(abs_error / exact),
    )


def standard_error_bound(n: int, i: int | None, samples: int) -> float:
    """Upper bound on the standard error of the sample mean.

    A count of runs of length ``i`` is at most ``(n + 1) // (i + 1)``;
    a variable in ``[0, m]`` has variance at most ``m * mean``.
    """
    if i is None:
        cap, mean = (n + 1) // 2, expected_total(n)
    else:
        cap, mean = (n + 1) // (i + 1), expected_runs_of_length(n, i)
    return math.sqrt(cap * float(mean) / samples)

