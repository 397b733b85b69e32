"""Brute-force run statistics over every binary n-string, and a streaming analyzer.

The exhaustive routes here never consult a formula; they are the ground truth
the closed forms are checked against.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Literal

import numpy as np

from .core import ENUMERABLE_LIMIT, RunSpectrum, exact_run_start_masks, spectrum_counts

#: Largest n for which per-string rows may be retained.
ROWS_LIMIT = 16
#: Index-range chunk processed per task. Fixed so chunking never depends on worker count.
CHUNK_BITS = 18
STREAM_CHUNK = 1 << 16

BitOrder = Literal["msb_first", "lsb_first"]


@dataclass(frozen=True)
class SpectrumTable:
    n: int
    aggregate: RunSpectrum
    per_string: tuple[tuple[int, RunSpectrum], ...] | None = None


def _check_n(n: int) -> None:
    if not 1 <= n <= ENUMERABLE_LIMIT:
        raise ValueError(f"n={n} outside the enumerable range 1..{ENUMERABLE_LIMIT}")


def _chunks(n: int) -> list[tuple[int, int]]:
    size = 1 << min(n, CHUNK_BITS)
    return [(lo, lo + size) for lo in range(0, 1 << n, size)]


def _chunk_counts(n: int, lo: int, hi: int) -> list[int]:
    x = np.arange(lo, hi, dtype=np.uint64)
    return spectrum_counts(x, n)


def _map_chunks(fn, n: int, threads: int | None):
    chunks = _chunks(n)
    if threads == 1 or len(chunks) == 1:
        return [fn(n, lo, hi) for lo, hi in chunks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda c: fn(n, *c), chunks))


def enumerate_table(n: int, keep_rows: bool = False, threads: int | None = None) -> SpectrumTable:
    """Run spectra of all ``2**n`` strings of length ``n``, summed.

    ``keep_rows`` also returns each string's own spectrum, ordered by index.
    Partial sums are exact integers, so ``threads`` only affects speed.
    """
    _check_n(n)
    if keep_rows and n > ROWS_LIMIT:
        raise ValueError(f"per-string rows are limited to n <= {ROWS_LIMIT}")
    total = [0] * n
    for partial in _map_chunks(_chunk_counts, n, threads):
        total = [a + b for a, b in zip(total, partial)]
    rows = None
    if keep_rows:
        x = np.arange(1 << n, dtype=np.uint64)
        per_len = np.stack([np.bitwise_count(m) for m in exact_run_start_masks(x, n)], axis=1)
        rows = tuple(
            (idx, RunSpectrum.from_list(row)) for idx, row in enumerate(per_len.tolist())
        )
    return SpectrumTable(n, RunSpectrum.from_list(total), rows)


def total_runs(n: int, threads: int | None = None) -> int:
    return enumerate_table(n, threads=threads).aggregate.total()


def run_start_frequencies(n: int) -> list[list[int]]:
    """``freq[k - 1][i - 1]``: how many n-strings have a run of exactly ``i`` ones starting at ``k``."""
    _check_n(n)
    if n > ROWS_LIMIT:
        raise ValueError(f"positional frequencies are limited to n <= {ROWS_LIMIT}")
    x = np.arange(1 << n, dtype=np.uint64)
    freq = [[0] * n for _ in range(n)]
    for i, mask in enumerate(exact_run_start_masks(x, n), start=1):
        for k in range(1, n + 1):
            bit = np.uint64(1 << (n - k))
            freq[k - 1][i - 1] = int(np.count_nonzero(mask & bit))
    return freq


def run_occurrences(n: int, i: int) -> set[tuple[str, int]]:
    """Every ``(string, start)`` pair where an n-string has a run of exactly ``i`` ones."""
    _check_n(n)
    if n > ROWS_LIMIT:
        raise ValueError(f"occurrence listing is limited to n <= {ROWS_LIMIT}")
    if not 1 <= i <= n:
        raise ValueError(f"run length {i} outside 1..{n}")
    x = np.arange(1 << n, dtype=np.uint64)
    mask = exact_run_start_masks(x, n)[i - 1]
    found = set()
    for k in range(1, n + 1):
        hits = np.flatnonzero(mask & np.uint64(1 << (n - k)))
        found.update((format(int(idx), f"0{n}b"), k) for idx in hits)
    return found


class StreamAnalyzer:
    """Incremental run spectrum over a bit stream fed in byte chunks.

    A run left open at the end of a chunk is carried into the next one, so
    chunk boundaries never split or merge runs.
    """

    def __init__(self, bit_order: BitOrder = "msb_first") -> None:
        if bit_order not in ("msb_first", "lsb_first"):
            raise ValueError(f"unknown bit order {bit_order!r}")
        self._bitorder = "big" if bit_order == "msb_first" else "little"
        self.nbits = 0
        self.carry = 0
        self.counts: dict[int, int] = {}

    def _add(self, lengths: np.ndarray) -> None:
        values, counts = np.unique(lengths, return_counts=True)
        for v, c in zip(values.tolist(), counts.tolist()):
            self.counts[v] = self.counts.get(v, 0) + c

    def update(self, chunk: bytes) -> None:
        if not chunk:
            return
        bits = np.unpackbits(np.frombuffer(chunk, dtype=np.uint8), bitorder=self._bitorder)
        self.nbits += bits.size
        edges = np.diff(np.concatenate(([0], bits, [0])).astype(np.int8))
        starts = np.flatnonzero(edges == 1)
        ends = np.flatnonzero(edges == -1)
        lengths = ends - starts
        if self.carry:
            if starts.size and starts[0] == 0:
                lengths[0] += self.carry
            else:
                self._add(np.array([self.carry]))
            self.carry = 0
        if ends.size and ends[-1] == bits.size:
            self.carry = int(lengths[-1])
            lengths = lengths[:-1]
        if lengths.size:
            self._add(lengths)

    def result(self) -> RunSpectrum:
        """Spectrum so far, treating the end of input as a run boundary."""
        counts = dict(self.counts)
        if self.carry:
            counts[self.carry] = counts.get(self.carry, 0) + 1
        return RunSpectrum(self.nbits, counts)


def analyze_stream(
    source: bytes | BinaryIO | Iterable[bytes],
    bit_order: BitOrder = "msb_first",
    chunk_size: int = STREAM_CHUNK,
) -> RunSpectrum:
    """Run spectrum of the bits in ``source``.

    ``source`` may be a bytes object, a binary file object, or an iterable of
    byte chunks.
    """
    analyzer = StreamAnalyzer(bit_order)
    if isinstance(source, (bytes, bytearray, memoryview)):
        data = bytes(source)
        for lo in range(0, len(data), chunk_size):
            analyzer.update(data[lo : lo + chunk_size])
    elif hasattr(source, "read"):
        while chunk := source.read(chunk_size):
            analyzer.update(chunk)
    else:
        for chunk in source:
            analyzer.update(bytes(chunk))
    return analyzer.result()
