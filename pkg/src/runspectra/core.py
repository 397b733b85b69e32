"""Binary strings and run extraction.

A run is a maximal block of consecutive ones, bounded on each side by a zero
or by an end of the string. Positions are 1-based from the left, so position 1
is the most significant bit of an index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

WORD_BITS = 64
#: Largest n for which strings are addressed by a single machine-word index.
ENUMERABLE_LIMIT = 63

_WORD_MASK = (1 << WORD_BITS) - 1


@dataclass(frozen=True)
class BitString:
    """An immutable bit string packed into 64-bit words.

    Position 1 is the most significant bit of ``words[0]``; unused low bits of
    the final word are kept at zero.
    """

    length: int
    words: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError(f"length must be nonnegative, got {self.length}")
        if len(self.words) != _word_count(self.length):
            raise ValueError("word count does not match length")
        pad = len(self.words) * WORD_BITS - self.length
        if self.words and self.words[-1] & ((1 << pad) - 1):
            raise ValueError("padding bits must be zero")
        if any(not 0 <= w <= _WORD_MASK for w in self.words):
            raise ValueError("words must be unsigned 64-bit values")

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitString":
        """Pack the ``length``-bit binary expansion of ``value``, MSB first."""
        if length < 0:
            raise ValueError(f"length must be nonnegative, got {length}")
        if value < 0 or value >> length:
            raise ValueError(f"{value} does not fit in {length} bits")
        count = _word_count(length)
        value <<= count * WORD_BITS - length
        words = tuple(
            (value >> (WORD_BITS * (count - 1 - w))) & _WORD_MASK for w in range(count)
        )
        return cls(length, words)

    @classmethod
    def from_str(cls, text: str) -> "BitString":
        if any(c not in "01" for c in text):
            raise ValueError(f"not a binary string: {text!r}")
        return cls.from_int(int(text, 2) if text else 0, len(text))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitString":
        return cls.from_str("".join("1" if b else "0" for b in bits))

    def to_int(self) -> int:
        value = 0
        for w in self.words:
            value = (value << WORD_BITS) | w
        return value >> (len(self.words) * WORD_BITS - self.length)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, pos: int) -> int:
        """Bit at 1-based position ``pos``."""
        if not 1 <= pos <= self.length:
            raise IndexError(f"position {pos} outside 1..{self.length}")
        word, offset = divmod(pos - 1, WORD_BITS)
        return (self.words[word] >> (WORD_BITS - 1 - offset)) & 1

    def __iter__(self) -> Iterator[int]:
        for pos in range(1, self.length + 1):
            yield self[pos]

    def __str__(self) -> str:
        return format(self.to_int(), f"0{self.length}b") if self.length else ""

    def __repr__(self) -> str:
        return f"BitString('{self}')"

    def reversed(self) -> "BitString":
        return BitString.from_str(str(self)[::-1])

    def popcount(self) -> int:
        return sum(w.bit_count() for w in self.words)


def _word_count(length: int) -> int:
    return -(-length // WORD_BITS)


def as_bitstring(s: BitString | str) -> BitString:
    return BitString.from_str(s) if isinstance(s, str) else s


class RunSpectrum:
    """Counts of runs of ones indexed by run length ``1..n``.

    Stored sparsely so spectra of long streams stay small; indexing behaves
    like a dense array that is zero outside the observed lengths.
    """

    __slots__ = ("n", "_counts")

    def __init__(self, n: int, counts: Mapping[int, int] | None = None) -> None:
        if n < 0:
            raise ValueError(f"n must be nonnegative, got {n}")
        clean = {}
        for length, count in (counts or {}).items():
            if not 1 <= length <= n:
                raise ValueError(f"run length {length} outside 1..{n}")
            if count < 0:
                raise ValueError("counts must be nonnegative")
            if count:
                clean[int(length)] = int(count)
        self.n = n
        self._counts = clean

    @classmethod
    def from_list(cls, counts: Iterable[int]) -> "RunSpectrum":
        """Build from a dense list whose entry ``k`` is the count for length ``k + 1``."""
        counts = list(counts)
        return cls(len(counts), {k + 1: c for k, c in enumerate(counts)})

    def __getitem__(self, length: int) -> int:
        if length < 1:
            raise IndexError(f"run length must be >= 1, got {length}")
        return self._counts.get(length, 0)

    def to_list(self) -> list[int]:
        return [self._counts.get(k, 0) for k in range(1, self.n + 1)]

    def as_dict(self) -> dict[int, int]:
        """Nonzero entries only, ordered by run length."""
        return dict(sorted(self._counts.items()))

    def total(self) -> int:
        return sum(self._counts.values())

    def ones(self) -> int:
        return sum(length * count for length, count in self._counts.items())

    def __add__(self, other: "RunSpectrum") -> "RunSpectrum":
        if not isinstance(other, RunSpectrum):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"cannot combine spectra of n={self.n} and n={other.n}")
        merged = dict(self._counts)
        for length, count in other._counts.items():
            merged[length] = merged.get(length, 0) + count
        return RunSpectrum(self.n, merged)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RunSpectrum):
            return NotImplemented
        return self.n == other.n and self._counts == other._counts

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self._counts.items()))))

    def __repr__(self) -> str:
        return f"RunSpectrum(n={self.n}, {self.as_dict()})"


def _bits(s: BitString) -> np.ndarray:
    raw = np.array(s.words, dtype=">u8").view(np.uint8)
    return np.unpackbits(raw)[: s.length]


def _run_bounds(s: BitString) -> tuple[np.ndarray, np.ndarray]:
    """0-based start offsets and lengths of every maximal run of ones."""
    edges = np.diff(np.concatenate(([0], _bits(s), [0])).astype(np.int8))
    starts = np.flatnonzero(edges == 1)
    return starts, np.flatnonzero(edges == -1) - starts


def extract_runs(s: BitString | str) -> RunSpectrum:
    """Spectrum of maximal runs of ones in ``s``."""
    s = as_bitstring(s)
    _, lengths = _run_bounds(s)
    values, counts = np.unique(lengths, return_counts=True)
    return RunSpectrum(s.length, dict(zip(values.tolist(), counts.tolist())))


def run_start_positions(s: BitString | str, i: int) -> list[int]:
    """1-based start positions of the runs of exactly ``i`` ones in ``s``."""
    s = as_bitstring(s)
    if not 1 <= i <= s.length:
        raise ValueError(f"run length {i} outside 1..{s.length}")
    starts, lengths = _run_bounds(s)
    return (starts[lengths == i] + 1).tolist()


def index_to_string(n: int, idx: int) -> BitString:
    """The ``n``-bit string whose binary value is ``idx`` (leftmost bit most significant)."""
    if not 0 <= n <= ENUMERABLE_LIMIT:
        raise ValueError(f"n={n} outside the enumerable range 0..{ENUMERABLE_LIMIT}")
    if not 0 <= idx < (1 << n):
        raise ValueError(f"index {idx} outside [0, 2^{n})")
    return BitString.from_int(idx, n)


def string_to_index(s: BitString | str) -> int:
    s = as_bitstring(s)
    if s.length > ENUMERABLE_LIMIT:
        raise ValueError(f"length {s.length} exceeds the enumerable limit")
    return s.to_int()


# Word-parallel kernels. ``x`` holds n-bit strings as uint64 with position 1 at
# bit n - 1; every returned mask has bit j set for a run starting at position n - j.


def run_start_mask(x: np.ndarray) -> np.ndarray:
    """Bits where any run of ones starts."""
    x = np.asarray(x, dtype=np.uint64)
    return x & ~(x >> np.uint64(1))


def exact_run_start_masks(x: np.ndarray, n: int) -> list[np.ndarray]:
    """Masks ``m[i - 1]`` marking starts of runs of exactly ``i`` ones, for i in 1..n."""
    if not 0 <= n <= ENUMERABLE_LIMIT:
        raise ValueError(f"n={n} outside the enumerable range 0..{ENUMERABLE_LIMIT}")
    x = np.asarray(x, dtype=np.uint64)
    at_least = run_start_mask(x)
    masks = []
    for i in range(1, n + 1):
        # starts of runs with at least i + 1 ones: the bit i places below is also set
        longer = at_least & (x << np.uint64(i))
        masks.append(at_least & ~longer)
        at_least = longer
    return masks


def spectrum_counts(x: np.ndarray, n: int) -> list[int]:
    """Aggregate run spectrum (dense, lengths 1..n) over all strings in ``x``."""
    return [int(np.bitwise_count(m).sum(dtype=np.int64)) for m in exact_run_start_masks(x, n)]
