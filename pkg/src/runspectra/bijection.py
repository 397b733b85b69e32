"""Compositions of n and their correspondence with runs of ones.

A composition of ``n`` is written as a row of ``n`` cells cut into nonempty
blocks. Filling the blocks with alternating ones and zeros turns each part
into a run of one symbol; inserting an extra block of ``i`` ones at one of the
``p + 1`` cut slots of a composition of ``n - i`` gives every occurrence of a
length-``i`` run in an n-string exactly once.

Compositions are listed in ascending order of their bar mask: bit ``j - 1``
of the mask is set when there is a cut after cell ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import BitString

#: Upper bound on n for the exhaustive composition counts.
COUNT_LIMIT = 24
PLACEMENT_LIMIT = 24


@dataclass(frozen=True)
class Composition:
    total: int
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.total < 1:
            raise ValueError(f"total must be >= 1, got {self.total}")
        if not self.parts or any(p < 1 for p in self.parts):
            raise ValueError(f"parts must be positive: {self.parts}")
        if sum(self.parts) != self.total:
            raise ValueError(f"parts {self.parts} do not sum to {self.total}")

    @classmethod
    def of(cls, *parts: int) -> "Composition":
        return cls(sum(parts), tuple(parts))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Composition":
        if n < 1 or not 0 <= mask < (1 << (n - 1)):
            raise ValueError(f"mask {mask} is not a cut set for n={n}")
        parts = []
        size = 1
        for j in range(1, n):
            if mask >> (j - 1) & 1:
                parts.append(size)
                size = 1
            else:
                size += 1
        parts.append(size)
        return cls(n, tuple(parts))

    def to_mask(self) -> int:
        mask = 0
        cut = 0
        for part in self.parts[:-1]:
            cut += part
            mask |= 1 << (cut - 1)
        return mask

    @property
    def p(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class RunPlacement:
    """A length-``run_length`` run inserted at cut ``slot`` of ``base`` (0 = leftmost)."""

    base: Composition
    slot: int
    run_length: int

    def __post_init__(self) -> None:
        if not 0 <= self.slot <= self.base.p:
            raise ValueError(f"slot {self.slot} outside 0..{self.base.p}")
        if self.run_length < 1:
            raise ValueError(f"run length must be >= 1, got {self.run_length}")


def compositions(n: int) -> Iterator[Composition]:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    for mask in range(1 << (n - 1)):
        yield Composition.from_mask(n, mask)


def _blocks(parts, first: str) -> str:
    other = "0" if first == "1" else "1"
    return "".join((first if k % 2 == 0 else other) * part for k, part in enumerate(parts))


def composition_to_alternating_pair(c: Composition) -> tuple[BitString, BitString]:
    """The two strings whose alternating blocks have lengths ``c.parts``; ones-first, zeros-first."""
    return (
        BitString.from_str(_blocks(c.parts, "1")),
        BitString.from_str(_blocks(c.parts, "0")),
    )


def placement_to_string(rp: RunPlacement, n: int) -> tuple[BitString, int]:
    """Realise a placement as an n-string and the 1-based start of the inserted run.

    Parts touching the inserted run become zeros, and symbols alternate moving
    away from it in both directions.
    """
    if rp.base.total + rp.run_length != n:
        raise ValueError(
            f"base total {rp.base.total} + run length {rp.run_length} != n={n}"
        )
    left = rp.base.parts[: rp.slot]
    right = rp.base.parts[rp.slot :]
    left_text = _blocks(left[::-1], "0")[::-1]
    text = left_text + "1" * rp.run_length + _blocks(right, "0")
    return BitString.from_str(text), len(left_text) + 1


def enumerate_placements(n: int, i: int) -> Iterator[tuple[BitString, int]]:
    """Every ``(string, start)`` with a run of exactly ``i`` ones, via placements.

    Compositions of ``n - i`` come in canonical order with slots ascending; for
    ``i == n`` the empty composition yields the all-ones string alone.
    """
    if not 1 <= i <= n:
        raise ValueError(f"run length {i} outside 1..{n}")
    if n > PLACEMENT_LIMIT:
        raise ValueError(f"placements are limited to n <= {PLACEMENT_LIMIT}")
    for rp in placements(n, i):
        if rp is None:
            yield BitString.from_str("1" * n), 1
        else:
            yield placement_to_string(rp, n)


def placements(n: int, i: int) -> Iterator[RunPlacement | None]:
    """The placements behind :func:`enumerate_placements`; ``None`` stands for the ``i == n`` case."""
    if n == i:
        yield None
        return
    for base in compositions(n - i):
        for slot in range(base.p + 1):
            yield RunPlacement(base, slot, i)


MASK_CHUNK = 1 << 16


def _cut_mask_chunks(n: int) -> Iterator[np.ndarray]:
    """All compositions of ``n`` as uint64 masks with cuts at both ends (bits 0 and n), in chunks."""
    total = 1 << (n - 1)
    for lo in range(0, total, MASK_CHUNK):
        inner = np.arange(lo, min(lo + MASK_CHUNK, total), dtype=np.uint64)
        yield np.uint64(1) | (inner << np.uint64(1)) | np.uint64(1 << n)


def _check_count_n(n: int) -> None:
    if not 1 <= n <= COUNT_LIMIT:
        raise ValueError(f"n={n} outside 1..{COUNT_LIMIT}")


def count_parts_in_compositions(n: int) -> int:
    """Total number of parts over all compositions of ``n``, by exhaustion."""
    _check_count_n(n)
    inner = np.arange(1 << (n - 1), dtype=np.uint64)
    return int((np.bitwise_count(inner).astype(np.int64) + 1).sum())


def count_parts_equal(n: int, v: int) -> int:
    """Number of parts equal to ``v`` over all compositions of ``n``, by exhaustion."""
    _check_count_n(n)
    if not 1 <= v <= n:
        raise ValueError(f"part size {v} outside 1..{n}")
    total = 0
    for cuts in _cut_mask_chunks(n):
        # a part of size v sits between cuts at b and b + v with no cut strictly between
        found = cuts & (cuts >> np.uint64(v))
        for gap in range(1, v):
            found &= ~(cuts >> np.uint64(gap))
        total += int(np.bitwise_count(found).sum(dtype=np.int64))
    return total


def part_size_counts(n: int) -> list[int]:
    """``counts[v - 1]``: parts equal to ``v`` over all compositions of ``n``, for every ``v``."""
    _check_count_n(n)
    counts = [0] * n
    for cuts in _cut_mask_chunks(n):
        open_gap = cuts.copy()  # cut at b with no cut in b+1 .. b+v-1
        for v in range(1, n + 1):
            if v > 1:
                open_gap &= ~(cuts >> np.uint64(v - 1))
            closed = open_gap & (cuts >> np.uint64(v))
            counts[v - 1] += int(np.bitwise_count(closed).sum(dtype=np.int64))
    return counts
