"""Exact counts of runs over all binary n-strings.

``r(n, i)`` is the number of runs of exactly ``i`` ones summed over all
``2**n`` strings of length ``n``; ``t(n)`` is the number of runs of any
length. Each is available through several independent routes so that they
can be checked against each other. Everything is exact: counts are Python
ints and fractions are :class:`fractions.Fraction`.

Powers ``2**(n - i - 2)`` may have exponent -1 at the boundary. They are
evaluated as ``(...) * 2**(n - i) // 4``, which is exact there because the
cofactor is even.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple


class RunCountQuery(NamedTuple):
    n: int
    i: int

    def validate(self) -> "RunCountQuery":
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 1 <= self.i <= self.n:
            raise ValueError(f"run length i={self.i} outside 1..{self.n}")
        return self


def _check(n: int, i: int) -> None:
    RunCountQuery(n, i).validate()


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


def r_closed(n: int, i: int) -> int:
    _check(n, i)
    if i == n:
        return 1
    return (n - i + 3) * 2 ** (n - i) // 4


def t_closed(n: int) -> int:
    _check_n(n)
    return (n + 1) * 2**n // 4


def r_recursive(n: int, i: int) -> int:
    """Grow the string one bit at a time from the two-run base ``r(i + 1, i) = 2``."""
    _check(n, i)
    if i == n:
        return 1
    value = 2
    for m in range(i + 2, n + 1):
        value = 2 * value + 2 ** (m - i - 2)
    return value


def r_unrolled(n: int, i: int, k: int) -> int:
    """The recursion on ``n`` applied ``k`` times in one step."""
    _check(n, i)
    if not i < n - 1:
        raise ValueError(f"unrolled form needs i < n - 1, got n={n}, i={i}")
    if not 0 <= k < n - i:
        raise ValueError(f"k={k} outside 0..{n - i - 1}")
    return 2**k * r_recursive(n - k, i) + k * 2 ** (n - i - 2)


def r_recursive_alt(n: int, i: int) -> int:
    """Recurse on the run length for fixed ``n``, down from ``r(n, n - 1) = 2``."""
    _check(n, i)
    if i == n:
        return 1
    value = 2
    for j in range(n - 2, i - 1, -1):
        value = 2 * value + 2 ** (n - j - 2)
    return value


def binomial_extended(a: int, b: int) -> int:
    """Binomial coefficient with ``C(-1, -1) = 1`` and ``C(a, -1) = 0`` for ``a >= 0``."""
    if a < -1 or b < -1:
        raise ValueError(f"binomial({a}, {b}) outside the supported region")
    if a == -1:
        if b == -1:
            return 1
        raise ValueError(f"binomial({a}, {b}) outside the supported region")
    if b == -1 or b > a:
        return 0
    return math.comb(a, b)


def t_combinatorial(n: int) -> int:
    """Sum over the number of parts ``p`` of a split of ``n`` bits into nonempty blocks."""
    _check_n(n)
    return sum(p * binomial_extended(n - 1, p - 1) for p in range(1, n + 1))


def r_combinatorial(n: int, i: int) -> int:
    """Each split of ``n - i`` bits into ``p`` blocks hosts a length-``i`` run in ``p + 1`` slots."""
    _check(n, i)
    m = n - i
    return sum((p + 1) * binomial_extended(m - 1, p - 1) for p in range(0, m + 1))


def f_fraction(n: int, i: int) -> Fraction:
    """Share of all runs over the n-strings that have length ``i``."""
    return Fraction(r_closed(n, i), t_closed(n))
