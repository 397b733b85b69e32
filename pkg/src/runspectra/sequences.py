"""OEIS A045623 and A001792, and their identities with the run counts.

A045623(j) counts the 1's over all compositions of j + 1 and A001792(j) the
parts over all compositions of j + 1; they give ``r(n, i)`` at ``j = n - i``
and ``t(n)`` at ``j = n - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .closedform import r_closed, t_closed

SEQUENCES = ("A045623", "A001792")


def a045623(j: int) -> int:
    if j < 0:
        raise ValueError(f"index must be >= 0, got {j}")
    if j == 0:
        return 1
    return (j + 3) * 2**j // 4


def a001792(j: int) -> int:
    if j < 0:
        raise ValueError(f"index must be >= 0, got {j}")
    return (j + 2) * 2**j // 2


def sequence(name: str, terms: int) -> list[int]:
    """First ``terms`` values (offset 0) of a supported sequence."""
    funcs = {"A045623": a045623, "A001792": a001792}
    try:
        fn = funcs[name.upper()]
    except KeyError:
        raise ValueError(f"unsupported sequence {name!r}; choose from {SEQUENCES}") from None
    return [fn(j) for j in range(terms)]


@dataclass
class CrossCheckReport:
    n_max: int
    checks: int = 0
    failure: str | None = None
    passed: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failure is None


def cross_check(n_max: int) -> CrossCheckReport:
    """Check ``r(n, i) = a045623(n - i)`` for ``i < n`` and ``t(n) = a001792(n - 1)`` up to ``n_max``.

    Stops at the first mismatch, which is recorded in ``failure``.
    """
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    report = CrossCheckReport(n_max)
    for n in range(1, n_max + 1):
        for i in range(1, n):
            report.checks += 1
            if r_closed(n, i) != a045623(n - i):
                report.failure = f"r({n},{i}) = {r_closed(n, i)} != A045623({n - i}) = {a045623(n - i)}"
                return report
        report.checks += 1
        if t_closed(n) != a001792(n - 1):
            report.failure = f"t({n}) = {t_closed(n)} != A001792({n - 1}) = {a001792(n - 1)}"
            return report
    report.passed = [
        f"r(n,i) = A045623(n-i) for 1 <= i < n <= {n_max}",
        f"t(n) = A001792(n-1) for 1 <= n <= {n_max}",
    ]
    return report
