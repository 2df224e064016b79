"""Closed-form machinery for the slow three-term sequence

    B(n) = B(n - B(n-1)) + B(n - B(n-2)) + B(n - B(n-3)),  B(i) = i for i <= 5.

Every positive integer m appears in B once, or twice exactly when it can be
written m = k * 3**i + a_i with k, i >= 1, where a_1 = 3 and a_i = 3 a_{i-1} - 1.
Counting the repeated values below m gives the index of m's first
occurrence, and a binary search over that index map evaluates B(n) in
O(log(n)**2) integer operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

INT64_MAX = 2**63 - 1
MAX_N = 2**62


class WitnessPair(NamedTuple):
    """``m == k * 3**i + aux_a(i)`` with k, i >= 1."""

    k: int
    i: int


@dataclass(frozen=True)
class OccurrenceInfo:
    value: int
    first_index: int
    multiplicity: int
    witness: Optional[WitnessPair]


def aux_a(i: int) -> int:
    """The auxiliary sequence 3, 8, 23, 68, 203, ... in closed form."""
    if i < 1:
        raise ValueError(f"i must be >= 1, got {i}")
    a = (5 * 3 ** (i - 1) + 1) // 2
    if a > INT64_MAX:
        raise OverflowError(f"a_{i} exceeds the 64-bit range")
    return a


def find_witness(m: int) -> Optional[WitnessPair]:
    """Return the witness pair of ``m``, or None if ``m`` occurs only once in B."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    i, a, p = 1, 3, 3
    while a + p <= m:
        if (m - a) % p == 0:
            return WitnessPair((m - a) // p, i)
        i, a, p = i + 1, 3 * a - 1, 3 * p
    return None


def r_partial(m: int, i: int) -> int:
    """Number of witness pairs (k, i) with fixed i whose value is below m."""
    if m < 1 or i < 1:
        raise ValueError(f"need m, i >= 1, got m={m}, i={i}")
    return max(0, (m - aux_a(i) - 1) // 3**i)


def r_total(m: int) -> int:
    """Number of values below ``m`` that occur twice in B."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    total = 0
    a, p = 3, 3
    # terms with a_i + 1 >= m are all zero
    while a + 1 < m:
        total += (m - a - 1) // p
        a, p = 3 * a - 1, 3 * p
    return total


def first_index(m: int) -> int:
    """Index of the first occurrence of ``m`` in B."""
    return m + r_total(m)


def occurrence_info(m: int) -> OccurrenceInfo:
    w = find_witness(m)
    return OccurrenceInfo(m, first_index(m), 2 if w else 1, w)


def fast_b(n: int) -> int:
    """B(n) as the largest m with first_index(m) <= n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > MAX_N:
        raise OverflowError(f"n must be <= 2**62, got {n}")
    if n <= 5:
        return n
    # invariant: first_index(lo) <= n < first_index(hi + 1)
    lo, hi = 1, n
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid + r_total(mid) <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo
