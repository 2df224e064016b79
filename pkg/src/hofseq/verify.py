"""Checks of the B-sequence structure against the naive recurrence.

Each ``verify_*`` function scans a finite range and returns a
:class:`VerificationReport` listing every disagreement it found.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

import numpy as np

from .fastb import aux_a, fast_b, find_witness, first_index, r_partial, r_total
from .recurrence import SequenceTrace, naive_b

TWO_THIRDS = Fraction(2, 3)


class OracleDeathError(RuntimeError):
    """The naive recurrence died where the theory says it cannot."""


@dataclass(frozen=True)
class Violation:
    location: Any
    expected: Any
    actual: Any
    check: str = ""


@dataclass
class VerificationReport:
    name: str
    checked_range: tuple[int, int]
    violations: list[Violation] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def expect(self, check, location, expected, actual):
        if expected != actual:
            self.violations.append(Violation(location, expected, actual, check))

    def summary(self, max_violations: int = 10) -> str:
        lo, hi = self.checked_range
        status = "PASS" if self.passed else f"FAIL ({len(self.violations)} violations)"
        lines = [f"{self.name} [{lo}..{hi}]: {status}"]
        for v in self.violations[:max_violations]:
            lines.append(f"  {v.check} at {v.location}: expected {v.expected}, got {v.actual}")
        for key, value in self.details.items():
            if isinstance(value, list) and value and isinstance(value[0], int):
                head = ", ".join(map(str, value[:12]))
                more = f", ... ({len(value)} total)" if len(value) > 12 else ""
                lines.append(f"  {key}: {head}{more}")
            elif isinstance(value, list):
                lines.append(f"  {key}:")
                lines.extend(f"    {_fmt_row(row)}" for row in value)
            else:
                lines.append(f"  {key}: {value}")
        return "\n".join(lines)


def _fmt_row(row) -> str:
    if isinstance(row, tuple):
        return ": ".join(map(str, row))
    return str(row)


@dataclass(frozen=True)
class DensityPoint:
    n: int
    b_of_n: int
    ratio: Fraction
    deviation: Fraction


def naive_b_through_value(limit_value: int) -> SequenceTrace:
    """Naive B trace long enough that every value <= limit_value is complete."""
    count = 2 * limit_value
    while True:
        trace = naive_b(count)
        if not trace.alive:
            d = trace.death
            raise OracleDeathError(
                f"B died at index {d.at_index} (argument {d.offending_argument})"
            )
        if trace.values[-1] > limit_value:
            return trace
        count *= 2


def verify_structure(limit_value: int) -> VerificationReport:
    """Compare naive multiplicities of 1..limit_value with the witness predicate.

    Also checks that the trace is nondecreasing, that each value first occurs
    at ``first_index(m)``, and that ``r_total(m)`` counts the repeats below m.
    """
    if limit_value < 6:
        raise ValueError(f"limit_value must be >= 6, got {limit_value}")
    trace = naive_b_through_value(limit_value)
    report = VerificationReport("structure", (1, limit_value))
    v = trace.values

    first_seen: dict[int, int] = {}
    counts: dict[int, int] = {}
    for idx, value in enumerate(v, start=1):
        if idx > 1 and value < v[idx - 2]:
            report.expect("monotone", idx, f">= {v[idx - 2]}", value)
        first_seen.setdefault(value, idx)
        counts[value] = counts.get(value, 0) + 1

    repeated = []
    repeats_below = 0
    for m in range(1, limit_value + 1):
        expected = 2 if find_witness(m) else 1
        actual = counts.get(m, 0)
        report.expect("multiplicity", m, expected, actual)
        report.expect("first_index", m, first_index(m), first_seen.get(m))
        report.expect("r_total", m, repeats_below, r_total(m))
        if actual == 2:
            repeated.append(m)
            repeats_below += 1

    report.details["trace_length"] = len(v)
    report.details["repeated_count"] = len(repeated)
    report.details["repeated_values"] = repeated
    return report


def verify_lemma_uniqueness(limit_value: int) -> VerificationReport:
    """Every m in 1..limit_value satisfies m = a_i (mod 3**i) for at most one i.

    Tests the congruence directly for every (m, i) with a_i <= limit_value.
    """
    if limit_value < 1:
        raise ValueError(f"limit_value must be >= 1, got {limit_value}")
    report = VerificationReport("lemma-uniqueness", (1, limit_value))
    m = np.arange(limit_value + 1, dtype=np.int64)
    hits = np.zeros(limit_value + 1, dtype=np.int64)
    i = 1
    while aux_a(i) <= limit_value:
        a, p = aux_a(i), 3**i
        hits += ((m >= a) & ((m - a) % p == 0)).astype(np.int64)
        i += 1
    hits[0] = 0
    for bad in np.flatnonzero(hits > 1):
        report.expect("witness-count", int(bad), "<= 1", int(hits[bad]))
    report.details["max_i"] = i - 1
    report.details["values_with_congruence"] = int(np.count_nonzero(hits))
    return report


def verify_r_identities(limit_value: int) -> VerificationReport:
    """Check the identities relating R at m and m/3 for multiples of 3 up to the limit.

    For m divisible by 3 (m >= 6), with w the witness of m - 1:
      * R(m, i) == R(m/3, i-1) + [w has index i]   for every i >= 2
      * m/3 + R(m/3) == R(m) + (1 if w else 2)
      * m - 1 has a witness  <=>  m/3 has a witness
    """
    if limit_value < 6:
        raise ValueError(f"limit_value must be >= 6, got {limit_value}")
    report = VerificationReport("r-identities", (6, limit_value))
    checked = 0
    for m in range(6, limit_value + 1, 3):
        third = m // 3
        w = find_witness(m - 1)

        report.expect("witness-equivalence", m, w is not None, find_witness(third) is not None)

        lhs = third + r_total(third)
        report.expect("r-shift", m, r_total(m) + (1 if w else 2), lhs)

        i = 2
        # past this point both sides are zero
        while aux_a(i - 1) + 1 < third or aux_a(i) + 1 < m:
            bump = 1 if (w is not None and w.i == i) else 0
            report.expect("r-partial", (m, i), r_partial(third, i - 1) + bump, r_partial(m, i))
            i += 1
        report.expect("r-partial", (m, i), r_partial(third, i - 1), r_partial(m, i))
        checked += 1
    report.details["multiples_checked"] = checked
    return report


def density_profile(points: Iterable[int]) -> list[DensityPoint]:
    out = []
    for n in points:
        b = fast_b(n)
        ratio = Fraction(b, n)
        out.append(DensityPoint(n, b, ratio, abs(ratio - TWO_THIRDS)))
    return out


def verify_density(points: Iterable[int] = (10**3, 10**4, 10**5, 10**6),
                   tolerance: Fraction = Fraction(1, 1000)) -> VerificationReport:
    """B(n)/n approaches 2/3: deviations shrink and the last is within tolerance."""
    profile = density_profile(points)
    if not profile:
        raise ValueError("need at least one sample point")
    report = VerificationReport("density", (profile[0].n, profile[-1].n))
    for prev, cur in zip(profile, profile[1:]):
        if cur.deviation > prev.deviation:
            report.expect("nonincreasing-deviation", cur.n, f"<= {prev.deviation}", cur.deviation)
    last = profile[-1]
    if not last.deviation < tolerance:
        report.expect("tolerance", last.n, f"< {tolerance}", last.deviation)
    report.details["points"] = [
        f"n={p.n} B={p.b_of_n} dev={float(p.deviation):.3e}" for p in profile
    ]
    return report
