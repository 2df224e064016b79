"""Generic evaluator for Hofstadter-style nested recurrences.

A recurrence is a sum of terms ``S(n - shift - S(n - offset))`` together with
an initial condition giving ``S(1), ..., S(L)``.  Indexing is 1-based
throughout the public API.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

INT64_MAX = 2**63 - 1


class SequenceOverflowError(OverflowError):
    """A computed term left the signed 64-bit range."""


@dataclass(frozen=True)
class RecurrenceTerm:
    """One summand ``S(n - outer_shift - S(n - inner_offset))``."""

    inner_offset: int
    outer_shift: int = 0

    def __post_init__(self):
        if self.inner_offset < 1:
            raise ValueError(f"inner_offset must be >= 1, got {self.inner_offset}")
        if self.outer_shift < 0:
            raise ValueError(f"outer_shift must be >= 0, got {self.outer_shift}")


@dataclass(frozen=True)
class RecurrenceSpec:
    terms: tuple[RecurrenceTerm, ...]
    initial_condition: tuple[int, ...]
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "initial_condition", tuple(self.initial_condition))
        if not self.terms:
            raise ValueError("a recurrence needs at least one term")
        if any(v < 1 for v in self.initial_condition):
            raise ValueError("initial condition values must be positive")
        need = max(t.inner_offset for t in self.terms)
        if len(self.initial_condition) < need:
            raise ValueError(
                f"initial condition has {len(self.initial_condition)} values, "
                f"but the largest inner offset is {need}"
            )

    @classmethod
    def from_offsets(cls, offsets, initial_condition, shifts=None, name="custom"):
        shifts = shifts if shifts is not None else [0] * len(offsets)
        if len(shifts) != len(offsets):
            raise ValueError("offsets and shifts must have the same length")
        terms = tuple(RecurrenceTerm(o, e) for o, e in zip(offsets, shifts))
        return cls(terms, tuple(initial_condition), name)

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(t.inner_offset for t in self.terms)

    @property
    def shifts(self) -> tuple[int, ...]:
        return tuple(t.outer_shift for t in self.terms)


@dataclass(frozen=True)
class Death:
    at_index: int
    offending_argument: int


@dataclass(frozen=True)
class SequenceTrace:
    """Computed prefix of a sequence.

    ``values`` holds S(1), S(2), ... in order; use :meth:`term` for 1-based
    access.  ``death`` is set when the recurrence asked for an index outside
    ``[1, n-1]``; in that case ``values`` has exactly ``at_index - 1`` entries.
    """

    spec: RecurrenceSpec
    values: tuple[int, ...]
    death: Optional[Death] = None

    @property
    def alive(self) -> bool:
        return self.death is None

    def term(self, n: int) -> int:
        if not 1 <= n <= len(self.values):
            raise IndexError(f"index {n} outside computed range 1..{len(self.values)}")
        return self.values[n - 1]

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class SlownessReport:
    is_slow: bool
    first_violation_index: Optional[int] = None
    violating_difference: Optional[int] = None


@dataclass(frozen=True)
class RepeatProfile:
    """Occurrence count of each value in a trace.

    Counts are only final for values below ``complete_below`` (the last term
    of the trace): a monotone sequence may still repeat its last value.
    """

    counts: dict[int, int]
    complete_below: int
    max_multiplicity: int
    max_complete_multiplicity: int

    def count(self, value: int) -> int:
        return self.counts.get(value, 0)


def generate(spec: RecurrenceSpec, count: int) -> SequenceTrace:
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    init = spec.initial_condition
    if count <= len(init):
        return SequenceTrace(spec, init[:count])

    pairs = [(t.outer_shift, t.inner_offset) for t in spec.terms]
    # s[0] is padding so that s[n] is the n-th term
    s = [0, *init]
    append = s.append
    for n in range(len(init) + 1, count + 1):
        total = 0
        for shift, offset in pairs:
            arg = n - shift - s[n - offset]
            if arg < 1 or arg >= n:
                return SequenceTrace(spec, tuple(s[1:]), Death(n, arg))
            total += s[arg]
        if total > INT64_MAX:
            raise SequenceOverflowError(f"term {n} exceeds the 64-bit range")
        append(total)
    return SequenceTrace(spec, tuple(s[1:]))


def check_slow(trace: SequenceTrace) -> SlownessReport:
    v = trace.values
    if len(v) < 2:
        raise ValueError("slowness needs at least two terms")
    for i in range(1, len(v)):
        d = v[i] - v[i - 1]
        if d != 0 and d != 1:
            return SlownessReport(False, i + 1, d)
    return SlownessReport(True)


def repeat_profile(trace: SequenceTrace) -> RepeatProfile:
    if not trace.values:
        raise ValueError("empty trace")
    counts = dict(Counter(trace.values))
    last = trace.values[-1]
    complete = [c for v, c in counts.items() if v < last]
    return RepeatProfile(
        counts=counts,
        complete_below=last,
        max_multiplicity=max(counts.values()),
        max_complete_multiplicity=max(complete, default=0),
    )


def _qrs(r: int, s: int, name: str) -> RecurrenceSpec:
    if not 0 < r < s:
        raise ValueError(f"need 0 < r < s, got r={r}, s={s}")
    return RecurrenceSpec.from_offsets((r, s), [1] * s, name=name)


def _bk(k: int, n_init: int) -> RecurrenceSpec:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n_init < k:
        raise ValueError(f"identity initial condition must have length >= k ({k}), got {n_init}")
    return RecurrenceSpec.from_offsets(range(1, k + 1), range(1, n_init + 1), name=f"B_{k}")


PRESETS = ("Q", "Qrs", "V", "W", "conolly", "B", "bk", "bprime")


def make_preset(name: str, k: Optional[int] = None, n_init: Optional[int] = None,
                r: Optional[int] = None, s: Optional[int] = None) -> RecurrenceSpec:
    """Build one of the named recurrences.

    ``Q``        Hofstadter Q, init 1, 1
    ``Qrs``      Q_{r,s} with an all-ones init of length s (needs r, s)
    ``V``, ``W`` Q_{1,4} and Q_{2,4}, all-ones init
    ``conolly``  C(n) = C(n - C(n-1)) + C(n-1 - C(n-2)), init 1, 1
    ``B``        offsets 1, 2, 3 with init 1..5
    ``bk``       offsets 1..k with identity init of length ``n_init``
    ``bprime``   offsets 2, 4, 6 with identity init of length ``n_init`` (default 11)
    """
    key = name.lower()
    if key == "q":
        return RecurrenceSpec.from_offsets((1, 2), (1, 1), name="Q")
    if key == "qrs":
        if r is None or s is None:
            raise ValueError("preset Qrs needs r and s")
        return _qrs(r, s, f"Q_{r},{s}")
    if key == "v":
        return _qrs(1, 4, "V")
    if key == "w":
        return _qrs(2, 4, "W")
    if key == "conolly":
        return RecurrenceSpec.from_offsets((1, 2), (1, 1), shifts=(0, 1), name="conolly")
    if key == "b":
        return RecurrenceSpec.from_offsets((1, 2, 3), range(1, 6), name="B")
    if key == "bk":
        if k is None:
            raise ValueError("preset bk needs k")
        if n_init is None:
            n_init = max(k, (k * k + k) // 2 - 1)
        return _bk(k, n_init)
    if key == "bprime":
        n_init = 11 if n_init is None else n_init
        if n_init < 6:
            raise ValueError(f"bprime needs an init of length >= 6, got {n_init}")
        return RecurrenceSpec.from_offsets((2, 4, 6), range(1, n_init + 1), name="bprime")
    raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")


def naive_b(count: int) -> SequenceTrace:
    """The B-sequence by direct recursion, the oracle for the fast evaluator."""
    return generate(make_preset("B"), count)
