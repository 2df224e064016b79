"""Probes of the k-term recurrence B_k(n) = sum_{i=1..k} B_k(n - B_k(n - i)).

With the identity initial condition B_k(i) = i for i <= N, the next term is
forced to (k^2 + k)/2, so only N = (k^2+k)/2 - 1 or (k^2+k)/2 can be slow.
For k >= 4 that sequence follows a regular "plateau" pattern, drops one
below it, and then jumps by 2 at index k^3/2 + k^2/2 + 2k + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .recurrence import SequenceTrace, check_slow, generate, make_preset
from .verify import OracleDeathError, VerificationReport


@dataclass(frozen=True)
class ProbeConfig:
    k: int
    n_init: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.n_init < self.k:
            raise ValueError(f"need n_init >= k, got k={self.k}, n_init={self.n_init}")


@dataclass(frozen=True)
class PlateauCoordinates:
    q: int
    r: int
    index: int
    value: int


@dataclass
class JumpReport:
    k: int
    n_init: int
    jump_index: int
    value_before: int
    value_at: int
    difference: int
    first_violation_index: Optional[int]
    expected_before: int
    expected_at: int
    findings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.difference == 2
            and self.first_violation_index is not None
            and self.first_violation_index <= self.jump_index
            and self.value_before == self.expected_before
            and self.value_at == self.expected_at
        )


def triangular(k: int) -> int:
    return (k * k + k) // 2


def jump_index(k: int) -> int:
    return (k**3 + k**2) // 2 + 2 * k + 1


def plateau_block(k: int) -> int:
    """Length of the regular stretch after index T = (k^2+k)/2: (T - k + 1)(k + 1)."""
    return (triangular(k) - k + 1) * (k + 1)


def bk_trace(config: ProbeConfig, count: int) -> SequenceTrace:
    return generate(make_preset("bk", k=config.k, n_init=config.n_init), count)


def _trace_through(k: int, count: int) -> SequenceTrace:
    trace = bk_trace(ProbeConfig(k, triangular(k) - 1), count)
    if not trace.alive:
        d = trace.death
        raise OracleDeathError(f"B_{k} died at index {d.at_index} before index {count}")
    return trace


def plateau_coordinates(k: int) -> list[PlateauCoordinates]:
    """Predicted (index, value) pairs B_k(T + q(k+1) + r) = T + qk + r - 1.

    T = (k^2+k)/2 and r runs over 1..k+1.  Offsets j = q(k+1) + r cover
    -k <= j < (T - k + 1)(k + 1), starting inside the initial condition.
    """
    t = triangular(k)
    out = []
    for j in range(-k, plateau_block(k)):
        q, r = divmod(j - 1, k + 1)
        r += 1
        out.append(PlateauCoordinates(q, r, t + j, t + q * k + r - 1))
    return out


def dip_coordinates(k: int) -> list[tuple[int, int]]:
    """(index, value) for the run just after the plateau, one below its pattern."""
    t, a = triangular(k), plateau_block(k)
    run = [(t + a + r, t + (t - k + 1) * k + r - 1) for r in range(k - 1)]
    run.append((t + a + k - 1, t + (t - k + 1) * k + k - 3))
    return run


def verify_step_value(k: int) -> VerificationReport:
    """With init 1..N, N = (k^2+k)/2 - 1, the next term equals N + 1."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    n = triangular(k) - 1
    trace = _trace_through(k, n + 1)
    report = VerificationReport(f"step-value k={k}", (n + 1, n + 1))
    report.expect("B_k(N+1)", n + 1, triangular(k), trace.term(n + 1))
    report.expect("step", n + 1, 1, trace.term(n + 1) - trace.term(n))
    return report


def verify_plateau(k: int) -> VerificationReport:
    if k < 4:
        raise ValueError(f"k must be >= 4, got {k}")
    coords = plateau_coordinates(k)
    dip = dip_coordinates(k)
    trace = _trace_through(k, jump_index(k))
    report = VerificationReport(f"plateau k={k}", (coords[0].index, dip[-1][0]))
    for c in coords:
        report.expect("plateau", (c.index, c.q, c.r), c.value, trace.term(c.index))
    for idx, value in dip:
        report.expect("dip", idx, value, trace.term(idx))
    report.details["plateau_points"] = len(coords)
    return report


def verify_jump(k: int) -> JumpReport:
    if k < 4:
        raise ValueError(f"k must be >= 4, got {k}")
    j = jump_index(k)
    trace = _trace_through(k, j)
    slow = check_slow(trace)
    t = triangular(k)
    base = t + (t - k + 1) * k
    report = JumpReport(
        k=k,
        n_init=t - 1,
        jump_index=j,
        value_before=trace.term(j - 1),
        value_at=trace.term(j),
        difference=trace.term(j) - trace.term(j - 1),
        first_violation_index=slow.first_violation_index,
        expected_before=base + k - 3,
        expected_at=base + k - 1,
    )
    if slow.first_violation_index is not None and slow.first_violation_index < j:
        report.findings.append(
            f"earlier slowness violation at index {slow.first_violation_index} "
            f"(difference {slow.violating_difference})"
        )
    return report


def _outcome(trace: SequenceTrace) -> tuple[bool, str]:
    if len(trace) < 2:
        return False, f"died at index {trace.death.at_index}"
    s = check_slow(trace)
    if not s.is_slow:
        return False, f"violation at {s.first_violation_index} (diff {s.violating_difference})"
    if not trace.alive:
        return False, f"died at index {trace.death.at_index}"
    return True, f"slow through {len(trace)}"


def scan_only_slow(k_max: int, horizon: int) -> VerificationReport:
    """Among B_k with identity init, only k = 3 is slow (k = 1 being trivial).

    Runs both admissible init lengths in full through ``horizon`` for each
    k <= k_max, the Q-sequence init for k = 2, and for every other init
    length in [k, k^2 + k] checks that the forced first step is not 0 or 1.
    """
    if k_max < 4:
        raise ValueError(f"k_max must be >= 4, got {k_max}")
    if horizon < jump_index(k_max):
        raise ValueError(f"horizon must be >= {jump_index(k_max)} for k_max={k_max}")
    report = VerificationReport("only-slow", (1, k_max))
    rows = []
    slow_ks = set()

    ones = bk_trace(ProbeConfig(1, 1), horizon)
    rows.append(("k=1 N=1", _outcome(ones)[1] + ", all ones (trivial)"))
    report.expect("trivial", "k=1", True, set(ones.values) == {1})

    q_slow = check_slow(generate(make_preset("Q"), horizon))
    rows.append(("k=2 Q init", f"violation at {q_slow.first_violation_index}"))
    report.expect("Q-violation", "k=2 Q init", 12, q_slow.first_violation_index)

    for k in range(2, k_max + 1):
        t = triangular(k)
        for n_init in (t - 1, t):
            slow, text = _outcome(bk_trace(ProbeConfig(k, n_init), horizon))
            rows.append((f"k={k} N={n_init}", text))
            if slow:
                slow_ks.add(k)
            report.expect("slowness", (k, n_init), k == 3, slow)
        for n_init in range(k, k * k + k + 1):
            if n_init in (t - 1, t):
                continue
            step = bk_trace(ProbeConfig(k, n_init), n_init + 1)
            if not step.alive:
                continue
            diff = step.term(n_init + 1) - n_init
            if diff in (0, 1):
                report.expect("one-step", (k, n_init), "diff not in {0,1}", diff)
    report.details["slow_k"] = sorted(slow_ks)
    report.details["rows"] = rows
    return report
