import pytest
from hypothesis import given, settings, strategies as st

from hofseq.recurrence import (
    Death,
    RecurrenceSpec,
    RecurrenceTerm,
    SequenceOverflowError,
    SequenceTrace,
    check_slow,
    generate,
    make_preset,
    repeat_profile,
)

B_PREFIX = [1, 2, 3, 4, 5, 6, 6, 7, 8, 9, 9, 10, 11, 12, 12, 13, 14, 15, 15, 16,
            17, 17, 18, 18, 19, 20, 21, 21]
Q_PREFIX = [1, 1, 2, 3, 3, 4, 5, 5, 6, 6, 6]


def test_preset_b():
    spec = make_preset("B")
    assert spec.offsets == (1, 2, 3)
    assert spec.shifts == (0, 0, 0)
    assert spec.initial_condition == (1, 2, 3, 4, 5)


def test_preset_q():
    spec = make_preset("Q")
    assert spec.offsets == (1, 2)
    assert spec.initial_condition == (1, 1)


def test_preset_bk():
    spec = make_preset("bk", k=4, n_init=10)
    assert spec.offsets == (1, 2, 3, 4)
    assert spec.initial_condition == tuple(range(1, 11))


@pytest.mark.parametrize("name, offsets, shifts, init", [
    ("V", (1, 4), (0, 0), (1, 1, 1, 1)),
    ("W", (2, 4), (0, 0), (1, 1, 1, 1)),
    ("conolly", (1, 2), (0, 1), (1, 1)),
    ("bprime", (2, 4, 6), (0, 0, 0), tuple(range(1, 12))),
])
def test_other_presets(name, offsets, shifts, init):
    spec = make_preset(name)
    assert (spec.offsets, spec.shifts, spec.initial_condition) == (offsets, shifts, init)


def test_preset_qrs():
    spec = make_preset("Qrs", r=1, s=3)
    assert spec.offsets == (1, 3)
    assert spec.initial_condition == (1, 1, 1)


@pytest.mark.parametrize("kwargs", [
    dict(name="nope"),
    dict(name="Qrs", r=3, s=2),
    dict(name="Qrs", r=0, s=2),
    dict(name="Qrs"),
    dict(name="bk", k=4, n_init=3),
    dict(name="bk", k=0, n_init=3),
    dict(name="bk"),
])
def test_preset_errors(kwargs):
    with pytest.raises(ValueError):
        make_preset(**kwargs)


def test_spec_validation():
    with pytest.raises(ValueError):
        RecurrenceTerm(0)
    with pytest.raises(ValueError):
        RecurrenceTerm(1, -1)
    with pytest.raises(ValueError):
        RecurrenceSpec((), (1,))
    with pytest.raises(ValueError):
        RecurrenceSpec.from_offsets((1, 3), (1, 1))
    with pytest.raises(ValueError):
        RecurrenceSpec.from_offsets((1,), (0,))
    with pytest.raises(ValueError):
        RecurrenceSpec.from_offsets((1, 2), (1, 1), shifts=(0,))


def test_generate_b_prefix():
    trace = generate(make_preset("B"), 28)
    assert trace.alive
    assert list(trace.values) == B_PREFIX


def test_generate_q():
    assert list(generate(make_preset("Q"), 11).values) == Q_PREFIX
    trace = generate(make_preset("Q"), 16)
    assert trace.term(12) == 8
    assert trace.term(15) == 10
    assert trace.term(16) == 9


def test_generate_shorter_than_init():
    trace = generate(make_preset("B"), 3)
    assert trace.values == (1, 2, 3)
    with pytest.raises(ValueError):
        generate(make_preset("B"), 0)


def test_term_is_one_based():
    trace = generate(make_preset("B"), 10)
    assert trace.term(1) == 1
    assert trace.term(7) == 6
    with pytest.raises(IndexError):
        trace.term(0)
    with pytest.raises(IndexError):
        trace.term(11)


def test_q13_dies():
    # regression constant observed from the engine
    trace = generate(make_preset("Qrs", r=1, s=3), 10**5)
    assert trace.death == Death(165, -37)
    assert len(trace) == 164


def test_death_invariant_and_first_argument():
    # S(n) = S(n - S(n-1)) + S(n - 1 - S(n-1)) with init [1]: second term asks for S(0)
    spec = RecurrenceSpec.from_offsets((1, 1), (1,), shifts=(0, 1))
    trace = generate(spec, 5)
    assert trace.death == Death(2, 0)
    assert len(trace) == trace.death.at_index - 1


def test_overflow_raises():
    spec = RecurrenceSpec.from_offsets((1, 1), (2**62, 2))
    with pytest.raises(SequenceOverflowError):
        generate(spec, 3)


def test_conolly_prefix():
    # C(3) = C(2) + C(1) = 2, C(4) = C(2) + C(1) = 2, C(5) = C(3) + C(2) = 3
    assert generate(make_preset("conolly"), 5).values == (1, 1, 2, 2, 3)


def test_check_slow():
    assert check_slow(generate(make_preset("B"), 10**4)).is_slow
    report = check_slow(generate(make_preset("Q"), 12))
    assert (report.is_slow, report.first_violation_index, report.violating_difference) == (False, 12, 2)
    ones = generate(make_preset("bk", k=1, n_init=1), 50)
    assert set(ones.values) == {1}
    assert check_slow(ones).is_slow


def test_check_slow_needs_two_terms():
    with pytest.raises(ValueError):
        check_slow(SequenceTrace(make_preset("B"), (1,)))


def test_repeat_profile_b():
    prof = repeat_profile(generate(make_preset("B"), 28))
    assert prof.count(6) == 2
    assert prof.count(7) == 1
    assert prof.count(17) == 2
    assert prof.complete_below == 21
    assert prof.max_complete_multiplicity == 2


def test_repeat_profile_single():
    prof = repeat_profile(SequenceTrace(make_preset("B"), (1,)))
    assert prof.count(1) == 1
    assert prof.max_multiplicity == 1
    assert prof.max_complete_multiplicity == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["Q", "V", "W", "conolly", "B"]), st.integers(1, 400), st.integers(0, 400))
def test_generate_is_prefix_stable(name, n, extra):
    spec = make_preset(name)
    short, long = generate(spec, n), generate(spec, n + extra)
    assert long.values[:len(short)] == short.values


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(st.integers(1, 4), st.integers(0, 2)), min_size=1, max_size=3),
    st.lists(st.integers(1, 6), min_size=4, max_size=8),
)
def test_random_specs_respect_contract(terms, init):
    spec = RecurrenceSpec.from_offsets([o for o, _ in terms], init, shifts=[e for _, e in terms])
    trace = generate(spec, 200)
    assert all(v >= 1 for v in trace.values)
    assert trace.values[:len(init)] == tuple(init)[:len(trace.values)]
    if trace.death:
        n = trace.death.at_index
        assert len(trace) == n - 1
        arg = trace.death.offending_argument
        assert arg < 1 or arg >= n
    else:
        assert len(trace) == 200
    # every stored term past the init is the recurrence sum over valid arguments
    s = (0,) + trace.values
    for n in range(len(init) + 1, len(trace) + 1):
        args = [n - e - s[n - o] for o, e in terms]
        assert all(1 <= a <= n - 1 for a in args)
        assert s[n] == sum(s[a] for a in args)


def test_v_multiplicities():
    trace = generate(make_preset("V"), 10**5)
    prof = repeat_profile(trace)
    over = {v: c for v, c in prof.counts.items() if c > 3 and v < prof.complete_below}
    # only the all-ones initial condition exceeds three copies
    assert over == {1: 4}
    generated = [c for v, c in prof.counts.items() if 1 < v < prof.complete_below]
    assert max(generated) == 3


def test_v_identity_init_is_shift():
    v = generate(make_preset("V"), 2000).values
    shifted = generate(RecurrenceSpec.from_offsets((1, 4), (1, 2, 3, 4)), 1997)
    assert shifted.values == v[3:]
    assert repeat_profile(shifted).max_complete_multiplicity == 3
