"""Hofstadter-style nested recurrences and the slow sequence B."""

from .fastb import (
    OccurrenceInfo,
    WitnessPair,
    aux_a,
    fast_b,
    find_witness,
    first_index,
    occurrence_info,
    r_partial,
    r_total,
)
from .recurrence import (
    Death,
    RecurrenceSpec,
    RecurrenceTerm,
    RepeatProfile,
    SequenceOverflowError,
    SequenceTrace,
    SlownessReport,
    check_slow,
    generate,
    make_preset,
    repeat_profile,
)

__version__ = "0.1.0"
