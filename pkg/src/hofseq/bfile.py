"""Reading and writing OEIS b-files ("n value" per line, '#' comments)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, TextIO

_SEP = re.compile(r"[\s,]+")


class BFileError(ValueError):
    pass


@dataclass(frozen=True)
class BFileRecord:
    n: int
    value: int


def parse_bfile(lines: Iterable[str]) -> list[BFileRecord]:
    """Parse b-file lines; separators may be any run of whitespace or a comma."""
    records: list[BFileRecord] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = _SEP.split(line)
        if len(parts) != 2:
            raise BFileError(f"line {lineno}: expected 'n value', got {raw.rstrip()!r}")
        try:
            n, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileError(f"line {lineno}: not integers: {raw.rstrip()!r}") from None
        if records and n <= records[-1].n:
            raise BFileError(f"line {lineno}: index {n} does not increase")
        records.append(BFileRecord(n, value))
    return records


def read_bfile(path) -> list[BFileRecord]:
    with open(path, encoding="utf-8") as fh:
        return parse_bfile(fh)


def write_records(out: TextIO, pairs: Iterable[tuple[int, int]], fmt: str = "bfile") -> None:
    sep = "\t" if fmt == "bfile" else ","
    for n, value in pairs:
        out.write(f"{n}{sep}{value}\n")


def write_sequence(out: TextIO, values: Iterable[int], fmt: str = "bfile", offset: int = 1) -> None:
    write_records(out, enumerate(values, start=offset), fmt)


def first_mismatch(records: Iterable[BFileRecord], lookup) -> Optional[tuple[BFileRecord, int]]:
    """First record whose value differs from ``lookup(n)``, with the computed value."""
    for rec in records:
        got = lookup(rec.n)
        if got != rec.value:
            return rec, got
    return None
