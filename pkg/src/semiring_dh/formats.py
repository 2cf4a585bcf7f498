"""Line-oriented text formats for semirings, matrices, instances and transcripts.

Semiring file::

    semiring <name>
    order <k>
    zero <idx|none>
    one <idx|none>
    add
    <k lines of k indices>
    mul
    <k lines of k indices>

Matrix file::

    matrix
    semiring <name>
    n <n>
    <n lines of n indices>

Lines starting with ``#`` are comments. Everything else is parsed strictly:
blank lines, extra tokens and missing rows are errors that name the line.
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable

import numpy as np

from .semiring import SemiringTable, builtin

__all__ = [
    "FormatError",
    "parse_semiring",
    "serialize_semiring",
    "parse_matrix",
    "serialize_matrix",
    "load_semiring",
    "load_matrix",
    "LineReader",
    "matrix_lines",
    "read_matrix_body",
]


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class LineReader:
    """Iterates over significant lines, skipping ``#`` comments."""

    def __init__(self, text: str):
        lines = text.split("\n")
        while lines and lines[-1].strip() == "":
            lines.pop()
        self._lines = [(i + 1, ln.rstrip("\r")) for i, ln in enumerate(lines)
                       if not ln.lstrip().startswith("#")]
        self._pos = 0

    @property
    def lineno(self) -> int | None:
        if self._pos < len(self._lines):
            return self._lines[self._pos][0]
        return self._lines[-1][0] + 1 if self._lines else 1

    def at_end(self) -> bool:
        return self._pos >= len(self._lines)

    def next(self, what: str) -> tuple[int, str]:
        if self.at_end():
            raise FormatError(f"unexpected end of input, expected {what}", self.lineno)
        item = self._lines[self._pos]
        self._pos += 1
        if item[1].strip() == "":
            raise FormatError(f"blank line, expected {what}", item[0])
        return item

    def keyword(self, word: str) -> int:
        lineno, line = self.next(f"'{word}'")
        if line.split() != [word]:
            raise FormatError(f"expected '{word}', got {line!r}", lineno)
        return lineno

    def field(self, key: str) -> tuple[int, str]:
        lineno, line = self.next(f"'{key} <value>'")
        parts = line.split()
        if len(parts) != 2 or parts[0] != key:
            raise FormatError(f"expected '{key} <value>', got {line!r}", lineno)
        return lineno, parts[1]

    def int_field(self, key: str, minimum: int = 0) -> int:
        lineno, value = self.field(key)
        try:
            v = int(value)
        except ValueError:
            raise FormatError(f"{key} must be an integer, got {value!r}", lineno) from None
        if v < minimum:
            raise FormatError(f"{key} must be >= {minimum}, got {v}", lineno)
        return v

    def rows(self, count: int, width: int, bound: int, what: str) -> list[list[int]]:
        out = []
        for r in range(count):
            lineno, line = self.next(f"{what} row {r}")
            parts = line.split()
            if len(parts) != width:
                raise FormatError(f"{what} row {r} has {len(parts)} entries, expected {width}", lineno)
            try:
                row = [int(x) for x in parts]
            except ValueError:
                raise FormatError(f"{what} row {r} has a non-integer entry", lineno) from None
            for x in row:
                if not 0 <= x < bound:
                    raise FormatError(f"{what} entry {x} is outside [0, {bound})", lineno)
            out.append(row)
        return out

    def end(self):
        if not self.at_end():
            lineno, line = self._lines[self._pos]
            raise FormatError(f"trailing content {line!r}", lineno)


def _read_semiring(reader: LineReader) -> SemiringTable:
    _, name = reader.field("semiring")
    k = reader.int_field("order", minimum=1)
    specials = {}
    for key in ("zero", "one"):
        lineno, value = reader.field(key)
        if value == "none":
            specials[key] = None
            continue
        try:
            idx = int(value)
        except ValueError:
            raise FormatError(f"{key} must be an index or 'none', got {value!r}", lineno) from None
        if not 0 <= idx < k:
            raise FormatError(f"{key} index {idx} is outside [0, {k})", lineno)
        specials[key] = idx
    reader.keyword("add")
    add = reader.rows(k, k, k, "add")
    reader.keyword("mul")
    mul = reader.rows(k, k, k, "mul")
    return SemiringTable(name, add, mul, zero=specials["zero"], one=specials["one"])


def parse_semiring(text: str) -> SemiringTable:
    reader = LineReader(text)
    table = _read_semiring(reader)
    reader.end()
    return table


def _rows_text(arr: np.ndarray) -> list[str]:
    return [" ".join(str(int(x)) for x in row) for row in arr]


def serialize_semiring(table: SemiringTable) -> str:
    fmt = lambda v: "none" if v is None else str(v)  # noqa: E731
    lines = [f"semiring {table.name}", f"order {table.order}",
             f"zero {fmt(table.zero)}", f"one {fmt(table.one)}", "add"]
    lines += _rows_text(table.add)
    lines.append("mul")
    lines += _rows_text(table.mul)
    return "\n".join(lines) + "\n"


SemiringResolver = Callable[[str], SemiringTable]


def _resolve(name: str, table: SemiringTable | SemiringResolver | None, lineno: int) -> SemiringTable:
    if isinstance(table, SemiringTable):
        if table.name != name:
            raise FormatError(f"matrix is over semiring {name!r} but {table.name!r} was supplied", lineno)
        return table
    resolver = table or builtin
    try:
        return resolver(name)
    except KeyError as exc:
        raise FormatError(f"unknown semiring {name!r}", lineno) from exc


def read_matrix_body(reader: LineReader, table: SemiringTable | SemiringResolver | None = None):
    from .matrix import SemiringMatrix

    lineno, name = reader.field("semiring")
    semiring = _resolve(name, table, lineno)
    n = reader.int_field("n", minimum=1)
    rows = reader.rows(n, n, semiring.order, "matrix")
    return SemiringMatrix(semiring, rows)


def parse_matrix(text: str, table: SemiringTable | SemiringResolver | None = None):
    """Parse a matrix file; the semiring is looked up among the builtins
    unless a table (or a resolver callable) is supplied."""
    reader = LineReader(text)
    reader.keyword("matrix")
    m = read_matrix_body(reader, table)
    reader.end()
    return m


def matrix_lines(m, header: str = "matrix") -> list[str]:
    return [header, f"semiring {m.semiring.name}", f"n {m.n}"] + _rows_text(m.entries)


def serialize_matrix(m) -> str:
    return "\n".join(matrix_lines(m)) + "\n"


def load_semiring(path: str | Path) -> SemiringTable:
    return parse_semiring(Path(path).read_text())


def load_matrix(path: str | Path, table: SemiringTable | SemiringResolver | None = None):
    return parse_matrix(Path(path).read_text(), table)
