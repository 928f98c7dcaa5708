"""Dense exact-integer matrices with labelled rows and columns.

Labels are either simplices (tuples of vertex ids) or strings such as
``"eta_8"`` for fixture data.  Entries are Python ints, so nothing ever
overflows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .errors import LabelError

Label = Hashable


@dataclass(frozen=True)
class IntegerMatrix:
    rows: tuple
    cols: tuple
    entries: tuple  # tuple of row tuples
    _row_pos: dict = field(init=False, repr=False, compare=False)
    _col_pos: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = tuple(self.rows)
        cols = tuple(self.cols)
        entries = tuple(tuple(int(x) for x in r) for r in self.entries)
        if len(entries) != len(rows) or any(len(r) != len(cols) for r in entries):
            raise ValueError(
                f"entry array does not match {len(rows)}x{len(cols)} label shape"
            )
        row_pos = {lab: i for i, lab in enumerate(rows)}
        col_pos = {lab: j for j, lab in enumerate(cols)}
        if len(row_pos) != len(rows) or len(col_pos) != len(cols):
            raise ValueError("duplicate labels on a matrix axis")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_row_pos", row_pos)
        object.__setattr__(self, "_col_pos", col_pos)

    @classmethod
    def zeros(cls, rows: Iterable, cols: Iterable) -> IntegerMatrix:
        rows, cols = tuple(rows), tuple(cols)
        return cls(rows, cols, tuple((0,) * len(cols) for _ in rows))

    @classmethod
    def from_columns(cls, rows, cols, columns: Sequence[Sequence[int]]) -> IntegerMatrix:
        rows = tuple(rows)
        return cls(rows, cols, tuple(zip(*columns)) if columns else tuple(() for _ in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def row_index(self, label) -> int:
        try:
            return self._row_pos[label]
        except KeyError:
            raise LabelError(f"unknown row label {label!r}") from None

    def col_index(self, label) -> int:
        try:
            return self._col_pos[label]
        except KeyError:
            raise LabelError(f"unknown column label {label!r}") from None

    def has_row(self, label) -> bool:
        return label in self._row_pos

    def has_col(self, label) -> bool:
        return label in self._col_pos

    def __getitem__(self, key) -> int:
        r, c = key
        return self.entries[self.row_index(r)][self.col_index(c)]

    def row(self, label) -> tuple:
        return self.entries[self.row_index(label)]

    def column(self, label) -> tuple:
        j = self.col_index(label)
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> IntegerMatrix:
        if not self.rows:
            return IntegerMatrix(self.cols, (), tuple(() for _ in self.cols))
        return IntegerMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    @property
    def T(self) -> IntegerMatrix:
        return self.transpose()

    def delete_row(self, label) -> IntegerMatrix:
        i = self.row_index(label)
        return IntegerMatrix(
            self.rows[:i] + self.rows[i + 1:],
            self.cols,
            self.entries[:i] + self.entries[i + 1:],
        )

    def delete_col(self, label) -> IntegerMatrix:
        j = self.col_index(label)
        return IntegerMatrix(
            self.rows,
            self.cols[:j] + self.cols[j + 1:],
            tuple(r[:j] + r[j + 1:] for r in self.entries),
        )

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if len(self.cols) != len(other.rows):
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = list(zip(*other.entries)) if other.rows else [() for _ in other.cols]
        out = tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in ocols) for r in self.entries
        )
        return IntegerMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def nonzero_count(self) -> int:
        return sum(1 for r in self.entries for x in r if x)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def reindex(self, rows=None, cols=None) -> IntegerMatrix:
        """Permute (or select) rows/columns by label."""
        rows = self.rows if rows is None else tuple(rows)
        cols = self.cols if cols is None else tuple(cols)
        ri = [self.row_index(r) for r in rows]
        ci = [self.col_index(c) for c in cols]
        return IntegerMatrix(rows, cols, tuple(tuple(self.entries[i][j] for j in ci) for i in ri))

    def diff(self, other: IntegerMatrix) -> list[tuple]:
        """Entries where two equally-labelled matrices disagree: (row, col, self, other)."""
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("label mismatch")
        return [
            (self.rows[i], self.cols[j], a, b)
            for i, (ra, rb) in enumerate(zip(self.entries, other.entries))
            for j, (a, b) in enumerate(zip(ra, rb))
            if a != b
        ]

    def __str__(self):
        width = max([len(str(x)) for r in self.entries for x in r] + [1])
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.entries)
