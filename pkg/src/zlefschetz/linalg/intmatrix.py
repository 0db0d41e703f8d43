"""Sparse arbitrary-precision integer matrices.

Storage is column-major: a tuple of ``{row: value}`` dicts with no zero
entries.  Operator matrices coming from the exterior algebra are extremely
sparse and split into many small connected blocks, which :meth:`blocks`
exposes so that the normal-form routines can work block by block.
"""

from __future__ import annotations

import json
from typing import Dict, Iterable, List, Sequence, Tuple

SparseVector = Dict[int, int]


class IntMatrix:
    __slots__ = ("rows", "cols", "_columns", "_blocks")

    def __init__(self, rows: int, cols: int, columns: Sequence[SparseVector]):
        if len(columns) != cols:
            raise ValueError("column count mismatch")
        clean = []
        for col in columns:
            c = {}
            for i, v in col.items():
                if not 0 <= i < rows:
                    raise IndexError(f"row index {i} out of range for {rows} rows")
                if v:
                    c[i] = int(v)
            clean.append(c)
        self.rows = rows
        self.cols = cols
        self._columns = tuple(clean)
        self._blocks = None

    # -- construction -----------------------------------------------------
    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[SparseVector]) -> "IntMatrix":
        return cls(rows, len(columns), list(columns))

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: int = None) -> "IntMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        columns = [dict() for _ in range(cols)]
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    columns[j][i] = v
        return cls(rows, cols, columns)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [{} for _ in range(cols)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: int = None, cols: int = None) -> "IntMatrix":
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        columns = [{} for _ in range(cols)]
        for i, d in enumerate(entries):
            if d:
                columns[i][i] = d
        return cls(rows, cols, columns)

    # -- access -----------------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def column(self, j: int) -> SparseVector:
        return dict(self._columns[j])

    def columns(self) -> List[SparseVector]:
        return [dict(c) for c in self._columns]

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self._columns[j].get(i, 0)

    def nnz(self) -> int:
        return sum(len(c) for c in self._columns)

    def to_dense(self) -> List[List[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self._columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    def row_dicts(self) -> List[SparseVector]:
        out = [dict() for _ in range(self.rows)]
        for j, col in enumerate(self._columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    def is_zero(self) -> bool:
        return not any(self._columns)

    # -- arithmetic -------------------------------------------------------
    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, self.row_dicts())

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def apply(self, vec) -> SparseVector:
        """Matrix times a sparse (dict) or dense (list) column vector."""
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        out: SparseVector = {}
        for j, x in items:
            if x:
                for i, v in self._columns[j].items():
                    out[i] = out.get(i, 0) + v * x
        return {i: v for i, v in out.items() if v}

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return IntMatrix(self.rows, other.cols, [self.apply(c) for c in other._columns])

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        cols = []
        for a, b in zip(self._columns, other._columns):
            c = dict(a)
            for i, v in b.items():
                c[i] = c.get(i, 0) + v
            cols.append(c)
        return IntMatrix(self.rows, self.cols, cols)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols,
                         [{i: k * v for i, v in c.items()} for c in self._columns])

    def reduce(self, modulus: int) -> "IntMatrix":
        if not modulus:
            return self
        return IntMatrix(self.rows, self.cols,
                         [{i: v % modulus for i, v in c.items()} for c in self._columns])

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._columns == other._columns

    def __hash__(self):
        return hash((self.rows, self.cols,
                     tuple(frozenset(c.items()) for c in self._columns)))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    # -- shape manipulation ---------------------------------------------
    def select_columns(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix(self.rows, len(idx), [self._columns[j] for j in idx])

    def select_rows(self, idx: Sequence[int]) -> "IntMatrix":
        pos = {r: k for k, r in enumerate(idx)}
        cols = [{pos[i]: v for i, v in c.items() if i in pos} for c in self._columns]
        return IntMatrix(len(idx), self.cols, cols)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix(self.rows, self.cols + other.cols,
                         list(self._columns) + list(other._columns))

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        off = self.rows
        cols = []
        for a, b in zip(self._columns, other._columns):
            c = dict(a)
            c.update({i + off: v for i, v in b.items()})
            cols.append(c)
        return IntMatrix(self.rows + other.rows, self.cols, cols)

    # -- block structure --------------------------------------------------
    def blocks(self) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """Connected components of the row/column incidence graph.

        Every row and every column appears in exactly one block.  Empty rows
        and empty columns form singleton blocks.  Blocks are ordered by their
        smallest column, then smallest row, so the result is deterministic.
        """
        if self._blocks is not None:
            return self._blocks
        parent = list(range(self.rows + self.cols))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for j, col in enumerate(self._columns):
            cj = self.rows + j
            for i in col:
                a, b = find(i), find(cj)
                if a != b:
                    parent[a] = b
        groups: Dict[int, Tuple[List[int], List[int]]] = {}
        for i in range(self.rows):
            groups.setdefault(find(i), ([], []))[0].append(i)
        for j in range(self.cols):
            groups.setdefault(find(self.rows + j), ([], []))[1].append(j)
        out = [(tuple(r), tuple(c)) for r, c in groups.values()]
        out.sort(key=lambda rc: (rc[1][0] if rc[1] else self.cols + rc[0][0],
                                 rc[0][0] if rc[0] else -1))
        self._blocks = out
        return out

    def dense_block(self, rows: Sequence[int], cols: Sequence[int]) -> List[List[int]]:
        pos = {r: k for k, r in enumerate(rows)}
        out = [[0] * len(cols) for _ in rows]
        for k, j in enumerate(cols):
            for i, v in self._columns[j].items():
                out[pos[i]][k] = v
        return out

    # -- interchange ------------------------------------------------------
    def to_json_obj(self) -> dict:
        entries = []
        for j, col in enumerate(self._columns):
            for i, v in col.items():
                entries.append([i, j, str(v)])
        entries.sort()
        return {"rows": self.rows, "cols": self.cols, "entries": entries}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "IntMatrix":
        rows, cols = int(obj["rows"]), int(obj["cols"])
        columns = [dict() for _ in range(cols)]
        for i, j, v in obj["entries"]:
            columns[int(j)][int(i)] = int(v)
        return cls(rows, cols, columns)

    @classmethod
    def from_json(cls, text: str) -> "IntMatrix":
        return cls.from_json_obj(json.loads(text))
