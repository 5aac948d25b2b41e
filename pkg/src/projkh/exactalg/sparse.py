"""Sparse integer matrices and exact rank by fraction-free elimination."""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator


class SparseIntMatrix:
    """Row-major dict-of-dicts integer matrix; zero entries are never stored."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: dict | None = None):
        self.rows = rows
        self.cols = cols
        self.data: dict[int, dict[int, int]] = data if data is not None else {}

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int, int]]):
        m = cls(rows, cols)
        for r, c, v in entries:
            m.add(r, c, v)
        return m

    @classmethod
    def from_dense(cls, dense: list[list[int]]):
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls.from_entries(rows, cols, ((r, c, v) for r, row in enumerate(dense)
                                             for c, v in enumerate(row) if v))

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, {i: {i: 1} for i in range(n)})

    def add(self, r: int, c: int, v) -> None:
        if not v:
            return
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
        row = self.data.setdefault(r, {})
        nv = row.get(c, 0) + v
        if nv:
            row[c] = nv
        else:
            del row[c]
            if not row:
                del self.data[r]

    def get(self, r: int, c: int) -> int:
        return self.data.get(r, {}).get(c, 0)

    def entries(self) -> list[tuple[int, int, int]]:
        return sorted((r, c, v) for r, row in self.data.items() for c, v in row.items())

    def __iter__(self) -> Iterator[tuple[int, int, int]]:
        return iter(self.entries())

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.data.values())

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return not self.data

    def copy(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.rows, self.cols, {r: dict(row) for r, row in self.data.items()})

    def transpose(self) -> "SparseIntMatrix":
        t = SparseIntMatrix(self.cols, self.rows)
        for r, row in self.data.items():
            for c, v in row.items():
                t.data.setdefault(c, {})[r] = v
        return t

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = SparseIntMatrix(self.rows, other.cols)
        odata = other.data
        acc = [0] * other.cols  # dense accumulator, reset after each row
        for r, row in self.data.items():
            touched = set()
            for k, v in row.items():
                orow = odata.get(k)
                if orow:
                    touched.update(orow)
                    for c, w in orow.items():
                        acc[c] += v * w
            res = {}
            for c in touched:
                if acc[c]:
                    res[c] = acc[c]
                    acc[c] = 0
            if res:
                out.data[r] = res
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseIntMatrix) and self.shape == other.shape
                and self.data == other.data)

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for r, row in self.data.items():
            for c, v in row.items():
                dense[r][c] = v
        return dense

    def select(self, rows: list[int], cols: list[int]) -> "SparseIntMatrix":
        """Submatrix on the given row and column index lists (in that order)."""
        cpos = {c: i for i, c in enumerate(cols)}
        out = SparseIntMatrix(len(rows), len(cols))
        for i, r in enumerate(rows):
            row = self.data.get(r)
            if not row:
                continue
            nrow = {cpos[c]: v for c, v in row.items() if c in cpos}
            if nrow:
                out.data[i] = nrow
        return out

    def __repr__(self):
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def _content(row: dict) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def rank(m: SparseIntMatrix) -> int:
    """Exact rank over Q.

    Fraction-free elimination: a row is updated as ``a * row - b * pivot_row``
    and then divided by its content, so entries stay integral and small.
    Pivots minimise a Markowitz-style cost among the shortest rows,
    preferring unit entries; ties break by (row, col).
    """
    return _eliminate(m.data, None)


def echelon_rows(rows: dict[int, dict[int, int]]) -> list[tuple[int, dict[int, int]]]:
    """Pivot rows ``(column, row)`` in elimination order; each later row is
    zero at every earlier pivot column, so ``reduce_by_echelon`` can clear a
    vector one pivot at a time."""
    out: list[tuple[int, dict[int, int]]] = []
    _eliminate(rows, out)
    return out


def reduce_by_echelon(ech: list[tuple[int, dict[int, int]]], v: dict[int, int]) -> dict[int, int]:
    """Remainder of ``v`` (a multiple of it, kept integral) after clearing
    every pivot column; empty iff ``v`` lies in the row span over Q."""
    v = {k: x for k, x in v.items() if x}
    for c, prow in ech:
        f = v.get(c)
        if not f:
            continue
        pv = prow[c]
        g = gcd(pv, f)
        a, b = pv // g, f // g
        if a != 1:
            v = {k: a * x for k, x in v.items()}
        for k, x in prow.items():
            nx = v.get(k, 0) - b * x
            if nx:
                v[k] = nx
            else:
                v.pop(k, None)
        if not v:
            break
    return v


def _eliminate(data: dict, record: list | None) -> int:
    rows = {r: dict(row) for r, row in data.items() if row}
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    heap = [(len(row), r) for r, row in rows.items()]
    heapq.heapify(heap)
    rk = 0
    while rows:
        r, c = _pick_pivot(rows, cols, heap)
        prow = rows.pop(r)
        for cc in prow:
            cols[cc].discard(r)
        pv = prow[c]
        if record is not None:
            record.append((c, prow))
        for r2 in sorted(cols.get(c, ())):
            row = rows[r2]
            f = row[c]
            g = gcd(pv, f)
            a, b = pv // g, f // g
            if a != 1:
                for cc in row:
                    row[cc] *= a
            for cc, v in prow.items():
                nv = row.get(cc, 0) - b * v
                if nv:
                    if cc not in row:
                        cols[cc].add(r2)
                    row[cc] = nv
                elif cc in row:
                    del row[cc]
                    cols[cc].discard(r2)
            if not row:
                del rows[r2]
                continue
            g = _content(row)
            if g > 1:
                for cc in row:
                    row[cc] //= g
            heapq.heappush(heap, (len(row), r2))
        cols.pop(c, None)
        rk += 1
    return rk


def _pick_pivot(rows: dict, cols: dict, heap: list, width: int = 8) -> tuple[int, int]:
    cand, seen = [], set()
    while heap and len(cand) < width:
        ln, r = heapq.heappop(heap)
        row = rows.get(r)
        if row is None or len(row) != ln or r in seen:
            continue
        seen.add(r)
        cand.append(r)
    best = None
    for r in cand:
        row = rows[r]
        lr = len(row) - 1
        for c, v in row.items():
            cost = (abs(v) != 1, lr * (len(cols[c]) - 1), abs(v), r, c)
            if best is None or cost < best:
                best = cost
    for r in cand:
        if r != best[3]:
            heapq.heappush(heap, (len(rows[r]), r))
    return best[3], best[4]


def rank_rational(rows: list[dict]) -> int:
    """Rank of a list of sparse rows with Fraction/int entries."""
    m = SparseIntMatrix(len(rows), 1 + max((c for row in rows for c in row), default=0))
    for i, row in enumerate(rows):
        den = 1
        for v in row.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        for c, v in row.items():
            m.add(i, c, int(v * den))
    return rank(m)
