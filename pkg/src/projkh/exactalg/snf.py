"""Smith normal form of sparse integer matrices.

Pivots are isolated one at a time by sparse Euclidean row and column steps:
unit entries first (chosen to keep fill-in low, Markowitz style), then the
smallest remaining entry.  Once every pivot is isolated the diagonal is
turned into a divisibility chain by 2x2 gcd/lcm moves.  Row and column
operations can be recorded so that ``U @ A @ V == D`` may be checked.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd

from .sparse import SparseIntMatrix


@dataclass
class SNFResult:
    """``diagonal`` has length ``min(rows, cols)``; ``divisors`` its nonzero part."""

    shape: tuple[int, int]
    diagonal: list[int]
    U: SparseIntMatrix | None = field(default=None, repr=False)
    V: SparseIntMatrix | None = field(default=None, repr=False)
    U_inv: SparseIntMatrix | None = field(default=None, repr=False)
    V_inv: SparseIntMatrix | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def divisors(self) -> list[int]:
        return [d for d in self.diagonal if d]

    @property
    def torsion(self) -> list[int]:
        """Elementary divisors greater than one."""
        return [d for d in self.diagonal if d > 1]

    def D(self) -> SparseIntMatrix:
        m, n = self.shape
        return SparseIntMatrix(m, n, {i: {i: d} for i, d in enumerate(self.diagonal) if d})


def _axpy(y: dict, a: int, x: dict) -> None:
    """y += a * x for sparse dict vectors."""
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


class _Eliminator:
    def __init__(self, a: SparseIntMatrix, transforms: bool):
        self.rows: dict[int, dict[int, int]] = {r: dict(row) for r, row in a.data.items() if row}
        self.cols: dict[int, set[int]] = {}
        for r, row in self.rows.items():
            for c in row:
                self.cols.setdefault(c, set()).add(r)
        self.transforms = transforms
        if transforms:
            # U by rows, V by columns; their inverses are tracked alongside
            # (U^-1 by columns, V^-1 by rows) so unimodularity is checkable
            self.u = {r: {r: 1} for r in range(a.rows)}
            self.v = {c: {c: 1} for c in range(a.cols)}
            self.ui = {r: {r: 1} for r in range(a.rows)}
            self.vi = {c: {c: 1} for c in range(a.cols)}
        self.heap = [(len(row), r) for r, row in self.rows.items()]
        heapq.heapify(self.heap)
        self.pivots: list[tuple[int, int, int]] = []  # (row, col, value)

    # -- pivot choice -------------------------------------------------------
    def _push(self, r: int) -> None:
        row = self.rows.get(r)
        if row:
            heapq.heappush(self.heap, (len(row), r))

    def _pick(self, units_only: bool, width: int = 8):
        cand, seen = [], set()
        while self.heap and len(cand) < width:
            ln, r = heapq.heappop(self.heap)
            row = self.rows.get(r)
            if row is None or len(row) != ln or r in seen:
                continue
            seen.add(r)
            if units_only and not any(v in (1, -1) for v in row.values()):
                continue  # dropped until the row changes again
            cand.append(r)
        best = None
        for r in cand:
            row = self.rows[r]
            lr = len(row) - 1
            for c, v in row.items():
                if units_only and v not in (1, -1):
                    continue
                cost = (abs(v), lr * (len(self.cols[c]) - 1), r, c)
                if best is None or cost < best:
                    best = cost
        for r in cand:
            if best is None or r != best[2]:
                self._push(r)
        return None if best is None else (best[2], best[3])

    # -- elementary operations ----------------------------------------------
    def _row_sub(self, r2: int, r: int, f: int) -> None:
        """row_r2 -= f * row_r."""
        row, prow, cols = self.rows[r2], self.rows[r], self.cols
        for cc, v in prow.items():
            nv = row.get(cc, 0) - f * v
            if nv:
                if cc not in row:
                    cols.setdefault(cc, set()).add(r2)
                row[cc] = nv
            elif cc in row:
                del row[cc]
                cols[cc].discard(r2)
        if self.transforms and f:
            _axpy(self.u[r2], -f, self.u[r])
            _axpy(self.ui[r], f, self.ui[r2])
        if row:
            self._push(r2)
        else:
            del self.rows[r2]

    def _isolate(self, r: int, c: int) -> None:
        rows, cols = self.rows, self.cols
        while True:
            # clear column c below/above the pivot with row operations
            while True:
                p = rows[r][c]
                rem = []
                for r2 in sorted(cols[c] - {r}):
                    self._row_sub(r2, r, rows[r2][c] // p)
                    if r2 in rows and c in rows[r2]:
                        rem.append(r2)
                if not rem:
                    break
                r = min(rem, key=lambda x: (abs(rows[x][c]), x))
            # clear row r with column operations (only row r changes in A)
            p = rows[r][c]
            prow = rows[r]
            left = []
            for cc in sorted(prow):
                if cc == c:
                    continue
                f = prow[cc] // p
                if self.transforms and f:
                    _axpy(self.v[cc], -f, self.v[c])
                    _axpy(self.vi[c], f, self.vi[cc])
                nv = prow[cc] - f * p
                if nv:
                    prow[cc] = nv
                    left.append(cc)
                else:
                    del prow[cc]
                    cols[cc].discard(r)
            if not left:
                break
            c = min(left, key=lambda x: (abs(prow[x]), x))
        p = rows.pop(r)[c]
        cols[c].discard(r)
        if p < 0:
            p = -p
            if self.transforms:
                self.u[r] = {k: -x for k, x in self.u[r].items()}
                self.ui[r] = {k: -x for k, x in self.ui[r].items()}
        self.pivots.append((r, c, p))

    def run(self) -> None:
        for units_only in (True, False):
            self.heap = [(len(row), r) for r, row in self.rows.items()]
            heapq.heapify(self.heap)
            while True:
                piv = self._pick(units_only)
                if piv is None:
                    break
                self._isolate(*piv)

    # -- divisibility chain ---------------------------------------------------
    def chain(self) -> None:
        """Make the pivot values a divisibility chain (gcd/lcm on pairs)."""
        piv = sorted(self.pivots, key=lambda t: (t[2], t[0]))
        vals = [t[2] for t in piv]
        first = next((i for i, d in enumerate(vals) if d != 1), len(vals))
        for i in range(first, len(vals)):
            for j in range(i + 1, len(vals)):
                a, b = vals[i], vals[j]
                if b % a == 0:
                    continue
                g, s, t = _xgcd(a, b)
                vals[i], vals[j] = g, a // g * b
                if self.transforms:
                    ri, rj = piv[i][0], piv[j][0]
                    ci, cj = piv[i][1], piv[j][1]
                    ui, uj = self.u[ri], self.u[rj]
                    new_i, new_j = {}, {}
                    _axpy(new_i, s, ui)
                    _axpy(new_i, t, uj)
                    _axpy(new_j, -(b // g), ui)
                    _axpy(new_j, a // g, uj)
                    self.u[ri], self.u[rj] = new_i, new_j
                    vi, vj = self.v[ci], self.v[cj]
                    nvi, nvj = dict(vi), {}
                    _axpy(nvi, 1, vj)
                    _axpy(nvj, -(t * b // g), vi)
                    _axpy(nvj, s * a // g, vj)
                    self.v[ci], self.v[cj] = nvi, nvj
                    self._mix(self.ui, ri, rj, a // g, -t, b // g, s)
                    self._mix(self.vi, ci, cj, s * a // g, -1, t * b // g, 1)
        self.pivots = [(r, c, d) for (r, c, _), d in zip(piv, vals)]


    @staticmethod
    def _mix(vecs: dict, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
        """(x_i, x_j) <- (a x_i + c x_j, b x_i + d x_j)."""
        xi, xj = vecs[i], vecs[j]
        ni, nj = {}, {}
        _axpy(ni, a, xi)
        _axpy(ni, c, xj)
        _axpy(nj, b, xi)
        _axpy(nj, d, xj)
        vecs[i], vecs[j] = ni, nj


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with g = gcd(a, b) = s*a + t*b, for positive a, b."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def smith_normal_form(a: SparseIntMatrix, transforms: bool = False) -> SNFResult:
    """Smith normal form ``D = U A V``; ``d_1 | d_2 | ...``, all positive."""
    nr, nc = a.shape
    elim = _Eliminator(a, transforms)
    elim.run()
    elim.chain()
    diagonal = [d for _, _, d in elim.pivots]
    diagonal += [0] * (min(nr, nc) - len(diagonal))
    res = SNFResult((nr, nc), diagonal)
    if transforms:
        prow = [r for r, _, _ in elim.pivots]
        pcol = [c for _, c, _ in elim.pivots]
        done_r, done_c = set(prow), set(pcol)
        order_r = prow + [r for r in range(nr) if r not in done_r]
        order_c = pcol + [c for c in range(nc) if c not in done_c]
        res.U = SparseIntMatrix(nr, nr, {i: dict(elim.u[r]) for i, r in enumerate(order_r)
                                         if elim.u[r]})
        vt = SparseIntMatrix(nc, nc, {j: dict(elim.v[c]) for j, c in enumerate(order_c)
                                      if elim.v[c]})
        res.V = vt.transpose()
        uit = SparseIntMatrix(nr, nr, {i: dict(elim.ui[r]) for i, r in enumerate(order_r)
                                       if elim.ui[r]})
        res.U_inv = uit.transpose()
        res.V_inv = SparseIntMatrix(nc, nc, {j: dict(elim.vi[c]) for j, c in enumerate(order_c)
                                             if elim.vi[c]})
    return res


def elementary_divisors(a: SparseIntMatrix) -> list[int]:
    """Nonzero Smith diagonal of ``a``."""
    return smith_normal_form(a).divisors


def determinant(m: list[list[int]]) -> int:
    """Exact determinant of a dense integer matrix (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k]), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def is_unimodular(t: SparseIntMatrix, inverse: SparseIntMatrix | None = None) -> bool:
    """|det t| == 1, decided exactly.

    With a claimed integer ``inverse`` this is the check ``t @ inverse == 1``
    (an integer matrix with an integer inverse is unimodular); otherwise the
    determinant is computed by Bareiss elimination.
    """
    if t.rows != t.cols:
        return False
    if inverse is not None:
        return (t @ inverse) == SparseIntMatrix.identity(t.rows)
    return abs(determinant(t.to_dense())) == 1


def certify(a: SparseIntMatrix, res: SNFResult) -> None:
    """Raise AssertionError unless ``U A V = D``, U and V are unimodular and
    the diagonal is a divisibility chain."""
    if res.U is None or res.V is None:
        raise ValueError("certification needs transforms")
    if not (res.U @ a @ res.V) == res.D():
        raise AssertionError("U A V != D")
    divs = res.divisors
    if any(d <= 0 for d in divs):
        raise AssertionError("non-positive divisor")
    if any(divs[i + 1] % divs[i] for i in range(len(divs) - 1)):
        raise AssertionError("divisibility chain broken")
    if divs != res.diagonal[:len(divs)]:
        raise AssertionError("zeros before nonzero divisors")
    for name, t, ti in (("U", res.U, res.U_inv), ("V", res.V, res.V_inv)):
        if not is_unimodular(t, ti):
            raise AssertionError(f"{name} is not unimodular")
