"""Homology of graded complexes, and filtered homology of Lee complexes.

Khovanov and deformed complexes are q-graded, so their homology is computed
one (h, q) block at a time from the Smith forms of the two adjacent blocks.
The Lee complex is only q-filtered (its differential never lowers q); its
homology is described by the quantum levels at which classes first appear.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

from .snf import smith_normal_form
from .sparse import SparseIntMatrix, echelon_rows, rank, reduce_by_echelon

Cell = tuple[int, tuple[int, ...]]


def prime_power_parts(n: int) -> list[int]:
    """Split ``n > 1`` into its prime-power factors: 12 -> [3, 4]."""
    parts = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            pk = 1
            while n % p == 0:
                n //= p
                pk *= p
            parts.append(pk)
        p += 1
    if n > 1:
        parts.append(n)
    return sorted(parts)


@dataclass
class HomologyTable:
    """Per-(h, q) free rank and torsion (a sorted tuple of prime powers).

    Only nonzero cells are stored.  ``link`` records where the table came
    from: ``family``, ``params``, ``hash`` (and ``ambient``).
    """

    flavor: str
    cells: dict[tuple[int, int], Cell] = field(default_factory=dict)
    link: dict = field(default_factory=lambda: {"family": None, "params": None, "hash": None})

    def __post_init__(self):
        self.cells = {k: (int(f), tuple(sorted(t))) for k, (f, t) in self.cells.items()
                      if f or t}

    # -- queries ------------------------------------------------------------
    def free(self, h: int, q: int) -> int:
        return self.cells.get((h, q), (0, ()))[0]

    def torsion(self, h: int, q: int) -> tuple[int, ...]:
        return self.cells.get((h, q), (0, ()))[1]

    def group(self, h: int, q: int) -> str:
        """Human-readable group at (h, q), e.g. ``Z^2+Z/2``."""
        f, t = self.cells.get((h, q), (0, ()))
        parts = []
        if f:
            parts.append("Z" if f == 1 else f"Z^{f}")
        parts += [f"Z/{d}" for d in t]
        return "+".join(parts) or "0"

    def degrees(self) -> list[int]:
        return sorted({h for h, _ in self.cells})

    def rank(self, h: int | None = None) -> int:
        """Rational rank, in degree ``h`` or in total."""
        return sum(f for (hh, _), (f, _) in self.cells.items() if h is None or hh == h)

    def min_q(self, h: int, free_only: bool = True) -> int | None:
        qs = [q for (hh, q), (f, t) in self.cells.items()
              if hh == h and (f or (t and not free_only))]
        return min(qs) if qs else None

    def is_zero_at(self, h: int, q: int) -> bool:
        return (h, q) not in self.cells

    def rational(self) -> dict[tuple[int, int], int]:
        return {k: f for k, (f, _) in self.cells.items() if f}

    def euler(self) -> dict[int, int]:
        """Graded Euler characteristic {q: sum_h (-1)^h free rank}."""
        chi: dict[int, int] = {}
        for (h, q), (f, _) in self.cells.items():
            chi[q] = chi.get(q, 0) + (-f if h % 2 else f)
        return {q: v for q, v in chi.items() if v}

    # -- transformations ----------------------------------------------------
    def shifted(self, dh: int, dq: int) -> "HomologyTable":
        """The table of M[dh]{dq}, i.e. new cell (h+dh, q+dq) = old (h, q)."""
        return HomologyTable(self.flavor, {(h + dh, q + dq): c for (h, q), c in self.cells.items()},
                             dict(self.link))

    def direct_sum(self, other: "HomologyTable") -> "HomologyTable":
        cells = dict(self.cells)
        for k, (f, t) in other.cells.items():
            f0, t0 = cells.get(k, (0, ()))
            cells[k] = (f0 + f, tuple(sorted(t0 + t)))
        return HomologyTable(self.flavor, cells, dict(self.link))

    def same_groups(self, other: "HomologyTable") -> bool:
        return self.cells == other.cells

    def difference(self, other: "HomologyTable") -> dict:
        keys = sorted(set(self.cells) | set(other.cells))
        return {k: (self.group(*k), other.group(*k)) for k in keys
                if self.cells.get(k) != other.cells.get(k)}

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "link": dict(self.link),
            "flavor": self.flavor,
            "cells": [[h, q, f, list(t)] for (h, q), (f, t) in sorted(self.cells.items())],
        }

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), sort_keys=True, **kw)

    @classmethod
    def from_json(cls, obj: dict) -> "HomologyTable":
        cells = {(h, q): (f, tuple(t)) for h, q, f, t in obj["cells"]}
        return cls(obj["flavor"], cells, dict(obj.get("link") or {}))

    def pretty(self) -> str:
        """A text grid: rows are q (descending), columns are h."""
        if not self.cells:
            return "(zero)"
        hs = range(min(h for h, _ in self.cells), max(h for h, _ in self.cells) + 1)
        qs = sorted({q for _, q in self.cells}, reverse=True)
        cols = [["q\\h"] + [str(h) for h in hs]]
        for q in qs:
            cols.append([str(q)] + [self.group(h, q) if (h, q) in self.cells else "."
                                    for h in hs])
        width = max(len(x) for row in cols for x in row)
        return "\n".join(" ".join(x.rjust(width) for x in row) for row in cols)


def q_blocks(cx, h: int) -> dict[int, tuple[SparseIntMatrix, int, int]]:
    """Split ``d[h]`` of a q-graded complex into its q-homogeneous blocks.

    Returns ``{q: (block, rows, cols)}`` using indices local to each q-group.
    """
    src, tgt = cx.gens.get(h, []), cx.gens.get(h + 1, [])
    loc_s, cnt_s = _local_index(src)
    loc_t, cnt_t = _local_index(tgt)
    blocks: dict[int, SparseIntMatrix] = {}
    dmat = cx.d.get(h)
    if dmat is not None:
        for r, row in dmat.data.items():
            qr = tgt[r].q
            lr = loc_t[r]
            for c, v in row.items():
                if src[c].q != qr:
                    raise ValueError(f"differential at h={h} is not q-homogeneous")
                m = blocks.get(qr)
                if m is None:
                    m = blocks[qr] = SparseIntMatrix(cnt_t.get(qr, 0), cnt_s.get(qr, 0))
                m.data.setdefault(lr, {})[loc_s[c]] = v
    return {q: (m, m.rows, m.cols) for q, m in blocks.items()}


def _local_index(gens) -> tuple[list[int], dict[int, int]]:
    cnt: dict[int, int] = {}
    loc = []
    for g in gens:
        loc.append(cnt.get(g.q, 0))
        cnt[g.q] = loc[-1] + 1
    return loc, cnt


def homology(cx, integral: bool = True, link: dict | None = None) -> HomologyTable:
    """Homology of a Khovanov or deformed complex, block by block.

    With ``integral=False`` only rational ranks are computed (no torsion).
    Degrees outside the complex's window are not reported.
    """
    if cx.flavor.value == "lee":
        raise ValueError("the Lee complex is only filtered; use filtered_homology")
    degrees = cx.reported_degrees()
    need = set(degrees) | {h - 1 for h in degrees}
    out_rank: dict[tuple[int, int], int] = {}
    in_tors: dict[tuple[int, int], list[int]] = {}
    for h in sorted(need):
        if h not in cx.d:
            continue
        for q, (m, _, _) in q_blocks(cx, h).items():
            if integral:
                snf = smith_normal_form(m)
                out_rank[(h, q)] = snf.rank
                tors = [p for d in snf.torsion for p in prime_power_parts(d)]
                if tors:
                    in_tors[(h + 1, q)] = tors
            else:
                out_rank[(h, q)] = rank(m)
    cells = {}
    for h in degrees:
        dims: dict[int, int] = {}
        for g in cx.gens.get(h, []):
            dims[g.q] = dims.get(g.q, 0) + 1
        for q, n in dims.items():
            free = n - out_rank.get((h, q), 0) - out_rank.get((h - 1, q), 0)
            tors = tuple(sorted(in_tors.get((h, q), ())))
            if free or tors:
                cells[(h, q)] = (free, tors)
    info = {"family": None, "params": None, "hash": cx.diagram_hash}
    if link:
        info.update(link)
    return HomologyTable(cx.flavor.value, cells, info)


# -- filtered (Lee) homology --------------------------------------------------

class MinLeadEchelon:
    """Echelon basis over Q whose vectors have distinct leading coordinates.

    The leading coordinate of a sparse vector is its smallest index.  Vectors
    are kept integral and primitive (fraction-free updates).
    """

    def __init__(self):
        self.basis: dict[int, dict[int, int]] = {}

    def __len__(self):
        return len(self.basis)

    def reduce(self, v: dict[int, int]) -> dict[int, int]:
        v = {k: x for k, x in v.items() if x}
        while v:
            lead = min(v)
            b = self.basis.get(lead)
            if b is None:
                return v
            a, f = b[lead], v[lead]
            g = gcd(a, f)
            a, f = a // g, f // g
            if a != 1:
                v = {k: a * x for k, x in v.items()}
            for k, x in b.items():
                nx = v.get(k, 0) - f * x
                if nx:
                    v[k] = nx
                else:
                    v.pop(k, None)
            if v:
                g = 0
                for x in v.values():
                    g = gcd(g, x)
                    if g == 1:
                        break
                if g > 1:
                    v = {k: x // g for k, x in v.items()}
        return v

    def add(self, v: dict[int, int]) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        self.basis[min(r)] = r
        return True


@dataclass
class FilteredLeeHomology:
    """Per degree h: dimension over Q and the filtration levels of a basis
    adapted to the q-filtration (ascending, with multiplicity)."""

    diagram_hash: str
    dims: dict[int, int] = field(default_factory=dict)
    jumps: dict[int, list[int]] = field(default_factory=dict)

    def total_dimension(self) -> int:
        return sum(self.dims.values())

    def min_level(self, h: int) -> int | None:
        lv = self.jumps.get(h)
        return min(lv) if lv else None

    def to_json(self) -> dict:
        return {"hash": self.diagram_hash,
                "degrees": [[h, self.dims[h], self.jumps.get(h, [])] for h in sorted(self.dims)]}


class _LeeDegree:
    """Filtration data of one homological degree of a Lee complex."""

    def __init__(self, cx, h: int):
        self.h = h
        gens = cx.gens.get(h, [])
        # coordinates ordered by increasing q: a vector's leading coordinate is
        # then one of lowest q, which is its filtration level
        order = sorted(range(len(gens)), key=lambda i: (gens[i].q, i))
        self.pos = {i: p for p, i in enumerate(order)}
        self.q_at = [gens[i].q for i in order]
        self.boundaries = MinLeadEchelon()
        prev = cx.d.get(h - 1)
        if prev is not None:
            for _, col in sorted(prev.transpose().data.items()):
                self.boundaries.add({self.pos[r]: v for r, v in col.items()})

    def level(self, cycle: dict[int, int]) -> int | None:
        """Filtration level of the class of ``cycle`` (generator index ->
        coefficient), or None if it is a boundary."""
        r = self.boundaries.reduce({self.pos[i]: v for i, v in cycle.items()})
        return self.q_at[min(r)] if r else None


def filtered_homology(cx, degrees: Iterable[int] | None = None) -> FilteredLeeHomology:
    """Dimensions and filtration jump levels of Lee homology.

    F_p is spanned by generators with q >= p.  For each p,
    dim F_p H = dim(Z cap F_p) - dim(B cap F_p); the first term comes from
    ranks of d restricted to F_p (columns added in decreasing q), the second
    from an echelon basis of the boundaries with lowest-q leading terms.
    """
    if cx.flavor.value != "lee":
        raise ValueError("filtered_homology needs a Lee complex")
    out = FilteredLeeHomology(cx.diagram_hash)
    degrees = cx.reported_degrees() if degrees is None else list(degrees)
    for h in degrees:
        gens = cx.gens.get(h, [])
        if not gens:
            continue
        deg = _LeeDegree(cx, h)
        qs = sorted({g.q for g in gens}, reverse=True)
        # boundaries in F_p: leading q >= p
        b_lead = sorted((deg.q_at[k] for k in deg.boundaries.basis), reverse=True)
        # rank of d_h on columns with q >= p
        dmat = cx.d.get(h)
        cols = dmat.transpose().data if dmat is not None else {}
        by_q: dict[int, list[int]] = {}
        for i, g in enumerate(gens):
            by_q.setdefault(g.q, []).append(i)
        ech = MinLeadEchelon()
        n_ge = 0
        dimF = {}
        bi = 0
        for p in qs:
            for i in by_q[p]:
                n_ge += 1
                col = cols.get(i)
                if col:
                    ech.add(dict(col))
            while bi < len(b_lead) and b_lead[bi] >= p:
                bi += 1
            dimF[p] = (n_ge - len(ech)) - bi
        levels = []
        prev = 0
        for p in qs:
            levels += [p] * (dimF[p] - prev)
            prev = dimF[p]
        if prev:
            out.dims[h] = prev
            out.jumps[h] = sorted(levels)
    return out


def block_rank(m: SparseIntMatrix) -> int:
    """Rank over Q as the sum over connected blocks (rows and columns linked
    by nonzero entries); cheap when the matrix is block diagonal up to
    permutation, and never worse than one big elimination."""
    parent: dict = {}

    def find(a):
        root = a
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    for r, row in m.data.items():
        rr = find(("r", r))
        for c in row:
            rc = find(("c", c))
            if rc != rr:
                parent[rc] = rr
    blocks: dict = {}
    for r, row in m.data.items():
        blocks.setdefault(find(("r", r)), {})[r] = row
    return sum(rank(SparseIntMatrix(m.rows, m.cols, rows)) for rows in blocks.values())


def lee_dimensions(cx) -> dict[int, int]:
    """Unfiltered Lee homology dimension per reported degree (rank counts)."""
    if cx.flavor.value != "lee":
        raise ValueError("lee_dimensions needs a Lee complex")
    rk = {h: block_rank(m) for h, m in cx.d.items()}
    dims = {}
    for h in cx.reported_degrees():
        n = len(cx.gens.get(h, [])) - rk.get(h, 0) - rk.get(h - 1, 0)
        if n:
            dims[h] = n
    return dims


def class_level(cx, h: int, cycle: dict[int, int]) -> int | None:
    """Filtration level of a Lee cycle's class (None if it is a boundary).

    Raises ValueError if ``cycle`` is not a cycle.
    """
    dmat = cx.d.get(h)
    if dmat is not None:
        for row in dmat.data.values():
            if sum(v * cycle.get(c, 0) for c, v in row.items()):
                raise ValueError("vector is not a cycle")
    return _LeeDegree(cx, h).level(cycle)


def spectral_collapse_check(deformed: HomologyTable, lee, h: int) -> bool:
    """True iff rank of the deformed homology at ``h`` equals the Lee
    dimension there, so no higher differential touches degree ``h``.

    ``lee`` is a FilteredLeeHomology or a plain ``{h: dim}`` mapping.
    """
    dims = lee.dims if isinstance(lee, FilteredLeeHomology) else lee
    if isinstance(lee, FilteredLeeHomology):
        if deformed.link.get("hash") not in (None, lee.diagram_hash):
            raise ValueError("tables come from different diagrams")
    return deformed.rank(h) == dims.get(h, 0)


def class_levels(cx, h: int, cycles: list[dict[int, int]]) -> list[int | None]:
    """``class_level`` for several cycles of one degree, sharing the
    boundary echelon."""
    dmat = cx.d.get(h)
    for cycle in cycles:
        if dmat is not None:
            for row in dmat.data.values():
                if sum(v * cycle.get(c, 0) for c, v in row.items()):
                    raise ValueError("vector is not a cycle")
    return _levels_by_span(cx, h, cycles)


def _levels_by_span(cx, h: int, cycles: list[dict[int, int]]) -> list[int | None]:
    """Filtration levels of ``[cycle]`` without a q-ordered echelon.

    A cycle lies in B + F_p iff its coordinates of q < p lie in the span of
    the boundaries restricted to those coordinates.  That condition is
    monotone in p, so each level is found by bisection over the q-values;
    the echelon for each p (free pivot order, little fill-in) is shared by
    all cycles.
    """
    gens = cx.gens.get(h, [])
    prev = cx.d.get(h - 1)
    bcols = prev.transpose().data if prev is not None else {}
    echelons: dict = {}

    def in_span(cycle, p) -> bool:
        if p not in echelons:
            keep = {r for r, g in enumerate(gens) if p is None or g.q < p}
            rows = {j: {r: v for r, v in col.items() if r in keep} for j, col in bcols.items()}
            echelons[p] = echelon_rows(rows)
        v = {r: x for r, x in cycle.items() if p is None or gens[r].q < p}
        return not reduce_by_echelon(echelons[p], v)

    qs = sorted({g.q for g in gens})
    out = []
    for cycle in cycles:
        if in_span(cycle, None):
            out.append(None)
            continue
        lo, hi = 0, len(qs) - 1  # in_span(qs[0]) holds trivially
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if in_span(cycle, qs[mid]):
                lo = mid
            else:
                hi = mid - 1
        out.append(qs[lo])
    return out
