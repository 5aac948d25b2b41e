"""Maps induced on rational homology, and the long exact sequence of a cone.

For a chain map f: X -> Y the rank of f_* in degree h is

    rank f_* = rank Phi - rank d_X^h - rank d_Y^(h-1),
    Phi = [[f, d_Y], [d_X, 0]] : X^h + Y^(h-1) -> Y^h + X^(h+1),

which needs no explicit cycle bases.  All three complexes of a cone
decomposition share the grading of the whole diagram, so every map here
preserves the internal q-degree and ranks are taken per (h, q) block.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .homology import HomologyTable, homology
from .sparse import SparseIntMatrix, rank


def _qsplit(cx, h: int) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for i, g in enumerate(cx.gens.get(h, [])):
        out.setdefault(g.q, []).append(i)
    return out


def _block(m: SparseIntMatrix | None, rows: list[int], cols: list[int]) -> SparseIntMatrix:
    if m is None or not rows or not cols:
        return SparseIntMatrix(len(rows), len(cols))
    return m.select(rows, cols)


def _stack(blocks: list[list[SparseIntMatrix]]) -> SparseIntMatrix:
    """Assemble a block matrix (all blocks in a row share height, etc.)."""
    heights = [row[0].rows for row in blocks]
    widths = [b.cols for b in blocks[0]]
    out = SparseIntMatrix(sum(heights), sum(widths))
    r0 = 0
    for bi, row in enumerate(blocks):
        c0 = 0
        for bj, b in enumerate(row):
            for r, rr in b.data.items():
                dst = out.data.setdefault(r0 + r, {})
                for c, v in rr.items():
                    dst[c0 + c] = v
            c0 += widths[bj]
        r0 += heights[bi]
    return out


def induced_rank(f: dict[int, SparseIntMatrix], X, Y, h: int, q: int | None = None,
                 degree: int = 0) -> int:
    """Rank over Q of the map on homology induced by the chain map ``f``.

    ``f[h]`` maps X^h to Y^(h+degree) (rows index Y).  With ``q`` given, only
    the q-homogeneous part is used (complexes must be q-graded).
    """
    hy = h + degree

    def idx(cx, hh):
        if q is None:
            return list(range(len(cx.gens.get(hh, []))))
        return _qsplit(cx, hh).get(q, [])

    xh, xh1 = idx(X, h), idx(X, h + 1)
    yh, yh0 = idx(Y, hy), idx(Y, hy - 1)
    fm = _block(f.get(h), yh, xh)
    dx = _block(X.d.get(h), xh1, xh)
    dy = _block(Y.d.get(hy - 1), yh, yh0)
    phi = _stack([[fm, dy], [dx, SparseIntMatrix(len(xh1), len(yh0))]])
    return rank(phi) - rank(dx) - rank(dy)


def coordinate_map(X, Y, h: int, sign: int = 1) -> SparseIntMatrix:
    """Inclusion/projection X^h -> Y^h matching generators by (state, labels)."""
    src, tgt = X.gens.get(h, []), Y.index.get(h, {})
    m = SparseIntMatrix(len(Y.gens.get(h, [])), len(src))
    for c, g in enumerate(src):
        r = tgt.get((g.state, g.labels))
        if r is not None:
            m.add(r, c, sign)
    return m


@dataclass
class InducedMap:
    """Ranks of a map on rational homology, per (h, q)."""

    ranks: dict[tuple[int, int], int]  # keyed by the target's (h, q)
    source: dict[tuple[int, int], int]
    target: dict[tuple[int, int], int]
    degree: int = 0

    @property
    def surjective(self) -> bool:
        return all(self.ranks.get(k, 0) == n for k, n in self.target.items())

    @property
    def injective(self) -> bool:
        return all(self.ranks.get((h + self.degree, q), 0) == n
                   for (h, q), n in self.source.items())

    def surjective_at(self, h: int, q: int) -> bool:
        return self.ranks.get((h, q), 0) == self.target.get((h, q), 0)

    def injective_at(self, h: int, q: int | None = None) -> bool:
        return all(self.ranks.get((hh + self.degree, qq), 0) == n
                   for (hh, qq), n in self.source.items()
                   if hh == h and (q is None or qq == q))

    def failures(self, kind: str = "surjective") -> list[tuple[int, int]]:
        if kind == "surjective":
            return sorted(k for k, n in self.target.items() if self.ranks.get(k, 0) != n)
        return sorted((h, q) for (h, q), n in self.source.items()
                      if self.ranks.get((h + self.degree, q), 0) != n)


def _map_ranks(f, X, Y, src_tab: dict, tgt_tab: dict, degree: int = 0) -> InducedMap:
    ranks = {}
    keys = {(h, q) for (h, q) in src_tab} & {(h - degree, q) for (h, q) in tgt_tab}
    for h, q in sorted(keys):
        r = induced_rank(f, X, Y, h, q, degree)
        if r:
            ranks[(h + degree, q)] = r
    return InducedMap(ranks, dict(src_tab), dict(tgt_tab), degree)


@dataclass
class LESReport:
    """Homology of sub/whole/quotient of a cone and the ranks of the three
    maps of its long exact sequence, all in the whole diagram's grading."""

    crossing: int
    sub: HomologyTable
    whole: HomologyTable
    quotient: HomologyTable
    inclusion: InducedMap  # H(sub) -> H(whole)
    projection: InducedMap  # H(whole) -> H(quotient)
    connecting: InducedMap  # H^h(quotient) -> H^(h+1)(sub), keyed by (h+1, q)
    violations: list = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return not self.violations


def les_ranks(cone) -> LESReport:
    """Check rank-nullity exactness of the LES of a ``ConeDecomposition``."""
    S, C, Q = cone.sub, cone.whole, cone.quotient
    hs, hc, hq = (homology(x, integral=False) for x in (S, C, Q))
    rs, rc, rq = hs.rational(), hc.rational(), hq.rational()
    inc = {h: coordinate_map(S, C, h) for h in S.gens}
    proj = {h: coordinate_map(C, Q, h) for h in C.gens}
    i_map = _map_ranks(inc, S, C, rs, rc)
    p_map = _map_ranks(proj, C, Q, rc, rq)
    d_map = _map_ranks(cone.connecting, Q, S, rq, rs, degree=1)
    ri, rp, rd = i_map.ranks, p_map.ranks, d_map.ranks
    bad = []
    keys = set(rs) | set(rc) | set(rq)
    for h, q in sorted(keys):
        k = (h, q)
        if rc.get(k, 0) - rp.get(k, 0) != ri.get(k, 0):
            bad.append(("whole", h, q))
        if rq.get(k, 0) - rd.get((h + 1, q), 0) != rp.get(k, 0):
            bad.append(("quotient", h, q))
        if rs.get(k, 0) - ri.get(k, 0) != rd.get(k, 0):
            bad.append(("sub", h, q))
    return LESReport(cone.crossing, hs, hc, hq, i_map, p_map, d_map, bad)


def projection_map(cone) -> InducedMap:
    """The map H(whole) -> H(quotient) induced by the saddle (0-resolution)."""
    C, Q = cone.whole, cone.quotient
    rc = homology(C, integral=False).rational()
    rq = homology(Q, integral=False).rational()
    proj = {h: coordinate_map(C, Q, h) for h in C.gens}
    return _map_ranks(proj, C, Q, rc, rq)


def inclusion_map(cone) -> InducedMap:
    """The map H(sub) -> H(whole) from the 1-resolution face."""
    S, C = cone.sub, cone.whole
    rs = homology(S, integral=False).rational()
    rc = homology(C, integral=False).rational()
    inc = {h: coordinate_map(S, C, h) for h in S.gens}
    return _map_ranks(inc, S, C, rs, rc)
