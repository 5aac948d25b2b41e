"""Khovanov, deformed and Lee complexes of a diagram.

Every circle carries the rank-2 module spanned by ``1`` (label 0, q = +1)
and ``x`` (label 1, q = -1).  Saddles act by the Frobenius algebra
``Z[x]/(x^2 - t)`` written in the orientation of the saddle cobordism; a
circle whose reference orientation disagrees with the one the saddle induces
is first passed through the involution ``x -> -x``.  A saddle taking one
circle to one circle (a band through the cross-cap) acts by zero.  With
these rules each square of the cube commutes up to sign, and the edge signs
are solved for so that every square anticommutes.

Essential-circle labels also carry a k-degree (``1`` -> +1, ``x`` -> -1).
Map components sort by (q-shift, k-shift):

    (0, 0)  Khovanov part          (0, -2) extra deformed part
    (4, 0)  Lee part on trivial    (4, +2) Lee part on essential

``t = 0`` keeps the first two; the Khovanov flavor keeps only ``(0, 0)``.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from functools import lru_cache

from .exactalg.sparse import SparseIntMatrix
from .projdiag import LinkDiagram
from .rescube import (DEFAULT_CROSSING_CAP, Resolver, ResolutionState, SaddleEvent,
                      SaddleKind)

log = logging.getLogger(__name__)


class Flavor(str, enum.Enum):
    KHOVANOV = "khovanov"
    DEFORMED = "deformed"
    LEE = "lee"

    @classmethod
    def parse(cls, name: str) -> "Flavor":
        aliases = {"kh": cls.KHOVANOV, "deformed": cls.DEFORMED, "kh'": cls.DEFORMED,
                   "lee": cls.LEE}
        try:
            return aliases.get(name) or cls(name)
        except ValueError:
            raise ValueError(f"unknown flavor {name!r}") from None


class ConstructionError(RuntimeError):
    """The assembled differential does not square to zero."""


@dataclass(frozen=True)
class Generator:
    state: int  # bitmask of the resolution
    labels: int  # bit i set means circle i carries x
    h: int
    q: int
    k: int


def local_module(state: ResolutionState) -> list[tuple[int, int, int]]:
    """(labels, intrinsic q, k) for each basis element of the state's module."""
    out = []
    nc = len(state.circles)
    for mask in range(1 << nc):
        q = k = 0
        for i, c in enumerate(state.circles):
            x = (mask >> i) & 1
            q += -1 if x else 1
            if c.essential:
                k += -1 if x else 1
        out.append((mask, q, k))
    return out


# local rules: input labels -> [(output labels, coefficient, power of t)]
_MERGE = {(0, 0): [(0, 1, 0)], (0, 1): [(1, 1, 0)], (1, 0): [(1, 1, 0)], (1, 1): [(0, 1, 1)]}
_SPLIT = {0: [((0, 1), 1, 0), ((1, 0), 1, 0)], 1: [((1, 1), 1, 0), ((0, 0), 1, 1)]}


class EdgeMaps:
    """Per-edge maps of one diagram's cube, before edge signs."""

    def __init__(self, resolver: Resolver):
        self.res = resolver
        self._events: dict[tuple[int, int], tuple] = {}

    def event(self, bits: int, k: int):
        key = (bits, k)
        ev = self._events.get(key)
        if ev is None:
            src = self.res.resolve(bits)
            sad = self.res.saddle(src, k)
            tgt = sad.target
            involved = set(sad.before)
            tkeys = {c.key: i for i, c in enumerate(tgt.circles)}
            carry = [(i, tkeys[c.key]) for i, c in enumerate(src.circles) if i not in involved]
            ev = (sad, carry)
            if len(self._events) < 1 << 17:
                self._events[key] = ev
        return ev

    def apply(self, bits: int, k: int, mask: int) -> list[tuple[int, int, int]]:
        """Image of generator ``mask`` of state ``bits`` along the k-edge.

        Returns ``(target mask, coefficient, t-power)`` triples.
        """
        sad, carry = self.event(bits, k)
        if sad.kind is SaddleKind.ESSENTIAL_SELF:
            return []
        rest = 0
        for i, j in carry:
            if (mask >> i) & 1:
                rest |= 1 << j
        return [(rest | m, s, tp) for m, s, tp in self._local(sad)[self._involved(sad, mask)]]

    def apply_all(self, bits: int, k: int) -> list[list[tuple[int, int, int]]]:
        """``apply`` for every generator of the state at once, indexed by mask."""
        sad, carry = self.event(bits, k)
        nmask = 1 << len(sad.source.circles)
        if sad.kind is SaddleKind.ESSENTIAL_SELF:
            return [[] for _ in range(nmask)]
        bitmap = [0] * len(sad.source.circles)
        for i, j in carry:
            bitmap[i] = 1 << j
        local = self._local(sad)
        rest = [0] * nmask
        out = []
        for mask in range(nmask):
            if mask:
                low = mask & -mask
                rest[mask] = rest[mask ^ low] | bitmap[low.bit_length() - 1]
            r = rest[mask]
            out.append([(r | m, s, tp) for m, s, tp in local[self._involved(sad, mask)]])
        return out

    @staticmethod
    def _involved(sad: SaddleEvent, mask: int) -> int:
        key = 0
        for t, c in enumerate(sad.before):
            key |= ((mask >> c) & 1) << t
        return key

    @staticmethod
    def _local(sad: SaddleEvent) -> list[list[tuple[int, int, int]]]:
        """Outputs (involved target bits, coefficient, t-power) per involved input."""
        table = []
        if len(sad.before) == 2:
            (c,) = sad.after
            for key in range(4):
                la, lb = key & 1, key >> 1
                sign = -1 if (sad.twist_in[1] and lb) else 1
                outs = []
                for lc, coef, tp in _MERGE[(la, lb)]:
                    s = sign * coef
                    if sad.twist_out[0] and lc:
                        s = -s
                    outs.append((lc << c, s, tp))
                table.append(outs)
        else:
            a, b = sad.after
            for lc in range(2):
                outs = []
                for (la, lb), coef, tp in _SPLIT[lc]:
                    s = coef
                    if sad.twist_out[0] and la:
                        s = -s
                    if sad.twist_out[1] and lb:
                        s = -s
                    outs.append(((la << a) | (lb << b), s, tp))
                table.append(outs)
        return table


@lru_cache(maxsize=4)
def _edge_maps(diagram: LinkDiagram, cap: int) -> EdgeMaps:
    return EdgeMaps(Resolver(diagram, cap))


def _standard_sign(bits: int, k: int) -> int:
    return -1 if bin(bits & ((1 << k) - 1)).count("1") % 2 else 1


class SignAssignmentError(ConstructionError):
    pass


def solve_edge_signs(maps: EdgeMaps) -> list[int]:
    """Corrections to the standard edge signs making every square anticommute.

    Returns, per vertex ``w``, a bitmask whose bit ``i`` flips the sign of
    the edge ``w - e_i -> w``.  Vertices are visited in increasing order and
    the squares with top vertex ``w`` tie its incoming edges together.  Each
    vertex fixes one incoming edge (vertex gauge); other free choices, left
    open by squares whose two composites both vanish, become GF(2) variables
    that later squares constrain.  Values are affine forms ``(const, mask)``.
    """
    res = maps.res
    n = res.n
    forms: list[dict[int, tuple[int, int]]] = [dict() for _ in range(1 << n)]
    system = _GF2System()
    nfree = 0
    for w in range(1 << n):
        setbits = [i for i in range(n) if (w >> i) & 1]
        if not setbits:
            continue
        adj: dict[int, list] = {i: [] for i in setbits}
        for x in range(len(setbits)):
            i = setbits[x]
            for y in range(x + 1, len(setbits)):
                j = setbits[y]
                u = w & ~(1 << i) & ~(1 << j)
                rel = _square_relation(maps, u, i, j)
                if rel is None:
                    continue
                c0, m0 = forms[w & ~(1 << j)][i]
                c1, m1 = forms[w & ~(1 << i)][j]
                par = ((0 if rel == 1 else 1) ^ c0 ^ c1, m0 ^ m1)
                adj[i].append((j, par))
                adj[j].append((i, par))
        value: dict[int, tuple[int, int]] = {}
        for root in setbits:
            if root in value:
                continue
            if not value:
                value[root] = (0, 0)
            else:
                value[root] = (0, 1 << nfree)
                nfree += 1
            stack = [root]
            while stack:
                a = stack.pop()
                ca, ma = value[a]
                for b, (cp, mp) in adj[a]:
                    want = (ca ^ cp, ma ^ mp)
                    if b not in value:
                        value[b] = want
                        stack.append(b)
                    else:
                        cb, mb = value[b]
                        if not system.add(mb ^ want[1], cb ^ want[0]):
                            raise SignAssignmentError(
                                f"no consistent edge signs at vertex {w}")
        forms[w] = value
    sol = system.solve()
    gam = [0] * (1 << n)
    for w in range(1 << n):
        g = 0
        for i, (c, m) in forms[w].items():
            if c ^ (bin(m & sol).count("1") & 1):
                g |= 1 << i
        gam[w] = g
    return gam


class _GF2System:
    """Incrementally reduced linear system over GF(2); rows are int bitmasks."""

    def __init__(self):
        self.rows: dict[int, tuple[int, int]] = {}  # pivot bit -> (mask, const)

    def add(self, mask: int, const: int) -> bool:
        while mask:
            p = mask.bit_length() - 1
            row = self.rows.get(p)
            if row is None:
                self.rows[p] = (mask, const)
                return True
            mask ^= row[0]
            const ^= row[1]
        return const == 0

    def solve(self) -> int:
        sol = 0
        for p in sorted(self.rows):
            mask, const = self.rows[p]
            rest = mask & ~(1 << p)
            if const ^ (bin(rest & sol).count("1") & 1):
                sol |= 1 << p
        return sol


def _square_relation(maps: EdgeMaps, u: int, i: int, j: int):
    """+1 if the square at ``u`` in directions i, j commutes, -1 if it
    anticommutes, ``None`` if both composites vanish.

    The sign is read off the first basis element with a nonzero composite;
    the full differential is checked for d^2 = 0 after assembly anyway.
    """
    ui, uj = u | (1 << i), u | (1 << j)
    zero = SaddleKind.ESSENTIAL_SELF
    for bits, k in ((u, i), (u, j), (ui, j), (uj, i)):
        if maps.event(bits, k)[0].kind is zero:
            return None
    st = maps.res.resolve(u)
    ci = {st.port_circle[p] for p in range(4 * i, 4 * i + 4)}
    cj = {st.port_circle[p] for p in range(4 * j, 4 * j + 4)}
    if not ci & cj:
        return 1
    involved = sorted(ci | cj)
    for sub in range(1 << len(involved)):
        mask = 0
        for t, c in enumerate(involved):
            if (sub >> t) & 1:
                mask |= 1 << c
        p1 = _compose(maps, u, i, ui, j, mask)
        p2 = _compose(maps, u, j, uj, i, mask)
        if not p1 and not p2:
            continue
        if p1 == p2:
            return 1
        if p1 == {key: -v for key, v in p2.items()}:
            return -1
        raise SignAssignmentError(
            f"square at {u} ({i},{j}) neither commutes nor anticommutes")
    return None


def _compose(maps: EdgeMaps, u, a, mid, b, mask) -> dict:
    acc: dict[tuple[int, int], int] = {}
    for m1, c1, t1 in maps.apply(u, a, mask):
        for m2, c2, t2 in maps.apply(mid, b, m1):
            key = (m2, t1 + t2)
            acc[key] = acc.get(key, 0) + c1 * c2
    return {kk: v for kk, v in acc.items() if v}


@lru_cache(maxsize=64)
def _sign_table(diagram: LinkDiagram, cap: int) -> tuple[int, ...]:
    return tuple(solve_edge_signs(_edge_maps(diagram, cap)))


def edge_sign(diagram: LinkDiagram, bits: int, k: int, cap: int = DEFAULT_CROSSING_CAP) -> int:
    gam = _sign_table(diagram, max(cap, diagram.crossing_count))
    s = _standard_sign(bits, k)
    return -s if (gam[bits | (1 << k)] >> k) & 1 else s


@dataclass
class ChainComplex:
    """Free modules per homological degree with sparse integer differentials.

    ``d[h]`` maps degree ``h`` to ``h + 1`` (rows index degree ``h + 1``).
    Degrees outside ``window`` are present only to make the window exact.
    """

    flavor: Flavor
    diagram_hash: str
    gens: dict[int, list[Generator]]
    d: dict[int, SparseIntMatrix]
    window: tuple[int, int] | None = None
    shift: tuple[int, int] = (0, 0)
    index: dict[int, dict[tuple[int, int], int]] = field(default_factory=dict, repr=False)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.gens)

    def reported_degrees(self) -> list[int]:
        if self.window is None:
            return self.degrees
        a, b = self.window
        return [h for h in self.degrees if a <= h <= b]

    def rank_table(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for h, gs in self.gens.items():
            for g in gs:
                out[(h, g.q)] = out.get((h, g.q), 0) + 1
        return out

    def euler_characteristic(self) -> dict[int, int]:
        """Graded Euler characteristic as {q: coefficient} over all degrees."""
        chi: dict[int, int] = {}
        for h, gs in self.gens.items():
            s = -1 if h % 2 else 1
            for g in gs:
                chi[g.q] = chi.get(g.q, 0) + s
        return {q: v for q, v in chi.items() if v}

    def differential(self, h: int) -> SparseIntMatrix:
        rows = len(self.gens.get(h + 1, ()))
        cols = len(self.gens.get(h, ()))
        return self.d.get(h, SparseIntMatrix(rows, cols))

    def check_d_squared(self) -> None:
        for h in self.degrees:
            if h + 1 in self.d and h in self.d:
                if not (self.d[h + 1] @ self.d[h]).is_zero():
                    raise ConstructionError(f"d^2 != 0 at degree {h} ({self.flavor.value})")


def assemble(diagram: LinkDiagram, flavor: Flavor | str = Flavor.DEFORMED,
             window: tuple[int, int] | None = None, fixed: dict[int, int] | None = None,
             cap: int = DEFAULT_CROSSING_CAP, sign_mode: str = "solved",
             check: bool = True) -> ChainComplex:
    """Build the complex of ``diagram``.

    ``fixed`` pins some crossings to a smoothing, giving the subquotient
    complex on that face of the cube (graded as inside the full complex).
    ``sign_mode`` is ``"solved"``, ``"standard"`` (no corrections) or
    ``"corrupt"`` (one edge sign deliberately flipped; negative control).
    """
    flavor = Flavor.parse(flavor) if isinstance(flavor, str) else flavor
    maps = _edge_maps(diagram, max(cap, diagram.crossing_count))
    res = maps.res
    n = res.n
    if diagram.crossing_count > cap:
        Resolver(diagram, cap)  # raises ResourceError
    if sign_mode == "solved":
        gam = _sign_table(diagram, max(cap, n))
    elif sign_mode in ("standard", "corrupt"):
        gam = (0,) * (1 << n)
    else:
        raise ValueError(f"unknown sign_mode {sign_mode!r}")
    fixed = dict(fixed or {})
    fmask = sum(1 << k for k in fixed)
    fval = sum(b << k for k, b in fixed.items())
    free = [k for k in range(n) if k not in fixed]
    lo = hi = None
    if window is not None:
        lo, hi = window[0] - 1, window[1] + 1
    qshift = diagram.n_plus - 2 * diagram.n_minus

    gens: dict[int, list[Generator]] = {}
    index: dict[int, dict[tuple[int, int], int]] = {}
    states = []
    for sub in range(1 << len(free)):
        bits = fval
        for t, k in enumerate(free):
            if (sub >> t) & 1:
                bits |= 1 << k
        wt = bin(bits).count("1")
        h = wt - diagram.n_minus
        if lo is not None and not lo <= h <= hi:
            continue
        st = res.resolve(bits)
        states.append(bits)
        glist = gens.setdefault(h, [])
        idx = index.setdefault(h, {})
        for mask, q, kk in local_module(st):
            idx[(bits, mask)] = len(glist)
            glist.append(Generator(bits, mask, h, q + wt + qshift, kk))

    corrupt_done = sign_mode != "corrupt"
    d: dict[int, SparseIntMatrix] = {}
    for h in gens:
        if h + 1 in gens:
            d[h] = SparseIntMatrix(len(gens[h + 1]), len(gens[h]))
    for bits in states:
        h = bin(bits).count("1") - diagram.n_minus
        if h + 1 not in gens:
            continue
        src_idx = index[h]
        tgt_idx = index[h + 1]
        mat = d[h]
        src_gens = gens[h]
        tgt_gens = gens[h + 1]
        nmask = 1 << len(res.resolve(bits).circles)
        for k in free:
            if (bits >> k) & 1:
                continue
            tbits = bits | (1 << k)
            s = _standard_sign(bits, k)
            if (gam[tbits] >> k) & 1:
                s = -s
            if not corrupt_done:
                s, corrupt_done = -s, True
            images = maps.apply_all(bits, k)
            for mask in range(nmask):
                col = src_idx[(bits, mask)]
                g = src_gens[col]
                for tmask, coef, tp in images[mask]:
                    row = tgt_idx[(tbits, tmask)]
                    tg = tgt_gens[row]
                    if flavor is not Flavor.LEE:
                        if tp:
                            continue
                        if flavor is Flavor.KHOVANOV and tg.k != g.k:
                            continue
                    mat.add(row, col, s * coef)
    cx = ChainComplex(flavor, diagram.hash, gens, d, window, (0, 0), index)
    if check:
        cx.check_d_squared()
    return cx


def _idempotent_local(sad: SaddleEvent) -> list[list[tuple[int, int]]]:
    """Lee saddle in the basis e+ = 1 + x (label 0), e- = 1 - x (label 1).

    Over Q with t = 1 the algebra is split: e+ e+ = 2 e+, e- e- = 2 e-,
    e+ e- = 0, Delta e+ = e+ (x) e+, Delta e- = -e- (x) e-.  The involution
    x -> -x swaps e+ and e-, so every map is monomial.
    """
    table = []
    if len(sad.before) == 2:
        (c,) = sad.after
        for key in range(4):
            la, lb = key & 1, key >> 1
            if sad.twist_in[1]:
                lb ^= 1
            if la != lb:
                table.append([])
                continue
            lc = la ^ 1 if sad.twist_out[0] else la
            table.append([(lc << c, 2)])
    else:
        a, b = sad.after
        for lc in range(2):
            la = lc ^ 1 if sad.twist_out[0] else lc
            lb = lc ^ 1 if sad.twist_out[1] else lc
            table.append([((la << a) | (lb << b), -1 if lc else 1)])
    return table


def assemble_lee_idempotent(diagram: LinkDiagram, cap: int = DEFAULT_CROSSING_CAP,
                            check: bool = True) -> ChainComplex:
    """The Lee complex over Q in the idempotent basis ``e+-= 1 +- x``.

    It is isomorphic to ``assemble(diagram, "lee")`` over Q (a change of
    basis on every state, using the same saddle events and edge signs), but
    each generator maps to at most one generator per edge, so the
    differential splits into many small blocks.  Only dimensions are
    meaningful: ``Generator.q`` holds the filtration level of ``x``-type
    elements and is not a grading here.
    """
    maps = _edge_maps(diagram, max(cap, diagram.crossing_count))
    res = maps.res
    n = res.n
    if diagram.crossing_count > cap:
        Resolver(diagram, cap)  # raises ResourceError
    gam = _sign_table(diagram, max(cap, n))
    gens: dict[int, list[Generator]] = {}
    index: dict[int, dict[tuple[int, int], int]] = {}
    for bits in range(1 << n):
        wt = bin(bits).count("1")
        h = wt - diagram.n_minus
        st = res.resolve(bits)
        glist = gens.setdefault(h, [])
        idx = index.setdefault(h, {})
        for mask, q, kk in local_module(st):
            idx[(bits, mask)] = len(glist)
            glist.append(Generator(bits, mask, h, q + wt + diagram.n_plus - 2 * diagram.n_minus, kk))
    d: dict[int, SparseIntMatrix] = {}
    for h in gens:
        if h + 1 in gens:
            d[h] = SparseIntMatrix(len(gens[h + 1]), len(gens[h]))
    for bits in range(1 << n):
        h = bin(bits).count("1") - diagram.n_minus
        if h + 1 not in gens:
            continue
        src_idx, tgt_idx, mat = index[h], index[h + 1], d[h]
        nmask = 1 << len(res.resolve(bits).circles)
        for k in range(n):
            if (bits >> k) & 1:
                continue
            tbits = bits | (1 << k)
            sad, carry = maps.event(bits, k)
            if sad.kind is SaddleKind.ESSENTIAL_SELF:
                continue
            sgn = _standard_sign(bits, k)
            if (gam[tbits] >> k) & 1:
                sgn = -sgn
            local = _idempotent_local(sad)
            for mask in range(nmask):
                rest = 0
                for i, j in carry:
                    if (mask >> i) & 1:
                        rest |= 1 << j
                for tmask, coef in local[EdgeMaps._involved(sad, mask)]:
                    mat.add(tgt_idx[(tbits, rest | tmask)], src_idx[(bits, mask)], sgn * coef)
    cx = ChainComplex(Flavor.LEE, diagram.hash, gens, d, None, (0, 0), index)
    if check:
        cx.check_d_squared()
    return cx


@dataclass
class ConeDecomposition:
    """C(D) as the cone of the saddle map from the 0-face to the 1-face.

    ``sub`` is the subcomplex on states with the crossing at 1 (a copy of
    C(D_1) shifted by ``sub_shift``); ``quotient`` those with it at 0 (a
    copy of C(D_0) shifted by ``quotient_shift``); ``connecting`` is the
    degree-wise chain map quotient -> sub given by the edges at the crossing.
    Shifts are (homological, quantum) and relate the diagram's own gradings
    to those inside C(D).
    """

    whole: ChainComplex
    sub: ChainComplex
    quotient: ChainComplex
    connecting: dict[int, SparseIntMatrix]
    sub_shift: tuple[int, int]
    quotient_shift: tuple[int, int]
    crossing: int


def cone_decomposition(diagram: LinkDiagram, crossing: int,
                       flavor: Flavor | str = Flavor.DEFORMED, c: int | None = None,
                       window: tuple[int, int] | None = None,
                       cap: int = DEFAULT_CROSSING_CAP) -> ConeDecomposition:
    """Split C(D) at a positive crossing.

    ``c`` is ``n_-(D_1) - n_-(D)`` for the chosen orientation of the
    1-resolution; the sub complex is then C(D_1)[c+1]{3c+2} and the quotient
    is C(D_0){1}.  Without ``c`` the sub shift is reported as ``None``.
    """
    if diagram.crossings[crossing].sign < 0:
        raise ValueError("cone decomposition needs a positive crossing; reorient first")
    whole = assemble(diagram, flavor, window=window, cap=cap)
    sub = assemble(diagram, flavor, window=window, fixed={crossing: 1}, cap=cap)
    quo = assemble(diagram, flavor, window=window, fixed={crossing: 0}, cap=cap)
    conn: dict[int, SparseIntMatrix] = {}
    for h, qgens in quo.gens.items():
        if h + 1 not in sub.gens:
            continue
        m = SparseIntMatrix(len(sub.gens[h + 1]), len(qgens))
        widx_src = whole.index[h]
        widx_tgt = whole.index[h + 1]
        sub_idx = sub.index[h + 1]
        dmat = whole.d.get(h)
        if dmat is not None:
            inv_tgt = {v: key for key, v in widx_tgt.items()}
            cols = dmat.transpose().data
            for col, g in enumerate(qgens):
                for r, v in cols.get(widx_src[(g.state, g.labels)], {}).items():
                    key = inv_tgt[r]
                    if (key[0] >> crossing) & 1:
                        m.add(sub_idx[key], col, v)
        conn[h] = m
    sub_shift = None if c is None else (c + 1, 3 * c + 2)
    return ConeDecomposition(whole, sub, quo, conn, sub_shift, (0, 1), crossing)


def reorientation_shift(diagram: LinkDiagram, flip) -> tuple[int, int]:
    """(dh, dq) = (2l, 6l) taking homology of ``diagram`` to that of
    ``diagram.reorient(flip)``, where l is the linking number of the flipped
    sublink with the rest, measured in the new orientation."""
    flip = set(flip)
    new = diagram.reorient(flip)
    ell = new.linking_with_complement(flip)
    two = 2 * ell
    if two.denominator != 1:
        raise ValueError(f"reorientation gives non-integral shift 2l = {two}")
    return int(two), 3 * int(two)


def reorient_transport(table, diagram: LinkDiagram, flip):
    """Regrade a homology table of ``diagram`` into the table of the same
    unoriented link with the components in ``flip`` reversed."""
    dh, dq = reorientation_shift(diagram, flip)
    out = table.shifted(dh, dq)
    out.link = dict(table.link, hash=diagram.reorient(flip).hash)
    return out
