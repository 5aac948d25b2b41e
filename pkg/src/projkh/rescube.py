"""Complete resolutions of a diagram, their circles, and the saddles between them.

A state is an integer bitmask over the crossings.  Circles are traced through
the chosen smoothings; each circle carries a reference orientation (start at
its smallest arc, follow that arc upward), which records for every crossing
port it meets whether the traversal enters (+1) or leaves (-1) the crossing
there.  A circle is essential iff it passes through the disk boundary an odd
number of times.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from .projdiag import NE, NW, SE, SW, LinkDiagram

DEFAULT_CROSSING_CAP = 22

IN, OUT = 1, -1


class ResourceError(RuntimeError):
    """Raised when a request exceeds a configured size cap."""


class SaddleKind(str, enum.Enum):
    MERGE_TRIVIAL_TRIVIAL = "merge_trivial_trivial"
    SPLIT_INTO_TWO_TRIVIAL = "split_into_two_trivial"
    MERGE_WITH_ESSENTIAL = "merge_with_essential"
    SPLIT_OFF_ESSENTIAL = "split_off_essential"
    ESSENTIAL_SELF = "essential_self"  # one circle in, one circle out


@dataclass(frozen=True)
class Circle:
    arcs: tuple[int, ...]  # sorted arc ids; free loops use ids past the arcs
    essential: bool

    @property
    def key(self) -> int:
        return self.arcs[0]


@dataclass(frozen=True)
class ResolutionState:
    bits: int
    crossing_count: int
    circles: tuple[Circle, ...]  # sorted by key
    port_circle: tuple[int, ...]  # circle index per port
    port_dir: tuple[int, ...]  # IN/OUT per port under reference orientation

    @property
    def weight(self) -> int:
        return bin(self.bits).count("1")

    def bit(self, k: int) -> int:
        return (self.bits >> k) & 1

    def dump(self) -> str:
        bits = "".join(str(self.bit(k)) for k in range(self.crossing_count))
        lines = [f"state {bits or '-'}"]
        for i, c in enumerate(self.circles):
            tag = "essential" if c.essential else "trivial"
            lines.append(f"  circle {i}: {tag} arcs={list(c.arcs)}")
        return "\n".join(lines)


@dataclass(frozen=True)
class SaddleEvent:
    source: ResolutionState
    target: ResolutionState
    crossing: int
    kind: SaddleKind
    before: tuple[int, ...]  # involved circle indices in source
    after: tuple[int, ...]  # involved circle indices in target
    twist_in: tuple[bool, ...]  # reference vs saddle orientation, per `before`
    twist_out: tuple[bool, ...]  # same, per `after`


def smoothing_pairs(diagram: LinkDiagram, k: int, bit: int) -> tuple[tuple[int, int], tuple[int, int]]:
    base = 4 * k
    vertical = ((base + SW, base + NW), (base + SE, base + NE))
    horizontal = ((base + SW, base + SE), (base + NW, base + NE))
    zero_vertical = diagram.crossings[k].vertical_is_zero
    return vertical if (bit == 0) == zero_vertical else horizontal


class Resolver:
    """Traces circles of states of one diagram, with a small state cache."""

    def __init__(self, diagram: LinkDiagram, cap: int = DEFAULT_CROSSING_CAP):
        n = diagram.crossing_count
        if n > cap:
            raise ResourceError(
                f"diagram has {n} crossings; cube needs 2^{n} states, cap is {cap}")
        self.diagram = diagram
        self.n = n
        self.tail = [a.tail for a in diagram.arcs]
        self.head = [a.head for a in diagram.arcs]
        self.boundary = [a.boundary for a in diagram.arcs]
        self.port_arc = [diagram.port_arc(p) for p in range(4 * n)]
        self._partner = []  # per crossing: (bit0 partner map, bit1 partner map)
        for k in range(n):
            maps = []
            for bit in (0, 1):
                m = {}
                for a, b in smoothing_pairs(diagram, k, bit):
                    m[a], m[b] = b, a
                maps.append(m)
            self._partner.append(maps)
        narcs = len(diagram.arcs)
        self.free = tuple(Circle((narcs + i,), f.boundary % 2 == 1)
                          for i, f in enumerate(diagram.free_loops))
        self._cache: dict[int, ResolutionState] = {}

    def resolve(self, bits: int) -> ResolutionState:
        st = self._cache.get(bits)
        if st is None:
            st = self._trace(bits)
            if len(self._cache) < 1 << 16:
                self._cache[bits] = st
        return st

    def _trace(self, bits: int) -> ResolutionState:
        n = self.n
        partner = [self._partner[k][(bits >> k) & 1] for k in range(n)]
        narcs = len(self.tail)
        seen = [False] * narcs
        port_dir = [0] * (4 * n)
        port_circ_arcs = [0] * (4 * n)
        raw = []
        for start in range(narcs):
            if seen[start]:
                continue
            arcs = []
            parity = 0
            a, forward = start, True
            while not seen[a]:
                seen[a] = True
                arcs.append(a)
                parity += self.boundary[a]
                if forward:
                    leave, enter = self.tail[a], self.head[a]
                else:
                    leave, enter = self.head[a], self.tail[a]
                port_dir[leave] = OUT
                port_dir[enter] = IN
                nxt = partner[enter >> 2][enter]
                a = self.port_arc[nxt]
                forward = self.tail[a] == nxt
            raw.append((tuple(sorted(arcs)), parity % 2 == 1))
            for x in arcs:
                port_circ_arcs[self.tail[x]] = len(raw) - 1
                port_circ_arcs[self.head[x]] = len(raw) - 1
        circles = [Circle(arcs, ess) for arcs, ess in raw] + list(self.free)
        # raw circles are created in order of their smallest arc already
        port_circle = tuple(port_circ_arcs)
        return ResolutionState(bits, n, tuple(circles), port_circle, tuple(port_dir))

    def saddle(self, source: ResolutionState, k: int) -> SaddleEvent:
        if source.bit(k):
            raise ValueError("saddle goes from a 0-smoothing to a 1-smoothing")
        target = self.resolve(source.bits | (1 << k))
        ports = range(4 * k, 4 * k + 4)
        before = sorted({source.port_circle[p] for p in ports})
        after = sorted({target.port_circle[p] for p in ports})
        new_pairs = smoothing_pairs(self.diagram, k, 1)
        if len(before) == 2 and len(after) == 1:
            a, b = before
            dirs = {}
            for p in ports:
                dirs[p] = source.port_dir[p]
            # saddle oriented by circle a; b must run antiparallel through the band
            flip_b = None
            for p, r in new_pairs:
                pa, pb = (p, r) if source.port_circle[p] == a else (r, p)
                want = -dirs[pa]
                fb = dirs[pb] != want
                assert flip_b is None or flip_b == fb, "inconsistent merge orientation"
                flip_b = fb
            induced = {p: (-dirs[p] if flip_b and source.port_circle[p] == b else dirs[p])
                       for p in ports}
            c = after[0]
            flip_c = _compare(induced, target, ports)
            ess = [source.circles[i].essential for i in before]
            assert not all(ess), "two disjoint essential circles"
            kind = SaddleKind.MERGE_WITH_ESSENTIAL if any(ess) else SaddleKind.MERGE_TRIVIAL_TRIVIAL
            return SaddleEvent(source, target, k, kind, (a, b), (c,), (False, flip_b), (flip_c,))
        if len(before) == 1 and len(after) == 2:
            induced = {p: source.port_dir[p] for p in ports}
            for p, r in new_pairs:
                assert induced[p] != induced[r], "non-orientable split"
            flips = []
            for c in after:
                cports = [p for p in ports if target.port_circle[p] == c]
                flips.append(_compare(induced, target, cports))
            ess = [target.circles[i].essential for i in after]
            assert not all(ess), "two disjoint essential circles"
            kind = SaddleKind.SPLIT_OFF_ESSENTIAL if any(ess) else SaddleKind.SPLIT_INTO_TWO_TRIVIAL
            assert source.circles[before[0]].essential == any(ess)
            return SaddleEvent(source, target, k, kind, tuple(before), tuple(after),
                               (False,), tuple(flips))
        assert len(before) == 1 and len(after) == 1, "saddle must change circles by at most one"
        assert source.circles[before[0]].essential == target.circles[after[0]].essential
        return SaddleEvent(source, target, k, SaddleKind.ESSENTIAL_SELF, tuple(before),
                           tuple(after), (False,), (False,))


def _compare(induced: dict, target: ResolutionState, ports) -> bool:
    flips = {target.port_dir[p] != induced[p] for p in ports}
    assert len(flips) == 1, "induced orientation disagrees along one circle"
    return flips.pop()


def resolve(diagram: LinkDiagram, bits) -> ResolutionState:
    """Resolve ``diagram`` at ``bits`` (an int mask or a 0/1 sequence)."""
    if not isinstance(bits, int):
        bits = list(bits)
        if len(bits) != diagram.crossing_count:
            raise ValueError(
                f"need {diagram.crossing_count} bits, got {len(bits)}")
        bits = sum(int(b) << k for k, b in enumerate(bits))
    return Resolver(diagram, cap=max(DEFAULT_CROSSING_CAP, diagram.crossing_count))._trace(bits)


def classify_saddle(event: SaddleEvent) -> SaddleKind:
    nb, na = len(event.before), len(event.after)
    ess_b = sum(event.source.circles[i].essential for i in event.before)
    ess_a = sum(event.target.circles[i].essential for i in event.after)
    assert ess_b <= 1 and ess_a <= 1, "at most one essential circle per state"
    if nb == 2 and na == 1:
        return SaddleKind.MERGE_WITH_ESSENTIAL if ess_b else SaddleKind.MERGE_TRIVIAL_TRIVIAL
    if nb == 1 and na == 2:
        return SaddleKind.SPLIT_OFF_ESSENTIAL if ess_a else SaddleKind.SPLIT_INTO_TWO_TRIVIAL
    assert nb == na == 1, "inconsistent circle bookkeeping"
    return SaddleKind.ESSENTIAL_SELF


def gray_code(n: int) -> Iterator[int]:
    for i in range(1 << n):
        yield i ^ (i >> 1)


def enumerate_cube(diagram: LinkDiagram, cap: int = DEFAULT_CROSSING_CAP,
                   incoming: bool = False) -> Iterator[tuple[ResolutionState, list[SaddleEvent]]]:
    """Yield every state once (Gray-code order) with its outgoing saddles.

    With ``incoming=True`` the saddles ending at the state are listed instead.
    """
    res = Resolver(diagram, cap)
    for bits in gray_code(res.n):
        st = res.resolve(bits)
        events = []
        for k in range(res.n):
            if incoming and st.bit(k):
                events.append(res.saddle(res.resolve(bits & ~(1 << k)), k))
            elif not incoming and not st.bit(k):
                events.append(res.saddle(st, k))
        yield st, events
