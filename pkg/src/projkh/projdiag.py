"""Braid words and their closures as link diagrams in the plane or in RP^2.

The projective closure lives in the disk model of RP^2: the braid sits in a
disk whose top endpoints are glued to the antipodal bottom endpoints, so
the strand leaving the top at position ``j`` re-enters the bottom at
position ``n - 1 - j``.  The planar closure glues ``j`` to ``j``.

Crossing ports are numbered ``4 * k + corner`` with corners
``SW, SE, NW, NE = 0, 1, 2, 3``.  Every arc of the diagram runs upward from
a top port (NW/NE) of one crossing to a bottom port (SW/SE) of another,
possibly passing through the boundary of the disk.
"""

from __future__ import annotations

import enum
import hashlib
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

SW, SE, NW, NE = 0, 1, 2, 3


class Closure(str, enum.Enum):
    PLANE = "plane"
    PROJECTIVE = "projective"


class DiagramError(ValueError):
    """Raised for malformed braid words or diagram requests."""


@dataclass(frozen=True)
class ProjectiveBraidWord:
    """A braid word on ``strand_count`` strands plus a closure mode.

    Letter ``g`` stands for the generator crossing strands ``|g|`` and
    ``|g| + 1`` (1-indexed); its sign is the crossing sign when every strand
    is oriented upward.  Letters are read bottom to top.
    """

    strand_count: int
    letters: tuple[int, ...] = ()
    closure: Closure = Closure.PROJECTIVE

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        object.__setattr__(self, "closure", Closure(self.closure))
        if self.strand_count < 1:
            raise DiagramError("strand_count must be at least 1")
        for g in self.letters:
            if g == 0 or abs(g) >= self.strand_count:
                raise DiagramError(
                    f"letter {g} invalid on {self.strand_count} strands")

    @classmethod
    def parse(cls, text: str) -> "ProjectiveBraidWord":
        """Parse ``strands=<n>; closure=<plane|projective>; word=<ints>``."""
        text = text.split("#", 1)[0].strip()
        fields = {}
        for part in text.split(";"):
            if not part.strip():
                continue
            key, sep, value = part.partition("=")
            if not sep:
                raise DiagramError(f"cannot parse field {part!r}")
            fields[key.strip()] = value.strip()
        try:
            n = int(fields["strands"])
            closure = Closure(fields.get("closure", "projective"))
            word = [int(tok) for tok in re.split(r"[\s,]+", fields.get("word", "")) if tok]
        except (KeyError, ValueError) as exc:
            raise DiagramError(f"bad braid word line {text!r}: {exc}") from None
        return cls(n, tuple(word), closure)

    def to_text(self) -> str:
        word = " ".join(str(g) for g in self.letters)
        return f"strands={self.strand_count}; closure={self.closure.value}; word={word}"


def parse_word_file(text: str) -> list[ProjectiveBraidWord]:
    """One braid word per non-blank line; ``#`` starts a comment."""
    words = []
    for line in text.splitlines():
        if line.split("#", 1)[0].strip():
            words.append(ProjectiveBraidWord.parse(line))
    return words


@dataclass(frozen=True)
class Crossing:
    index: int
    position: int  # 0-indexed left strand
    letter_sign: int  # fixes which smoothing is the 0-resolution
    sign: int  # oriented crossing sign
    components: tuple[int, int]  # strand SW->NE, strand SE->NW

    @property
    def vertical_is_zero(self) -> bool:
        return self.letter_sign > 0


@dataclass(frozen=True)
class Arc:
    tail: int  # top port of the crossing below
    head: int  # bottom port of the crossing above
    boundary: int  # number of passes through the disk boundary
    component: int


@dataclass(frozen=True)
class FreeLoop:
    """A closed loop meeting no crossing."""

    boundary: int
    component: int


@dataclass(frozen=True)
class LinkDiagram:
    word: ProjectiveBraidWord
    crossings: tuple[Crossing, ...]
    arcs: tuple[Arc, ...]
    free_loops: tuple[FreeLoop, ...]
    orientation: tuple[int, ...]  # +1 upward, -1 reversed, per component
    n_plus: int
    n_minus: int
    _port_arc: tuple[int, ...] = field(repr=False, compare=False, default=())

    @property
    def ambient(self) -> str:
        return "RP3" if self.word.closure is Closure.PROJECTIVE else "S3"

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def component_count(self) -> int:
        return len(self.orientation)

    def port_arc(self, port: int) -> int:
        return self._port_arc[port]

    def reorient(self, flip: Iterable[int]) -> "LinkDiagram":
        flip = set(flip)
        for c in flip:
            if not 0 <= c < self.component_count:
                raise DiagramError(f"no component {c}")
        orientation = tuple(-o if c in flip else o for c, o in enumerate(self.orientation))
        return _build(self.word, orientation)

    def mirror(self) -> "LinkDiagram":
        word = ProjectiveBraidWord(
            self.word.strand_count, tuple(-g for g in self.word.letters), self.word.closure)
        return _build(word, self.orientation)

    def linking_matrix(self) -> list[list[Fraction]]:
        m = self.component_count
        lk = [[Fraction(0)] * m for _ in range(m)]
        for x in self.crossings:
            a, b = x.components
            if a != b:
                lk[a][b] += Fraction(x.sign, 2)
                lk[b][a] += Fraction(x.sign, 2)
        return lk

    def linking_with_complement(self, sub: Iterable[int]) -> Fraction:
        sub = set(sub)
        lk = self.linking_matrix()
        return sum((lk[a][b] for a in sub for b in range(self.component_count)
                    if b not in sub), Fraction(0))

    def encode(self) -> str:
        """Deterministic serialization, used as cache key material."""
        payload = {
            "ambient": self.ambient,
            "strands": self.word.strand_count,
            "crossings": [[x.position, x.letter_sign, x.sign] for x in self.crossings],
            "arcs": [[a.tail, a.head, a.boundary] for a in self.arcs],
            "free_loops": sorted(f.boundary for f in self.free_loops),
            "orientation": list(self.orientation),
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @property
    def hash(self) -> str:
        return hashlib.sha256(self.encode().encode()).hexdigest()[:16]


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def closure(word: ProjectiveBraidWord, orientation: Sequence[int] | None = None) -> LinkDiagram:
    """Diagram of the closure of ``word``, all strands upward unless told otherwise."""
    if word.strand_count < 1:
        raise DiagramError("strand_count must be at least 1")
    return _build(word, None if orientation is None else tuple(orientation))


def _build(word: ProjectiveBraidWord, orientation) -> LinkDiagram:
    n = word.strand_count
    L = len(word.letters)
    projective = word.closure is Closure.PROJECTIVE
    pos = [abs(g) - 1 for g in word.letters]

    visited = set()
    tails, heads, bounds = [], [], []
    for k in range(L):
        for corner in (NW, NE):
            t, j, b = k + 1, pos[k] + (corner - NW), 0
            while True:
                if t == L:
                    visited.add((t, j))
                    t = 0
                    if projective:
                        j = n - 1 - j
                        b += 1
                visited.add((t, j))
                if pos[t] == j:
                    head = 4 * t + SW
                    break
                if pos[t] + 1 == j:
                    head = 4 * t + SE
                    break
                t += 1
            tails.append(4 * k + corner)
            heads.append(head)
            bounds.append(b)

    loops = []
    for j0 in range(n):
        if (0, j0) in visited:
            continue
        j, b = j0, 0
        while True:
            for t in range(L + 1):
                visited.add((t, j))
            if projective:
                j = n - 1 - j
                b += 1
            if j == j0:
                break
        loops.append(b)

    uf = _UnionFind(len(tails))
    arc_of_port = [0] * (4 * L)
    for a, (tp, hp) in enumerate(zip(tails, heads)):
        arc_of_port[tp] = a
        arc_of_port[hp] = a
    for k in range(L):
        uf.union(arc_of_port[4 * k + SW], arc_of_port[4 * k + NE])
        uf.union(arc_of_port[4 * k + SE], arc_of_port[4 * k + NW])
    roots = {}
    arc_comp = []
    for a in range(len(tails)):
        arc_comp.append(roots.setdefault(uf.find(a), len(roots)))
    ncomp = len(roots) + len(loops)
    if orientation is None:
        orientation = (1,) * ncomp
    if len(orientation) != ncomp or any(o not in (1, -1) for o in orientation):
        raise DiagramError(f"orientation must give +-1 for each of {ncomp} components")

    crossings = []
    n_plus = n_minus = 0
    for k in range(L):
        c1 = arc_comp[arc_of_port[4 * k + SW]]
        c2 = arc_comp[arc_of_port[4 * k + SE]]
        letter_sign = 1 if word.letters[k] > 0 else -1
        sign = letter_sign * orientation[c1] * orientation[c2]
        if sign > 0:
            n_plus += 1
        else:
            n_minus += 1
        crossings.append(Crossing(k, pos[k], letter_sign, sign, (c1, c2)))

    arcs = tuple(Arc(t, h, b, arc_comp[a]) for a, (t, h, b) in enumerate(zip(tails, heads, bounds)))
    free = tuple(FreeLoop(b, len(roots) + i) for i, b in enumerate(loops))
    return LinkDiagram(word, tuple(crossings), arcs, free, tuple(orientation),
                       n_plus, n_minus, tuple(arc_of_port))


def with_split_unknot(word: ProjectiveBraidWord) -> ProjectiveBraidWord:
    """Braid word whose closure is the closure of ``word`` plus a split U_0.

    In the plane a spare strand is appended.  In the projective model two
    outer strands are added; they close up through the boundary into one
    null-homotopic circle bounding a disk away from the rest.
    """
    n = word.strand_count
    if word.closure is Closure.PLANE:
        return ProjectiveBraidWord(n + 1, word.letters, word.closure)
    shifted = tuple(g + 1 if g > 0 else g - 1 for g in word.letters)
    return ProjectiveBraidWord(n + 2, shifted, word.closure)
