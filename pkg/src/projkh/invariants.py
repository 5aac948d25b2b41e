"""s-invariants from Lee homology, and slice-genus bounds.

Three ways to get s:

* ``knot_min_filtration`` -- for a knot, Lee homology in degree 0 is
  two-dimensional and spanned by the two orientation classes, which sit at the
  same filtration level; s is that level plus one.
* ``link_collapse_shortcut`` -- for T(2;p,q), drawn as T_n^{n-1} with q
  components reversed: if the deformed homology of T_n^{n-1} in degree pq has
  the same rank as Lee homology there (no higher differential reaches that
  degree), the level of the orientation class is the lowest q of the deformed
  homology, moved to the new orientation by the [2l]{6l} reorientation shift.
* ``explicit_lee_cycle`` -- label every circle of the oriented resolution by
  ``1 + x`` or ``1 - x`` (relative to the circle's reference orientation),
  keep the labelings that are cycles, and read off the filtration levels of
  their classes.  If the levels disagree the answer is a bracket, not a value.

Anything that cannot be certified is returned as ``value=None`` with a
bracket of possible values.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .chaincx import Flavor, assemble, reorient_transport, reorientation_shift
from .exactalg.homology import class_levels, filtered_homology, homology, spectral_collapse_check
from .harness.families import planar_torus_word, t_n_word
from .projdiag import Closure, LinkDiagram, ProjectiveBraidWord, closure

METHODS = ("knot_min_filtration", "link_collapse_shortcut", "explicit_lee_cycle")


class IndeterminateError(ValueError):
    """Raised when a value is required but only a bracket is available."""


@dataclass
class SInvariantResult:
    value: int | None
    method: str
    collapse_certified: bool
    bracket: tuple[int, int] | None = None
    details: dict = field(default_factory=dict)

    @property
    def determinate(self) -> bool:
        return self.value is not None

    def require(self) -> int:
        if self.value is None:
            raise IndeterminateError(f"s is indeterminate, bracket {self.bracket}")
        return self.value

    def to_json(self) -> dict:
        return {"value": self.value, "method": self.method,
                "collapse_certified": self.collapse_certified,
                "bracket": list(self.bracket) if self.bracket else None,
                "details": self.details}


def _lee_window(diagram: LinkDiagram, h: int):
    return assemble(diagram, Flavor.LEE, window=(h, h),
                    cap=max(22, diagram.crossing_count))


def knot_s(diagram: LinkDiagram) -> SInvariantResult:
    """s of a knot: lowest filtration level of Lee homology at h = 0, plus 1."""
    if diagram.component_count != 1:
        raise ValueError("knot_s needs a one-component diagram")
    lee = filtered_homology(_lee_window(diagram, 0), degrees=[0])
    levels = lee.jumps.get(0, [])
    if len(levels) != 2:
        raise ValueError(f"Lee homology of a knot at h=0 should be 2-dimensional, got {levels}")
    s = levels[0] + 1
    return SInvariantResult(s, "knot_min_filtration", True, (s, s),
                            {"levels": levels, "hash": diagram.hash})


def oriented_state(diagram: LinkDiagram) -> int:
    """Bitmask of the oriented resolution (1-smoothing at negative crossings)."""
    return sum(1 << x.index for x in diagram.crossings if x.sign < 0)


def lee_cycle_candidates(cx, bits: int) -> list[dict[int, int]]:
    """All vectors (1 +- x) (x) ... (x) (1 +- x) on state ``bits`` that are cycles."""
    idx = cx.index[0]
    nc = 0
    while (bits, 1 << nc) in idx:
        nc += 1
    dmat = cx.d.get(0)
    cols = dmat.transpose().data if dmat is not None else {}
    found = []
    for signs in itertools.product((1, -1), repeat=nc):
        vec = {}
        for mask in range(1 << nc):
            coef = 1
            for i in range(nc):
                if (mask >> i) & 1:
                    coef *= signs[i]
            vec[idx[(bits, mask)]] = coef
        image: dict[int, int] = {}
        for c, v in vec.items():
            for r, w in cols.get(c, {}).items():
                image[r] = image.get(r, 0) + v * w
        if not any(image.values()):
            found.append(vec)
    return found


def explicit_cycle_s(diagram: LinkDiagram) -> SInvariantResult:
    """s from explicit Lee cycles on the oriented resolution."""
    cx = _lee_window(diagram, 0)
    bits = oriented_state(diagram)
    cycles = lee_cycle_candidates(cx, bits)
    if not cycles:
        return SInvariantResult(None, "explicit_lee_cycle", False, None,
                                {"reason": "no labeling of the oriented resolution is a cycle"})
    levels = [lv for lv in class_levels(cx, 0, cycles) if lv is not None]
    if not levels:
        return SInvariantResult(None, "explicit_lee_cycle", False, None,
                                {"reason": "all candidate cycles are boundaries"})
    lo, hi = min(levels) + 1, max(levels) + 1
    value = lo if lo == hi else None
    return SInvariantResult(value, "explicit_lee_cycle", False, (lo, hi),
                            {"candidates": len(cycles), "levels": sorted(levels),
                             "hash": diagram.hash})


def t2_diagram(p: int, q: int) -> tuple[LinkDiagram, LinkDiagram, list[int]]:
    """(T_n^{n-1} all up, the same with q components reversed, flipped components)."""
    n = p + q
    if p < 0 or q < 0 or n < 1:
        raise ValueError("T(2;p,q) needs p, q >= 0 and p + q >= 1")
    base = closure(ProjectiveBraidWord(n, t_n_word(n, n - 1), Closure.PROJECTIVE))
    flip = list(range(p, n))
    return base, base.reorient(flip), flip


def collapse_shortcut_s(p: int, q: int) -> SInvariantResult:
    """s(T(2;p,q)) from the deformed homology of T_n^{n-1} in degree pq."""
    base, _, flip = t2_diagram(p, q)
    h = p * q
    dh, dq = reorientation_shift(base, flip)
    if (dh, dq) != (-h, -3 * h):
        raise AssertionError(f"unexpected reorientation shift {(dh, dq)} for T(2;{p},{q})")
    window = (h, h)
    cap = max(22, base.crossing_count)
    kh = homology(assemble(base, Flavor.DEFORMED, window=window, cap=cap), integral=False,
                  link={"family": "T2pq", "params": [p, q], "hash": base.hash})
    lee_cx = assemble(base, Flavor.LEE, window=window, cap=cap)
    lee = filtered_homology(lee_cx, degrees=[h])
    certified = spectral_collapse_check(kh, lee, h)
    moved = reorient_transport(kh, base, flip)
    details = {"degree": h, "deformed_rank": kh.rank(h), "lee_dim": lee.dims.get(h, 0),
               "lee_levels": lee.jumps.get(h, []), "shift": [dh, dq]}
    if certified and moved.min_q(0) is not None:
        s = moved.min_q(0) + 1
        return SInvariantResult(s, "link_collapse_shortcut", True, (s, s), details)
    levels = lee.jumps.get(h, [])
    bracket = (min(levels) + dq + 1, max(levels) + dq + 1) if levels else None
    return SInvariantResult(None, "link_collapse_shortcut", False, bracket, details)


def s_invariant(diagram: LinkDiagram, method: str | None = None) -> SInvariantResult:
    """s of an oriented diagram.  Knots use the filtration minimum; links use
    explicit Lee cycles (for T(2;p,q) prefer ``s_t2``)."""
    if method is None:
        method = "knot_min_filtration" if diagram.component_count == 1 else "explicit_lee_cycle"
    if method == "knot_min_filtration":
        return knot_s(diagram)
    if method == "explicit_lee_cycle":
        return explicit_cycle_s(diagram)
    raise ValueError(f"method {method!r} needs family data; use s_t2 for the collapse shortcut")


def s_t2(p: int, q: int, cross_check: bool = True) -> SInvariantResult:
    """s(T(2;p,q)) by the collapse shortcut, cross-checked by explicit cycles."""
    res = collapse_shortcut_s(p, q)
    if cross_check:
        _, diag, _ = t2_diagram(p, q)
        alt = explicit_cycle_s(diag)
        res.details["explicit"] = alt.to_json()
        if res.value is None and alt.value is not None:
            return SInvariantResult(alt.value, alt.method, False, alt.bracket, res.details)
        if res.value is not None and alt.value is not None and alt.value != res.value:
            raise AssertionError(
                f"s(T(2;{p},{q})): shortcut gives {res.value}, explicit cycle gives {alt.value}")
    return res


def t1_diagram(p: int, q: int) -> LinkDiagram:
    """T(1;p,q) in S^3: T(p+q, p+q) with q strands reversed."""
    n = p + q
    if p < 0 or q < 0 or n < 1:
        raise ValueError("T(1;p,q) needs p, q >= 0 and p + q >= 1")
    d = closure(ProjectiveBraidWord(n, planar_torus_word(n), Closure.PLANE))
    return d.reorient(range(p, n)) if q else d


def s_t1(p: int, q: int) -> SInvariantResult:
    return explicit_cycle_s(t1_diagram(p, q))


def mirror_s_check(diagram: LinkDiagram) -> bool:
    """True iff s(mirror K) = -s(K); indeterminate values raise."""
    a = s_invariant(diagram).require()
    b = s_invariant(diagram.mirror()).require()
    return b == -a


# -- genus bounds ---------------------------------------------------------------

@dataclass(frozen=True)
class GenusBoundQuery:
    d: int
    s_value: int
    sigma_class: int

    def __post_init__(self):
        if self.d not in (1, 2):
            raise ValueError(f"d must be 1 or 2, got {self.d}")


@dataclass(frozen=True)
class GenusBound:
    query: GenusBoundQuery
    bound: Fraction  # lower bound for 2g
    status: str  # "proved" or "conjectural"

    @property
    def genus(self) -> int:
        """Smallest genus compatible with 2g >= bound."""
        return max(0, math.ceil(self.bound / 2))

    def to_json(self) -> dict:
        b = self.bound
        return {"d": self.query.d, "s": self.query.s_value, "sigma": self.query.sigma_class,
                "two_g_at_least": int(b) if b.denominator == 1 else str(b),
                "two_g_at_least_float": float(b), "genus_at_least": self.genus,
                "status": self.status}


def genus_bound(q: GenusBoundQuery) -> GenusBound:
    s, sig = q.s_value, q.sigma_class
    if q.d == 1:
        return GenusBound(q, Fraction(-s - sig * sig + abs(sig)), "proved")
    status = "proved" if abs(sig) <= 3 else "conjectural"
    return GenusBound(q, Fraction(-s) - Fraction(sig * sig, 2), status)


def s_formula_t2(p: int, q: int) -> int:
    return (p - q) ** 2 // 2 - p - q + 1


def s_formula_t1(p: int, q: int) -> int:
    return (p - q) ** 2 - 2 * max(p, q) + 1


def adjunction_bound(d: int, p: int, q: int,
                     s_table: Mapping[tuple[int, int], int] | Callable[[int, int], int] | None,
                     s_knot: int) -> dict:
    """Bound for a knot K bounding a surface meeting the core p + q times.

    From s(T(d;p,q)) - s(mirror K) >= chi(Sigma) - p - q and s(mirror K) = -s(K):
    chi(Sigma) <= s(T(d;p,q)) + s(K) + p + q, and 2g = 1 - chi.
    """
    if d not in (1, 2):
        raise ValueError(f"d must be 1 or 2, got {d}")
    if s_table is None:
        raise IndeterminateError("s(T(d;p,q)) unavailable")
    st = s_table(p, q) if callable(s_table) else s_table.get((p, q))
    if st is None:
        raise IndeterminateError(f"s(T({d};{p},{q})) unavailable")
    chi_max = st + s_knot + p + q
    two_g = 1 - chi_max
    return {"d": d, "p": p, "q": q, "s_link": st, "s_knot": s_knot,
            "chi_at_most": chi_max, "two_g_at_least": two_g,
            "genus_at_least": max(0, math.ceil(two_g / 2))}
