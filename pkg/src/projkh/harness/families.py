"""Braid words and diagrams for the link families studied by the engine.

* ``Tni`` -- T_n^i, projective closure of
  sigma_{n-1} (sigma_{n-2} sigma_{n-1}) ... (sigma_2 ... sigma_{n-1}) (sigma_1 ... sigma_i).
* ``Sni`` -- S_n^i, projective closure of
  sigma_{n-1} (sigma_{n-2} sigma_{n-1}) ... (sigma_1 ... sigma_{n-1}) (sigma_{n-1} ... sigma_{n-i}).
* ``T2pq`` -- T(2;p,q) in RP^3: T_{p+q}^{p+q-1} with q components reversed.
* ``T1pq`` -- T(1;p,q) in S^3: the torus link T(p+q, p+q), plane closure of
  (sigma_1 ... sigma_{n-1})^n, with q strands reversed.

The empty link (T_0^{-1} = S_0^0) has no diagram; ``EMPTY`` stands for it
and its homology is Z in bidegree (0, 0).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..projdiag import Closure, DiagramError, LinkDiagram, ProjectiveBraidWord, closure

FAMILIES = ("T1pq", "T2pq", "Tni", "Sni")
ALIASES = {"T1": "T1pq", "T2": "T2pq", "T1pq": "T1pq", "T2pq": "T2pq", "Tni": "Tni", "Sni": "Sni"}

DESCRIPTIONS = {
    "T1pq": "T(1;p,q) in S^3: torus link T(p+q,p+q), q strands reversed",
    "T2pq": "T(2;p,q) in RP^3: T_{p+q}^{p+q-1} with q components reversed",
    "Tni": "T_n^i: projective closure of s_{n-1}(s_{n-2}s_{n-1})...(s_2...s_{n-1})(s_1...s_i)",
    "Sni": "S_n^i: projective closure of s_{n-1}(s_{n-2}s_{n-1})...(s_1...s_{n-1})(s_{n-1}...s_{n-i})",
}


def t_n_word(n: int, i: int) -> tuple[int, ...]:
    w: list[int] = []
    for k in range(n - 1, 1, -1):
        w += range(k, n)
    w += range(1, i + 1)
    return tuple(w)


def s_n_word(n: int, i: int) -> tuple[int, ...]:
    w: list[int] = []
    for k in range(n - 1, 0, -1):
        w += range(k, n)
    w += [n - 1 - j for j in range(i)]
    return tuple(w)


def planar_torus_word(n: int) -> tuple[int, ...]:
    return tuple(range(1, n)) * n


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, int]
    flip: tuple[int, ...] = ()  # extra components to reverse, on top of the family's own

    def __post_init__(self):
        fam = ALIASES.get(self.family)
        if fam is None:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "params", tuple(int(x) for x in self.params))
        if len(self.params) != 2:
            raise ValueError(f"{fam} takes two parameters, got {self.params}")
        a, b = self.params
        if fam in ("Tni", "Sni"):
            if a < 1 or not 0 <= b <= a - 1:
                raise ValueError(f"{fam} needs n >= 1 and 0 <= i <= n-1, got n={a}, i={b}")
        elif a < 0 or b < 0 or a + b < 1:
            raise ValueError(f"{fam} needs p, q >= 0 and p + q >= 1, got p={a}, q={b}")

    @property
    def label(self) -> str:
        a, b = self.params
        return f"{self.family}({a},{b})" + (f" flip {list(self.flip)}" if self.flip else "")

    def to_json(self) -> dict:
        return {"family": self.family, "params": list(self.params), "flip": list(self.flip)}


def family_word(spec: FamilySpec) -> ProjectiveBraidWord:
    a, b = spec.params
    if spec.family == "Tni":
        return ProjectiveBraidWord(a, t_n_word(a, b), Closure.PROJECTIVE)
    if spec.family == "Sni":
        return ProjectiveBraidWord(a, s_n_word(a, b), Closure.PROJECTIVE)
    n = a + b
    if spec.family == "T2pq":
        return ProjectiveBraidWord(n, t_n_word(n, n - 1), Closure.PROJECTIVE)
    return ProjectiveBraidWord(n, planar_torus_word(n), Closure.PLANE)


def family_flip(spec: FamilySpec) -> list[int]:
    """Components reversed relative to the all-upward orientation."""
    a, b = spec.params
    own = set(range(a, a + b)) if spec.family in ("T1pq", "T2pq") else set()
    return sorted(own ^ set(spec.flip))


def family_diagram(spec: FamilySpec) -> LinkDiagram:
    d = closure(family_word(spec))
    flip = family_flip(spec)
    if any(c >= d.component_count for c in flip):
        raise DiagramError(f"{spec.label} has only {d.component_count} components")
    return d.reorient(flip) if flip else d


def base_diagram(spec: FamilySpec) -> LinkDiagram:
    """The family's diagram with every strand upward (no reversals)."""
    return closure(family_word(spec))


class _Empty:
    """Marker for the empty link."""

    label = "empty"

    def __repr__(self):
        return "EMPTY"


EMPTY = _Empty()


def tni(n: int, i: int):
    """T_n^i as a FamilySpec, or EMPTY for T_0^{-1}."""
    if n == 0 and i == -1:
        return EMPTY
    return FamilySpec("Tni", (n, i))


def sni(n: int, i: int):
    """S_n^i as a FamilySpec, or EMPTY for S_0^0."""
    if n == 0 and i == 0:
        return EMPTY
    return FamilySpec("Sni", (n, i))


def resolution_identity(family: str, n: int, i: int) -> tuple[object, bool]:
    """The link identified with the 1-resolution of the last crossing of
    T_n^i or S_n^i (i >= 1): ``(link, plus_split_unknot)``."""
    if i < 1 or i > n - 1:
        raise ValueError("resolution identities need 1 <= i <= n-1")
    if family == "Tni":
        if i == n - 1:
            return tni(n - 2, n - 3), True
        return tni(n - 2, i - 1), False
    if family == "Sni":
        if i == 1:
            return sni(n - 2, 0), True
        return sni(n - 2, i - 2), False
    raise ValueError(f"no resolution identity for family {family!r}")


def cone_shift_c(family: str, n: int) -> int:
    """c with the 1-face of the last crossing equal to C(D_1)[c+1]{3c+2}."""
    return n - 2 if family == "Tni" else n - 1


def family_corpus(max_n: int = 5) -> list[FamilySpec]:
    out = []
    for n in range(1, max_n + 1):
        for i in range(n):
            out.append(FamilySpec("Tni", (n, i)))
            out.append(FamilySpec("Sni", (n, i)))
    return out
