import pytest

from projkh.harness.families import FamilySpec, family_diagram
from projkh.projdiag import Closure, ProjectiveBraidWord, closure
from projkh.rescube import (Resolver, ResourceError, SaddleKind, classify_saddle,
                            enumerate_cube, gray_code, resolve)


def test_t21_states_and_essential_self_saddle():
    d = closure(ProjectiveBraidWord(2, (1,)))
    s0, s1 = resolve(d, [0]), resolve(d, [1])
    assert len(s0.circles) == 1 and len(s1.circles) == 1
    res = Resolver(d, 22)
    ev = res.saddle(res.resolve(0), 0)
    assert classify_saddle(ev) is SaddleKind.ESSENTIAL_SELF


def test_u1_is_one_essential_circle():
    st = resolve(closure(ProjectiveBraidWord(1, ())), [])
    assert [c.essential for c in st.circles] == [True]


def test_u0_is_one_trivial_circle():
    st = resolve(closure(ProjectiveBraidWord(2, ())), [])
    assert [c.essential for c in st.circles] == [False]


def test_at_most_one_essential_circle_per_state():
    d = family_diagram(FamilySpec("Sni", (3, 1)))
    for st, _ in enumerate_cube(d):
        assert sum(c.essential for c in st.circles) <= 1


def test_cube_counts():
    d = family_diagram(FamilySpec("Tni", (3, 2)))
    states = edges = 0
    for _, evs in enumerate_cube(d):
        states += 1
        edges += len(evs)
    assert (states, edges) == (8, 12)


def test_plane_saddles_are_merges_or_splits():
    d = closure(ProjectiveBraidWord(2, (1, 1, 1), Closure.PLANE))
    kinds = {classify_saddle(e) for _, evs in enumerate_cube(d) for e in evs}
    assert kinds <= {SaddleKind.MERGE_TRIVIAL_TRIVIAL, SaddleKind.SPLIT_INTO_TWO_TRIVIAL}


def test_gray_code_visits_all_states_once():
    seq = list(gray_code(4))
    assert sorted(seq) == list(range(16))
    assert all(bin(a ^ b).count("1") == 1 for a, b in zip(seq, seq[1:]))


def test_crossing_cap():
    d = closure(ProjectiveBraidWord(2, (1,) * 6, Closure.PLANE))
    with pytest.raises(ResourceError):
        Resolver(d, 4)


def test_resolve_rejects_wrong_length():
    d = closure(ProjectiveBraidWord(2, (1, 1)))
    with pytest.raises(ValueError):
        resolve(d, [0])
