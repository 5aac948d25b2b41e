"""Property-based tests (hypothesis) of structural invariants."""

from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from oracles import dense_rank, dense_snf_divisors, jones_euler_plane_braid
from projkh.chaincx import Flavor, assemble, assemble_lee_idempotent, reorient_transport
from projkh.exactalg.homology import _LeeDegree, class_levels, homology, lee_dimensions
from projkh.exactalg.snf import certify, smith_normal_form
from projkh.exactalg.sparse import SparseIntMatrix, rank
from projkh.invariants import lee_cycle_candidates, oriented_state
from projkh.projdiag import Closure, ProjectiveBraidWord, closure, with_split_unknot

SETTINGS = settings(max_examples=40, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])


@st.composite
def braid_words(draw, max_strands=4, max_len=6, mode=None):
    n = draw(st.integers(1, max_strands))
    if n == 1:
        letters = ()
    else:
        gens = st.integers(1, n - 1).flatmap(lambda g: st.sampled_from((g, -g)))
        letters = tuple(draw(st.lists(gens, max_size=max_len)))
    closure_mode = mode or draw(st.sampled_from(list(Closure)))
    return ProjectiveBraidWord(n, letters, closure_mode)


@st.composite
def int_matrices(draw, max_dim=8):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    entry = st.sampled_from((0, 0, 0, 0, 1, -1, 2, -2, 3, 6))
    return [[draw(entry) for _ in range(c)] for _ in range(r)]


@SETTINGS
@given(int_matrices())
def test_snf_certified_and_matches_oracles(dense):
    m = SparseIntMatrix.from_dense(dense)
    res = smith_normal_form(m, transforms=True)
    certify(m, res)
    assert res.divisors == dense_snf_divisors(dense)
    assert res.divisors == [abs(int(x)) for x in invariant_factors(Matrix(dense), domain=ZZ) if x]


@SETTINGS
@given(int_matrices(max_dim=12))
def test_rank_matches_dense(dense):
    assert rank(SparseIntMatrix.from_dense(dense)) == dense_rank(dense)


@SETTINGS
@given(braid_words(max_strands=6, max_len=12))
def test_word_text_roundtrip(w):
    assert ProjectiveBraidWord.parse(w.to_text()) == w


@SETTINGS
@given(braid_words(), st.sampled_from(list(Flavor)))
def test_d_squared_zero(w, flavor):
    assemble(closure(w), flavor).check_d_squared()


@SETTINGS
@given(braid_words(mode=Closure.PLANE))
def test_plane_euler_is_jones(w):
    want = jones_euler_plane_braid(w.strand_count, list(w.letters))
    tab = homology(assemble(closure(w), "kh"), integral=False)
    assert tab.euler() == want


@SETTINGS
@given(braid_words())
def test_homology_preserves_euler(w):
    cx = assemble(closure(w), "deformed")
    assert homology(cx, integral=False).euler() == cx.euler_characteristic()


@SETTINGS
@given(braid_words())
def test_lee_dimension(w):
    d = closure(w)
    dims = lee_dimensions(assemble(d, Flavor.LEE))
    assert sum(dims.values()) == 2 ** d.component_count
    assert lee_dimensions(assemble_lee_idempotent(d)) == dims


@SETTINGS
@given(braid_words(max_len=5))
def test_split_unknot(w):
    base = homology(assemble(closure(w), "deformed"))
    split = homology(assemble(closure(with_split_unknot(w)), "deformed"))
    assert split.same_groups(base.shifted(0, 1).direct_sum(base.shifted(0, -1)))


@SETTINGS
@given(braid_words(), st.data())
def test_reorientation_shift(w, data):
    d = closure(w)
    assume(d.component_count >= 2)
    flip = data.draw(st.sets(st.integers(0, d.component_count - 1), min_size=1))
    new = d.reorient(flip)
    ell = new.linking_with_complement(flip)
    assert (2 * ell).denominator == 1
    moved = reorient_transport(homology(assemble(d, "deformed")), d, flip)
    assert moved.same_groups(homology(assemble(new, "deformed")))


@SETTINGS
@given(braid_words())
def test_mirror_dualises_rational_homology(w):
    d = closure(w)
    a = homology(assemble(d, "deformed"), integral=False).rational()
    b = homology(assemble(d.mirror(), "deformed"), integral=False).rational()
    assert {(-h, -q): v for (h, q), v in a.items()} == b


@SETTINGS
@given(braid_words())
def test_linking_matrix_symmetric_half_integral(w):
    lk = closure(w).linking_matrix()
    for i, row in enumerate(lk):
        assert row[i] == 0
        for j, v in enumerate(row):
            assert v == lk[j][i] and (2 * v).denominator == 1 and isinstance(v, Fraction)


@SETTINGS
@given(braid_words(max_len=5))
def test_explicit_cycle_levels_agree(w):
    d = closure(w)
    cx = assemble(d, Flavor.LEE, window=(0, 0))
    cycles = lee_cycle_candidates(cx, oriented_state(d))
    deg = _LeeDegree(cx, 0)
    assert class_levels(cx, 0, cycles) == [deg.level(c) for c in cycles]
