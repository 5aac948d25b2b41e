import random

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from oracles import dense_rank, dense_snf_divisors, filtered_dims_bruteforce
from projkh.chaincx import Flavor, assemble, cone_decomposition
from projkh.exactalg.homology import (HomologyTable, _LeeDegree, block_rank, class_levels,
                                      filtered_homology, homology, lee_dimensions,
                                      prime_power_parts)
from projkh.exactalg.les import inclusion_map, les_ranks, projection_map
from projkh.exactalg.snf import certify, determinant, smith_normal_form
from projkh.exactalg.sparse import (SparseIntMatrix, echelon_rows, rank,
                                    reduce_by_echelon)
from projkh.harness.families import FamilySpec, family_diagram
from projkh.harness.verify import random_sparse_matrix
from projkh.invariants import lee_cycle_candidates, oriented_state
from projkh.projdiag import Closure, ProjectiveBraidWord, closure


def M(rows):
    return SparseIntMatrix.from_dense(rows)


def snf(rows):
    res = smith_normal_form(M(rows), transforms=True)
    certify(M(rows), res)
    return res


def test_snf_small_examples():
    assert snf([[2, 4], [6, 8]]).diagonal == [2, 4]
    assert snf([[1, 0], [0, 1]]).diagonal == [1, 1]
    assert snf([[0, 0], [0, 0]]).diagonal == [0, 0]
    assert snf([[2, 0], [0, 3]]).diagonal == [1, 6]
    assert snf([[6]]).torsion == [6]


def test_snf_rectangular():
    res = snf([[1, 2, 3], [4, 5, 6]])
    assert res.diagonal == [1, 3]
    assert snf([[2], [4], [6]]).diagonal == [2]


def test_certify_rejects_tampering():
    a = M([[2, 4], [6, 8]])
    res = smith_normal_form(a, transforms=True)
    res.diagonal = [1, 8]
    with pytest.raises(AssertionError):
        certify(a, res)


def test_prime_power_parts():
    assert prime_power_parts(12) == [3, 4]
    assert prime_power_parts(2) == [2]
    assert prime_power_parts(360) == [5, 8, 9]


def test_determinant():
    assert determinant([[2, 1], [1, 1]]) == 1
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2], [2, 4]]) == 0


def test_snf_against_sympy():
    rng = random.Random(7)
    for _ in range(60):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        dense = [[rng.choice((0, 0, 0, 1, -1, 2, -3, 4)) for _ in range(c)] for _ in range(r)]
        want = [abs(int(x)) for x in invariant_factors(Matrix(dense), domain=ZZ) if x]
        assert snf(dense).divisors == want


def test_snf_against_dense_oracle():
    rng = random.Random(11)
    for _ in range(40):
        m = random_sparse_matrix(rng, 60)
        res = smith_normal_form(m, transforms=True)
        certify(m, res)
        assert res.divisors == dense_snf_divisors(m.to_dense())


def test_rank_against_dense_oracle():
    rng = random.Random(3)
    for _ in range(40):
        m = random_sparse_matrix(rng, 40)
        assert rank(m) == dense_rank(m.to_dense())


def test_block_rank_matches_rank():
    rng = random.Random(5)
    for _ in range(40):
        m = random_sparse_matrix(rng, 60)
        assert block_rank(m) == rank(m)


def test_echelon_reduction_detects_span():
    rows = {0: {0: 2, 1: 1}, 1: {1: 3, 2: 1}}
    ech = echelon_rows(rows)
    assert not reduce_by_echelon(ech, {0: 2, 1: 4, 2: 1})  # row0 + row1
    assert reduce_by_echelon(ech, {2: 1})


def test_homology_table_helpers():
    t = HomologyTable("deformed", {(0, 1): (1, ()), (1, 3): (0, (2,)), (2, 5): (2, ())})
    assert t.group(1, 3) == "Z/2" and t.group(2, 5) == "Z^2" and t.group(9, 9) == "0"
    assert t.rank() == 3 and t.rank(2) == 2
    assert t.euler() == {1: 1, 5: 2}
    assert HomologyTable.from_json(t.to_json()).same_groups(t)
    assert t.shifted(1, 2).free(3, 7) == 2
    assert t.min_q(1) is None and t.min_q(1, free_only=False) == 3
    assert "Z/2" in t.pretty()


def test_rational_homology_ignores_torsion():
    d = closure(ProjectiveBraidWord(2, (1, 1, 1), Closure.PLANE))
    cx = assemble(d, "kh")
    assert homology(cx, integral=False).rational() == homology(cx).rational()
    assert homology(cx, integral=False).torsion(3, 7) == ()


@pytest.mark.parametrize("diagram", [
    closure(ProjectiveBraidWord(2, (1, 1, 1), Closure.PLANE)),
    closure(ProjectiveBraidWord(3, (1, -2, 1, -2), Closure.PLANE)),
    closure(ProjectiveBraidWord(2, (1,))),
    family_diagram(FamilySpec("Sni", (3, 1))),
    family_diagram(FamilySpec("Tni", (3, 2))),
])
def test_filtered_lee_against_bruteforce(diagram):
    cx = assemble(diagram, Flavor.LEE)
    fh = filtered_homology(cx)
    for h in cx.degrees:
        qdeg = [g.q for g in cx.gens[h]]
        d_out = cx.differential(h).to_dense() if h + 1 in cx.gens else None
        d_in = cx.differential(h - 1).to_dense() if h - 1 in cx.gens else None
        brute = filtered_dims_bruteforce(qdeg, d_out, d_in)
        levels = fh.jumps.get(h, [])
        for p, dim in brute.items():
            assert dim == sum(1 for lv in levels if lv >= p), (h, p)


def test_lee_dimension_is_two_to_components():
    for spec in [("Tni", (3, 2)), ("Sni", (3, 0)), ("Tni", (4, 3))]:
        d = family_diagram(FamilySpec(*spec))
        dims = lee_dimensions(assemble(d, Flavor.LEE))
        assert sum(dims.values()) == 2 ** d.component_count


def test_class_levels_agree_with_echelon_method():
    d = closure(ProjectiveBraidWord(3, (1, 2, -1, 2)))
    d = d.reorient([1]) if d.component_count > 1 else d
    cx = assemble(d, Flavor.LEE)
    cycles = lee_cycle_candidates(cx, oriented_state(d))
    assert cycles
    deg = _LeeDegree(cx, 0)
    assert class_levels(cx, 0, cycles) == [deg.level(c) for c in cycles]


def test_class_levels_rejects_non_cycles():
    cx = assemble(closure(ProjectiveBraidWord(2, (1, 1, 1), Closure.PLANE)), Flavor.LEE)
    d0 = cx.differential(0)
    col = next(c for row in d0.data.values() for c in row)
    with pytest.raises(ValueError):
        class_levels(cx, 0, [{col: 1}])


def test_les_exact_on_small_cone():
    d = family_diagram(FamilySpec("Tni", (4, 3)))
    cone = cone_decomposition(d, d.crossing_count - 1, c=2)
    rep = les_ranks(cone)
    assert rep.exact, rep.violations
    # the induced maps computed on their own agree with the ones in the report
    assert projection_map(cone).ranks == rep.projection.ranks
    assert inclusion_map(cone).ranks == rep.inclusion.ranks
