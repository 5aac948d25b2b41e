"""Acceptance suite: one test per criterion.

Each test prints a single ``ACCEPT Cn PASS|FAIL ...`` line (visible even
under output capture) with its runtime and time budget, then asserts.
Computations run without the on-disk cache so the timings are honest.
"""

import random
import time

import pytest

from oracles import dense_snf_divisors
from projkh.chaincx import assemble
from projkh.exactalg.homology import homology
from projkh.exactalg.snf import certify, smith_normal_form
from projkh.harness.families import FamilySpec, family_diagram
from projkh.harness.verify import (Engine, GENUS_EXAMPLES, prop_s_cases, random_sparse_matrix,
                                   rank_cases, verify_case1_injectivity, verify_d_squared,
                                   verify_genus_table, verify_lee_dimension, verify_les,
                                   verify_mirror, verify_prop_s, verify_question_surjectivity,
                                   verify_rank_formulas, verify_reorientation,
                                   verify_resolution_identities, verify_s3, verify_split_unknot,
                                   verify_unknots, verify_vanishing)
from projkh.invariants import GenusBoundQuery, adjunction_bound, genus_bound, s_formula_t2

pytestmark = pytest.mark.acceptance

Z = (1, ())


class Criterion:
    """Times a block, then prints one verdict line and asserts."""

    def __init__(self, capsys, tag, title, budget):
        self.capsys, self.tag, self.title, self.budget = capsys, tag, title, budget
        self.failures: list[str] = []
        self.info = ""

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def check(self, ok, what):
        if not ok:
            self.failures.append(str(what))

    def reports(self, reps):
        for r in reps:
            self.check(r.passed, r.line())
        return reps

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        if exc_type is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if dt > self.budget:
            self.failures.append(f"took {dt:.1f}s, budget {self.budget}s")
        verdict = "FAIL" if self.failures else "PASS"
        line = f"ACCEPT {self.tag} {verdict} {self.title} [{dt:.2f}s / {self.budget}s]"
        if self.info:
            line += f" {self.info}"
        if self.failures:
            line += " :: " + "; ".join(self.failures[:5])
        with self.capsys.disabled():
            print("\n" + line)
        assert not self.failures, line
        return False


@pytest.fixture
def engine():
    return Engine()


def table(family, params):
    return homology(assemble(family_diagram(FamilySpec(family, params)), "deformed"))


def test_c1_t21_table(capsys):
    with Criterion(capsys, "C1", "Kh'(T_2^1) = Z at (0,0),(0,2),(1,1),(1,3)", 1.0) as c:
        tab = table("Tni", (2, 1))
        c.check(tab.cells == {(0, 0): Z, (0, 2): Z, (1, 1): Z, (1, 3): Z}, tab.cells)


def test_c2_s21_table(capsys):
    with Criterion(capsys, "C2", "Kh'(S_2^1) fixed cells, others zero except (1,4),(2,4)", 1.0) as c:
        tab = table("Sni", (2, 1))
        for k in [(0, 1), (0, 3), (1, 2), (2, 6)]:
            c.check(tab.cells.get(k) == Z, f"{k}: {tab.group(*k)}")
        extra = set(tab.cells) - {(0, 1), (0, 3), (1, 2), (2, 6), (1, 4), (2, 4)}
        c.check(not extra, f"unexpected cells {sorted(extra)}")
        c.info = f"recorded (1,4)={tab.group(1, 4)} (2,4)={tab.group(2, 4)}"


def test_c3_prop_s(capsys, engine):
    cases = prop_s_cases(5)
    with Criterion(capsys, "C3", f"s(T(2;p,q)) formula, {len(cases)} cases p+q<=5", 300) as c:
        c.reports([verify_prop_s(engine, p, q) for p, q in cases])
        c.info = f"{len(cases) - len(c.failures)}/{len(cases)} agree"


def test_c4_rank_low_even(capsys, engine):
    with Criterion(capsys, "C4", "rank/lowest-q formulas (case 1) at n=2,4", 120) as c:
        for n in (2, 4):
            c.reports(verify_rank_formulas(engine, n, cases=("rank_case1",)))
        c.reports([verify_case1_injectivity(engine, 4)])


def test_c4_deep_n6(capsys, engine, deep):
    if not deep:
        pytest.skip("n = 6 runs only with --deep")
    with Criterion(capsys, "C4-deep", "rank/lowest-q formulas (case 1) at n=6", 7200) as c:
        c.reports(verify_rank_formulas(engine, 6, cases=("rank_case1",)))


def test_c5_rank_cases_2_to_4(capsys, engine):
    with Criterion(capsys, "C5", "rank/lowest-q formulas, cases 2-4, n<=5", 300) as c:
        n_reports = 0
        for n in range(1, 6):
            reps = verify_rank_formulas(engine, n,
                                        cases=("rank_case2", "rank_case3", "rank_case4"))
            n_reports += len(c.reports(reps))
        c.check(n_reports == sum(len([x for x in rank_cases(n) if x[0] != "rank_case1"])
                                 for n in range(1, 6)), "missing cases")
        c.info = f"{n_reports} case instances"


def test_c6_les_and_resolution(capsys, engine):
    with Criterion(capsys, "C6", "LES exactness and resolution identities, n<=4", 120) as c:
        count = 0
        for fam in ("Tni", "Sni"):
            for n in range(2, 5):
                for i in range(1, n):
                    c.reports([verify_resolution_identities(engine, fam, n, i),
                               verify_les(engine, fam, n, i)])
                    count += 1
        c.info = f"{count} cones"


def test_c7_surjectivity(capsys, engine):
    with Criterion(capsys, "C7", "saddle maps T_n^i -> T_n^{i-1} surjective over Q, n<=5", 600) as c:
        c.reports([verify_question_surjectivity(engine, n) for n in range(2, 6)])


def test_c8_structure(capsys, engine):
    with Criterion(capsys, "C8", "structural suite", 600) as c:
        corpus = [FamilySpec(f, (n, i)) for n in range(1, 6) for i in range(n)
                 for f in ("Tni", "Sni")]
        c.reports([verify_d_squared(engine, s) for s in corpus])
        c.reports([verify_lee_dimension(engine, s) for s in corpus])
        split = [FamilySpec("Tni", (2, 1)), FamilySpec("Tni", (3, 2)), FamilySpec("Sni", (2, 1)),
                 FamilySpec("Tni", (4, 2)), FamilySpec("Sni", (3, 1))]
        c.reports([verify_split_unknot(engine, s) for s in split])
        c.reports([verify_reorientation(engine, FamilySpec("Tni", (3, 2)), (2,)),
                   verify_reorientation(engine, FamilySpec("Tni", (4, 3)), (2, 3)),
                   verify_reorientation(engine, FamilySpec("Tni", (4, 3)), (0,))])
        c.reports([verify_unknots(engine), verify_mirror(engine)])
        # SNF: certificate plus an independent dense oracle on 1000 sparse matrices
        rng = random.Random(2024)
        snf_bad = []
        for t in range(1000):
            m = random_sparse_matrix(rng, 200)
            res = smith_normal_form(m, transforms=True)
            try:
                certify(m, res)
            except AssertionError as exc:
                snf_bad.append((t, str(exc)))
                continue
            if res.divisors != dense_snf_divisors(m.to_dense()):
                snf_bad.append((t, "oracle disagrees"))
        c.check(not snf_bad, f"SNF failures {snf_bad[:3]}")
        regions = [verify_vanishing(engine, f, n, i) for f in ("Tni", "Sni")
                   for n in range(1, 6) for i in range(n)]
        c.reports(regions)
        c.info = f"1000 SNF matrices, {len(regions)} vanishing regions"


def test_c9_s3(capsys, engine):
    cases = [(p, n - p) for n in range(1, 5) for p in range(n + 1)]
    with Criterion(capsys, "C9", f"S^3 s(T(1;p,q)) formula, {len(cases)} cases p+q<=4", 60) as c:
        c.reports([verify_s3(engine, p, q) for p, q in cases])


def test_c10_genus_table(capsys):
    with Criterion(capsys, "C10", "slice-genus bound table", 5) as c:
        c.reports([verify_genus_table()])
        for d, s, sig, bound, status in GENUS_EXAMPLES:
            gb = genus_bound(GenusBoundQuery(d, s, sig))
            c.check(str(gb.bound) == bound and gb.status == status, (d, s, sig, gb))
        # adjunction example: a knot with s = -4 meeting the core once each way
        out = adjunction_bound(2, 1, 1, s_formula_t2, s_knot=-4)
        c.check(out["two_g_at_least"] == 4, out)
