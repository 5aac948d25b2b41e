import json
from concurrent.futures import ThreadPoolExecutor

import pytest

from projkh.harness.cache import TableCache, cache_key, thread_count
from projkh.harness.families import (EMPTY, FamilySpec, cone_shift_c, family_corpus,
                                     family_diagram, family_flip, planar_torus_word,
                                     resolution_identity, s_n_word, t_n_word, tni)
from projkh.harness.verify import (Engine, SuiteConfig, VerificationReport, load_claims,
                                   plan_jobs, prop_s_cases, rank_cases, run_suite,
                                   vanishing_predicate, verify_genus_table, verify_t_n_0)


def test_family_words():
    assert t_n_word(3, 2) == (2, 1, 2)
    assert t_n_word(2, 1) == (1,)
    assert s_n_word(2, 1) == (1, 1)
    assert s_n_word(3, 1) == (2, 1, 2, 2)
    assert planar_torus_word(3) == (1, 2) * 3
    # T_n^i has (n-1)(n-2)/2 + i letters, S_n^i has n(n-1)/2 + i
    for n in range(1, 7):
        for i in range(n):
            assert len(t_n_word(n, i)) == (n - 1) * (n - 2) // 2 + i
            assert len(s_n_word(n, i)) == n * (n - 1) // 2 + i


def test_component_counts():
    for n in range(1, 5):
        assert [family_diagram(FamilySpec("Tni", (n, i))).component_count
                for i in range(n)] == list(range(1, n + 1))


def test_family_spec_validation():
    with pytest.raises(ValueError):
        FamilySpec("Xni", (2, 1))
    with pytest.raises(ValueError):
        FamilySpec("Tni", (2, 5))
    with pytest.raises(ValueError):
        FamilySpec("T2", (-1, 2))
    assert FamilySpec("T2", (2, 1)).family == "T2pq"


def test_t2pq_flip_and_ambient():
    spec = FamilySpec("T2pq", (2, 1))
    assert family_flip(spec) == [2]
    assert family_diagram(spec).ambient == "RP3"
    assert family_diagram(FamilySpec("T1pq", (1, 1))).ambient == "S3"


def test_resolution_identity_table():
    assert resolution_identity("Tni", 4, 3) == (FamilySpec("Tni", (2, 1)), True)
    assert resolution_identity("Tni", 4, 2) == (FamilySpec("Tni", (2, 1)), False)
    assert resolution_identity("Sni", 4, 1) == (FamilySpec("Sni", (2, 0)), True)
    assert resolution_identity("Sni", 4, 3) == (FamilySpec("Sni", (2, 1)), False)
    assert resolution_identity("Tni", 2, 1) == (EMPTY, True)
    assert tni(0, -1) is EMPTY
    with pytest.raises(ValueError):
        resolution_identity("Tni", 3, 0)
    assert cone_shift_c("Tni", 5) == 3 and cone_shift_c("Sni", 5) == 4


def test_family_corpus_size():
    assert len(family_corpus(3)) == 2 * (1 + 2 + 3)


def test_cache_roundtrip_and_concurrency(tmp_path):
    cache = TableCache(tmp_path)
    key = cache_key("abc", "deformed", (0, 2), "int")
    assert key == "abc-deformed-0_2-int-v1"
    assert cache.get(key) is None

    def put(i):
        cache.put(key, {"i": i, "pad": list(range(500))})

    with ThreadPoolExecutor(8) as pool:
        list(pool.map(put, range(32)))
    obj = cache.get(key)
    assert obj["pad"] == list(range(500))
    assert not list(tmp_path.glob(".tmp-*"))


def test_cache_disabled_and_corrupt(tmp_path):
    off = TableCache(tmp_path, enabled=False)
    off.put("k", {"a": 1})
    assert off.get("k") is None
    cache = TableCache(tmp_path)
    (tmp_path / "bad.json").write_text("{not json")
    assert cache.get("bad") is None


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("PROJKH_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("PROJKH_THREADS", "lots")
    assert thread_count() == 1


def test_claims_file_has_every_group():
    claims = load_claims()
    for key in ("resolution_identity", "les_exactness", "rank_case1", "rank_case4",
                "prop_s", "s_s3", "surjectivity", "genus_bound", "vanishing_region"):
        assert claims[key]["statement"]


def test_rank_cases():
    names = [c[0] for c in rank_cases(4)]
    assert names == ["rank_case1", "rank_case2"]
    names = [c[0] for c in rank_cases(5)]
    assert names == ["rank_case3", "rank_case4"]
    assert [c[0] for c in rank_cases(1)] == ["rank_case3"]


def test_prop_s_cases_count():
    cases = prop_s_cases(5)
    assert len(cases) == 20
    assert all(abs(p - q) <= 3 or p * q == 0 for p, q in cases)
    assert len(prop_s_cases(6)) > 20


def test_vanishing_predicate_examples():
    v = vanishing_predicate("Tni", 2, 1)
    assert v(-1, 0) and v(2, 4) and not v(0, 0) and not v(1, 3)


def test_t_n_0_and_genus():
    eng = Engine()
    assert verify_t_n_0(eng, 4).passed
    assert verify_genus_table().passed


def test_report_line():
    r = VerificationReport("x", {"n": 2}, 1, 1, "pass", 0.5)
    assert r.line().startswith("[") and "x(n=2)" in r.line()
    json.dumps(r.to_json())


def test_plan_and_small_suite():
    cfg = SuiteConfig(claims=("les", "question"), max_n=3, use_cache=False)
    jobs = plan_jobs(cfg)
    assert {name for name, _ in jobs} == {"resolution", "les", "question"}
    rep = run_suite(cfg)
    assert rep.exit_code == 0, [r.line() for r in rep.reports if not r.passed]


def test_negative_control_fails():
    cfg = SuiteConfig(claims=("les",), max_n=3, use_cache=False, sign_mode="corrupt")
    rep = run_suite(cfg)
    assert rep.counts["fail"] > 0 and rep.exit_code == 1


def test_parse_claims():
    assert SuiteConfig.parse_claims("les, rank") == ("les", "rank")
    with pytest.raises(ValueError):
        SuiteConfig.parse_claims("nonsense")
