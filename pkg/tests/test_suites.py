import pytest

from gordian import suites
from gordian.suites import FAIL, FLAG, PASS, SuiteParams, run_suite


def test_manifest_names():
    assert suites.suite_names() == [
        "torus-jones",
        "twist-span",
        "tq-bracket",
        "kq-span",
        "kqr-span",
        "ganzell",
        "tri-multiplicativity",
        "oracle-equivalence",
    ]
    with pytest.raises(KeyError):
        run_suite("nope")


def test_torus_jones_default_range():
    r = run_suite("torus-jones", SuiteParams(max_n=15))
    assert (r.count(PASS), len(r.rows)) == (14, 14)
    assert r.summary() == "torus-jones: 14/14 pass, 0 flag, 0 fail"


def test_tq_bracket_flags_but_never_fails():
    r = run_suite("tq-bracket", SuiteParams(q_values=(1, 3, 5)))
    assert [row.status for row in r.rows] == [FLAG, FLAG, FLAG]
    assert r.ok
    assert "state sum agrees" in r.rows[1].detail


def test_tq_lemma_vector_extremes():
    for q in range(3, 16, 2):
        f, g = suites.tq_lemma_vector(q)
        assert f.leading() == (3 * q - 2, 1)
        assert g.trailing() == (-q - 8, 1)


def test_kqr_flags_only_the_q1_row():
    r = run_suite("kqr-span", SuiteParams(max_n=5))
    status = {row.case: row.status for row in r.rows}
    assert status == {
        "K_{1,3}": FLAG,
        "K_{1,5}": FLAG,
        "K_{3,3}": PASS,
        "K_{3,5}": PASS,
        "K_{5,3}": PASS,
        "K_{5,5}": PASS,
    }


def test_failures_are_reported(monkeypatch):
    monkeypatch.setattr(suites.inv, "span_t", lambda f: 0)
    r = run_suite("twist-span", SuiteParams(max_n=2))
    assert r.count(FAIL) == 4 and not r.ok


def test_parallel_rows_keep_order():
    p1 = run_suite("oracle-equivalence", SuiteParams(max_crossings=6))
    p2 = run_suite("oracle-equivalence", SuiteParams(max_crossings=6, workers=2))
    assert p1.to_dict() == p2.to_dict()
    assert p1.ok


def test_oracle_bound_is_enforced():
    r = run_suite("oracle-equivalence", SuiteParams(max_crossings=8, oracle_bound=5))
    assert r.count(FAIL) > 0
    assert any("CrossingBoundError" in row.detail for row in r.rows)


def test_tri_pairs_are_deterministic():
    a = run_suite("tri-multiplicativity").to_dict()
    b = run_suite("tri-multiplicativity").to_dict()
    assert a == b and a["pass"] == 20
