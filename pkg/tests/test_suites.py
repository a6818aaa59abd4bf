import pytest

from diffrep.suites import SUITES


@pytest.mark.parametrize("name", ["paper-examples", "lemma-free", "comodule", "socle", "iso-table",
                                  "counterexample", "extensions", "groebner"])
def test_suite_passes(name):
    rep = SUITES[name]()
    assert rep.ok, [(a.claim, a.detail) for a in rep.failures()]


def test_documented_discrepancies_are_flagged():
    rep = SUITES["paper-examples"]()
    assert sum(a.discrepancy for a in rep.assertions) == 2
    rep = SUITES["lemma-free"](trials=5)
    assert sum(a.discrepancy for a in rep.assertions) == 1


def test_weight_drop_suite_reports_the_minimal_counterexample():
    rep = SUITES["lemma-max"](trials=200, seed=7)
    assert all(a.ok for a in rep.assertions if a.claim.startswith("weight drops"))
    summary = [a for a in rep.assertions if a.claim == "minimal counterexample to the predecessor clause"]
    assert len(summary) == 1 and "strictly between" in summary[0].detail


def test_json_report_is_sorted_by_trial():
    rep = SUITES["degree"](trials=3)
    trials = [a["trial"] for a in rep.to_json()["assertions"] if a["trial"] is not None]
    assert trials == sorted(trials)
