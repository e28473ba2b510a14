"""Verification checks: outcomes, witnesses, suites, and replayability."""

import json

import pytest

from conwaylab import (
    CrossEvent,
    QuotientPattern,
    SuiteConfig,
    VerificationReport,
    check_lifted_skein_congruence,
    check_low_coefficient_vanishing,
    check_matrix_route_agreement,
    check_period_two_counterexample,
    check_split_divisibility,
    check_type_m_lowest_coefficient,
    hopf_quotient_pattern,
    lift,
    make_type_m_pattern,
    parse_pd,
    replay,
    run_suite,
)
from conwaylab import verify as verify_mod
from conwaylab.skein import conway

from tests.oracles import braid_closure
from tests.test_periodic import BORROMEAN_Q, SIGMA1_SQ

TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
HOPF = "X[1,3,2,4] X[3,1,4,2]"


def test_hopf_quotient_pattern():
    q = hopf_quotient_pattern()
    assert q == QuotientPattern(2, ("R", "R"), (CrossEvent(0, 1),))
    d, _ = lift(q, 2)
    assert conway(d).coeffs == (0, 1)


def test_lifted_skein_congruence_pass_and_replay():
    r = check_lifted_skein_congruence(BORROMEAN_Q, 0, 3)
    assert r.outcome == "pass" and r.passed
    assert r.inputs["check"] == "lift_skein_congruence"
    assert r.inputs["p"] == 3 and r.inputs["event_index"] == 0
    assert r.inputs["digest"] == BORROMEAN_Q.digest()
    assert replay(r.inputs).outcome == "pass"
    blob = r.to_json_dict()
    assert blob["schema"] == 1 and "time_ms" not in blob


def test_lifted_skein_congruence_skips_over_ceiling():
    r = check_lifted_skein_congruence(BORROMEAN_Q, 0, 3, max_crossings=2)
    assert r.outcome == "skipped"
    assert r.passed  # skips never count as failures
    assert "ceiling" in r.witness["reason"]


def test_low_coefficient_vanishing_outcomes():
    assert check_low_coefficient_vanishing(BORROMEAN_Q, 3).outcome == "pass"
    # p = 2 and non-primes are outside the statement
    assert check_low_coefficient_vanishing(BORROMEAN_Q, 2).outcome == "not_applicable"
    assert check_low_coefficient_vanishing(BORROMEAN_Q, 9).outcome == "not_applicable"
    # the hopf-like quotient is not strongly 3-periodic
    assert check_low_coefficient_vanishing(SIGMA1_SQ, 3).outcome == "not_applicable"
    empty = check_low_coefficient_vanishing(QuotientPattern(0, (), ()), 3)
    assert empty.outcome == "not_applicable"
    assert check_low_coefficient_vanishing(
        BORROMEAN_Q, 3, max_crossings=2
    ).outcome == "skipped"
    r = check_low_coefficient_vanishing(BORROMEAN_Q, 3)
    assert replay(r.inputs).outcome == "pass"


def test_type_m_lowest_coefficient_outcomes():
    q = make_type_m_pattern(1, 3, seed=11)
    r = check_type_m_lowest_coefficient(q, 3, expected_m=1)
    assert r.outcome == "pass"
    assert r.witness["m"] == 1 and r.witness["a_0"] % 3 == 0
    assert replay(r.inputs).outcome == "pass"
    # wrong expectation is a failure, not a silent downgrade
    r = check_type_m_lowest_coefficient(q, 3, expected_m=2)
    assert r.outcome == "fail" and not r.passed
    assert "expected m=2" in r.witness["reason"]
    r = check_type_m_lowest_coefficient(SIGMA1_SQ, 3, expected_m=1)
    assert r.outcome == "fail"
    # without an expectation, unclassifiable inputs are out of scope
    assert check_type_m_lowest_coefficient(SIGMA1_SQ, 3).outcome == "not_applicable"
    assert check_type_m_lowest_coefficient(BORROMEAN_Q, 3).outcome == "not_applicable"


def test_period_two_counterexample():
    r = check_period_two_counterexample()
    assert r.outcome == "pass"
    assert r.witness == {"polynomial": "z", "a_0": 1}
    assert replay({"check": "period_two_exception"}).outcome == "pass"


def test_split_divisibility_outcomes():
    borr = braid_closure((1, -2, 1, -2, 1, -2), 3)
    r = check_split_divisibility(borr)
    assert r.outcome == "pass"
    assert r.witness == {"components": 3, "coefficient_of_lowest_allowed": 1}
    assert replay(r.inputs).outcome == "pass"
    assert check_split_divisibility(parse_pd(HOPF)).outcome == "not_applicable"
    assert check_split_divisibility(parse_pd("O O")).outcome == "pass"
    assert check_split_divisibility(borr, max_crossings=2).outcome == "skipped"


def test_matrix_route_agreement_outcomes():
    r = check_matrix_route_agreement(parse_pd(TREFOIL))
    assert r.outcome == "pass" and r.witness == {"a_0": 1}
    assert check_matrix_route_agreement(parse_pd(HOPF)).outcome == "pass"
    assert check_matrix_route_agreement(parse_pd("")).outcome == "not_applicable"
    assert replay(r.inputs).outcome == "pass"


def test_replay_rejects_unknown_check():
    with pytest.raises(ValueError):
        replay({"check": "nonsense"})


def test_suite_expansion_and_order():
    res = run_suite(SuiteConfig(suites=("hopf",), count=3))
    assert len(res.reports) == 1  # the counterexample needs no instances
    assert res.counts == {"pass": 1, "fail": 0, "not_applicable": 0, "skipped": 0}
    assert not res.failed
    with pytest.raises(ValueError):
        run_suite(SuiteConfig(suites=("bogus",)))
    res = run_suite(SuiteConfig(suites=("all",), primes=(3,), count=1, seed=5))
    # main, lemma41, lemma43 get one instance each; hopf runs once
    assert [r.statement for r in res.reports] == [
        "low_coefficient_vanishing",
        "lift_skein_congruence",
        "type_m_lowest_coefficient",
        "period_two_exception",
    ]
    # duplicate mentions do not duplicate work
    dup = run_suite(SuiteConfig(suites=("hopf", "hopf", "all"), primes=(3,), count=1, seed=5))
    assert len(dup.reports) == len(res.reports)


def test_suite_determinism_across_workers_and_cache():
    base = SuiteConfig(suites=("all",), primes=(3,), count=2, seed=9)
    blob = json.dumps(run_suite(base).to_json_dict(), sort_keys=True)
    for variant in (
        base,
        SuiteConfig(**{**base.__dict__, "workers": 4}),
        SuiteConfig(**{**base.__dict__, "cache": False}),
    ):
        assert json.dumps(run_suite(variant).to_json_dict(), sort_keys=True) == blob
    # timing is observable only on request
    timed = run_suite(base).to_json_dict(include_timing=True)
    assert all("time_ms" in r for r in timed["reports"])


def test_suite_runs_all_green():
    res = run_suite(SuiteConfig(suites=("all",), primes=(3,), count=4, seed=2))
    assert res.counts["fail"] == 0
    assert res.counts["pass"] >= 10


def test_witness_persistence(tmp_path):
    # failures land in witness_dir as replayable JSON files
    report = VerificationReport(
        statement="matrix_route_agreement",
        inputs={"check": "matrix_route_agreement", "pd": TREFOIL},
        outcome="fail",
        witness={"a_0_engine": 0, "a_0_matrix": 1},
    )
    verify_mod._persist_witness(report, str(tmp_path))
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    assert files[0].name.startswith("matrix_route_agreement-")
    stored = json.loads(files[0].read_text())
    assert stored["outcome"] == "fail"
    assert replay(stored["inputs"]).outcome == "pass"  # the engine is actually fine
    # green suites write nothing
    run_suite(SuiteConfig(suites=("hopf",), witness_dir=str(tmp_path / "clean")))
    assert not (tmp_path / "clean").exists()
