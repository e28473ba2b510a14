"""Acceptance gate: ten criteria, one test (and one pass/fail line) each.

Run with ``pytest -v tests/test_acceptance.py``; each criterion prints its
measured numbers, and the stated budgets are asserted, not just hoped for.
"""

import json
import random
import time
from collections import Counter

from conwaylab import (
    IntPolynomial,
    MemoCache,
    PatternConfig,
    CrossEvent,
    GenerationError,
    SuiteConfig,
    a0_from_matrix,
    check_lifted_skein_congruence,
    check_low_coefficient_vanishing,
    check_period_two_counterexample,
    check_type_m_lowest_coefficient,
    components,
    conway,
    is_algebraically_split,
    lift,
    make_type_m_pattern,
    parse_pd,
    quotient_diagram,
    random_pattern,
    run_suite,
    skein_triple,
    smooth_event,
    to_normal_form,
    validate_pattern,
)

from tests.oracles import braid_closure, naive_conway
from tests.test_periodic import (
    SMOOTHED_LIFT_CASES,
    SMOOTHED_LIFT_DELTAS,
)
from tests.test_skein import BORROMEAN_WORD, CORPUS

Z = IntPolynomial.monomial(1)


def _random_closure(rng, max_crossings=12):
    while True:
        width = rng.randint(2, 4)
        length = rng.randint(1, max_crossings)
        word = tuple(
            rng.choice((1, -1)) * rng.randint(1, width - 1) for _ in range(length)
        )
        d = braid_closure(word, width)
        if 1 <= len(d) <= max_crossings:
            return d


def test_criterion_01_corpus_exactness():
    targets = {
        "unknot_kink": (1,),
        "hopf_positive": (0, 1),
        "trefoil": (1, 0, 1),
        "figure_eight": (1, 0, -1),
        "torus_2_4": (0, 2, 0, 1),
    }
    start = time.monotonic()
    for name, coeffs in targets.items():
        d = parse_pd(CORPUS[name][0])
        assert naive_conway(d).coeffs == coeffs, name
        assert conway(d).coeffs == coeffs, name
    assert conway(parse_pd("O")).coeffs == (1,)
    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    print(f"criterion 1: 5 corpus values + unknot exact vs naive oracle in {elapsed:.3f}s")


def test_criterion_02_skein_axiom_500_pairs():
    rng = random.Random("acceptance:skein")
    memo = MemoCache()
    start = time.monotonic()
    pairs = 0
    while pairs < 500:
        d = _random_closure(rng)
        for index in range(len(d)):
            plus, minus, zero = skein_triple(d, index)
            lhs = conway(plus, cache=memo) - conway(minus, cache=memo)
            assert lhs == Z * conway(zero, cache=memo), (d, index)
            pairs += 1
    elapsed = time.monotonic() - start
    assert elapsed < 60.0
    print(f"criterion 2: {pairs} (diagram, crossing) pairs exact in {elapsed:.1f}s")


def test_criterion_03_a0_cross_oracle_200_diagrams():
    rng = random.Random("acceptance:a0")
    memo = MemoCache()
    checked = 0
    while checked < 200:
        d = _random_closure(rng)
        n = components(d).count
        a0_engine = to_normal_form(conway(d, cache=memo), n).a0
        assert a0_engine == a0_from_matrix(d), d
        checked += 1
    print(f"criterion 3: engine a_0 == matrix a_0 on {checked} diagrams")


def test_criterion_04_split_divisibility():
    rng = random.Random("acceptance:split")
    per_n = Counter()
    checked = 0
    while checked < 50:
        width = rng.choice((2, 3, 4))
        try:
            q = random_pattern(
                PatternConfig(width, rng.randint(2, 7), require_os=True),
                seed=rng.randrange(2**32),
                max_attempts=2000,
            )
        except GenerationError:
            continue
        d = quotient_diagram(q)
        n = components(d).count
        if n not in (2, 3) or len(d) == 0:
            continue
        assert is_algebraically_split(d)
        assert conway(d).divisible_by_power(2 * n - 2), (q, n)
        per_n[n] += 1
        checked += 1
    assert per_n[2] > 0 and per_n[3] > 0
    borromean = braid_closure(BORROMEAN_WORD, 3)
    nabla = conway(borromean)
    assert not nabla.is_zero and nabla.divisible_by_power(4)
    print(
        f"criterion 4: z^(2n-2) divides nabla on {checked} split diagrams "
        f"(n=2: {per_n[2]}, n=3: {per_n[3]}); borromean nabla = {nabla}"
    )


def _congruence_instances(p, minimum, max_quotient_crossings, seed):
    rng = random.Random(seed)
    tally = Counter()
    produced = 0
    while produced < minimum:
        width = rng.choice((2, 2, 3, 3, 4))
        try:
            q = random_pattern(
                PatternConfig(width, rng.randint(2, max_quotient_crossings)),
                seed=rng.randrange(2**32),
                max_attempts=500,
            )
        except GenerationError:
            continue
        crosses = [i for i, ev in enumerate(q.events) if isinstance(ev, CrossEvent)]
        if not crosses or len(crosses) > max_quotient_crossings:
            continue
        event = crosses[rng.randrange(len(crosses))]
        report = check_lifted_skein_congruence(q, event, p, time_limit=60.0)
        tally[report.outcome] += 1
        if report.outcome == "skipped":
            print(f"criterion 5 skip (p={p}): {report.witness['reason']}")
        produced += 1
    return tally


def test_criterion_05_lifted_skein_congruence():
    tally3 = _congruence_instances(3, 200, 8, "acceptance:lemma41:3")
    tally5 = _congruence_instances(5, 50, 5, "acceptance:lemma41:5")
    assert tally3["fail"] == 0 and tally5["fail"] == 0
    assert tally3["pass"] >= 200 and tally5["pass"] >= 50
    print(
        f"criterion 5: congruence mod p at p=3 {dict(tally3)}, p=5 {dict(tally5)}"
    )


def test_criterion_06_low_coefficients_vanish():
    start = time.monotonic()
    tallies = {}
    for p, minimum, widths, max_events in ((3, 100, (2, 2, 3, 4), 6), (5, 50, (2, 4), 5)):
        rng = random.Random(f"acceptance:main:{p}")
        tally = Counter()
        produced = 0
        while produced < minimum:
            try:
                q = random_pattern(
                    PatternConfig(
                        rng.choice(widths), rng.randint(2, max_events),
                        p=p, require_os=True, require_strong=True,
                    ),
                    seed=rng.randrange(2**32),
                    max_attempts=4000,
                )
            except GenerationError:
                continue
            report = check_low_coefficient_vanishing(q, p, time_limit=60.0)
            assert report.outcome != "not_applicable", report.witness
            tally[report.outcome] += 1
            if report.outcome == "skipped":
                print(f"criterion 6 skip (p={p}): {report.witness['reason']}")
            produced += 1
        assert tally["fail"] == 0
        assert tally["pass"] >= minimum
        tallies[p] = dict(tally)
    elapsed = time.monotonic() - start
    assert elapsed < 1800.0
    print(
        f"criterion 6: a_(2i) = 0 mod p for 2i < p-1; "
        f"p=3 {tallies[3]}, p=5 {tallies[5]} in {elapsed:.1f}s"
    )


def test_criterion_07_type_m_lowest_coefficient():
    outcomes = Counter()
    fixtures = 0
    for p in (3, 5):
        for m in (1, 2):
            for seed in range(7):
                q = make_type_m_pattern(m, p, seed=seed, os_part=seed % 2 == 1)
                report = check_type_m_lowest_coefficient(q, p, expected_m=m)
                outcomes[report.outcome] += 1
                assert report.outcome == "pass", (m, p, seed, report.witness)
                fixtures += 1
    assert fixtures >= 25
    print(f"criterion 7: {fixtures} type-m fixtures, a_0 = 0 mod p both routes")


def test_criterion_08_period_two_counterexample():
    report = check_period_two_counterexample()
    assert report.outcome == "pass"
    assert abs(report.witness["a_0"]) == 1
    print(
        "criterion 8: hopf 2-lift gives |a_0| = "
        f"{abs(report.witness['a_0'])} (nabla = {report.witness['polynomial']})"
    )


def test_criterion_09_smoothed_lift_component_counts():
    assert len(SMOOTHED_LIFT_CASES) == 5
    p = 3
    lines = []
    for case, fixtures in sorted(SMOOTHED_LIFT_CASES.items()):
        delta = SMOOTHED_LIFT_DELTAS[case](p)
        assert fixtures, case
        for q, event, before, after in fixtures:
            validate_pattern(q)
            d, _ = lift(q, p)
            d0, _ = lift(smooth_event(q, event), p)
            assert components(d).count == before
            assert components(d0).count == after == before + delta
        lines.append(f"{case}: {len(fixtures)} fixture(s)")
    print("criterion 9: " + "; ".join(lines))


def test_criterion_10_byte_identical_reports():
    for suites in (("all",), ("lemma41",)):
        base = SuiteConfig(suites=suites, primes=(3,), count=2, seed="determinism")
        reference = json.dumps(run_suite(base).to_json_dict(), sort_keys=True).encode()
        variants = (
            base,
            SuiteConfig(**{**base.__dict__, "cache": False}),
            SuiteConfig(**{**base.__dict__, "workers": 4}),
            SuiteConfig(**{**base.__dict__, "workers": 4, "cache": False}),
        )
        for cfg in variants:
            blob = json.dumps(run_suite(cfg).to_json_dict(), sort_keys=True).encode()
            assert blob == reference, cfg
    print("criterion 10: reports byte-identical across reruns, cache, workers")
