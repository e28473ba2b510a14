"""Congruence and divisibility checks as replayable pass/fail reports.

Each check returns a VerificationReport whose ``inputs`` dict is enough to
re-run it via :func:`replay`.  Outcomes: "pass", "fail", "not_applicable"
(a precondition of the statement does not hold, which must never be
conflated with falsity), and "skipped" (a resource ceiling converted a
blow-up into data).  Suites generate random instances from a master seed by
a fixed splitting rule, so results are reproducible across machines and
worker counts.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Mapping, Sequence

from conwaylab.diagram import LinkDiagram, components, parse_pd, render_pd
from conwaylab.linking import a0_from_matrix, is_algebraically_split, linking_matrix
from conwaylab.periodic import (
    CrossEvent,
    GenerationError,
    PatternConfig,
    QuotientPattern,
    _is_prime,
    classify_type_m,
    equivariant_triple,
    is_os_strongly_periodic,
    lift,
    make_type_m_pattern,
    random_pattern,
)
from conwaylab.polynomial import ParityError, to_normal_form
from conwaylab.skein import (
    DEFAULT_MAX_CROSSINGS,
    DEFAULT_TIME_LIMIT,
    ResourceLimitError,
    conway,
)

__all__ = [
    "VerificationReport",
    "SuiteConfig",
    "SuiteResult",
    "SUITE_ORDER",
    "hopf_quotient_pattern",
    "check_lifted_skein_congruence",
    "check_low_coefficient_vanishing",
    "check_type_m_lowest_coefficient",
    "check_period_two_counterexample",
    "check_split_divisibility",
    "check_matrix_route_agreement",
    "run_suite",
    "replay",
]


@dataclass(frozen=True)
class VerificationReport:
    """One statement checked on one instance.

    inputs are self-contained: replay(report.inputs) reproduces the outcome
    (up to wall-clock-bound skips).  witness carries the offending data on
    failure and diagnostics otherwise.
    """

    statement: str
    inputs: Mapping
    outcome: str  # "pass" | "fail" | "not_applicable" | "skipped"
    witness: Mapping | None = None
    time_ms: float | None = None

    @property
    def passed(self) -> bool:
        return self.outcome != "fail"

    def to_json_dict(self, include_timing: bool = False) -> dict:
        out = {
            "schema": 1,
            "statement": self.statement,
            "inputs": dict(self.inputs),
            "outcome": self.outcome,
            "witness": dict(self.witness) if self.witness is not None else None,
        }
        if include_timing and self.time_ms is not None:
            out["time_ms"] = self.time_ms
        return out


def _limits_inputs(max_crossings: int, time_limit: float | None) -> dict:
    return {"max_crossings": max_crossings, "time_limit": time_limit}


def hopf_quotient_pattern() -> QuotientPattern:
    """Two rightward strands and one positive crossing.

    Both strands wind once, so the 2-lift is the positive Hopf link while
    the pattern is strongly 2-periodic; the quotient is a single unknotted
    component of winding 2.
    """
    return QuotientPattern(2, ("R", "R"), (CrossEvent(0, 1),))


# -- individual checks ---------------------------------------------------------

def check_lifted_skein_congruence(
    q: QuotientPattern,
    event_index: int,
    p: int,
    *,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    time_limit: float | None = DEFAULT_TIME_LIMIT,
    cache: bool = True,
) -> VerificationReport:
    """At a designated quotient crossing, the three lifts must satisfy
    nabla(plus) - nabla(minus) == z^p * nabla(zero) modulo p."""
    inputs = {
        "check": "lift_skein_congruence",
        "pattern": q.to_json_dict(),
        "digest": q.digest(),
        "event_index": event_index,
        "p": p,
        **_limits_inputs(max_crossings, time_limit),
    }
    statement = "lift_skein_congruence"
    # one memo for all three lifts: they share most subdiagrams
    limits = {
        "max_crossings": max_crossings,
        "time_limit": time_limit,
        "cache": {} if cache else False,
    }
    triple = equivariant_triple(q, event_index, p)
    try:
        n_plus = conway(triple.plus, **limits)
        n_minus = conway(triple.minus, **limits)
        n_zero = conway(triple.zero, **limits)
    except ResourceLimitError as exc:
        return VerificationReport(statement, inputs, "skipped", {"reason": str(exc)})
    residue = (n_plus - n_minus - n_zero.shift(p)).mod(p)
    if residue.is_zero:
        return VerificationReport(statement, inputs, "pass")
    witness = {
        "plus": str(n_plus),
        "minus": str(n_minus),
        "zero": str(n_zero),
        "residue_mod_p": str(residue),
    }
    return VerificationReport(statement, inputs, "fail", witness)


def check_low_coefficient_vanishing(
    q: QuotientPattern,
    p: int,
    *,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    time_limit: float | None = DEFAULT_TIME_LIMIT,
    cache: bool = True,
) -> VerificationReport:
    """For odd prime p and an orbitally separated strongly periodic pattern,
    the lift's coefficients a_{2i} vanish mod p for all 2i < p - 1.

    The lowest coefficient is cross-checked against the linking-matrix
    route.
    """
    inputs = {
        "check": "low_coefficient_vanishing",
        "pattern": q.to_json_dict(),
        "digest": q.digest(),
        "p": p,
        **_limits_inputs(max_crossings, time_limit),
    }
    statement = "low_coefficient_vanishing"
    if p == 2 or not _is_prime(p):
        return VerificationReport(
            statement, inputs, "not_applicable", {"reason": f"p={p} is not an odd prime"}
        )
    if not is_os_strongly_periodic(q, p):
        return VerificationReport(
            statement, inputs, "not_applicable",
            {"reason": "pattern is not orbitally separated strongly periodic"},
        )
    d, _ = lift(q, p)
    n = components(d).count
    if n == 0:
        return VerificationReport(
            statement, inputs, "not_applicable", {"reason": "empty lift"}
        )
    try:
        nabla = conway(d, max_crossings=max_crossings, time_limit=time_limit, cache=cache)
    except ResourceLimitError as exc:
        return VerificationReport(statement, inputs, "skipped", {"reason": str(exc)})
    try:
        nf = to_normal_form(nabla, n)
    except ParityError as exc:
        return VerificationReport(
            statement, inputs, "fail", {"reason": f"normal form violated: {exc}"}
        )
    bad = {
        f"a_{2 * i}": nf.coefficient(i)
        for i in range((p - 1) // 2)
        if nf.coefficient(i) % p != 0
    }
    a0_matrix = a0_from_matrix(linking_matrix(d))
    if nf.a0 != a0_matrix:
        bad["a_0_matrix_route"] = a0_matrix
    if bad:
        witness = {"polynomial": str(nabla), "components": n, **bad}
        return VerificationReport(statement, inputs, "fail", witness)
    return VerificationReport(statement, inputs, "pass")


def check_type_m_lowest_coefficient(
    q: QuotientPattern,
    p: int,
    expected_m: int | None = None,
    *,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    time_limit: float | None = DEFAULT_TIME_LIMIT,
    cache: bool = True,
) -> VerificationReport:
    """For a lift that decomposes with m > 0 invariant pairs, the lowest
    coefficient a_0 vanishes mod p, via both the skein engine and the
    linking-matrix cofactor."""
    inputs = {
        "check": "type_m_lowest_coefficient",
        "pattern": q.to_json_dict(),
        "digest": q.digest(),
        "p": p,
        **_limits_inputs(max_crossings, time_limit),
    }
    if expected_m is not None:
        inputs["expected_m"] = expected_m
    statement = "type_m_lowest_coefficient"
    decomp = classify_type_m(q, p)
    if decomp is None or decomp.m == 0:
        found = "none" if decomp is None else "m=0"
        if expected_m:
            return VerificationReport(
                statement, inputs, "fail",
                {"reason": f"expected m={expected_m}, classification found {found}"},
            )
        return VerificationReport(
            statement, inputs, "not_applicable", {"reason": f"classification: {found}"}
        )
    if expected_m is not None and decomp.m != expected_m:
        return VerificationReport(
            statement, inputs, "fail",
            {"reason": f"expected m={expected_m}, classified m={decomp.m}"},
        )
    d, _ = lift(q, p)
    try:
        nabla = conway(d, max_crossings=max_crossings, time_limit=time_limit, cache=cache)
    except ResourceLimitError as exc:
        return VerificationReport(statement, inputs, "skipped", {"reason": str(exc)})
    n = components(d).count
    try:
        a0_engine = to_normal_form(nabla, n).a0
    except ParityError as exc:
        return VerificationReport(
            statement, inputs, "fail", {"reason": f"normal form violated: {exc}"}
        )
    a0_matrix = a0_from_matrix(linking_matrix(d))
    if a0_engine != a0_matrix or a0_engine % p != 0:
        witness = {
            "m": decomp.m,
            "a_0_engine": a0_engine,
            "a_0_matrix": a0_matrix,
            "polynomial": str(nabla),
        }
        return VerificationReport(statement, inputs, "fail", witness)
    return VerificationReport(
        statement, inputs, "pass", {"m": decomp.m, "a_0": a0_engine}
    )


def check_period_two_counterexample() -> VerificationReport:
    """p = 2 is genuinely excluded: the Hopf lift is orbitally separated
    strongly 2-periodic yet a_0 = 1, odd."""
    inputs = {"check": "period_two_exception"}
    statement = "period_two_exception"
    q = hopf_quotient_pattern()
    d, labeling = lift(q, 2)
    nabla = conway(d)
    n = components(d).count
    problems: dict = {}
    if not is_os_strongly_periodic(q, 2):
        problems["periodicity"] = "pattern is not OS strongly 2-periodic"
    if sorted(labeling.orbit_sizes()) != [2]:
        problems["orbit_sizes"] = list(labeling.orbit_sizes())
    try:
        a0 = to_normal_form(nabla, n).a0
    except ParityError as exc:
        problems["normal_form"] = str(exc)
        a0 = None
    if a0 is not None and abs(a0) != 1:
        problems["a_0"] = a0
    if problems:
        return VerificationReport(
            statement, inputs, "fail", {"polynomial": str(nabla), **problems}
        )
    return VerificationReport(
        statement, inputs, "pass", {"polynomial": str(nabla), "a_0": a0}
    )


def check_split_divisibility(
    d: LinkDiagram,
    *,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    time_limit: float | None = DEFAULT_TIME_LIMIT,
    cache: bool = True,
) -> VerificationReport:
    """Algebraically split diagrams have nabla divisible by z^(2n-2)."""
    inputs = {
        "check": "split_divisibility",
        "pd": render_pd(d),
        **_limits_inputs(max_crossings, time_limit),
    }
    statement = "split_divisibility"
    if not is_algebraically_split(d):
        return VerificationReport(
            statement, inputs, "not_applicable",
            {"reason": "some pairwise linking number is nonzero"},
        )
    n = components(d).count
    try:
        nabla = conway(d, max_crossings=max_crossings, time_limit=time_limit, cache=cache)
    except ResourceLimitError as exc:
        return VerificationReport(statement, inputs, "skipped", {"reason": str(exc)})
    need = 2 * n - 2
    if not nabla.divisible_by_power(need):
        witness = {"polynomial": str(nabla), "components": n, "required_power": need}
        return VerificationReport(statement, inputs, "fail", witness)
    quotient_constant = nabla.coefficient(need)
    return VerificationReport(
        statement, inputs, "pass",
        {"components": n, "coefficient_of_lowest_allowed": quotient_constant},
    )


def check_matrix_route_agreement(
    d: LinkDiagram,
    *,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    time_limit: float | None = DEFAULT_TIME_LIMIT,
    cache: bool = True,
) -> VerificationReport:
    """The skein engine's a_0 equals the linking-matrix cofactor route."""
    inputs = {
        "check": "matrix_route_agreement",
        "pd": render_pd(d),
        **_limits_inputs(max_crossings, time_limit),
    }
    statement = "matrix_route_agreement"
    n = components(d).count
    if n == 0:
        return VerificationReport(
            statement, inputs, "not_applicable", {"reason": "empty diagram"}
        )
    try:
        nabla = conway(d, max_crossings=max_crossings, time_limit=time_limit, cache=cache)
    except ResourceLimitError as exc:
        return VerificationReport(statement, inputs, "skipped", {"reason": str(exc)})
    try:
        a0_engine = to_normal_form(nabla, n).a0
    except ParityError as exc:
        return VerificationReport(
            statement, inputs, "fail", {"reason": f"normal form violated: {exc}"}
        )
    a0_matrix = a0_from_matrix(linking_matrix(d))
    if a0_engine != a0_matrix:
        witness = {
            "a_0_engine": a0_engine,
            "a_0_matrix": a0_matrix,
            "polynomial": str(nabla),
        }
        return VerificationReport(statement, inputs, "fail", witness)
    return VerificationReport(statement, inputs, "pass", {"a_0": a0_engine})


# -- suites --------------------------------------------------------------------

SUITE_ORDER = ("main", "lemma41", "lemma43", "hopf")

# quotient event budgets per suite and prime; values keep lifted crossing
# counts inside the engine's comfort zone
_EVENT_BUDGET = {
    "lemma41": {3: 8, 5: 5},
    "main": {3: 6, 5: 4},
}


def _budget(suite: str, p: int) -> int:
    table = _EVENT_BUDGET[suite]
    return table.get(p, min(table.values()))


@dataclass(frozen=True)
class SuiteConfig:
    """What to run: suite ids (see SUITE_ORDER, or "all"), primes, instance
    count per (suite, prime), master seed, worker threads, and resource
    ceilings applied to every polynomial computation."""

    suites: tuple[str, ...] = ("all",)
    primes: tuple[int, ...] = (3,)
    count: int = 25
    seed: int | str = 0
    workers: int = 1
    max_crossings: int = DEFAULT_MAX_CROSSINGS
    time_limit: float | None = DEFAULT_TIME_LIMIT
    cache: bool = True
    witness_dir: str | None = None


@dataclass(frozen=True)
class SuiteResult:
    reports: tuple[VerificationReport, ...]

    @property
    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "not_applicable": 0, "skipped": 0}
        for r in self.reports:
            out[r.outcome] = out.get(r.outcome, 0) + 1
        return out

    @property
    def failed(self) -> bool:
        return any(r.outcome == "fail" for r in self.reports)

    def to_json_dict(self, include_timing: bool = False) -> dict:
        return {
            "schema": 1,
            "counts": self.counts,
            "reports": [r.to_json_dict(include_timing) for r in self.reports],
        }


def _expand_suites(names: Sequence[str]) -> tuple[str, ...]:
    out: list[str] = []
    for name in names:
        group = SUITE_ORDER if name == "all" else (name,)
        for s in group:
            if s not in SUITE_ORDER:
                raise ValueError(f"unknown suite {name!r}")
            if s not in out:
                out.append(s)
    return tuple(out)


def _task_lemma41(p: int, seed: str, index: int, limits: Mapping) -> VerificationReport:
    rng = random.Random(seed)
    budget = _budget("lemma41", p)
    for _ in range(200):
        width = rng.choice((2, 2, 3, 3, 4))
        event_count = rng.randint(2, budget)
        try:
            q = random_pattern(
                PatternConfig(width, event_count), rng, max_attempts=500
            )
        except GenerationError:
            continue
        cross_idxs = [
            i for i, ev in enumerate(q.events) if isinstance(ev, CrossEvent)
        ]
        if not cross_idxs:
            continue
        event_index = cross_idxs[rng.randrange(len(cross_idxs))]
        return check_lifted_skein_congruence(q, event_index, p, **limits)
    raise GenerationError(f"no usable instance for seed {seed!r}")


def _task_main(p: int, seed: str, index: int, limits: Mapping) -> VerificationReport:
    if p == 2 or not _is_prime(p):
        return VerificationReport(
            "low_coefficient_vanishing",
            {"check": "low_coefficient_vanishing", "p": p},
            "not_applicable",
            {"reason": f"p={p} is not an odd prime"},
        )
    rng = random.Random(seed)
    budget = _budget("main", p)
    for _ in range(50):
        width = rng.choice((2, 2, 2, 3, 4))
        event_count = rng.randint(2, budget)
        try:
            q = random_pattern(
                PatternConfig(
                    width, event_count, p=p, require_os=True, require_strong=True
                ),
                rng,
                max_attempts=4000,
            )
        except GenerationError:
            continue
        return check_low_coefficient_vanishing(q, p, **limits)
    raise GenerationError(f"no usable instance for seed {seed!r}")


def _task_lemma43(p: int, seed: str, index: int, limits: Mapping) -> VerificationReport:
    m = 1 + index % 2
    os_part = index % 4 >= 2
    q = make_type_m_pattern(m, p, seed=seed, os_part=os_part)
    return check_type_m_lowest_coefficient(q, p, expected_m=m, **limits)


def _task_hopf(p: int, seed: str, index: int, limits: Mapping) -> VerificationReport:
    return check_period_two_counterexample()


_SUITE_TASKS: dict[str, Callable[..., VerificationReport]] = {
    "main": _task_main,
    "lemma41": _task_lemma41,
    "lemma43": _task_lemma43,
    "hopf": _task_hopf,
}


def _timed(task: Callable[[], VerificationReport]) -> VerificationReport:
    start = time.perf_counter()
    report = task()
    elapsed = (time.perf_counter() - start) * 1000.0
    return dataclasses.replace(report, time_ms=elapsed)


def _persist_witness(report: VerificationReport, directory: str) -> None:
    os.makedirs(directory, exist_ok=True)
    blob = json.dumps(report.inputs, sort_keys=True, separators=(",", ":"))
    tag = hashlib.sha256(blob.encode()).hexdigest()[:12]
    path = os.path.join(directory, f"{report.statement}-{tag}.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report.to_json_dict(), fh, sort_keys=True, indent=2)
        fh.write("\n")


def run_suite(config: SuiteConfig) -> SuiteResult:
    """Generate instances, dispatch all checks, aggregate reports.

    Reports appear in deterministic task order regardless of worker count;
    failing reports are additionally written to witness_dir when set.
    """
    limits = {
        "max_crossings": config.max_crossings,
        "time_limit": config.time_limit,
        "cache": config.cache,
    }
    tasks: list[Callable[[], VerificationReport]] = []
    for suite in _expand_suites(config.suites):
        if suite == "hopf":
            tasks.append(partial(_SUITE_TASKS[suite], 2, str(config.seed), 0, limits))
            continue
        for p in config.primes:
            for i in range(config.count):
                seed = f"{config.seed}:{suite}:{p}:{i}"
                tasks.append(partial(_SUITE_TASKS[suite], p, seed, i, limits))

    if config.workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            reports = list(pool.map(_timed, tasks))
    else:
        reports = [_timed(t) for t in tasks]

    if config.witness_dir:
        for report in reports:
            if report.outcome == "fail":
                _persist_witness(report, config.witness_dir)
    return SuiteResult(tuple(reports))


def replay(inputs: Mapping) -> VerificationReport:
    """Re-run a check from a report's recorded inputs."""
    kind = inputs.get("check")
    limits = {
        "max_crossings": inputs.get("max_crossings", DEFAULT_MAX_CROSSINGS),
        "time_limit": inputs.get("time_limit", DEFAULT_TIME_LIMIT),
    }
    if kind == "lift_skein_congruence":
        q = QuotientPattern.from_json_dict(inputs["pattern"])
        return check_lifted_skein_congruence(
            q, inputs["event_index"], inputs["p"], **limits
        )
    if kind == "low_coefficient_vanishing":
        if "pattern" not in inputs:
            return check_low_coefficient_vanishing(
                QuotientPattern(0, (), ()), inputs["p"], **limits
            )
        q = QuotientPattern.from_json_dict(inputs["pattern"])
        return check_low_coefficient_vanishing(q, inputs["p"], **limits)
    if kind == "type_m_lowest_coefficient":
        q = QuotientPattern.from_json_dict(inputs["pattern"])
        return check_type_m_lowest_coefficient(
            q, inputs["p"], inputs.get("expected_m"), **limits
        )
    if kind == "period_two_exception":
        return check_period_two_counterexample()
    if kind == "split_divisibility":
        return check_split_divisibility(parse_pd(inputs["pd"]), **limits)
    if kind == "matrix_route_agreement":
        return check_matrix_route_agreement(parse_pd(inputs["pd"]), **limits)
    raise ValueError(f"unknown check {kind!r}")
