"""Exhaustive verification harness.

Enumerates every (n, forward set, backward set) instance up to a size cap,
measures all periodic data exactly, evaluates every structural predicate,
and aggregates the results.  Predicates are tri-state so that instances
violating a hypothesis are reported as not-applicable, never as violations
and never silently dropped; the violation list of a healthy run is empty.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import partial
from math import gcd, lcm
from typing import Iterator

from .compgraph import (
    SimpleGraph,
    competition_graph_formula,
    residue_clique_graph,
)
from .spectra import (
    BudgetExceeded,
    competition_table,
    power_table,
    power_is_eventually_toeplitz,
    residue_block_matrix,
)
from .toeplitz import (
    ToeplitzSpec,
    build_matrix,
    offset_generators,
    pair_sum_gcd,
)
from .walks import (
    _certify_stabilization,
    bound_hypothesis_holds,
    competition_index_bound,
    congruence_recurrence_check,
    congruent_offsets,
    step_set_run,
)

__all__ = [
    "HOLDS",
    "FAILS",
    "NOT_APPLICABLE",
    "PREDICATES",
    "InstanceReport",
    "SweepReport",
    "enumerate_specs",
    "verify_instance",
    "sweep",
    "DEFAULT_STEP_BUDGET",
]

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "n/a"

# Power-sequence scan cap per instance; generous for desk-scale sizes but
# guarantees an instance can only ever be marked incomplete, never wrong.
DEFAULT_STEP_BUDGET = 20_000

PREDICATES = (
    "gcd_equality",
    "period_match",
    "competition_period_is_1",
    "limit_block_match",
    "limit_clique_match",
    "eventually_toeplitz",
    "pqr_stabilized",
    "adjacency_necessity",
    "bound_holds",
    "p_recurrence",
    "containment_chain",
    "formula_match",
)

# Predicates whose theorem carries the two step-fit conditions as hypothesis.
_CONDITIONAL = frozenset(
    (
        "period_match",
        "competition_period_is_1",
        "limit_block_match",
        "limit_clique_match",
        "eventually_toeplitz",
        "pqr_stabilized",
        "bound_holds",
        "p_recurrence",
    )
)


@dataclass(slots=True)
class InstanceReport:
    """Everything measured and checked for one instance."""

    spec: ToeplitzSpec
    d: int = 0
    d_prime: int = 0
    predicted: int = 0
    cond1: bool = False
    cond2: bool = False
    power_index: int | None = None
    power_period: int | None = None
    comp_index: int | None = None
    comp_period: int | None = None
    m_emp: int | None = None
    bound_value: int | None = None
    bound_hypothesis: bool | None = None
    checks: dict = field(default_factory=dict)
    incomplete: bool = False

    def violations(self) -> list[str]:
        return [name for name, outcome in self.checks.items() if outcome == FAILS]

    def to_json_dict(self) -> dict:
        return {
            "spec": self.spec.literal,
            "d": self.d,
            "d_prime": self.d_prime,
            "predicted_period": self.predicted,
            "cond1": self.cond1,
            "cond2": self.cond2,
            "power_index": self.power_index,
            "power_period": self.power_period,
            "competition_index": self.comp_index,
            "competition_period": self.comp_period,
            "m_emp": self.m_emp,
            "bound_value": self.bound_value,
            "bound_hypothesis": self.bound_hypothesis,
            "checks": dict(self.checks),
            "incomplete": self.incomplete,
        }


def enumerate_specs(n_max: int, require_conditions: bool) -> Iterator[ToeplitzSpec]:
    """All instances with 2 <= n <= n_max, in deterministic order: n
    ascending, then the two step sets as bitmask integers ascending."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    for n in range(2, n_max + 1):
        subsets = []
        for mask in range(1, 1 << (n - 1)):
            subsets.append(tuple(e for e in range(1, n) if (mask >> (e - 1)) & 1))
        for fwd in subsets:
            for bwd in subsets:
                spec = ToeplitzSpec(n, fwd, bwd)
                if require_conditions and not spec.conditions_hold:
                    continue
                yield spec


def _not_applicable_report(spec: ToeplitzSpec, partial: InstanceReport) -> InstanceReport:
    for name in PREDICATES:
        partial.checks.setdefault(name, NOT_APPLICABLE)
    partial.checks = {name: partial.checks[name] for name in PREDICATES}
    partial.incomplete = True
    return partial


def verify_instance(spec: ToeplitzSpec, step_budget: int = DEFAULT_STEP_BUDGET) -> InstanceReport:
    """Run every predicate on one instance with exact, tail-derived
    horizons.  Conditional predicates are marked not-applicable when the
    step-fit conditions fail."""
    n = spec.n
    d = pair_sum_gcd(spec)
    d_prime = gcd(d, spec.min_forward)
    pi = d // d_prime
    report = InstanceReport(
        spec=spec,
        d=d,
        d_prime=d_prime,
        predicted=pi,
        cond1=spec.cond1,
        cond2=spec.cond2,
    )
    checks = report.checks

    gens = offset_generators(spec)
    g = 0
    for v in gens:
        g = gcd(g, v)
    checks["gcd_equality"] = HOLDS if g == d else FAILS

    A = build_matrix(spec)
    try:
        table = power_table(A, max_steps=step_budget)
    except BudgetExceeded:
        return _not_applicable_report(spec, report)
    tail, seq = table
    qa, pa = tail.index, tail.period
    report.power_index, report.power_period = qa, pa

    ctail, bs = competition_table(A, power=table)
    report.comp_index, report.comp_period = ctail.index, ctail.period

    # Unconditional checks -------------------------------------------------
    formula = competition_graph_formula(spec)
    one_step = SimpleGraph.from_symmetric_matrix(bs[0])
    checks["formula_match"] = HOLDS if formula.edges == one_step.edges else FAILS

    adjacency_ok = True
    for m in range(qa + pa):  # bs[m] is B_{m+1}; horizon = power index + period
        for u, v in SimpleGraph.from_symmetric_matrix(bs[m]).edges:
            if (v - u) % d:
                adjacency_ok = False
                break
        if not adjacency_ok:
            break
    checks["adjacency_necessity"] = HOLDS if adjacency_ok else FAILS

    conditions = spec.conditions_hold
    chain_horizon = qa + pa
    pqr_horizon = qa + 2 * pa * pi
    horizon = pqr_horizon if conditions else chain_horizon
    if horizon > step_budget:
        return _not_applicable_report(spec, report)
    run = step_set_run(spec, horizon, table=table)
    checks["containment_chain"] = HOLDS if all(ss.chain_holds for ss in run) else FAILS

    if not conditions:
        for name in _CONDITIONAL:
            checks[name] = NOT_APPLICABLE
        report.bound_value = competition_index_bound(spec)
        report.checks = {name: checks[name] for name in PREDICATES}
        return report

    # Conditional checks ---------------------------------------------------
    checks["period_match"] = HOLDS if pa == pi else FAILS
    checks["competition_period_is_1"] = HOLDS if ctail.period == 1 else FAILS

    if ctail.period == 1:
        limit = ctail.cycle[0]
        _, expected = residue_block_matrix(n, d)
        checks["limit_block_match"] = HOLDS if limit == expected else FAILS
        limit_g = SimpleGraph.from_symmetric_matrix(limit)
        checks["limit_clique_match"] = (
            HOLDS if limit_g.edges == residue_clique_graph(n, d).edges else FAILS
        )
    else:
        checks["limit_block_match"] = FAILS
        checks["limit_clique_match"] = FAILS

    toeplitz_holds, _ = power_is_eventually_toeplitz(A, tail, seq)
    checks["eventually_toeplitz"] = HOLDS if toeplitz_holds else FAILS

    stab = _certify_stabilization(
        [ss.all_equal for ss in run], qa, pa, lcm(pi, pa), horizon
    )
    report.m_emp = stab.m_emp
    checks["pqr_stabilized"] = HOLDS if (stab.m_emp is not None and stab.certified) else FAILS

    recurrence_ok = all(congruence_recurrence_check(spec, i) for i in range(2, 2 * pi + 3))
    periodicity_ok = all(
        congruent_offsets(spec, i) == congruent_offsets(spec, i + pi) for i in range(1, pi + 2)
    )
    window = [congruent_offsets(spec, i) for i in range(1, pi + 1)]
    disjoint_ok = all(
        window[i].isdisjoint(window[j]) for i in range(pi) for j in range(i + 1, pi)
    )
    checks["p_recurrence"] = HOLDS if (recurrence_ok and periodicity_ok and disjoint_ok) else FAILS

    report.bound_value = competition_index_bound(spec)
    report.bound_hypothesis = bound_hypothesis_holds(spec)
    if report.bound_hypothesis:
        checks["bound_holds"] = HOLDS if ctail.index <= report.bound_value else FAILS
    else:
        checks["bound_holds"] = NOT_APPLICABLE

    report.checks = {name: checks[name] for name in PREDICATES}
    return report


# -- sweeping -------------------------------------------------------------------


@dataclass(slots=True)
class SweepReport:
    """Order-insensitive aggregate of a full enumeration."""

    n_max: int
    require_conditions: bool
    instances: int = 0
    condition_instances: int = 0
    outcome_counts: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    incomplete: list = field(default_factory=list)

    def add(self, report: InstanceReport):
        self.instances += 1
        if report.cond1 and report.cond2:
            self.condition_instances += 1
        if report.incomplete:
            self.incomplete.append(report.spec.literal)
        for name, outcome in report.checks.items():
            counts = self.outcome_counts.setdefault(
                name, {HOLDS: 0, FAILS: 0, NOT_APPLICABLE: 0}
            )
            counts[outcome] += 1
            if outcome == FAILS:
                self.violations.append((report.spec.literal, name))

    @property
    def violation_count(self) -> int:
        return len(self.violations)

    def fails(self, predicate: str) -> int:
        return self.outcome_counts.get(predicate, {}).get(FAILS, 0)

    def holds(self, predicate: str) -> int:
        return self.outcome_counts.get(predicate, {}).get(HOLDS, 0)

    def summary_table(self) -> str:
        lines = [
            f"instances={self.instances} (conditions hold on {self.condition_instances}), "
            f"n_max={self.n_max}, filtered={self.require_conditions}",
            f"{'predicate':<24} {'holds':>8} {'fails':>8} {'n/a':>8}",
        ]
        for name in PREDICATES:
            counts = self.outcome_counts.get(name, {})
            lines.append(
                f"{name:<24} {counts.get(HOLDS, 0):>8} "
                f"{counts.get(FAILS, 0):>8} {counts.get(NOT_APPLICABLE, 0):>8}"
            )
        if self.incomplete:
            lines.append(f"incomplete instances: {len(self.incomplete)}")
        lines.append(f"violations: {self.violation_count}")
        for literal, name in self.violations[:50]:
            lines.append(f"  VIOLATION {literal} {name}")
        if self.violation_count > 50:
            lines.append(f"  ... and {self.violation_count - 50} more")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "require_conditions": self.require_conditions,
            "instances": self.instances,
            "condition_instances": self.condition_instances,
            "outcome_counts": self.outcome_counts,
            "violations": [list(v) for v in self.violations],
            "incomplete": list(self.incomplete),
        }


def sweep(
    n_max: int,
    require_conditions: bool,
    jobs: int = 1,
    step_budget: int = DEFAULT_STEP_BUDGET,
    report_stream=None,
    progress=None,
) -> SweepReport:
    """Verify every instance up to n_max and fold the reports.

    Per-instance work is pure, so any worker count produces the same
    aggregate; jobs > 1 fans out over processes.  report_stream, when
    given, receives one JSON line per instance in enumeration order.
    """
    agg = SweepReport(n_max=n_max, require_conditions=require_conditions)
    specs = enumerate_specs(n_max, require_conditions)
    worker = partial(verify_instance, step_budget=step_budget)

    def fold(reports):
        done = 0
        for report in reports:
            agg.add(report)
            if report_stream is not None:
                report_stream.write(json.dumps(report.to_json_dict()) + "\n")
            done += 1
            if progress is not None and done % progress == 0:
                print(f"  ... {done} instances", flush=True)

    if jobs <= 1:
        fold(worker(spec) for spec in specs)
    else:
        import multiprocessing as mp

        with mp.Pool(jobs) as pool:
            fold(pool.imap(worker, specs, chunksize=256))
    return agg
