"""Offset step sets and constructive directed walks.

For a step count i, three nested sets of vertex offsets inside
[-n+1, n-1] matter:

  congruent    offsets matching i times the shortest forward step, mod the
               pair-sum gcd;
  combination  offsets writable as a signed combination of exactly i steps
               (forward steps count +, backward steps count -), with
               intermediate sums unconstrained;
  realized     offsets ell such that EVERY vertex pair at offset ell is
               joined by a directed walk of exactly i arcs.

realized <= combination <= congruent always; when both step-fit conditions
hold the three sets coincide from some step count on, and this module both
detects that point empirically and certifies it by periodicity.  The rest
of the module builds explicit walks with prescribed arc-type counts and
evaluates the competition-index bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import NamedTuple

from .boolmat import BoolMatrix
from .spectra import PeriodicTail, power_table
from .toeplitz import ToeplitzSpec, build_matrix, pair_sum_gcd, predicted_period

__all__ = [
    "StepSets",
    "StabilizationResult",
    "Arc",
    "Walk",
    "WalkPlan",
    "SchedulingFailure",
    "WalkConstructionError",
    "InsufficientArcCount",
    "EndpointOutOfRange",
    "congruent_offsets",
    "combination_offsets",
    "realized_offsets",
    "step_sets",
    "step_set_run",
    "step_set_stabilization",
    "congruence_recurrence_check",
    "schedule_steps",
    "build_walk_with_counts",
    "extend_walk_exact",
    "walk_offset_decomposition",
    "walk_length_bound",
    "competition_index_bound",
    "bound_hypothesis_holds",
]


class SchedulingFailure(Exception):
    """No ordering of the requested steps stays inside the vertex range."""


class WalkConstructionError(Exception):
    """A requested arc cannot be positioned from the current vertex."""


class InsufficientArcCount(ValueError):
    """Requested total below what the base walk already uses."""


class EndpointOutOfRange(ValueError):
    """The prescribed arc counts land outside the vertex range."""


# -- step sets ---------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class StepSets:
    """The three offset sets at one step count."""

    i: int
    congruent: frozenset
    combination: frozenset
    realized: frozenset

    @property
    def chain_holds(self) -> bool:
        return self.realized <= self.combination <= self.congruent

    @property
    def all_equal(self) -> bool:
        return self.congruent == self.combination == self.realized

    def to_json_dict(self) -> dict:
        return {
            "i": self.i,
            "P": sorted(self.congruent),
            "Q": sorted(self.combination),
            "R": sorted(self.realized),
        }


def congruent_offsets(spec: ToeplitzSpec, i: int) -> frozenset:
    """Offsets in [-n+1, n-1] congruent to i * (min forward step) mod the
    pair-sum gcd."""
    if i < 1:
        raise ValueError("step count must be at least 1")
    n = spec.n
    d = pair_sum_gcd(spec)
    r = (i * spec.min_forward) % d
    first = -(n - 1) + (r - (-(n - 1))) % d
    return frozenset(range(first, n, d))


def _combination_shifts(spec: ToeplitzSpec) -> list[int]:
    # Sums after j terms are stored at bit (value + j * max_backward) >= 0.
    tmax = spec.max_backward
    return [s + tmax for s in spec.forward_steps] + [tmax - t for t in spec.backward_steps]


def _mask_to_offsets(mask: int, base: int, n: int) -> frozenset:
    lo, hi = -(n - 1), n - 1
    out = []
    for ell in range(max(lo, -base), hi + 1):
        if (mask >> (ell + base)) & 1:
            out.append(ell)
    return frozenset(out)


def combination_offsets(spec: ToeplitzSpec, i: int) -> frozenset:
    """Offsets reachable as a sum of exactly i signed steps, clipped to
    [-n+1, n-1] only at the end (intermediate sums may leave the range)."""
    if i < 1:
        raise ValueError("step count must be at least 1")
    shifts = _combination_shifts(spec)
    mask = 1
    for _ in range(i):
        nxt = 0
        for sh in shifts:
            nxt |= mask << sh
        mask = nxt
    return _mask_to_offsets(mask, i * spec.max_backward, spec.n)


def _full_diagonal_offsets(mat: BoolMatrix) -> frozenset:
    """Offsets ell whose whole diagonal of entries (u, u+ell) is ones."""
    n = mat.n
    rows = mat.rows
    out = []
    for off in range(-(n - 1), n):
        rng = range(0, n - off) if off >= 0 else range(-off, n)
        if all((rows[r] >> (r + off)) & 1 for r in rng):
            out.append(off)
    return frozenset(out)


def realized_offsets(spec: ToeplitzSpec, i: int) -> frozenset:
    """Offsets ell such that every pair (u, u+ell) is joined by a walk of
    exactly i arcs, read off the full diagonals of the i-th power."""
    if i < 1:
        raise ValueError("step count must be at least 1")
    return _full_diagonal_offsets(build_matrix(spec).power(i))


def step_sets(spec: ToeplitzSpec, i: int) -> StepSets:
    return StepSets(
        i, congruent_offsets(spec, i), combination_offsets(spec, i), realized_offsets(spec, i)
    )


def step_set_run(spec: ToeplitzSpec, horizon: int, table=None) -> list[StepSets]:
    """StepSets for i = 1..horizon, sharing one power scan and one
    combination mask stream across all step counts."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    n = spec.n
    d = pair_sum_gcd(spec)
    s1 = spec.min_forward
    tail, seq = table if table is not None else power_table(build_matrix(spec))

    congruent_by_residue: dict[int, frozenset] = {}
    realized_by_cycle: list[frozenset | None] = [None] * tail.period

    shifts = _combination_shifts(spec)
    tmax = spec.max_backward
    mask = 1

    out = []
    for i in range(1, horizon + 1):
        r = (i * s1) % d
        congruent = congruent_by_residue.get(r)
        if congruent is None:
            congruent = congruent_by_residue[r] = congruent_offsets(spec, i)

        nxt = 0
        for sh in shifts:
            nxt |= mask << sh
        mask = nxt
        combination = _mask_to_offsets(mask, i * tmax, n)

        if i >= tail.index:
            j = (i - tail.index) % tail.period
            realized = realized_by_cycle[j]
            if realized is None:
                realized = realized_by_cycle[j] = _full_diagonal_offsets(tail.cycle[j])
        else:
            realized = _full_diagonal_offsets(seq[i - 1])

        out.append(StepSets(i, congruent, combination, realized))
    return out


@dataclass(frozen=True, slots=True)
class StabilizationResult:
    """Outcome of scanning for the point where the three step sets agree.

    m_emp is the smallest index whose whole suffix up to the horizon has
    all three sets equal (None if they differ at the horizon itself).
    certified means the outcome provably extends beyond the horizon: the
    congruent sets repeat with the predicted period and the realized sets
    repeat with the power cycle, so one clean combined period certifies
    "for every larger i" and one failure inside the periodic regime
    certifies "never".
    """

    m_emp: int | None
    certified: bool
    horizon: int
    power_index: int
    power_period: int


def default_stabilization_horizon(spec: ToeplitzSpec, tail: PeriodicTail) -> int:
    return tail.index + 2 * tail.period * predicted_period(spec)


def _certify_stabilization(
    equal_flags: list[bool], power_index: int, power_period: int, combined_period: int, horizon: int
) -> StabilizationResult:
    m_emp = None
    if equal_flags and equal_flags[-1]:
        m_emp = horizon
        while m_emp > 1 and equal_flags[m_emp - 2]:
            m_emp -= 1
    if m_emp is None:
        certified = horizon >= power_index
    else:
        certified = horizon >= max(m_emp, power_index) + combined_period - 1
    return StabilizationResult(m_emp, certified, horizon, power_index, power_period)


def step_set_stabilization(
    spec: ToeplitzSpec, horizon: int | None = None, table=None, run=None
) -> StabilizationResult:
    """Find and certify the first step count from which the three offset
    sets coincide for good; see StabilizationResult for the semantics."""
    if table is None:
        table = power_table(build_matrix(spec))
    tail = table[0]
    if horizon is None:
        horizon = default_stabilization_horizon(spec, tail)
    if run is None:
        run = step_set_run(spec, horizon, table=table)
    combined = lcm(predicted_period(spec), tail.period)
    flags = [ss.all_equal for ss in run[:horizon]]
    return _certify_stabilization(flags, tail.index, tail.period, combined, horizon)


def congruence_recurrence_check(spec: ToeplitzSpec, i: int) -> bool:
    """The congruent set at i must be rebuildable from the one at i-1 by
    adding the shortest forward step or subtracting the shortest backward
    step (staying inside the offset range)."""
    if i < 2:
        raise ValueError("the recurrence starts at step count 2")
    n = spec.n
    prev = congruent_offsets(spec, i - 1)
    s1, t1 = spec.min_forward, spec.min_backward
    rebuilt = frozenset(
        ell
        for ell in range(-(n - 1), n)
        if (ell - s1) in prev or (ell + t1) in prev
    )
    return rebuilt == congruent_offsets(spec, i)


# -- walks --------------------------------------------------------------------


class Arc(NamedTuple):
    """One step of a walk: kind "s" moves up by the indexed forward step,
    kind "t" moves down by the indexed backward step (indices 1-based)."""

    kind: str
    index: int


@dataclass(frozen=True, slots=True)
class Walk:
    """A validated directed walk: vertices plus one typed arc per move."""

    spec: ToeplitzSpec
    vertices: tuple[int, ...]
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        spec = self.spec
        if len(self.vertices) != len(self.arcs) + 1:
            raise ValueError("vertex count must be arc count + 1")
        if not self.vertices:
            raise ValueError("a walk has at least one vertex")
        for v in self.vertices:
            if not 1 <= v <= spec.n:
                raise ValueError(f"vertex {v} outside [1, {spec.n}]")
        for k, arc in enumerate(self.arcs):
            delta = self.vertices[k + 1] - self.vertices[k]
            if arc.kind == "s":
                want = spec.forward_steps[arc.index - 1]
            elif arc.kind == "t":
                want = -spec.backward_steps[arc.index - 1]
            else:
                raise ValueError(f"unknown arc kind {arc.kind!r}")
            if delta != want:
                raise ValueError(
                    f"arc {k}: step {delta} does not match {arc.kind}{arc.index}"
                )

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.arcs)

    def arc_counts(self):
        """(per-forward-step counts, per-backward-step counts)."""
        a = [0] * len(self.spec.forward_steps)
        b = [0] * len(self.spec.backward_steps)
        for arc in self.arcs:
            if arc.kind == "s":
                a[arc.index - 1] += 1
            else:
                b[arc.index - 1] += 1
        return tuple(a), tuple(b)

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arcs": [{"kind": a.kind, "index": a.index} for a in self.arcs],
        }

    def __str__(self):
        return " -> ".join(map(str, self.vertices))


@dataclass(frozen=True, slots=True)
class WalkPlan:
    """A walk request: start vertex plus per-step-type arc counts."""

    spec: ToeplitzSpec
    start: int
    forward_counts: tuple[int, ...]
    backward_counts: tuple[int, ...]

    def __post_init__(self):
        spec = self.spec
        if not 1 <= self.start <= spec.n:
            raise ValueError(f"start vertex {self.start} outside [1, {spec.n}]")
        if len(self.forward_counts) != len(spec.forward_steps):
            raise ValueError("one forward count per forward step required")
        if len(self.backward_counts) != len(spec.backward_steps):
            raise ValueError("one backward count per backward step required")
        if any(c < 0 for c in self.forward_counts + self.backward_counts):
            raise ValueError("arc counts must be nonnegative")

    @property
    def endpoint(self) -> int:
        off = sum(c * s for c, s in zip(self.forward_counts, self.spec.forward_steps))
        off -= sum(c * t for c, t in zip(self.backward_counts, self.spec.backward_steps))
        return self.start + off


def walk_offset_decomposition(walk: Walk):
    """(forward counts, backward counts, length, end - start); the counts
    always recombine into the length and the offset."""
    a, b = walk.arc_counts()
    spec = walk.spec
    length = walk.length
    offset = walk.end - walk.start
    assert sum(a) + sum(b) == length
    recombined = sum(x * s for x, s in zip(a, spec.forward_steps))
    recombined -= sum(x * t for x, t in zip(b, spec.backward_steps))
    assert recombined == offset
    return a, b, length, offset


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def schedule_steps(start: int, terms, n: int) -> tuple[int, ...]:
    """Order a multiset of signed steps so every prefix keeps the position
    inside [1, n].

    Preconditions: start and start + sum(terms) are vertices.  A valid
    ordering always exists when n is at least the largest positive step
    plus the largest negative step magnitude; outside that regime the
    exhaustive backtracking search may fail, which raises
    SchedulingFailure rather than returning a bad ordering.
    """
    terms = tuple(terms)
    if any(t == 0 for t in terms):
        raise ValueError("steps must be nonzero")
    if not 1 <= start <= n:
        raise ValueError(f"start vertex {start} outside [1, {n}]")
    if not 1 <= start + sum(terms) <= n:
        raise ValueError("endpoint outside [1, n]")
    if not terms:
        return ()

    keys = sorted(set(terms), reverse=True)
    remaining = tuple(terms.count(k) for k in keys)
    total = len(terms)

    order: list[int] = []
    dead: set = set()
    frames: list[list] = [[start, remaining, 0]]
    while frames:
        if len(order) == total:
            return tuple(order)
        pos, rem, ki = frames[-1]
        advanced = False
        while ki < len(keys):
            step = keys[ki]
            if rem[ki] > 0 and 1 <= pos + step <= n:
                child_rem = rem[:ki] + (rem[ki] - 1,) + rem[ki + 1 :]
                if (pos + step, child_rem) not in dead:
                    frames[-1][2] = ki + 1
                    order.append(step)
                    frames.append([pos + step, child_rem, 0])
                    advanced = True
                    break
            ki += 1
        if not advanced:
            dead.add((pos, rem))
            frames.pop()
            if order:
                order.pop()
    raise SchedulingFailure(f"no ordering of {terms} from {start} stays inside [1, {n}]")


def build_walk_with_counts(spec: ToeplitzSpec, start: int, s_counts=(), t_counts=()) -> Walk:
    """Walk from `start` containing exactly the requested number of each
    higher-index arc (s_counts for forward steps 2.., t_counts for
    backward steps 2..); shortest-step arcs are inserted freely as
    positioning moves.

    Before each requested forward arc the walk descends by shortest
    backward steps just far enough for the arc to fit; before each
    requested backward arc it ascends symmetrically.  Under the two
    step-fit conditions this always succeeds and the total length stays
    within (sum of requests) * (max(ceil(tmax/s1), ceil(smax/t1)) + 1).
    """
    n = spec.n
    fwd, bwd = spec.forward_steps, spec.backward_steps
    if len(s_counts) != max(0, len(fwd) - 1):
        raise ValueError("s_counts must cover forward steps 2..k1")
    if len(t_counts) != max(0, len(bwd) - 1):
        raise ValueError("t_counts must cover backward steps 2..k2")
    if not 1 <= start <= n:
        raise ValueError(f"start vertex {start} outside [1, {n}]")
    if any(c < 0 for c in tuple(s_counts) + tuple(t_counts)):
        raise ValueError("arc counts must be nonnegative")

    s1, t1 = spec.min_forward, spec.min_backward
    verts = [start]
    arcs: list[Arc] = []
    w = start

    def descend_to(limit: int):
        # Take shortest backward steps until the position is <= limit.
        nonlocal w
        if w <= limit:
            return
        r0 = _ceil_div(w - limit, t1)
        if w - r0 * t1 < 1:
            raise WalkConstructionError(
                f"cannot descend from {w} to at most {limit} inside [1, {n}]"
            )
        for _ in range(r0):
            w -= t1
            verts.append(w)
            arcs.append(Arc("t", 1))

    def ascend_to(limit: int):
        nonlocal w
        if w >= limit:
            return
        r0 = _ceil_div(limit - w, s1)
        if w + r0 * s1 > n:
            raise WalkConstructionError(
                f"cannot ascend from {w} to at least {limit} inside [1, {n}]"
            )
        for _ in range(r0):
            w += s1
            verts.append(w)
            arcs.append(Arc("s", 1))

    for idx, count in enumerate(s_counts, start=2):
        step = fwd[idx - 1]
        for _ in range(count):
            descend_to(n - step)
            w += step
            verts.append(w)
            arcs.append(Arc("s", idx))
    for idx, count in enumerate(t_counts, start=2):
        step = bwd[idx - 1]
        for _ in range(count):
            ascend_to(step + 1)
            w -= step
            verts.append(w)
            arcs.append(Arc("t", idx))

    return Walk(spec, tuple(verts), tuple(arcs))


def extend_walk_exact(
    spec: ToeplitzSpec, start: int, s1_count: int, t1_count: int, s_counts=(), t_counts=()
) -> Walk:
    """Walk from `start` with the FULL arc-type multiset prescribed,
    including the two shortest steps.

    Builds the higher-index walk first, then appends an ordering of the
    leftover shortest steps that never leaves the vertex range.  Raises
    InsufficientArcCount when the shortest-step totals fall below what the
    base walk already used, EndpointOutOfRange when the prescribed counts
    do not land on a vertex.
    """
    base = build_walk_with_counts(spec, start, s_counts, t_counts)
    a_used, b_used = base.arc_counts()
    if s1_count < a_used[0]:
        raise InsufficientArcCount(
            f"need at least {a_used[0]} shortest forward arcs, got {s1_count}"
        )
    if t1_count < b_used[0]:
        raise InsufficientArcCount(
            f"need at least {b_used[0]} shortest backward arcs, got {t1_count}"
        )

    fwd, bwd = spec.forward_steps, spec.backward_steps
    endpoint = start + s1_count * fwd[0] - t1_count * bwd[0]
    endpoint += sum(c * s for c, s in zip(s_counts, fwd[1:]))
    endpoint -= sum(c * t for c, t in zip(t_counts, bwd[1:]))
    if not 1 <= endpoint <= spec.n:
        raise EndpointOutOfRange(f"prescribed counts end at {endpoint}, outside [1, {spec.n}]")

    residual = [fwd[0]] * (s1_count - a_used[0]) + [-bwd[0]] * (t1_count - b_used[0])
    ordering = schedule_steps(base.end, residual, spec.n)

    verts = list(base.vertices)
    arcs = list(base.arcs)
    w = base.end
    for step in ordering:
        w += step
        verts.append(w)
        arcs.append(Arc("s", 1) if step > 0 else Arc("t", 1))
    return Walk(spec, tuple(verts), tuple(arcs))


# -- competition-index bound ---------------------------------------------------


def walk_length_bound(spec: ToeplitzSpec, total_requests: int) -> int:
    """Length cap for build_walk_with_counts with the given request total."""
    per_arc = max(
        _ceil_div(spec.max_backward, spec.min_forward),
        _ceil_div(spec.max_forward, spec.min_backward),
    )
    return total_requests * (per_arc + 1)


def competition_index_bound(spec: ToeplitzSpec) -> int:
    """2*(ceil(n/d)-1)*(max(ceil(tmax/s1), ceil(smax/t1))+1) + 2*(s1+t1)."""
    d = pair_sum_gcd(spec)
    per_arc = max(
        _ceil_div(spec.max_backward, spec.min_forward),
        _ceil_div(spec.max_forward, spec.min_backward),
    )
    return 2 * (_ceil_div(spec.n, d) - 1) * (per_arc + 1) + 2 * (
        spec.min_forward + spec.min_backward
    )


def bound_hypothesis_holds(spec: ToeplitzSpec) -> bool:
    """Whether each residue class induces an irreducible principal
    submatrix of A A^T, i.e. a connected subgraph (loops ignored; single
    vertices count as irreducible)."""
    A = build_matrix(spec)
    b = A.multiply(A.transpose())
    d = pair_sum_gcd(spec)
    n = spec.n
    for r in range(d):
        verts = [v for v in range(1, n + 1) if v % d == (r + 1) % d]
        if len(verts) <= 1:
            continue
        members = set(verts)
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            u = stack.pop()
            row = b.rows[u - 1]
            for v in members:
                if v not in seen and v != u and (row >> (v - 1)) & 1:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != len(verts):
            return False
    return True
