"""Embedded regression goldens for the bundled worked examples.

Each golden re-derives a documented fact about one of the three running
instances (T5<2;4>, T8<1,4;2,5>, T6<2,4;4,5>) and diffs the result against
the frozen expectation.  The CLI `examples` command runs them all and
exits nonzero on any mismatch.
"""

from __future__ import annotations

from .boolmat import BoolMatrix
from .compgraph import strong_components
from .spectra import (
    competition_limit,
    competition_tail,
    power_tail,
    residue_block_matrix,
)
from .toeplitz import build_matrix, pair_sum_gcd, parse_literal
from .walks import (
    Arc,
    Walk,
    WalkConstructionError,
    build_walk_with_counts,
    competition_index_bound,
    congruent_offsets,
    combination_offsets,
    extend_walk_exact,
    realized_offsets,
    walk_offset_decomposition,
)

T5 = "T5<2;4>"
T8 = "T8<1,4;2,5>"
T6 = "T6<2,4;4,5>"

_T5_MATRIX = """
5
00100
00010
00001
00000
10000
"""

# The three matrices the power sequence of T5<2;4> cycles through, starting
# at the square: exponents 2, 3, 4 modulo 3.
_T5_CYCLE = {
    2: """
5
00001
00000
10000
00000
00100
""",
    0: """
5
10000
00000
00100
00000
00001
""",
    1: """
5
00100
00000
00001
00000
10000
""",
}

_T8_MATRIX = """
8
01001000
00100100
10010010
01001001
00100100
10010010
01001001
00100100
"""

_T6_MATRIX = """
6
001010
000101
000010
000001
100000
110000
"""


def _mat(text: str) -> BoolMatrix:
    return BoolMatrix.from_text(text)


def _check(actual, expected) -> tuple[bool, str]:
    if actual == expected:
        return True, ""
    return False, f"expected {expected!r}, got {actual!r}"


def golden_t5_matrix():
    return _check(build_matrix(parse_literal(T5)), _mat(_T5_MATRIX))


def golden_t5_power_cycle():
    a = build_matrix(parse_literal(T5))
    for m in range(2, 8):
        want = _mat(_T5_CYCLE[m % 3])
        if a.power(m) != want:
            return False, f"power {m} does not match the frozen cycle matrix"
    return True, ""


def golden_t5_tail():
    tail = power_tail(build_matrix(parse_literal(T5)))
    return _check((tail.index, tail.period), (2, 3))


def golden_t5_powers_not_toeplitz():
    a = build_matrix(parse_literal(T5))
    bad = [m for m in range(2, 8) if a.power(m).is_toeplitz()]
    return _check(bad, [])


def golden_t8_matrix():
    return _check(build_matrix(parse_literal(T8)), _mat(_T8_MATRIX))


def golden_t8_gcd():
    return _check(pair_sum_gcd(parse_literal(T8)), 3)


def golden_t8_step_sets():
    spec = parse_literal(T8)
    expected3 = frozenset({-6, -3, 0, 3, 6})
    for name, fn in (
        ("congruent", congruent_offsets),
        ("combination", combination_offsets),
        ("realized", realized_offsets),
    ):
        if fn(spec, 3) != expected3:
            return False, f"{name} offsets at i=3 differ from the frozen set"
    ok, msg = _check(congruent_offsets(spec, 1), frozenset({-5, -2, 1, 4, 7}))
    if not ok:
        return ok, msg
    return _check(realized_offsets(spec, 1), frozenset({-5, -2, 1, 4}))


def golden_t8_period():
    spec = parse_literal(T8)
    tail = power_tail(build_matrix(spec))
    return _check(tail.period, 3)


def golden_t8_limit():
    spec = parse_literal(T8)
    limit = competition_limit(build_matrix(spec))
    _, expected = residue_block_matrix(8, 3)
    ok, msg = _check(limit, expected)
    if not ok:
        return ok, msg
    return _check(competition_tail(build_matrix(spec)).period, 1)


def golden_t8_walk_witness():
    # 4 -> 5 -> 3 -> 1 realizes offset -3 in three arcs.
    spec = parse_literal(T8)
    walk = Walk(
        spec,
        (4, 5, 3, 1),
        (Arc("s", 1), Arc("t", 1), Arc("t", 1)),
    )
    a, b, length, offset = walk_offset_decomposition(walk)
    return _check((a, b, length, offset), ((1, 0), (2, 0), 3, -3))


def golden_t8_walk_counts():
    # From vertex 7: five arcs of +4 and six arcs of -5, shortest steps free.
    spec = parse_literal(T8)
    walk = build_walk_with_counts(spec, 7, s_counts=(5,), t_counts=(6,))
    a, b = walk.arc_counts()
    return _check((a[1], b[1]), (5, 6))


def golden_t8_three_shortest():
    # Offset +3 as three shortest forward steps: 1 -> 2 -> 3 -> 4.
    spec = parse_literal(T8)
    walk = extend_walk_exact(spec, 1, 3, 0, s_counts=(0,), t_counts=(0,))
    return _check(walk.vertices, (1, 2, 3, 4))


def golden_t8_bound():
    return _check(competition_index_bound(parse_literal(T8)), 30)


def golden_t2_matrix():
    return _check(build_matrix(parse_literal("T2<1;1>")), BoolMatrix(2, (0b10, 0b01)))


def golden_t6_matrix():
    return _check(build_matrix(parse_literal(T6)), _mat(_T6_MATRIX))


def golden_t6_components():
    comps = strong_components(build_matrix(parse_literal(T6)))
    return _check(comps, ((1, 3, 5), (2, 4, 6)))


def golden_t6_walk_fails():
    # No walk from vertex 1 can contain an arc dropping by 5: the only such
    # arc starts at 6, which is unreachable from 1.
    spec = parse_literal(T6)
    try:
        build_walk_with_counts(spec, 1, s_counts=(0,), t_counts=(1,))
    except WalkConstructionError:
        return True, ""
    return False, "walk construction unexpectedly succeeded"


GOLDENS = [
    ("t5_matrix", golden_t5_matrix),
    ("t5_power_cycle", golden_t5_power_cycle),
    ("t5_tail", golden_t5_tail),
    ("t5_powers_not_toeplitz", golden_t5_powers_not_toeplitz),
    ("t8_matrix", golden_t8_matrix),
    ("t8_gcd", golden_t8_gcd),
    ("t8_step_sets", golden_t8_step_sets),
    ("t8_period", golden_t8_period),
    ("t8_limit", golden_t8_limit),
    ("t8_walk_witness", golden_t8_walk_witness),
    ("t8_walk_counts", golden_t8_walk_counts),
    ("t8_three_shortest", golden_t8_three_shortest),
    ("t8_bound", golden_t8_bound),
    ("t2_matrix", golden_t2_matrix),
    ("t6_matrix", golden_t6_matrix),
    ("t6_components", golden_t6_components),
    ("t6_walk_fails", golden_t6_walk_fails),
]


def run_all():
    """Yield (name, ok, detail) for every golden."""
    for name, fn in GOLDENS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a mismatch, not an abort
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        yield name, ok, detail
