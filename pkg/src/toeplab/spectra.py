"""Eventual periodicity of Boolean power and competition sequences.

Both {A^m} and {A^m (A^T)^m} range over a finite set, so each is
eventually periodic; this module finds the exact entry point and cycle
length of each, extracts limits when the cycle is a fixed point, and
builds the expected residue-class block structure of the limit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boolmat import BoolMatrix

__all__ = [
    "PeriodicTail",
    "BudgetExceeded",
    "power_tail",
    "power_table",
    "power_from_table",
    "matrix_period",
    "competition_matrix",
    "competition_tail",
    "competition_table",
    "competition_limit",
    "residue_block_matrix",
    "residue_classes",
    "power_is_eventually_toeplitz",
]


class BudgetExceeded(Exception):
    """Raised when a sequence scan exceeds its step budget."""


@dataclass(frozen=True, slots=True)
class PeriodicTail:
    """Entry index and cycle of an eventually periodic matrix sequence.

    index is the smallest m >= 1 with X_m = X_{m+period} for all later m;
    period is the smallest cycle length; cycle holds the period distinct
    matrices X_index, ..., X_{index+period-1} in order.
    """

    index: int
    period: int
    cycle: tuple[BoolMatrix, ...]

    def to_json_dict(self) -> dict:
        return {"index": self.index, "period": self.period}


def power_table(A: BoolMatrix, max_steps: int | None = None):
    """Scan A^1, A^2, ... to the first repeat.

    Returns (tail, seq) where seq lists A^1 .. A^{index+period-1}.  Repeats
    are detected through a fingerprint map whose buckets are re-verified
    with exact equality, so the reported tail is exact, not probabilistic.
    """
    seen: dict[int, list[tuple[int, BoolMatrix]]] = {}
    seq: list[BoolMatrix] = []
    x = A
    m = 1
    while True:
        bucket = seen.setdefault(x.fingerprint(), [])
        for first_m, mat in bucket:
            if mat == x:
                tail = PeriodicTail(first_m, m - first_m, tuple(seq[first_m - 1 :]))
                return tail, seq
        bucket.append((m, x))
        seq.append(x)
        if max_steps is not None and m >= max_steps:
            raise BudgetExceeded(f"power sequence exceeded {max_steps} steps")
        x = x.multiply(A)
        m += 1


def power_tail(A: BoolMatrix) -> PeriodicTail:
    return power_table(A)[0]


def power_from_table(tail: PeriodicTail, seq, m: int) -> BoolMatrix:
    """A^m read off a power_table result (uses the cycle beyond the scan)."""
    if m < 1:
        raise ValueError("power index must be at least 1")
    if m <= len(seq):
        return seq[m - 1]
    return tail.cycle[(m - tail.index) % tail.period]


def matrix_period(A: BoolMatrix) -> int:
    return power_tail(A).period


def competition_matrix(A: BoolMatrix, m: int) -> BoolMatrix:
    """A^m (A^T)^m: entry (i, j) is 1 iff rows i and j of A^m share a
    nonzero column."""
    if m < 1:
        raise ValueError("the competition sequence starts at m = 1")
    x = A.power(m)
    return x.multiply(x.transpose())


def competition_table(A: BoolMatrix, power=None, max_steps: int | None = None):
    """Tail of the competition sequence B_m = A^m (A^T)^m plus the prefix
    B_1 .. B_{qa + 2*pa} where (qa, pa) is the power tail of A.

    B_m is a pointwise image of A^m, so scanning one combined window of the
    power cycle is enough to pin both minimal values exactly.  `power`
    accepts a precomputed power_table result.
    """
    tail, seq = power if power is not None else power_table(A, max_steps)
    qa, pa = tail.index, tail.period

    by_cycle: list[BoolMatrix | None] = [None] * pa
    bs: list[BoolMatrix] = []
    for m in range(1, qa + 2 * pa + 1):
        if m < qa:
            x = seq[m - 1]
            bs.append(x.multiply(x.transpose()))
        else:
            j = (m - qa) % pa
            if by_cycle[j] is None:
                x = tail.cycle[j]
                by_cycle[j] = x.multiply(x.transpose())
            bs.append(by_cycle[j])

    # Minimal period of the eventual cycle divides pa; test divisors upward.
    period = pa
    for p in range(1, pa + 1):
        if pa % p == 0 and all(bs[qa - 1 + i] == bs[qa - 1 + p + i] for i in range(pa)):
            period = p
            break
    # Minimal index: walk the entry point backwards while periodicity holds.
    index = qa
    while index > 1 and bs[index - 2] == bs[index - 2 + period]:
        index -= 1
    ctail = PeriodicTail(index, period, tuple(bs[index - 1 : index - 1 + period]))
    return ctail, bs


def competition_tail(A: BoolMatrix) -> PeriodicTail:
    return competition_table(A)[0]


def competition_limit(A: BoolMatrix) -> BoolMatrix:
    """The constant tail of the competition sequence; requires period 1."""
    tail = competition_tail(A)
    if tail.period != 1:
        raise ValueError(f"no limit exists: competition period is {tail.period}")
    return tail.cycle[0]


def residue_classes(n: int, d: int) -> list[tuple[int, ...]]:
    """Vertices 1..n grouped by residue mod d; class i holds v = i (mod d)
    for i = 1..d, with residue 0 filed under class d."""
    if not 1 <= d <= n:
        raise ValueError(f"modulus {d} outside [1, {n}]")
    classes = [[] for _ in range(d)]
    for v in range(1, n + 1):
        r = v % d
        classes[(r if r else d) - 1].append(v)
    return [tuple(c) for c in classes]


def residue_block_matrix(n: int, d: int):
    """Permutation sorting 1..n by residue class, plus the unpermuted
    expected limit: entry (u, v) = 1 iff u = v (mod d).

    Conjugating the expected matrix by the permutation yields a direct sum
    of all-ones blocks, one block per residue class.
    """
    classes = residue_classes(n, d)
    perm = tuple(v for cls in classes for v in cls)
    rows = []
    masks = {}
    for cls in classes:
        mask = 0
        for v in cls:
            mask |= 1 << (v - 1)
        for v in cls:
            masks[v] = mask
    for v in range(1, n + 1):
        rows.append(masks[v])
    return perm, BoolMatrix._raw(n, tuple(rows))


def power_is_eventually_toeplitz(A: BoolMatrix, tail: PeriodicTail, seq=None):
    """Whether all large powers of A are Toeplitz, and the first threshold.

    Checks one full cycle (enough, by periodicity) and then extends the
    threshold backwards through the pre-cycle powers.
    """
    if not all(mat.is_toeplitz() for mat in tail.cycle):
        return False, None
    if seq is None:
        seq = [A]
        for _ in range(tail.index - 1):
            seq.append(seq[-1].multiply(A))
    first_m = tail.index
    while first_m > 1 and seq[first_m - 2].is_toeplitz():
        first_m -= 1
    return True, first_m
