"""Toeplitz instances: validation, matrix construction, gcd machinery.

An instance is a dimension n together with two nonempty step sets inside
[1, n-1]: forward steps (entry (i, j) = 1 when j - i is a forward step)
and backward steps (entry 1 when i - j is a backward step).  Equivalently
the digraph on vertices 1..n has an arc i -> i+s for every forward step s
and i -> i-t for every backward step t, whenever the target stays in range.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import gcd

from .boolmat import BoolMatrix

__all__ = [
    "ToeplitzSpec",
    "validate_spec",
    "parse_literal",
    "spec_from_json_dict",
    "build_matrix",
    "pair_sum_gcd",
    "offset_generators",
    "generator_gcd",
    "predicted_period",
    "BezoutCertificate",
    "bezout_certificate",
    "ConsecutiveRepresentations",
    "consecutive_representations",
]

_LITERAL_RE = re.compile(r"^T(\d+)<([0-9,\s]+);([0-9,\s]+)>$")


@dataclass(frozen=True, slots=True)
class ToeplitzSpec:
    """Validated (n, forward steps, backward steps) triple."""

    n: int
    forward_steps: tuple[int, ...]
    backward_steps: tuple[int, ...]

    @property
    def min_forward(self) -> int:
        return self.forward_steps[0]

    @property
    def max_forward(self) -> int:
        return self.forward_steps[-1]

    @property
    def min_backward(self) -> int:
        return self.backward_steps[0]

    @property
    def max_backward(self) -> int:
        return self.backward_steps[-1]

    @property
    def cond1(self) -> bool:
        """Longest forward step plus shortest backward step fits in n."""
        return self.max_forward + self.min_backward <= self.n

    @property
    def cond2(self) -> bool:
        """Shortest forward step plus longest backward step fits in n."""
        return self.min_forward + self.max_backward <= self.n

    @property
    def conditions_hold(self) -> bool:
        return self.cond1 and self.cond2

    @property
    def literal(self) -> str:
        fwd = ",".join(map(str, self.forward_steps))
        bwd = ",".join(map(str, self.backward_steps))
        return f"T{self.n}<{fwd};{bwd}>"

    def to_json_dict(self) -> dict:
        return {"n": self.n, "S": list(self.forward_steps), "T": list(self.backward_steps)}

    def __str__(self):
        return self.literal


def validate_spec(n: int, forward, backward) -> ToeplitzSpec:
    """Normalize and validate an instance; raises ValueError on bad input."""
    if n < 2:
        raise ValueError(f"dimension must be at least 2, got {n}")
    fwd = tuple(sorted(set(forward)))
    bwd = tuple(sorted(set(backward)))
    if not fwd:
        raise ValueError("forward step set must be nonempty")
    if not bwd:
        raise ValueError("backward step set must be nonempty")
    for s in fwd:
        if not 1 <= s <= n - 1:
            raise ValueError(f"forward step {s} outside [1, {n - 1}]")
    for t in bwd:
        if not 1 <= t <= n - 1:
            raise ValueError(f"backward step {t} outside [1, {n - 1}]")
    return ToeplitzSpec(n, fwd, bwd)


def parse_literal(text: str) -> ToeplitzSpec:
    """Parse the literal syntax "T<n><s1,..;t1,..>", e.g. "T8<1,4;2,5>"."""
    m = _LITERAL_RE.match(text.strip())
    if not m:
        raise ValueError(f"malformed instance literal: {text!r}")
    n = int(m.group(1))
    fwd = [int(x) for x in m.group(2).split(",") if x.strip()]
    bwd = [int(x) for x in m.group(3).split(",") if x.strip()]
    return validate_spec(n, fwd, bwd)


def spec_from_json_dict(data: dict) -> ToeplitzSpec:
    return validate_spec(int(data["n"]), data["S"], data["T"])


def build_matrix(spec: ToeplitzSpec) -> BoolMatrix:
    """Adjacency matrix: entry (i, j) = 1 iff j-i is a forward step or
    i-j is a backward step."""
    n = spec.n
    rows = []
    for i in range(1, n + 1):
        r = 0
        for s in spec.forward_steps:
            if i + s <= n:
                r |= 1 << (i + s - 1)
        for t in spec.backward_steps:
            if i - t >= 1:
                r |= 1 << (i - t - 1)
        rows.append(r)
    return BoolMatrix._raw(n, tuple(rows))


def pair_sum_gcd(spec: ToeplitzSpec) -> int:
    """gcd of all sums s + t over forward steps s and backward steps t."""
    g = 0
    for s in spec.forward_steps:
        for t in spec.backward_steps:
            g = gcd(g, s + t)
    return g


def offset_generators(spec: ToeplitzSpec) -> tuple[int, ...]:
    """Positive differences within each step set plus all pairwise sums.

    These generate every offset change achievable between two equal-length
    walks, hence the congruence class that competition edges live in.
    """
    gens = set()
    for a, b in itertools.combinations(spec.forward_steps, 2):
        gens.add(b - a)
    for a, b in itertools.combinations(spec.backward_steps, 2):
        gens.add(b - a)
    for s in spec.forward_steps:
        for t in spec.backward_steps:
            gens.add(s + t)
    return tuple(sorted(gens))


def generator_gcd(spec: ToeplitzSpec) -> tuple[tuple[int, ...], int]:
    """The generator set and its gcd; always equals pair_sum_gcd."""
    gens = offset_generators(spec)
    g = 0
    for v in gens:
        g = gcd(g, v)
    assert g == pair_sum_gcd(spec), f"generator gcd {g} != pair-sum gcd on {spec}"
    return gens, g


def predicted_period(spec: ToeplitzSpec) -> int:
    """d / gcd(d, min forward step) where d is the pair-sum gcd."""
    d = pair_sum_gcd(spec)
    return d // gcd(d, spec.min_forward)


# -- signed certificates ----------------------------------------------------


@dataclass(frozen=True, slots=True)
class BezoutCertificate:
    """Signed coefficients with sum(a)+sum(b) = 0 writing the pair-sum gcd
    as sum(a_i * s_i) - sum(b_j * t_j)."""

    spec: ToeplitzSpec
    forward_coeffs: tuple[int, ...]
    backward_coeffs: tuple[int, ...]

    def __post_init__(self):
        spec = self.spec
        total = sum(c * s for c, s in zip(self.forward_coeffs, spec.forward_steps))
        total -= sum(c * t for c, t in zip(self.backward_coeffs, spec.backward_steps))
        assert total == pair_sum_gcd(spec), "certificate does not reach the gcd"
        assert sum(self.forward_coeffs) + sum(self.backward_coeffs) == 0, (
            "certificate coefficients do not cancel"
        )


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g for nonnegative a, b."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_r, old_x, old_y


def bezout_certificate(spec: ToeplitzSpec) -> BezoutCertificate:
    """Deterministic zero-sum certificate for the pair-sum gcd.

    Runs the extended Euclidean algorithm across the offset generators in a
    fixed order (forward differences, backward differences, then sums), and
    telescopes each generator into consecutive-difference coefficients so
    the combined step counts cancel.
    """
    fwd, bwd = spec.forward_steps, spec.backward_steps
    k1, k2 = len(fwd), len(bwd)

    # Each generator with its provenance, in the deterministic order.
    gens: list[tuple[int, str, int, int]] = []
    for i, j in itertools.combinations(range(k1), 2):
        gens.append((fwd[j] - fwd[i], "fdiff", i, j))
    for i, j in itertools.combinations(range(k2), 2):
        gens.append((bwd[j] - bwd[i], "bdiff", i, j))
    for i in range(k1):
        for j in range(k2):
            gens.append((fwd[i] + bwd[j], "sum", i, j))

    g = gens[0][0]
    coeffs = [1]
    for val, _, _, _ in gens[1:]:
        g2, x, y = _ext_gcd(g, val)
        coeffs = [x * c for c in coeffs]
        coeffs.append(y)
        g = g2
    assert g == pair_sum_gcd(spec)

    # Telescope every generator into coefficients on consecutive
    # differences (alpha for forward, beta for backward) plus gamma copies
    # of the base sum s_1 + t_1.
    alpha = [0] * (k1 + 1)  # alpha[i] multiplies fwd[i-1] - fwd[i-2], i >= 2
    beta = [0] * (k2 + 1)
    gamma = 0
    for c, (val, kind, i, j) in zip(coeffs, gens):
        if c == 0:
            continue
        if kind == "fdiff":
            for k in range(i + 2, j + 2):
                alpha[k - 1] += c
        elif kind == "bdiff":
            for k in range(i + 2, j + 2):
                beta[k - 1] += c
        else:  # sum fwd[i] + bwd[j]
            gamma += c
            for k in range(2, i + 2):
                alpha[k - 1] += c
            for k in range(2, j + 2):
                beta[k - 1] += c

    a = [0] * k1
    if k1 == 1:
        a[0] = gamma
    else:
        a[0] = gamma - alpha[1]
        for i in range(1, k1 - 1):
            a[i] = alpha[i] - alpha[i + 1]
        a[k1 - 1] = alpha[k1 - 1]
    b = [0] * k2
    if k2 == 1:
        b[0] = -gamma
    else:
        b[0] = beta[1] - gamma
        for i in range(1, k2 - 1):
            b[i] = beta[i + 1] - beta[i]
        b[k2 - 1] = -beta[k2 - 1]

    return BezoutCertificate(spec, tuple(a), tuple(b))


@dataclass(frozen=True, slots=True)
class ConsecutiveRepresentations:
    """Nonnegative representations of base + j*d for j = 1..k, all using the
    same total number of terms."""

    spec: ToeplitzSpec
    base: int
    term_count: int
    forward_rows: tuple[tuple[int, ...], ...]
    backward_rows: tuple[tuple[int, ...], ...]

    def offset_for(self, j: int) -> int:
        return self.base + j * pair_sum_gcd(self.spec)


def consecutive_representations(spec: ToeplitzSpec, k: int) -> ConsecutiveRepresentations:
    """Shift a zero-sum certificate so k consecutive multiples of the gcd
    beyond a fixed base all get nonnegative representations of equal size."""
    if k < 1:
        raise ValueError("k must be at least 1")
    cert = bezout_certificate(spec)
    fwd, bwd = spec.forward_steps, spec.backward_steps
    a, b = cert.forward_coeffs, cert.backward_coeffs
    d = pair_sum_gcd(spec)

    base = sum(k * abs(ai) * s for ai, s in zip(a, fwd))
    base -= sum(k * abs(bi) * t for bi, t in zip(b, bwd))

    f_rows = []
    b_rows = []
    expected_total = k * (sum(abs(x) for x in a) + sum(abs(x) for x in b))
    for j in range(1, k + 1):
        fr = tuple(j * ai + k * abs(ai) for ai in a)
        br = tuple(j * bi + k * abs(bi) for bi in b)
        assert all(x >= 0 for x in fr) and all(x >= 0 for x in br)
        value = sum(x * s for x, s in zip(fr, fwd)) - sum(x * t for x, t in zip(br, bwd))
        assert value == base + j * d, f"row {j} represents {value}, wanted {base + j * d}"
        assert sum(fr) + sum(br) == expected_total, "term count is not constant"
        f_rows.append(fr)
        b_rows.append(br)

    return ConsecutiveRepresentations(spec, base, expected_total, tuple(f_rows), tuple(b_rows))
