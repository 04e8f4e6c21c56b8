"""Independent brute-force oracles for the test suite.

Everything here works on plain lists of 0/1 lists (or adjacency lists) and
never calls into the package, so expected values stay independent of the
implementations they check.
"""

from itertools import product
from math import gcd


def naive_from_spec(n, fwd, bwd):
    m = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if (j - i) in fwd or (i - j) in bwd:
                m[i - 1][j - 1] = 1
    return m


def naive_multiply(a, b):
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if a[i][k] and b[k][j]:
                    out[i][j] = 1
                    break
    return out


def naive_transpose(a):
    n = len(a)
    return [[a[j][i] for j in range(n)] for i in range(n)]


def naive_power(a, m):
    n = len(a)
    out = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(m):
        out = naive_multiply(out, a)
    return out


def naive_is_toeplitz(a):
    n = len(a)
    return all(a[i][j] == a[i + 1][j + 1] for i in range(n - 1) for j in range(n - 1))


def naive_tail(seq):
    """(index, period) of an eventually periodic sequence, by definition:
    the smallest period p admitting a threshold, then the smallest
    threshold.  seq must extend beyond index + 2*period."""
    length = len(seq)
    for p in range(1, length):
        for start in range(length - p):
            if all(seq[m] == seq[m + p] for m in range(start, length - p)):
                return start + 1, p  # seq[0] is the first power
    raise AssertionError("sequence too short to expose its cycle")


def naive_powers(a, count):
    out = []
    cur = a
    for _ in range(count):
        out.append(cur)
        cur = naive_multiply(cur, a)
    return out


def naive_competition(a, m):
    am = naive_power(a, m)
    return naive_multiply(am, naive_transpose(am))


def naive_competition_edges(a, m):
    """Edges {u, v} with a common out-walk target of length exactly m,
    found by enumerating reach sets per vertex (1-indexed pairs)."""
    n = len(a)
    reach = [{v} for v in range(n)]
    for _ in range(m):
        reach = [{w for u in r for w in range(n) if a[u][w]} for r in reach]
    edges = set()
    for u in range(n):
        for v in range(u + 1, n):
            if reach[u] & reach[v]:
                edges.add((u + 1, v + 1))
    return edges


def naive_combination_offsets(n, fwd, bwd, i):
    """Exactly-i-term signed sums by full enumeration (small i only)."""
    steps = list(fwd) + [-t for t in bwd]
    sums = {sum(pick) for pick in product(steps, repeat=i)}
    return frozenset(v for v in sums if -(n - 1) <= v <= n - 1)


def naive_realized_offsets(n, fwd, bwd, i):
    a = naive_from_spec(n, fwd, bwd)
    ai = naive_power(a, i)
    out = set()
    for ell in range(-(n - 1), n):
        pairs = [(u, u + ell) for u in range(1, n + 1) if 1 <= u + ell <= n]
        if all(ai[u - 1][v - 1] for u, v in pairs):
            out.add(ell)
    return frozenset(out)


def naive_congruent_offsets(n, fwd, bwd, i):
    d = 0
    for s in fwd:
        for t in bwd:
            d = gcd(d, s + t)
    target = (i * min(fwd)) % d
    return frozenset(v for v in range(-(n - 1), n) if v % d == target % d)


def prefix_positions(start, order):
    pos = [start]
    for step in order:
        pos.append(pos[-1] + step)
    return pos
