"""Competition graphs of the Toeplitz digraph.

Two vertices are adjacent in the m-step competition graph when some third
vertex is reachable from both by directed walks of length exactly m, i.e.
when the off-diagonal entry of A^m (A^T)^m is 1.  For m = 1 the edges also
admit a closed-form test straight from the step sets, which this module
implements and which the verify sweep cross-checks against the matrix
route on every instance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boolmat import BoolMatrix
from .spectra import competition_matrix, competition_table, power_table, residue_classes
from .toeplitz import ToeplitzSpec, build_matrix, pair_sum_gcd

__all__ = [
    "SimpleGraph",
    "m_step_graph",
    "competition_graph_formula",
    "limit_graph",
    "edges_respect_residues",
    "strong_components",
    "connected_components",
    "residue_clique_graph",
    "digraph_dot",
    "graph_dot",
]


@dataclass(frozen=True, slots=True)
class SimpleGraph:
    """Undirected loop-free graph on vertices 1..n; edges stored as (u, v)
    pairs with u < v."""

    n: int
    edges: frozenset

    def __post_init__(self):
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise ValueError(f"edge ({u},{v}) is not ordered inside 1..{self.n}")

    @classmethod
    def from_symmetric_matrix(cls, mat: BoolMatrix) -> "SimpleGraph":
        """Off-diagonal support of a symmetric matrix; loops discarded."""
        n = mat.n
        rows = mat.rows
        edges = set()
        for u in range(1, n):
            r = rows[u - 1] >> u  # bits for columns u+1..n
            v = u + 1
            while r:
                if r & 1:
                    edges.add((u, v))
                r >>= 1
                v += 1
        return cls(n, frozenset(edges))

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    def __repr__(self):
        return f"SimpleGraph(n={self.n}, edges={len(self.edges)})"


def m_step_graph(A: BoolMatrix, m: int) -> SimpleGraph:
    """Competition graph after m steps: off-diagonal part of A^m (A^T)^m."""
    if m < 1:
        raise ValueError("step count must be at least 1")
    return SimpleGraph.from_symmetric_matrix(competition_matrix(A, m))


def competition_graph_formula(spec: ToeplitzSpec) -> SimpleGraph:
    """One-step competition graph computed from the step sets alone.

    For u < v with delta = v - u, the pair shares an out-neighbor iff
      - delta = s' - s for forward steps with s <= n - v (then s' <= n - u
        holds automatically), or
      - delta = t' - t for backward steps with t <= u - 1 (then t' <= v - 1
        holds automatically), or
      - delta is a forward step plus a backward step.
    """
    n = spec.n
    fwd = set(spec.forward_steps)
    bwd = set(spec.backward_steps)

    sum_ok = [False] * (2 * n)
    for s in spec.forward_steps:
        for t in spec.backward_steps:
            if s + t < 2 * n:
                sum_ok[s + t] = True

    # Smallest usable lower partner per delta, or None.
    big = n + 1
    min_fwd_low = [big] * n  # delta -> min s with s and s+delta both forward
    for s in spec.forward_steps:
        for s2 in spec.forward_steps:
            delta = s2 - s
            if delta > 0 and s < min_fwd_low[delta]:
                min_fwd_low[delta] = s
    min_bwd_low = [big] * n
    for t in spec.backward_steps:
        for t2 in spec.backward_steps:
            delta = t2 - t
            if delta > 0 and t < min_bwd_low[delta]:
                min_bwd_low[delta] = t

    edges = set()
    for u in range(1, n):
        for v in range(u + 1, n + 1):
            delta = v - u
            if sum_ok[delta] or min_fwd_low[delta] <= n - v or min_bwd_low[delta] <= u - 1:
                edges.add((u, v))
    return SimpleGraph(n, frozenset(edges))


def limit_graph(A: BoolMatrix):
    """The eventual competition graph and the first step it is reached.

    Requires competition period 1 (otherwise the graph sequence keeps
    cycling and no limit exists).
    """
    tail, bs = competition_table(A)
    if tail.period != 1:
        raise ValueError(f"no limit exists: competition period is {tail.period}")
    limit = SimpleGraph.from_symmetric_matrix(tail.cycle[0])
    stabilization_m = tail.index
    while stabilization_m > 1:
        g = SimpleGraph.from_symmetric_matrix(bs[stabilization_m - 2])
        if g.edges != limit.edges:
            break
        stabilization_m -= 1
    return limit, stabilization_m


def edges_respect_residues(spec: ToeplitzSpec, horizon: int) -> bool:
    """True iff every competition edge up to the horizon joins vertices in
    the same residue class mod the pair-sum gcd.  Holds with no side
    conditions on the instance."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    d = pair_sum_gcd(spec)
    A = build_matrix(spec)
    x = A
    t = A.transpose()
    xt = t
    for _ in range(horizon):
        b = x.multiply(xt)
        for u, v in SimpleGraph.from_symmetric_matrix(b).edges:
            if (v - u) % d:
                return False
        x = x.multiply(A)
        xt = xt.multiply(t)
    return True


def strong_components(A: BoolMatrix) -> tuple[tuple[int, ...], ...]:
    """Strongly connected components of the digraph of A, each sorted,
    ordered by smallest vertex (Kosaraju, iterative)."""
    n = A.n
    adj = [[] for _ in range(n)]
    radj = [[] for _ in range(n)]
    for i in range(n):
        r = A.rows[i]
        j = 0
        while r:
            if r & 1:
                adj[i].append(j)
                radj[j].append(i)
            r >>= 1
            j += 1

    order = []
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        stack = [(start, 0)]
        seen[start] = True
        while stack:
            node, ptr = stack[-1]
            if ptr < len(adj[node]):
                stack[-1] = (node, ptr + 1)
                nxt = adj[node][ptr]
                if not seen[nxt]:
                    seen[nxt] = True
                    stack.append((nxt, 0))
            else:
                order.append(node)
                stack.pop()

    seen = [False] * n
    components = []
    for start in reversed(order):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            node = stack.pop()
            comp.append(node + 1)
            for nxt in radj[node]:
                if not seen[nxt]:
                    seen[nxt] = True
                    stack.append(nxt)
        components.append(tuple(sorted(comp)))
    components.sort(key=lambda c: c[0])
    return tuple(components)


def connected_components(graph: SimpleGraph) -> tuple[tuple[int, ...], ...]:
    """Components of an undirected graph, singletons included."""
    neighbors = {v: set() for v in range(1, graph.n + 1)}
    for u, v in graph.edges:
        neighbors[u].add(v)
        neighbors[v].add(u)
    seen = set()
    out = []
    for start in range(1, graph.n + 1):
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            node = stack.pop()
            comp.append(node)
            for nxt in neighbors[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        out.append(tuple(sorted(comp)))
    return tuple(sorted(out, key=lambda c: c[0]))


def residue_clique_graph(n: int, d: int) -> SimpleGraph:
    """Disjoint cliques on the residue classes mod d."""
    edges = set()
    for cls in residue_classes(n, d):
        for i, u in enumerate(cls):
            for v in cls[i + 1 :]:
                edges.add((u, v))
    return SimpleGraph(n, frozenset(edges))


# -- DOT rendering ------------------------------------------------------------


def digraph_dot(spec: ToeplitzSpec) -> str:
    """DOT for the digraph: solid arcs for forward steps (label s=k),
    dashed arcs for backward steps (label t=k)."""
    lines = [f'digraph "{spec.literal}" {{']
    for v in range(1, spec.n + 1):
        lines.append(f"  {v};")
    for i in range(1, spec.n + 1):
        for s in spec.forward_steps:
            if i + s <= spec.n:
                lines.append(f'  {i} -> {i + s} [label="s={s}"];')
        for t in spec.backward_steps:
            if i - t >= 1:
                lines.append(f'  {i} -> {i - t} [label="t={t}", style=dashed];')
    lines.append("}")
    return "\n".join(lines)


def graph_dot(graph: SimpleGraph, name: str = "competition") -> str:
    lines = [f'graph "{name}" {{']
    for v in range(1, graph.n + 1):
        lines.append(f"  {v};")
    for u, v in graph.sorted_edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines)
