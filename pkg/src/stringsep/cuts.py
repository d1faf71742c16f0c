"""Vertex cuts by max-flow, the embedding sweep, and the separator pipeline.

The sweep orders vertices by a 1-Lipschitz embedding, computes for every
prefix/suffix split a minimum vertex cut between the sides (node-split
max-flow with a Menger certificate of vertex-disjoint paths), and keeps the
sparsest (A_i, B_i, S_i).  Its sparsity never exceeds
(sum of vertex weights) / (sum of embedding gaps over pairs).

A sweep position whose A or B side is empty has sparsity exactly 1/n
(|S| / (|S| n)), while every non-complete graph admits a proper cut of
sparsity (n-2)/(n-1)^2 < 1/n, so degenerate positions never undercut true
cuts; among equal-sparsity positions the selection prefers both sides
nonempty, then the lower position.

The separator pipeline repeatedly embeds the largest oversized part with
unit weights and cuts it with the sweep, then groups the leftover parts
greedily by descending size; with every part at most ceil(2n/3), the
greedy grouping keeps both sides within ceil(2n/3).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .embedding import best_embedding, default_trials
from .errors import ContractViolation, SizeCapExceeded
from .graphs import Graph, VertexCut, EdgeCut, balance_limit, check_separator
from .metrics import derived_edge_weights, shortest_path_metric, sparsity_exact, _vertex_weights


@dataclass(frozen=True)
class MengerCertificate:
    """A minimum X-Y vertex cut with equally many vertex-disjoint X-Y paths."""

    cut: frozenset[int]
    paths: tuple[tuple[int, ...], ...]


def min_vertex_cut(g: Graph, xs, ys) -> MengerCertificate:
    """Minimum set of vertices whose removal separates X from Y.

    Node-split reduction: each vertex becomes an in/out arc of capacity one;
    graph edges and super-terminal attachments get capacity n+1.  The cut is
    read from the residual reachability of the super-source (saturated split
    arcs on the frontier); the certificate paths come from the integral flow.
    Vertices of X or Y may themselves be cut.
    """
    xs, ys = frozenset(xs), frozenset(ys)
    if not xs or not ys:
        raise ContractViolation("X and Y must be nonempty")
    if xs & ys:
        raise ContractViolation("X and Y must be disjoint")

    n = g.n
    big = n + 1
    src, snk = 2 * n, 2 * n + 1

    def v_in(v: int) -> int:
        return 2 * v

    def v_out(v: int) -> int:
        return 2 * v + 1

    cap: dict[tuple[int, int], int] = {}

    def add(a: int, b: int, c: int) -> None:
        cap[(a, b)] = cap.get((a, b), 0) + c
        cap.setdefault((b, a), 0)

    for v in g.vertices():
        add(v_in(v), v_out(v), 1)
    for u, v in g.edges:
        add(v_out(u), v_in(v), big)
        add(v_out(v), v_in(u), big)
    for x in sorted(xs):
        add(src, v_in(x), big)
    for y in sorted(ys):
        add(v_out(y), snk, big)

    adj: dict[int, list[int]] = {}
    for a, b in cap:
        adj.setdefault(a, []).append(b)
    for a in adj:
        adj[a].sort()

    flow: dict[tuple[int, int], int] = {e: 0 for e in cap}
    while True:
        parent = {src: src}
        queue = [src]
        qi = 0
        while qi < len(queue) and snk not in parent:
            a = queue[qi]
            qi += 1
            for b in adj.get(a, ()):
                if b not in parent and cap[(a, b)] - flow[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if snk not in parent:
            break
        path = [snk]
        while path[-1] != src:
            path.append(parent[path[-1]])
        path.reverse()
        aug = min(cap[(a, b)] - flow[(a, b)] for a, b in zip(path, path[1:]))
        for a, b in zip(path, path[1:]):
            flow[(a, b)] += aug
            flow[(b, a)] -= aug

    reach = {src}
    stack = [src]
    while stack:
        a = stack.pop()
        for b in adj.get(a, ()):
            if b not in reach and cap[(a, b)] - flow[(a, b)] > 0:
                reach.add(b)
                stack.append(b)
    cut = frozenset(v for v in g.vertices() if v_in(v) in reach and v_out(v) not in reach)

    paths = _disjoint_paths(g, xs, flow, src, snk)
    if len(paths) != len(cut):
        raise RuntimeError("max-flow value disagrees with the extracted cut")
    return MengerCertificate(cut, tuple(paths))


def _disjoint_paths(g, xs, flow, src, snk) -> list[tuple[int, ...]]:
    used = {e: f for e, f in flow.items() if f > 0}
    paths = []
    for x in sorted(xs):
        while used.get((src, 2 * x), 0) > 0:
            used[(src, 2 * x)] -= 1
            node = 2 * x
            verts = []
            while node != snk:
                if node % 2 == 0:
                    verts.append(node // 2)
                nxt = None
                for (a, b), f in used.items():
                    if a == node and f > 0:
                        nxt = b
                        break
                if nxt is None:
                    raise RuntimeError("flow decomposition lost a unit")
                used[(node, nxt)] -= 1
                node = nxt
            paths.append(tuple(verts))
    return paths


@dataclass(frozen=True)
class SweepPosition:
    index: int
    cut_size: int
    sparsity: Fraction
    a_size: int
    b_size: int


@dataclass(frozen=True)
class SweepResult:
    A: frozenset[int]
    B: frozenset[int]
    S: frozenset[int]
    sparsity: Fraction
    positions: tuple[SweepPosition, ...]
    weight_total: float
    gap_total: float

    @property
    def bound(self) -> float:
        """The guarantee: sparsity <= weight_total / gap_total."""
        return self.weight_total / self.gap_total


def fhl_sweep(g: Graph, s, f) -> SweepResult:
    """Sweep the threshold cuts of a 1-Lipschitz embedding for a sparse vertex cut.

    Vertices are ordered by f (ties by id); position i separates the first i
    from the rest with a minimum vertex cut.  f must be non-constant and
    1-Lipschitz with respect to the metric of the derived edge weights of s.
    """
    weights = _vertex_weights(g, s)
    vals = np.asarray(f, dtype=float)
    if vals.shape != (g.n,):
        raise ContractViolation("need one embedding value per vertex")
    if len(set(vals.tolist())) < 2:
        raise ContractViolation("f is constant")
    d = shortest_path_metric(g, derived_edge_weights(g, weights))
    gap = np.abs(vals[:, None] - vals[None, :]) - d
    if gap.max() > 1e-9:
        u, v = np.unravel_index(int(gap.argmax()), gap.shape)
        raise ContractViolation(
            f"f is not 1-Lipschitz for d_s: |f({u})-f({v})| = {abs(vals[u]-vals[v])} "
            f"> d = {d[u, v]}"
        )

    order = sorted(g.vertices(), key=lambda v: (vals[v], v))
    best = None
    best_key = None
    positions = []
    for i in range(1, g.n):
        xs = frozenset(order[:i])
        ys = frozenset(order[i:])
        cert = min_vertex_cut(g, xs, ys)
        s_i = cert.cut
        a_i = xs - s_i
        b_i = ys - s_i
        val = Fraction(len(s_i), (len(a_i) + len(s_i)) * (len(b_i) + len(s_i)))
        positions.append(SweepPosition(i, len(s_i), val, len(a_i), len(b_i)))
        key = (val, not (a_i and b_i), i)  # prefer proper cuts at equal sparsity
        if best is None or key < best_key:
            best, best_key = (a_i, b_i, s_i), key

    a_i, b_i, s_i = best
    total_w = float(weights.sum())
    total_gap = float(np.abs(vals[:, None] - vals[None, :]).sum()) / 2.0
    res = SweepResult(
        a_i, b_i, s_i, best_key[0], tuple(positions), total_w, total_gap
    )
    if float(res.sparsity) > res.bound + 1e-9:
        raise RuntimeError("sweep sparsity exceeded its theoretical bound")
    return res


@dataclass(frozen=True)
class SeparatorResult:
    cut: VertexCut
    size: int
    balance: tuple[int, int, int]  # |A|, |B|, n
    trace: tuple[tuple[int, float], ...]  # (subgraph size, sweep sparsity)


def find_separator(g: Graph, seed: int = 0, trials: int | None = None) -> SeparatorResult:
    """Balanced separator by recursive embed-and-sweep.

    While a part exceeds ceil(2n/3): embed its largest component's subgraph
    with unit vertex weights, sweep for a sparse vertex cut, move the cut
    into the separator.  The remaining parts are grouped greedily into two
    sides.  The output always satisfies check_separator.
    """
    if g.n < 2:
        raise ContractViolation("separator needs n >= 2")
    limit = balance_limit(g.n)
    parts: list[frozenset[int]] = list(g.components())
    separator: set[int] = set()
    trace: list[tuple[int, float]] = []
    round_no = 0
    while True:
        oversized = [p for p in parts if len(p) > limit]
        if not oversized:
            break
        part = max(oversized, key=lambda p: (len(p), -min(p)))
        parts.remove(part)
        sub, back = g.induced(part)
        f = _embed_or_fallback(sub, seed, trials, round_no)
        round_no += 1
        res = fhl_sweep(sub, np.ones(sub.n), f)
        trace.append((sub.n, float(res.sparsity)))
        separator.update(back[v] for v in res.S)
        remaining = part - {back[v] for v in res.S}
        if remaining:
            keep_sub, keep_back = g.induced(remaining)
            for comp in keep_sub.components():
                parts.append(frozenset(keep_back[v] for v in comp))

    side_a: set[int] = set()
    side_b: set[int] = set()
    for part in sorted(parts, key=lambda p: (-len(p), min(p))):
        if len(side_a) <= len(side_b):
            side_a |= part
        else:
            side_b |= part
    cut = VertexCut(frozenset(side_a), frozenset(side_b), frozenset(separator))
    ok, why = check_separator(g, cut)
    if not ok:
        raise RuntimeError(f"pipeline produced an invalid separator: {why}")
    return SeparatorResult(cut, len(separator), (len(side_a), len(side_b), g.n), tuple(trace))


def _embed_or_fallback(sub: Graph, seed: int, trials: int | None, round_no: int):
    d = shortest_path_metric(sub)
    t = default_trials(sub.n) if trials is None else trials
    emb = best_embedding(d, t, seed * 1_000_003 + round_no)
    if not emb.is_constant:
        return np.asarray(emb.values)
    # all-constant trials are astronomically rare; distances from the first
    # vertex are 1-Lipschitz and non-constant on any connected n >= 2 graph
    return d[0]


def min_separator_exact(g: Graph) -> tuple[int, VertexCut]:
    """Smallest S whose removal lets whole components group into two sides
    of at most ceil(2n/3) each (brute force, n <= 14)."""
    if g.n > 14:
        raise SizeCapExceeded(f"n={g.n} exceeds the brute-force cap 14")
    if g.n < 2:
        raise ContractViolation("needs n >= 2")
    limit = balance_limit(g.n)
    for size in range(g.n + 1):
        for s_tuple in combinations(range(g.n), size):
            s_set = frozenset(s_tuple)
            grouping = _grouping_within_limit(g, s_set, limit)
            if grouping is not None:
                a, b = grouping
                cut = VertexCut(frozenset(a), frozenset(b), s_set)
                ok, why = check_separator(g, cut)
                assert ok, why
                return size, cut
    raise RuntimeError("unreachable: S = V always succeeds")


def _grouping_within_limit(g: Graph, s_set: frozenset[int], limit: int):
    rest = [v for v in g.vertices() if v not in s_set]
    comps = []
    alive = set(rest)
    while alive:
        v0 = min(alive)
        comp = {v0}
        stack = [v0]
        alive.discard(v0)
        while stack:
            x = stack.pop()
            for y in g.adjacency[x]:
                if y in alive:
                    alive.discard(y)
                    comp.add(y)
                    stack.append(y)
        if len(comp) > limit:
            return None
        comps.append(comp)
    side_a: set[int] = set()
    side_b: set[int] = set()
    for comp in sorted(comps, key=lambda c: (-len(c), min(c))):
        if len(side_a) <= len(side_b):
            side_a |= comp
        else:
            side_b |= comp
    if len(side_a) <= limit and len(side_b) <= limit:
        return side_a, side_b
    return None


@dataclass(frozen=True)
class PeelStep:
    subgraph_size: int
    sparsity: Fraction
    peeled: frozenset[int]


@dataclass(frozen=True)
class BalancedEdgeCutResult:
    cut: EdgeCut
    crossing_edges: int
    bound: Fraction  # beta * n^2
    steps: tuple[PeelStep, ...]
    hypothesis_failures: tuple[tuple[int, Fraction], ...]  # (size, sparsity) exceeding beta

    @property
    def hypothesis_held(self) -> bool:
        return not self.hypothesis_failures


def balanced_edge_cut(g: Graph, beta: Fraction) -> BalancedEdgeCutResult:
    """Peel sparsest edge cuts until one side reaches [n/3, 2n/3].

    Each peel takes the smaller side of the sparsest cut of the remaining
    induced subgraph; the accumulated side never overshoots 2n/3.  When some
    intermediate subgraph on >= 2n/3 vertices has sparsity above beta, the
    premise of the beta n^2 crossing-edge bound fails; the cut is still
    returned and the failures are reported.
    """
    if g.n < 3:
        raise ContractViolation("balanced edge cut needs n >= 3")
    beta = Fraction(beta)
    acc: set[int] = set()
    steps: list[PeelStep] = []
    failures: list[tuple[int, Fraction]] = []
    while 3 * len(acc) < g.n:
        rest = frozenset(g.vertices()) - acc
        sub, back = g.induced(rest)
        val, cut = sparsity_exact(sub, "edge")
        if val > beta:
            failures.append((sub.n, val))
        side = {back[v] for v in cut.A}
        other = set(rest) - side
        if len(side) > len(other) or (len(side) == len(other) and min(other) < min(side)):
            side = other
        steps.append(PeelStep(sub.n, val, frozenset(side)))
        acc |= side
    assert 3 * len(acc) <= 2 * g.n, "peeling overshot the balanced window"
    crossing = sum(1 for u, v in g.edges if (u in acc) != (v in acc))
    return BalancedEdgeCutResult(
        EdgeCut(frozenset(acc)), crossing, beta * g.n * g.n, tuple(steps), tuple(failures)
    )
