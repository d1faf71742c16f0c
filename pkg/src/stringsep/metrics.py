"""Shortest-path metrics, ratio functionals, and exact sparsity oracles.

Sparsity values are computed in exact rational arithmetic; ties between
witness cuts are broken toward the lexicographically smallest vertex sets so
symmetric graphs give reproducible witnesses.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import ContractViolation, NoVertexCut, SizeCapExceeded
from .graphs import EdgeCut, Graph, VertexCut

SPARSITY_CAP = 20


def shortest_path_metric(g: Graph, weights=None) -> np.ndarray:
    """All-pairs shortest-path distances under nonnegative edge weights.

    `weights` maps edges (or indexes g.edges) to weights; omitted means unit
    weights.  Floyd-Warshall on the dense matrix; exact for integer-scaled
    weights.  Disconnected input raises (infinite distances unsupported).
    """
    if not g.is_connected():
        raise ContractViolation("metric requires a connected graph")
    w = _edge_weights(g, weights)
    if (w < 0).any():
        raise ContractViolation("edge weights must be nonnegative")
    d = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(d, 0.0)
    for (u, v), we in zip(g.edges, w):
        if we < d[u, v]:
            d[u, v] = d[v, u] = we
    for k in range(g.n):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    return d


def _edge_weights(g: Graph, weights) -> np.ndarray:
    if weights is None:
        return np.ones(g.m)
    if isinstance(weights, dict):
        return np.array([float(weights[e]) for e in g.edges])
    arr = np.asarray(weights, dtype=float)
    if arr.shape != (g.m,):
        raise ContractViolation("need one weight per edge")
    return arr


def _vertex_weights(g: Graph, s) -> np.ndarray:
    if isinstance(s, dict):
        arr = np.array([float(s[v]) for v in g.vertices()])
    else:
        arr = np.asarray(s, dtype=float)
    if arr.shape != (g.n,):
        raise ContractViolation("need one weight per vertex")
    if (arr < 0).any():
        raise ContractViolation("vertex weights must be nonnegative")
    return arr


def derived_edge_weights(g: Graph, s) -> np.ndarray:
    """Edge weights w({u,v}) = (s(u) + s(v)) / 2 induced by vertex weights."""
    arr = _vertex_weights(g, s)
    return np.array([(arr[u] + arr[v]) / 2.0 for u, v in g.edges])


def validate_metric(d: np.ndarray, tol: float = 1e-9) -> None:
    """Symmetry, zero diagonal, nonnegativity, triangle inequality."""
    n = d.shape[0]
    if d.shape != (n, n):
        raise ContractViolation("metric matrix must be square")
    if np.abs(np.diag(d)).max(initial=0.0) > tol:
        raise ContractViolation("nonzero diagonal")
    if (d < -tol).any():
        raise ContractViolation("negative distance")
    if np.abs(d - d.T).max(initial=0.0) > tol:
        raise ContractViolation("asymmetric matrix")
    for k in range(n):
        if (d - (d[:, k, None] + d[None, k, :])).max() > tol:
            raise ContractViolation("triangle inequality violated")


def pair_sum(d: np.ndarray) -> float:
    return float(np.triu(d, 1).sum())


def ratio_functional(g: Graph, mode: str, weights) -> float:
    """Edge mode: sum of d_w over edges / sum over all pairs, w edge weights.

    Vertex mode: sum of s / sum of d_s over pairs, with d_s the metric of the
    derived edge weights.  Both are at least 1/congestion for every feasible
    weighting, with equality at the LP-dual-optimal one.
    """
    if mode == "edge":
        w = _edge_weights(g, weights)
        if not w.any():
            raise ContractViolation("weights must not be identically zero")
        d = shortest_path_metric(g, w)
        denom = pair_sum(d)
        if denom <= 0:
            raise ContractViolation("all distances are zero")
        num = float(sum(d[u, v] for u, v in g.edges))
        return num / denom
    if mode == "vertex":
        s = _vertex_weights(g, weights)
        if not s.any():
            raise ContractViolation("weights must not be identically zero")
        d = shortest_path_metric(g, derived_edge_weights(g, s))
        denom = pair_sum(d)
        if denom <= 0:
            raise ContractViolation("all distances are zero")
        return float(s.sum()) / denom
    raise ContractViolation(f"mode must be 'edge' or 'vertex', got {mode!r}")


def _edge_cut_size(g: Graph, a_mask: int) -> int:
    cnt = 0
    for u, v in g.edges:
        if ((a_mask >> u) & 1) != ((a_mask >> v) & 1):
            cnt += 1
    return cnt


def _mask_to_sorted(mask: int, n: int) -> tuple[int, ...]:
    return tuple(v for v in range(n) if (mask >> v) & 1)


def sparsity_exact(g: Graph, mode: str) -> tuple[Fraction, EdgeCut | VertexCut]:
    """Exact minimum edge or vertex sparsity with a witness cut.

    Edge: min |E(A, V-A)| / (|A| |V-A|) over nonempty proper A, equivalently
    the minimum of the cut-metric ratio functional.  Vertex: min
    |S| / (|A+S| |B+S|) over vertex cuts (A, B nonempty, no A-B edge); for a
    fixed S the components of G - S are split to maximize the denominator.
    """
    if g.n > SPARSITY_CAP:
        raise SizeCapExceeded(f"n={g.n} exceeds the enumeration cap {SPARSITY_CAP}")
    if mode == "edge":
        return _espars_exact(g)
    if mode == "vertex":
        return _vspars_exact(g)
    raise ContractViolation(f"mode must be 'edge' or 'vertex', got {mode!r}")


def _espars_exact(g: Graph) -> tuple[Fraction, EdgeCut]:
    if g.n < 2:
        raise ContractViolation("edge sparsity needs n >= 2")
    best: Fraction | None = None
    best_rep: tuple[int, ...] | None = None
    full = (1 << g.n) - 1
    # fix vertex 0 in A; the complementary cut has the same value
    for rest in range(1 << (g.n - 1)):
        a_mask = (rest << 1) | 1
        if a_mask == full:
            continue
        size_a = bin(a_mask).count("1")
        val = Fraction(_edge_cut_size(g, a_mask), size_a * (g.n - size_a))
        side_a = _mask_to_sorted(a_mask, g.n)
        side_b = _mask_to_sorted(full ^ a_mask, g.n)
        rep = min(side_a, side_b)
        if best is None or val < best or (val == best and rep < best_rep):
            best, best_rep = val, rep
    return best, EdgeCut(frozenset(best_rep))


def _vspars_exact(g: Graph) -> tuple[Fraction, VertexCut]:
    if g.n < 2:
        raise ContractViolation("vertex sparsity needs n >= 2")
    best: Fraction | None = None
    best_key = None
    best_cut: VertexCut | None = None
    for size in range(0, g.n - 1):
        for s_tuple in combinations(range(g.n), size):
            s_set = frozenset(s_tuple)
            rest = [v for v in g.vertices() if v not in s_set]
            comps = _components_within(g, rest)
            if len(comps) < 2:
                continue
            a_set, b_set = _balanced_split(comps, len(rest))
            val = Fraction(size, (len(a_set) + size) * (len(b_set) + size))
            key = (val, tuple(sorted(s_set)), tuple(sorted(a_set)))
            if best is None or key < best_key:
                best = val
                best_key = key
                best_cut = VertexCut(frozenset(a_set), frozenset(b_set), s_set)
    if best is None:
        raise NoVertexCut("complete graph: no vertex cut exists")
    return best, best_cut


def _components_within(g: Graph, rest: list[int]) -> list[frozenset[int]]:
    alive = set(rest)
    comps = []
    while alive:
        s = min(alive)
        stack, comp = [s], {s}
        alive.discard(s)
        while stack:
            x = stack.pop()
            for y in g.adjacency[x]:
                if y in alive:
                    alive.discard(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(frozenset(comp))
    return comps


def _balanced_split(comps: list[frozenset[int]], total: int) -> tuple[set[int], set[int]]:
    """Split whole components into two nonempty groups with sizes as close to
    total/2 as possible (this maximizes the denominator product)."""
    comps = sorted(comps, key=lambda c: (min(c)))
    sizes = [len(c) for c in comps]
    # reachable[k][t]: can components k.. sum to t
    t_max = total
    reach = [[False] * (t_max + 1) for _ in range(len(comps) + 1)]
    reach[len(comps)][0] = True
    for k in range(len(comps) - 1, -1, -1):
        for t in range(t_max + 1):
            reach[k][t] = reach[k + 1][t] or (t >= sizes[k] and reach[k + 1][t - sizes[k]])
    candidates = [t for t in range(1, total) if reach[0][t]]
    target = min(candidates, key=lambda t: (abs(2 * t - total), t))
    a: set[int] = set()
    t = target
    for k, comp in enumerate(comps):
        # prefer taking earlier components when still completable
        if t >= sizes[k] and reach[k + 1][t - sizes[k]]:
            a |= comp
            t -= sizes[k]
    assert t == 0
    b = set().union(*comps) - a
    if min(b) < min(a):
        a, b = b, a
    return a, b


def line_to_cut_sweep(g: Graph, f) -> tuple[EdgeCut, Fraction]:
    """Best threshold cut A_t = {v : f(v) <= t} of a real vertex embedding.

    The minimum cut-sparsity over thresholds is at most the line-metric
    ratio (sum over edges of |f(u)-f(v)|) / (sum over pairs), which is how
    an embedding is rounded to a cut.
    """
    vals = np.asarray(f, dtype=float)
    if vals.shape != (g.n,):
        raise ContractViolation("need one value per vertex")
    thresholds = np.unique(vals)
    if len(thresholds) < 2:
        raise ContractViolation("f is constant")
    best = None
    best_cut = None
    for t in thresholds[:-1]:
        a = frozenset(int(v) for v in np.flatnonzero(vals <= t))
        cross = sum(1 for u, v in g.edges if (u in a) != (v in a))
        val = Fraction(cross, len(a) * (g.n - len(a)))
        if best is None or val < best:
            best, best_cut = val, a
    return EdgeCut(best_cut), best
