"""Abstract topological graphs, weak realizations, and constructions on them.

A weak realization draws a graph with polygonal edge curves so that every
crossing pair of independent edges belongs to the allowed relation.  Adjacent
edges may cross (the shared vertex never counts as a crossing); the validator
reports such crossings as warnings, not violations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import ContractViolation, ParseError
from .geometry import (
    Point,
    PolylineCurve,
    RatPoint,
    StringRepresentation,
    curve_pair_points,
    on_segment,
    sq_dist_point_segment,
    sq_dist_points,
    sq_dist_segments,
)
from .graphs import Edge, Graph, graph_from_pairs

EdgePair = frozenset  # frozenset of two Edge tuples


@dataclass(frozen=True)
class AbstractTopologicalGraph:
    """A graph together with the symmetric set of edge pairs allowed to cross."""

    graph: Graph
    allowed: frozenset[EdgePair]

    def __post_init__(self):
        for pair in self.allowed:
            if len(pair) != 2:
                raise ContractViolation(f"allowed entry {set(pair)} is not a pair")
            for e in pair:
                if e not in self.graph.edge_set:
                    raise ContractViolation(f"allowed pair references missing edge {e}")

    def permits(self, e1: Edge, e2: Edge) -> bool:
        return frozenset((e1, e2)) in self.allowed


@dataclass(frozen=True)
class WeakRealization:
    """A polyline drawing of an abstract topological graph.

    edge_curves[i] draws atg.graph.edges[i]; its first and last points must
    equal the endpoint coordinates (in either order).
    """

    atg: AbstractTopologicalGraph
    vertex_points: tuple[Point, ...]
    edge_curves: tuple[PolylineCurve, ...]

    def __post_init__(self):
        g = self.atg.graph
        if len(self.vertex_points) != g.n:
            raise ContractViolation("one point per vertex required")
        if len(self.edge_curves) != g.m:
            raise ContractViolation("one curve per edge required")
        for (u, v), c in zip(g.edges, self.edge_curves):
            ends = {c.points[0], c.points[-1]}
            if ends != {self.vertex_points[u], self.vertex_points[v]}:
                raise ContractViolation(
                    f"curve {c.id} endpoints {ends} do not match edge ({u}, {v})"
                )

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.atg.graph.edges)}

    def curve(self, e: Edge) -> PolylineCurve:
        return self.edge_curves[self.edge_index[e]]


@dataclass(frozen=True)
class Violation:
    kind: str  # forbidden_crossing | overlap | triple_point | edge_through_vertex | adjacent_crossing
    detail: str
    edges: tuple[Edge, ...] = ()
    point: RatPoint | None = None
    severity: str = "error"


def _adjacent(e1: Edge, e2: Edge) -> bool:
    return bool(set(e1) & set(e2))


def _pair_intersections(w: WeakRealization, i: int, j: int) -> tuple[set[RatPoint], bool]:
    """Intersection points of edge curves i and j, with overlap flag.

    Shared vertex points of adjacent edges are removed (they do not count).
    """
    e1, e2 = w.atg.graph.edges[i], w.atg.graph.edges[j]
    try:
        pts = curve_pair_points(w.edge_curves[i], w.edge_curves[j])
    except Exception:
        return set(), True
    for v in set(e1) & set(e2):
        vp = w.vertex_points[v]
        pts.discard((Fraction(vp[0]), Fraction(vp[1])))
    return pts, False


def validate_weak_realization(
    w: WeakRealization, include_warnings: bool = False
) -> list[Violation]:
    """All standardness and allowed-relation violations of a drawing.

    Empty result means: curves are simple, pairwise intersections are finite,
    no triple points, no edge passes through a non-incident vertex, vertex
    points are distinct, and every crossing pair of independent edges is
    allowed.  Adjacent-edge crossings surface only with include_warnings.
    """
    g = w.atg.graph
    out: list[Violation] = []
    for c in w.edge_curves:
        c.validate()
    if len(set(w.vertex_points)) != g.n:
        out.append(Violation("overlap", "two vertices share a point"))

    for i, c in enumerate(w.edge_curves):
        e = g.edges[i]
        for v in g.vertices():
            if v in e:
                continue
            vp = w.vertex_points[v]
            if any(on_segment(p, q, vp) for p, q in c.segments):
                out.append(
                    Violation(
                        "edge_through_vertex",
                        f"edge {e} passes through vertex {v} at {vp}",
                        edges=(e,),
                        point=(Fraction(vp[0]), Fraction(vp[1])),
                    )
                )

    point_users: dict[RatPoint, set[Edge]] = {}
    for i in range(g.m):
        for j in range(i + 1, g.m):
            e1, e2 = g.edges[i], g.edges[j]
            pts, overlap = _pair_intersections(w, i, j)
            if overlap:
                out.append(
                    Violation("overlap", f"edges {e1} and {e2} share a sub-segment", edges=(e1, e2))
                )
                continue
            if not pts:
                continue
            for pt in pts:
                point_users.setdefault(pt, set()).update((e1, e2))
            if _adjacent(e1, e2):
                if include_warnings:
                    out.append(
                        Violation(
                            "adjacent_crossing",
                            f"adjacent edges {e1} and {e2} intersect off their shared vertex",
                            edges=(e1, e2),
                            point=min(pts),
                            severity="warning",
                        )
                    )
            elif not w.atg.permits(e1, e2):
                out.append(
                    Violation(
                        "forbidden_crossing",
                        f"independent edges {e1} and {e2} cross at "
                        f"({min(pts)[0]}, {min(pts)[1]}) but are not allowed to",
                        edges=(e1, e2),
                        point=min(pts),
                    )
                )

    vertex_pts = {(Fraction(x), Fraction(y)) for x, y in w.vertex_points}
    for pt, users in sorted(point_users.items()):
        if len(users) >= 3 and pt not in vertex_pts:
            out.append(
                Violation(
                    "triple_point",
                    f"{len(users)} edges pass through ({pt[0]}, {pt[1]})",
                    edges=tuple(sorted(users)),
                    point=pt,
                )
            )
    return out


def crossing_count(w: WeakRealization, e1: Edge, e2: Edge) -> int:
    """Number of distinct intersection points of two drawn edges (shared vertex excluded)."""
    i, j = w.edge_index[e1], w.edge_index[e2]
    pts, overlap = _pair_intersections(w, min(i, j), max(i, j))
    if overlap:
        raise ContractViolation(f"edges {e1} and {e2} overlap; count undefined")
    return len(pts)


# ---------------------------------------------------------------------------
# The exponential-crossing family
# ---------------------------------------------------------------------------


@dataclass
class ExpoFamily:
    """Ladder-with-frame family whose added chords are forced to cross the
    frame edge {a, b} exponentially often; the shipped drawing realizes
    at least 2^(i-1) crossings for the i-th chord."""

    atg: AbstractTopologicalGraph
    realization: WeakRealization
    spine: Edge
    added: tuple[Edge, ...]
    labels: dict[str, int]


def expo_family(k: int) -> ExpoFamily:
    """Build the k-level family and its weak realization.

    Layout: frame edge {a, b} drawn as a long horizontal spine; a ladder of
    top verticals {u_i, u'_i} above it and bottom verticals {v_i, v'_i}
    below, joined by rails; chords {u_i, v_i} routed over the top assembly
    into private zigzag strips where each crosses the spine 2^(i-1) times
    (plus one to fix parity), then back under to v_i.  The allowed relation
    contains exactly the chord-spine pairs, so the drawing has no forbidden
    crossings and the realized counts witness the exponential growth.
    """
    if not 1 <= k <= 12:
        raise ContractViolation("k must be in [1, 12]")

    a, b = 0, 1
    u = {i: 1 + i for i in range(1, k + 1)}          # 2 .. k+1
    up = {i: 1 + k + i for i in range(1, k + 1)}     # k+2 .. 2k+1
    v = {i: 1 + 2 * k + i for i in range(1, k + 1)}  # 2k+2 .. 3k+1
    vp = {i: 1 + 3 * k + i for i in range(1, k + 1)}
    n = 4 * k + 2

    xu = {i: 100 - 8 * i for i in range(1, k + 1)}   # u_k leftmost
    xv = {i: 200 + 8 * i for i in range(1, k + 1)}   # v_k rightmost

    # chord i makes n_i spine crossings; counts above 1 get +1 to keep the
    # above-to-below parity without wrapping around the spine's free end
    n_cross = {i: 1 if i == 1 else 2 ** (i - 1) + 1 for i in range(1, k + 1)}
    strip_start = {}
    x = 1000
    for i in range(1, k + 1):
        strip_start[i] = x
        x += 4 * (n_cross[i] - 1) + 8
    spine_right = x + 100

    pts: list[Point | None] = [None] * n
    pts[a] = (-100, 0)
    pts[b] = (spine_right, 0)
    for i in range(1, k + 1):
        pts[u[i]] = (xu[i], 100)
        pts[up[i]] = (xu[i], 200)
        pts[v[i]] = (xv[i], -100)
        pts[vp[i]] = (xv[i], -200)

    pairs: list[tuple[int, int]] = [(a, b), (a, u[k]), (a, v[1])]
    pairs += [(u[i + 1], u[i]) for i in range(1, k)]
    pairs += [(v[i], v[i + 1]) for i in range(1, k)]
    pairs += [(u[i], up[i]) for i in range(1, k + 1)]
    pairs += [(v[i], vp[i]) for i in range(1, k + 1)]
    pairs += [(u[i], v[i]) for i in range(1, k + 1)]
    graph = graph_from_pairs(n, pairs)

    spine: Edge = (a, b)
    added = tuple((min(u[i], v[i]), max(u[i], v[i])) for i in range(1, k + 1))
    allowed = frozenset(frozenset((spine, e)) for e in added)
    atg = AbstractTopologicalGraph(graph, allowed)

    def chord_path(i: int) -> tuple[Point, ...]:
        s = strip_start[i]
        lane = 300 + i
        depth = -(50 + i)
        path: list[Point] = [
            (xu[i], 100),
            (xu[i] - 6, 104),
            (xu[i] - 6, lane),
            (s, lane),
            (s, -20),
        ]
        y = -20
        for t in range(1, n_cross[i]):
            path.append((s + 4 * t, y))
            y = -y
            path.append((s + 4 * t, y))
        w_end = s + 4 * (n_cross[i] - 1)
        path += [(w_end, depth), (xv[i] + 6, depth), (xv[i] + 6, -96), (xv[i], -100)]
        return tuple(path)

    curves = []
    for idx, (p, q) in enumerate(graph.edges):
        label = f"e{idx}"
        chord_i = next((i for i in range(1, k + 1) if {p, q} == {u[i], v[i]}), None)
        if chord_i is not None:
            body = chord_path(chord_i)
            if body[0] != pts[p]:
                body = tuple(reversed(body))
            curves.append(PolylineCurve(label, body))
        else:
            curves.append(PolylineCurve(label, (pts[p], pts[q])))

    realization = WeakRealization(atg, tuple(pts), tuple(curves))
    labels = {"a": a, "b": b}
    labels.update({f"u{i}": u[i] for i in range(1, k + 1)})
    labels.update({f"u'{i}": up[i] for i in range(1, k + 1)})
    labels.update({f"v{i}": v[i] for i in range(1, k + 1)})
    labels.update({f"v'{i}": vp[i] for i in range(1, k + 1)})
    return ExpoFamily(atg, realization, spine, added, labels)


# ---------------------------------------------------------------------------
# Weak realization -> string representation
# ---------------------------------------------------------------------------


def weak_to_strings(w: WeakRealization) -> tuple[StringRepresentation, Graph]:
    """Replace vertices by tiny loop strings and edges by trimmed edge strings.

    Returns the representation together with the predicted intersection
    graph H on vertex set V + E: vertex-string i is H-vertex i, edge-string
    j is H-vertex n + j; H has an edge for every incidence and for every
    crossing pair of drawn edges.  intersection_graph of the output equals H.

    The drawing is rescaled by an integer factor so the loops (L-infinity
    radius 16) fit inside every clearance and each edge string can be
    re-attached at an integer boundary port within one unit of its exact
    exit point.
    """
    issues = validate_weak_realization(w)
    if issues:
        raise ContractViolation(f"realization invalid: {issues[0].detail}")
    g = w.atg.graph

    scale = _pick_scale(w)
    vp = [(x * scale, y * scale) for x, y in w.vertex_points]
    curves = [
        [(x * scale, y * scale) for x, y in c.points] for c in w.edge_curves
    ]

    # niceness: crossings must stay clear of every loop neighborhood
    for i in range(g.m):
        for j in range(i + 1, g.m):
            pts, _ = _pair_intersections(w, i, j)
            for pt in pts:
                for p in vp:
                    if max(abs(pt[0] * scale - p[0]), abs(pt[1] * scale - p[1])) < 32:
                        raise ContractViolation(
                            "an edge crossing lies too close to a vertex for the "
                            "loop construction"
                        )

    RHO = 16
    ports: dict[int, list[tuple[int, int]]] = {x: [] for x in g.vertices()}
    trimmed: dict[int, list[Point]] = {}
    for ei, ((eu, ev), path) in enumerate(zip(g.edges, curves)):
        if path[0] != vp[eu]:
            eu, ev = ev, eu
        pu, iu = _exit_port(vp[eu], path)
        pv, iv = _exit_port(vp[ev], list(reversed(path)))
        iv = len(path) - 1 - iv
        middle = path[iu : iv + 1]
        pts_new = [pu] + middle + [pv]
        dedup = [pts_new[0]]
        for p in pts_new[1:]:
            if p != dedup[-1]:
                dedup.append(p)
        trimmed[ei] = dedup
        ports[eu].append(pu)
        ports[ev].append(pv)

    for x in g.vertices():
        plist = ports[x]
        for i in range(len(plist)):
            for j in range(i + 1, len(plist)):
                d = max(abs(plist[i][0] - plist[j][0]), abs(plist[i][1] - plist[j][1]))
                if d < 3:
                    # ports within 1/2 of their exact ring exits and strings
                    # within 1/2 of their rays: separation 3 keeps the tubes
                    # strictly apart
                    raise ContractViolation(
                        f"two edges leave vertex {x} in nearly identical directions; "
                        "their loop ports would collide"
                    )

    n, m = g.n, g.m
    width = len(str(n + m - 1))
    out_curves: list[PolylineCurve] = []
    for x in g.vertices():
        loop = _open_loop(vp[x], RHO, ports[x])
        out_curves.append(PolylineCurve(f"s{x:0{width}d}", loop))
    for ei in range(m):
        out_curves.append(PolylineCurve(f"s{n + ei:0{width}d}", tuple(trimmed[ei])))

    h_pairs: list[tuple[int, int]] = []
    for ei, (eu, ev) in enumerate(g.edges):
        h_pairs.append((eu, n + ei))
        h_pairs.append((ev, n + ei))
    for i in range(m):
        for j in range(i + 1, m):
            pts, _ = _pair_intersections(w, i, j)
            if pts:
                h_pairs.append((n + i, n + j))
    predicted = graph_from_pairs(n + m, h_pairs)
    return StringRepresentation(tuple(out_curves)), predicted


def _pick_scale(w: WeakRealization) -> int:
    """Smallest power of two making every exact clearance at least 64 units."""
    g = w.atg.graph
    d2 = None

    def keep(val: Fraction):
        nonlocal d2
        if val > 0 and (d2 is None or val < d2):
            d2 = val

    for x in range(g.n):
        for y in range(x + 1, g.n):
            keep(sq_dist_points(w.vertex_points[x], w.vertex_points[y]))
    for x in g.vertices():
        p = w.vertex_points[x]
        for e, c in zip(g.edges, w.edge_curves):
            if x in e:
                continue
            for s0, s1 in c.segments:
                keep(sq_dist_point_segment(p, s0, s1))
    for c in w.edge_curves:
        # the first and last segments must span the loop ring so each port
        # direction is read from the segment the curve actually exits on
        keep(sq_dist_points(c.points[0], c.points[1]))
        keep(sq_dist_points(c.points[-1], c.points[-2]))
    all_segs = []
    for ci, c in enumerate(w.edge_curves):
        for si, seg in enumerate(c.segments):
            all_segs.append((ci, si, seg))
    for i in range(len(all_segs)):
        ci, si, (p, q) = all_segs[i]
        for j in range(i + 1, len(all_segs)):
            cj, sj, (r, s) = all_segs[j]
            if ci == cj and abs(si - sj) <= 1:
                continue
            if {p, q} & {r, s}:
                continue  # shared endpoint: separation near it is direction-governed
            keep(sq_dist_segments(p, q, r, s))
    if d2 is None:
        d2 = Fraction(1)
    scale = 1
    while scale * scale * d2 < 64 * 64:
        scale *= 2
    return scale


def _exit_port(center: Point, path: list[Point]) -> tuple[Point, int]:
    """Integer port on the L-infinity ring of radius 16 where the curve exits.

    Returns the port and the index of the first path point outside the ring.
    The first segment always spans the ring because all clearances are >= 64.
    """
    cx, cy = center
    p0, p1 = path[0], path[1]
    dx, dy = p1[0] - p0[0], p1[1] - p0[1]
    # exact exit of the ray from the ring, then the nearest lattice point on
    # that ring side (< 1 unit away)
    if abs(dx) >= abs(dy):
        t = Fraction(16, abs(dx))
        port = (cx + (16 if dx > 0 else -16), cy + round(t * dy))
    else:
        t = Fraction(16, abs(dy))
        port = (cx + round(t * dx), cy + (16 if dy > 0 else -16))
    for idx in range(1, len(path)):
        q = path[idx]
        if max(abs(q[0] - cx), abs(q[1] - cy)) > 16:
            return port, idx
    raise ContractViolation("edge curve never leaves its endpoint's loop ring")


def _open_loop(center: Point, rho: int, taken: list[Point]) -> tuple[Point, ...]:
    """Axis-aligned square ring around center, opened by a one-unit notch.

    The notch sits at a mid-side boundary lattice point with no port within
    one unit, so every incident edge string still meets the loop.
    """
    cx, cy = center
    corners = [
        (cx + rho, cy + rho),
        (cx - rho, cy + rho),
        (cx - rho, cy - rho),
        (cx + rho, cy - rho),
    ]
    corner_set = set(corners)
    boundary: list[Point] = []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        sx = (b[0] > a[0]) - (b[0] < a[0])
        sy = (b[1] > a[1]) - (b[1] < a[1])
        x, y = a
        while (x, y) != b:
            boundary.append((x, y))
            x, y = x + sx, y + sy
    per = len(boundary)
    taken_set = set(taken)
    gap = None
    for idx, pt in enumerate(boundary):
        if pt in corner_set:
            continue
        window = {boundary[(idx + d) % per] for d in (-1, 0, 1)}
        if not (window & taken_set):
            gap = idx
            break
    if gap is None:
        raise ContractViolation("no free boundary stretch for the loop opening")
    walk = [boundary[(gap + step) % per] for step in range(1, per)]
    poly = [walk[0]]
    poly.extend(pt for pt in walk[1:-1] if pt in corner_set)
    poly.append(walk[-1])
    return tuple(poly)


# ---------------------------------------------------------------------------
# Weak-realization file format
# ---------------------------------------------------------------------------


def write_realization_file(w: WeakRealization) -> str:
    g = w.atg.graph
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    idx = w.edge_index
    allow = sorted(tuple(sorted(idx[e] for e in pair)) for pair in w.atg.allowed)
    lines += [f"allow {i} {j}" for i, j in allow]
    lines += [f"vertex {x} {p[0]} {p[1]}" for x, p in enumerate(w.vertex_points)]
    for i, c in enumerate(w.edge_curves):
        coords = " ".join(f"{x} {y}" for x, y in c.points)
        lines.append(f"edge {i}: {coords}")
    return "\n".join(lines) + "\n"


def parse_realization_file(text: str) -> WeakRealization:
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise ParseError("empty realization file", 1)
    try:
        n, m = (int(t) for t in lines[0].split())
    except ValueError:
        raise ParseError("expected 'n m'", 1) from None
    edges: list[Edge] = []
    for i in range(m):
        lineno = 2 + i
        try:
            u, v = (int(t) for t in lines[1 + i].split())
        except Exception:
            raise ParseError("expected 'u v'", lineno) from None
        edges.append((min(u, v), max(u, v)))
    graph = Graph(n, tuple(sorted(edges)))
    order = {e: i for i, e in enumerate(graph.edges)}
    raw_order = edges

    allowed_pairs: set[EdgePair] = set()
    points: dict[int, Point] = {}
    curves: dict[int, PolylineCurve] = {}
    for off, raw in enumerate(lines[1 + m :], start=2 + m):
        if not raw.strip():
            continue
        if raw.startswith("allow "):
            try:
                i, j = (int(t) for t in raw.split()[1:])
            except ValueError:
                raise ParseError("expected 'allow i j'", off) from None
            if not (0 <= i < m and 0 <= j < m):
                raise ParseError("allow index out of range", off)
            allowed_pairs.add(frozenset((raw_order[i], raw_order[j])))
        elif raw.startswith("vertex "):
            parts = raw.split()
            if len(parts) != 4:
                raise ParseError("expected 'vertex v x y'", off)
            v, x, y = (int(t) for t in parts[1:])
            points[v] = (x, y)
        elif raw.startswith("edge "):
            head, coords = raw.split(":", 1)
            i = int(head.split()[1])
            vals = [int(t) for t in coords.split()]
            pts = tuple(zip(vals[::2], vals[1::2]))
            curves[i] = PolylineCurve(f"e{order[raw_order[i]]}", pts)
        else:
            raise ParseError(f"unrecognized line {raw!r}", off)
    if set(points) != set(range(n)):
        raise ParseError("missing vertex coordinate lines", len(lines))
    if set(curves) != set(range(m)):
        raise ParseError("missing edge curve lines", len(lines))
    atg = AbstractTopologicalGraph(graph, frozenset(allowed_pairs))
    ordered_curves = [None] * m
    for i in range(m):
        ordered_curves[order[raw_order[i]]] = curves[i]
    return WeakRealization(atg, tuple(points[v] for v in range(n)), tuple(ordered_curves))
