"""Elementary moves on geodesic triangulations, Delaunay canonicalization,
straight-segment tracing and insertion, and flip paths between triangulations
of the same flat metric.

The insertion algorithm unfolds the triangles crossed by the target segment
into a planar strip (the developing polygon), picks the highest vertex of the
strip above the segment, and flips one diagonal of its fan per step; every
flip keeps the crossing count from growing and each round strictly reduces
it.  This only makes sense when developed triangles cannot overlap in an
ambiguous way, which holds when every holonomy rotation is a half turn or the
surface has genus zero (the strip then lives in the disk obtained by cutting
along the forest).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._geom import TWO_PI, angle_tol, ccw_angle, cross, fmt_float, reduce_angle
from .charts import (
    _anchor_and_offset,
    _locate_germ,
    _match_forest_halfedges,
    exchange_sequence,
)
from .errors import (
    DoesNotTerminateAtVertex,
    ExitsThroughForest,
    ForestEdge,
    HitsVertexEarly,
    HolonomyNotHalfTurn,
    NonTermination,
    NotFlippable,
    NotSameMetric,
    Unsupported,
)
from .surface import FlatSurface, isomorphic

CONVEXITY_TOL = 1e-12
DELAUNAY_BAND = 1e-9
POSITION_TOL = 1e-9


# ---------------------------------------------------------------------------
# holonomy hypothesis


@dataclass(frozen=True)
class HolonomyCheck:
    ok: bool
    witness: int | None = None

    def __bool__(self):
        return self.ok


def has_half_turn_holonomy(surface: FlatSurface) -> HolonomyCheck:
    """True when every cycle's rotation is 0 or pi modulo full turns.

    The rotation group is generated by the crossing rotations of the forest
    edges (cycles avoiding the forest are translations, and any cycle is a
    product of forest crossings), so it suffices to inspect those; the witness
    is a forest edge whose crossing loop has a different rotation."""
    for e in sorted(surface.forest):
        theta = surface.forest_pairing(e)[0]
        r = reduce_angle(theta)
        if min(abs(r), abs(r - math.pi), abs(r + math.pi)) > angle_tol(theta):
            return HolonomyCheck(False, e)
    return HolonomyCheck(True)


# ---------------------------------------------------------------------------
# single flips


@dataclass(frozen=True)
class FlipMove:
    """One elementary move: ``quad`` lists the four boundary half-edges of the
    convex quadrilateral in ccw order starting on the twin side."""

    edge: int
    old_diagonal: complex
    new_diagonal: complex
    quad: tuple


@dataclass(frozen=True)
class FlipPath:
    moves: tuple

    def __len__(self):
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def replay(self, surface: FlatSurface) -> FlatSurface:
        for move in self.moves:
            surface, _ = flip(surface, move.edge)
        return surface

    def to_json(self) -> str:
        items = []
        for m in self.moves:
            items.append(
                '{"edge": %d, "quad": [%s], "new_vector": [%s, %s]}'
                % (m.edge, ", ".join(str(q) for q in m.quad),
                   fmt_float(m.new_diagonal.real), fmt_float(m.new_diagonal.imag)))
        return "[" + ", ".join(items) + "]"


def _quad(surface: FlatSurface, edge):
    h = surface.edge_of(edge)
    hb = surface.twin(h)
    a = surface.next(h)
    b = surface.next(a)
    c = surface.next(hb)
    d = surface.next(c)
    return h, hb, a, b, c, d


def is_flippable(surface: FlatSurface, edge) -> bool:
    """True when the two triangles of the edge form a strictly convex quad."""
    e = surface.edge_of(edge)
    if e in surface.forest:
        raise ForestEdge(f"edge {e} lies in the forest")
    h, hb, a, b, c, d = _quad(surface, e)
    if surface.triangle_of(h) == surface.triangle_of(hb):
        return False
    va, vb, vc, vd = surface.vec(a), surface.vec(b), surface.vec(c), surface.vec(d)
    scale = max(abs(va), abs(vb), abs(vc), abs(vd))
    tol = CONVEXITY_TOL * scale * scale
    return (cross(vc, vd) > tol and cross(vd, va) > tol
            and cross(va, vb) > tol and cross(vb, vc) > tol)


def flip(surface: FlatSurface, edge):
    """Replace the diagonal of a convex quadrilateral by the other one.

    Returns (new surface, move).  The flipped edge keeps its half-edge pair;
    everything outside the quad is untouched."""
    if not is_flippable(surface, edge):
        raise NotFlippable(f"edge {surface.edge_of(edge)} is not flippable")
    h, hb, a, b, c, d = _quad(surface, surface.edge_of(edge))
    new_vec = surface.vec(h) + surface.vec(a) - surface.vec(c)

    triangles = surface.triangles
    triangles[surface.triangle_of(h)] = (h, b, c)
    triangles[surface.triangle_of(hb)] = (hb, d, a)
    vectors = {x: surface.vec(x) for x in surface.halfedges}
    vectors[h] = new_vec
    vectors[hb] = -new_vec
    origin = {x: surface.origin(x) for x in surface.halfedges}
    origin[h] = surface.origin(d)
    origin[hb] = surface.origin(b)
    targets = {v: surface.angle_target(v) for v in surface.vertex_ids}
    result = FlatSurface(triangles, {x: surface.twin(x) for x in surface.halfedges},
                         vectors, surface.forest, origin_map=origin, angle_targets=targets)
    move = FlipMove(surface.edge_of(edge), surface.vec(h), new_vec, (c, d, a, b))
    return result, move


def random_flips(surface: FlatSurface, count, rng):
    """Random walk in the flip graph; returns (surface, path)."""
    moves = []
    for _ in range(count):
        candidates = [e for e in surface.edges()
                      if e not in surface.forest and is_flippable(surface, e)]
        if not candidates:
            break
        surface, move = flip(surface, candidates[rng.integers(len(candidates))])
        moves.append(move)
    return surface, FlipPath(tuple(moves))


# ---------------------------------------------------------------------------
# Delaunay


def delaunay_angle_sum(surface: FlatSurface, edge) -> float:
    """Sum of the two angles opposite the edge in its quad (<= pi means the
    edge is locally Delaunay)."""
    h = surface.edge_of(edge)
    return (surface.corner_angle(surface.prev(h))
            + surface.corner_angle(surface.prev(surface.twin(h))))


def is_delaunay_edge(surface: FlatSurface, edge, band: float = DELAUNAY_BAND) -> bool:
    h = surface.edge_of(edge)
    if h in surface.forest:
        return True
    if surface.triangle_of(h) == surface.triangle_of(surface.twin(h)):
        return True
    return delaunay_angle_sum(surface, h) <= math.pi + band


def delaunay(surface: FlatSurface, rng=None):
    """Flip until every non-forest interior edge passes the local predicate.

    Deterministic scan order by default; an rng randomizes the choice among
    violating edges (the metric result is the same up to cocircular flips)."""
    cap = 50 * (len(surface.halfedges) // 2 + len(surface.forest)) ** 2
    moves = []
    while True:
        bad = [e for e in surface.edges()
               if e not in surface.forest and not is_delaunay_edge(surface, e)]
        if not bad:
            return surface, FlipPath(tuple(moves))
        e = bad[0] if rng is None else bad[rng.integers(len(bad))]
        surface, move = flip(surface, e)
        moves.append(move)
        if len(moves) > cap:
            raise NonTermination(f"Delaunay flipping exceeded {cap} moves")


def canonicalize_cocircular(surface: FlatSurface, band: float = DELAUNAY_BAND):
    """Resolve cocircular quads deterministically: within the band, prefer the
    diagonal with the smaller (vertex pair, direction) key.  Used to compare
    Delaunay triangulations produced in different flip orders."""

    def vec_key(v):
        return max((v.real, v.imag), (-v.real, -v.imag))

    def edge_key(verts, v):
        return (tuple(sorted(verts)), vec_key(v))

    cap = 50 * (len(surface.halfedges) // 2) ** 2
    count = 0
    while True:
        improved = False
        for e in surface.edges():
            if e in surface.forest:
                continue
            if abs(delaunay_angle_sum(surface, e) - math.pi) > band:
                continue
            if not is_flippable(surface, e):
                continue
            h, hb, a, b, c, d = _quad(surface, e)
            old = edge_key((surface.origin(h), surface.origin(hb)), surface.vec(h))
            new_vec = surface.vec(h) + surface.vec(a) - surface.vec(c)
            new = edge_key((surface.origin(b), surface.origin(d)), new_vec)
            if new < old:
                surface, _ = flip(surface, e)
                improved = True
                count += 1
                if count > cap:
                    raise NonTermination("cocircular canonicalization did not settle")
                break
        if not improved:
            return surface


# ---------------------------------------------------------------------------
# segment tracing


@dataclass(frozen=True)
class Crossing:
    halfedge: int
    p_from: complex
    p_to: complex


@dataclass(frozen=True)
class Trace:
    """Development of a straight segment across the triangulation.

    ``chain`` is the boundary chain of the developed strip on the clockwise
    side of the segment: surface half-edges with signs whose signed vectors
    telescope to the segment vector."""

    corner: int
    w: complex
    crossings: tuple
    chain: tuple
    end_vertex: int


@dataclass(frozen=True)
class DevelopingPolygon:
    vertices: tuple
    diagonal: tuple
    diagonals: tuple
    corner_map: dict


def _near(p, q, scale):
    return abs(p - q) <= POSITION_TOL * (1.0 + scale)


def develop_segment(surface: FlatSurface, corner, w: complex) -> Trace:
    """Trace the straight segment of vector w from the corner's vertex.

    The corner is an outgoing half-edge; the direction must lie in the closed
    sector from that half-edge's ray (inclusive) to the next corner's ray
    (exclusive).  Forest edges may not be crossed."""
    h0 = corner
    w = complex(w)
    u = surface.vec(h0)
    scale = max(abs(w), abs(u))
    ang = surface.corner_angle(h0)
    sin_part = cross(u, w)
    cos_part = (u.conjugate() * w).real
    if abs(sin_part) <= POSITION_TOL * scale * abs(u) and cos_part > 0:
        # along the leading ray of the corner
        if _near(w, u, scale):
            return Trace(h0, w, (), ((h0, 1.0),), surface.head(h0))
        if abs(w) < abs(u):
            raise DoesNotTerminateAtVertex("segment ends inside an existing edge")
        raise HitsVertexEarly(surface.head(h0), abs(u) / abs(w))
    delta = math.atan2(sin_part, cos_part)
    if delta < 0 or delta >= ang:
        raise ValueError("direction does not lie in the given corner sector")

    # positions of the current triangle's corners, keyed by outgoing half-edge
    pos = {h0: 0j,
           surface.next(h0): u,
           surface.prev(h0): u + surface.vec(surface.next(h0))}
    entry = None
    chain = [(h0, 1.0)]
    chain_end = u
    crossings = []
    t_prev = 0.0
    cap = 1000 * (len(surface.halfedges) + 1)

    for _ in range(cap):
        tri_hes = [h0, surface.next(h0), surface.prev(h0)] if entry is None else \
            [entry, surface.next(entry), surface.prev(entry)]
        local = max([abs(w)] + [abs(surface.vec(x)) for x in tri_hes])

        # does the segment end at a corner of this triangle?
        hit = None
        for x in tri_hes:
            if _near(pos[x], w, local):
                hit = x
                break
        if hit is not None:
            if not _near(chain_end, w, local):
                final = None
                for x in tri_hes:
                    ends = (pos[x], pos[surface.next(x)] if surface.next(x) in pos else None)
                    if ends[1] is None:
                        continue
                    if _near(ends[0], chain_end, local) and _near(ends[1], w, local):
                        final = (x, 1.0)
                        break
                    if _near(ends[1], chain_end, local) and _near(ends[0], w, local):
                        final = (x, -1.0)
                        break
                if final is None:
                    raise AssertionError("no closing side for the developed chain")
                chain.append(final)
            trace = Trace(h0, w, tuple(crossings), tuple(chain), surface.origin(hit))
            total = sum(s * surface.vec(x) for x, s in trace.chain)
            if not _near(total, w, local):
                raise AssertionError("developed chain does not telescope to the segment")
            return trace

        candidates = [surface.next(h0)] if entry is None else \
            [surface.next(entry), surface.prev(entry)]
        exit_he = None
        exit_t = None
        for x in candidates:
            p = pos[x]
            q = pos[surface.next(x)] if surface.next(x) in pos else p + surface.vec(x)
            denom = cross(w, q - p)
            if abs(denom) <= 1e-15 * local * local:
                continue
            t = cross(p, q - p) / denom
            s = cross(p, w) / denom
            if t <= t_prev + 1e-15 or t > 1.0 + POSITION_TOL:
                continue
            side_len = abs(q - p)
            if s < -POSITION_TOL * local / side_len or s > 1.0 + POSITION_TOL * local / side_len:
                continue
            if min(s, 1.0 - s) * side_len <= POSITION_TOL * (1.0 + local):
                vertex = surface.origin(x) if s < 0.5 else surface.head(x)
                raise HitsVertexEarly(vertex, t)
            exit_he, exit_t = x, t
            break
        if exit_he is None:
            raise DoesNotTerminateAtVertex("segment ends inside a triangle")
        if surface.edge_of(exit_he) in surface.forest:
            raise ExitsThroughForest(surface.edge_of(exit_he))

        p_from, p_to = pos[exit_he], pos[exit_he] + surface.vec(exit_he)
        crossings.append(Crossing(exit_he, p_from, p_to))
        # lower endpoint of the crossed side extends the clockwise chain
        low = p_from if cross(w, p_from) < 0 else p_to
        if not _near(low, chain_end, local):
            if len(candidates) < 2:
                raise AssertionError("first crossing must share the chain endpoint")
            third = candidates[0] if candidates[1] is exit_he else candidates[1]
            sign = 1.0 if _near(pos[third], chain_end, local) else -1.0
            chain.append((third, sign))
            chain_end = low

        tw = surface.twin(exit_he)
        pos = {tw: p_to, surface.next(tw): p_from}
        pos[surface.prev(tw)] = p_from + surface.vec(surface.next(tw))
        entry = tw
        t_prev = exit_t
    raise NonTermination("segment tracing exceeded the iteration cap")


def trace_segment(surface: FlatSurface, corner, w: complex):
    """Ordered list of half-edges crossed by the straight segment of vector w
    from the corner's vertex, which must end exactly at a vertex."""
    return [c.halfedge for c in develop_segment(surface, corner, w).crossings]


def developing_polygon(surface: FlatSurface, corner, w: complex) -> DevelopingPolygon:
    """Planar unfolding of the triangles crossed by the segment, with the
    segment as a diagonal."""
    trace = develop_segment(surface, corner, w)
    scale = abs(w)
    uppers, lowers = [], []

    def push(seq, p, vid):
        for q, _ in seq:
            if _near(p, q, scale):
                return
        seq.append((p, vid))

    for c in trace.crossings:
        for p, vid in ((c.p_from, surface.origin(c.halfedge)),
                       (c.p_to, surface.head(c.halfedge))):
            push(uppers if cross(w, p) > 0 else lowers, p, vid)
    verts = [0j] + [p for p, _ in lowers] + [w] + [p for p, _ in reversed(uppers)]
    ids = ([surface.origin(trace.corner)] + [v for _, v in lowers]
           + [trace.end_vertex] + [v for _, v in reversed(uppers)])
    corner_map = {i: vid for i, vid in enumerate(ids)}

    def index_of(p):
        for i, q in enumerate(verts):
            if _near(p, q, scale):
                return i
        raise AssertionError("crossed-edge endpoint missing from the polygon boundary")

    diagonals = tuple((index_of(c.p_from), index_of(c.p_to)) for c in trace.crossings)
    return DevelopingPolygon(tuple(verts), (0, 1 + len(lowers)), diagonals, corner_map)


# ---------------------------------------------------------------------------
# segment insertion


def _fan_flip_choice(surface: FlatSurface, trace: Trace):
    """Crossing index to flip: in the fan of the highest strip vertex, the
    diagonal whose far endpoint is lowest (smallest index on ties)."""
    w = trace.w
    rot = w.conjugate() / abs(w)
    scale = abs(w)

    def y(p):
        return (p * rot).imag

    uppers, lowers = [], []
    for c in trace.crossings:
        for p in (c.p_from, c.p_to):
            seq = uppers if y(p) > 0 else lowers
            if not any(_near(p, q, scale) for q in seq):
                seq.append(p)
    sign = 1.0
    if len(uppers) < len(lowers):
        uppers, lowers = lowers, uppers
        sign = -1.0

    apex = max(uppers, key=lambda p: sign * y(p))
    fan = []
    for k, c in enumerate(trace.crossings):
        if _near(c.p_from, apex, scale) or _near(c.p_to, apex, scale):
            fan.append(k)
    if not fan or fan != list(range(fan[0], fan[-1] + 1)):
        raise AssertionError("fan of the apex is not a contiguous crossing range")
    lows = []
    for k in fan:
        c = trace.crossings[k]
        far = c.p_to if _near(c.p_from, apex, scale) else c.p_from
        lows.append(sign * y(far))
    j0 = min(range(len(lows)), key=lambda j: (lows[j], j))
    return fan[j0]


def _insert_located(surface, vertex, anchor, theta, direction, length):
    """Insertion core: resolve the germ once, then keep it as (reference
    half-edge at the vertex, ccw offset), re-anchoring before any flip that
    would remove the reference edge.  The offset between two geodesic germs at
    a vertex never changes, so the tracked germ survives every flip."""
    corner, wv = _locate_germ(surface, vertex, anchor, theta, direction, length)
    u = surface.vec(corner)
    h_ref, delta = corner, max(math.atan2(cross(u, wv), (u.conjugate() * wv).real), 0.0)

    moves = []
    n_edges = len(surface.halfedges) // 2 + len(surface.forest)
    cap = 100 * n_edges * n_edges
    prev_m = None
    budget = None
    while True:
        corner, wv = _locate_germ(surface, vertex, h_ref, delta, direction, length)
        trace = develop_segment(surface, corner, wv)
        m = len(trace.crossings)
        if m == 0:
            return surface, FlipPath(tuple(moves)), trace
        if prev_m is None or m < prev_m:
            prev_m = m
            budget = m + 2
        elif m > prev_m:
            raise NonTermination("crossing count increased during insertion")
        else:
            budget -= 1
            if budget < 0:
                raise NonTermination("no crossing-count progress within a fan round")
        k = _fan_flip_choice(surface, trace)
        edge = surface.edge_of(trace.crossings[k].halfedge)
        if surface.edge_of(h_ref) == edge:
            others = [h for h in surface.corners_at(vertex)
                      if surface.edge_of(h) != edge]
            if not others:
                raise NonTermination("no stable reference edge at the start vertex")
            h_new = min(others)
            delta = (_offset_between(surface, h_new, h_ref) + delta) \
                % surface.cone_angle(vertex)
            h_ref = h_new
        surface, move = flip(surface, edge)
        moves.append(move)
        if len(moves) > cap:
            raise NonTermination(f"insertion exceeded {cap} flips")


def insert_segment(surface: FlatSurface, corner, w: complex):
    """Flip until the straight segment from the corner becomes an edge.

    Requires half-turn holonomy or genus zero, and a segment that ends at a
    vertex without crossing the forest.  Returns (surface, path)."""
    if not has_half_turn_holonomy(surface) and surface.genus() != 0:
        raise HolonomyNotHalfTurn(
            "holonomy has rotations outside half turns and the genus is positive")
    develop_segment(surface, corner, w)  # validate the trace up front
    u = surface.vec(corner)
    delta = max(math.atan2(cross(u, w), (u.conjugate() * w).real), 0.0)
    result, path, _ = _insert_located(surface, surface.origin(corner), corner, delta,
                                      w / abs(w), abs(w))
    return result, path


# ---------------------------------------------------------------------------
# flip paths between triangulations


def _offset_between(surf: FlatSurface, from_corner, to_corner) -> float:
    """ccw angle at a common vertex from one outgoing germ to another."""
    theta = 0.0
    h = from_corner
    for _ in range(len(surf.corners_at(surf.origin(from_corner))) + 1):
        if h == to_corner:
            return theta
        theta += surf.corner_angle(h)
        h = surf.sigma(h)
    raise AssertionError("corners do not share a vertex")


def _flip_path_anchored(source, target, matching, free_anchor):
    """Insert all target edges with germ anchoring.

    ``free_anchor``, when given, is (vertex, (source corner, offset, target
    reference corner)): the reference corner's edge is inserted first with the
    candidate germ and then serves as a stable anchor for every later germ at
    that vertex (inserted target edges are never flipped again, since flips
    only hit edges crossing the segment being inserted and target edges do not
    cross each other)."""
    current = source
    moves = []

    def insert(vertex, anchor_s, theta, w, label):
        nonlocal current
        try:
            current, path, trace = _insert_located(
                current, vertex, anchor_s, theta, w / abs(w), abs(w))
        except (DoesNotTerminateAtVertex, HitsVertexEarly, ExitsThroughForest) as exc:
            raise NotSameMetric(
                f"target edge {label} is not a geodesic of the source metric") from exc
        moves.extend(path.moves)
        return trace

    edges = [e for e in sorted(target.edges()) if e not in target.forest]
    v_free = ref_t = anchor_free = None
    if free_anchor is not None:
        v_free, (corner_s, delta, ref_t) = free_anchor
        ref_edge = target.edge_of(ref_t)
        trace = insert(v_free, corner_s, delta, target.vec(ref_t), ref_edge)
        anchor_free = trace.corner
        edges = [e for e in edges if e != ref_edge]

    for e2 in edges:
        v = target.origin(e2)
        if v_free is not None and v == v_free:
            anchor_s = anchor_free
            theta = _offset_between(target, ref_t, e2)
        else:
            anchor_t, theta = _anchor_and_offset(target, e2)
            anchor_s = matching[anchor_t] if anchor_t is not None else None
        insert(v, anchor_s, theta, target.vec(e2), e2)
    if isomorphic(current, target) is None:
        raise NotSameMetric("inserted triangulation is not the target")
    return FlipPath(tuple(moves))


def flip_path(source: FlatSurface, target: FlatSurface) -> FlipPath:
    """Sequence of flips carrying the source triangulation onto the target.

    Both surfaces must present the same flat metric with the same vertex
    labels and forest.  Works under half-turn holonomy or in genus zero; the
    replayed path ends in a surface canonically equal to the target.

    Directions at a vertex are matched between the two presentations through
    a forest half-edge when one is incident, or directly when the cone angle
    is a single turn.  One vertex with a larger angle and no forest edge is
    handled by trying each of its finitely many germs of the reference
    direction; more than one such vertex is not supported.
    """
    if sorted(source.vertex_ids) != sorted(target.vertex_ids):
        raise NotSameMetric("vertex labels differ")
    for v in source.vertex_ids:
        if abs(source.cone_angle(v) - target.cone_angle(v)) > angle_tol(source.cone_angle(v)):
            raise NotSameMetric(f"cone angles differ at vertex {v}")
    if abs(source.total_area() - target.total_area()) > 1e-9 * (1 + source.total_area()):
        raise NotSameMetric("areas differ")
    if len(source.forest) != len(target.forest):
        raise NotSameMetric("forests differ")
    if not has_half_turn_holonomy(source) and source.genus() != 0:
        raise Unsupported("flip paths need half-turn holonomy or genus zero")

    matching = _match_forest_halfedges(source, target)
    anchored = set()
    for e in source.forest:
        anchored.add(source.origin(e))
        anchored.add(source.origin(source.twin(e)))
    fat = [v for v in source.vertex_ids if v not in anchored
           and abs(source.cone_angle(v) - TWO_PI) > angle_tol(TWO_PI)]
    if not fat:
        return _flip_path_anchored(source, target, matching, None)
    if len(fat) > 1:
        raise Unsupported(
            "more than one cone vertex without a forest anchor; direction "
            "germs cannot be matched canonically")

    v = fat[0]
    ref_t = min(target.corners_at(v))
    direction = target.vec(ref_t) / abs(target.vec(ref_t))
    failure = None
    for h in source.corners_at(v):
        delta = ccw_angle(source.vec(h), direction)
        if delta >= TWO_PI - 1e-9:
            delta = 0.0
        if delta >= source.corner_angle(h) - 1e-9 and delta > 1e-9:
            continue
        try:
            return _flip_path_anchored(source, target, matching,
                                       (v, (h, max(delta, 0.0), ref_t)))
        except (NotSameMetric, NonTermination, Unsupported) as exc:
            failure = exc
    raise NotSameMetric("no direction germ reproduces the target") from failure


def exchange_tree(surface: FlatSurface, tree_from, tree_to):
    """Single-edge exchanges (remove, add) between two spanning trees realized
    inside the current triangulation; every intermediate set is a tree."""
    return exchange_sequence(surface, tree_from, tree_to)
