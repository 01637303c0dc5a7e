"""Linear charts: cut a surface along its forest, assemble the edge-vector
system, compute kernels, reconstruct surfaces from solutions.

The cut surface keeps the half-edge ids of the closed surface; cutting only
removes the twin links of forest edges (their two half-edges become boundary
sides) and records, per forest edge, the rotation relating the two sides.
Each edge of the cut triangulation contributes one column to the system:
interior edges are represented by their smaller half-edge, boundary sides by
themselves.  Rows are the ccw triangle relations plus one row per boundary
pair, all with unit-modulus coefficients.
"""

from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from ._geom import angle_tol, fmt_float, is_turn_multiple, reduce_angle
from .errors import (
    AngleMismatch,
    ClosureViolation,
    DegenerateTriangle,
    DimensionMismatch,
    DoesNotTerminateAtVertex,
    ExitsThroughForest,
    ForestNotErasing,
    HitsVertexEarly,
    NotErasing,
    NotInKernel,
    NotSameMetric,
    NotSpanningTree,
    OrientationViolation,
    PartitionUnrealizable,
    TransitionUndefined,
    Unsupported,
)
from .surface import TWO_PI, FlatSurface

KERNEL_RANK_TOL = 1e-8     # singular values below this fraction of the largest count as zero
KERNEL_RESIDUAL_TOL = 1e-10
SOLUTION_RESIDUAL_TOL = 1e-8


# ---------------------------------------------------------------------------
# forests


def _edge_endpoints(surface, e):
    return surface.origin(e), surface.origin(surface.twin(e))


def _vertex_graph(surface):
    adj = {v: [] for v in surface.vertex_ids}
    for e in surface.edges():
        a, b = _edge_endpoints(surface, e)
        adj[a].append((e, b))
        adj[b].append((e, a))
    for v in adj:
        adj[v].sort()
    return adj


def is_erasing(surface: FlatSurface, forest, return_witness: bool = False):
    """Check that a candidate edge set is a forest whose complement develops
    with purely translational holonomy and that covers every vertex whose cone
    angle is not a multiple of a full turn.

    The check propagates a rotation offset over the triangle adjacency graph,
    crossing only non-candidate edges, and reports the first inconsistency.
    """
    forest = {surface.edge_of(e) for e in forest}

    def result(ok, witness=None):
        return (ok, witness) if return_witness else ok

    covered = set()
    parent = {v: v for v in surface.vertex_ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in sorted(forest):
        a, b = _edge_endpoints(surface, e)
        covered.update((a, b))
        ra, rb = find(a), find(b)
        if ra == rb:
            return result(False, ("cycle", e))
        parent[ra] = rb
    for v in surface.vertex_ids:
        if v not in covered and not is_turn_multiple(surface.cone_angle(v)):
            return result(False, ("uncovered", v))

    rot = {}
    for t0 in sorted(surface.triangles):
        if t0 in rot:
            continue
        rot[t0] = 0.0
        queue = deque([t0])
        while queue:
            t = queue.popleft()
            for h in surface.triangle(t):
                if surface.edge_of(h) in forest:
                    continue
                t2 = surface.triangle_of(surface.twin(h))
                r2 = rot[t] - surface.crossing_rotation(h)
                if t2 not in rot:
                    rot[t2] = r2
                    queue.append(t2)
                elif abs(reduce_angle(r2 - rot[t2])) > angle_tol(r2):
                    return result(False, ("holonomy", surface.edge_of(h)))
    return result(True, None)


def spanning_forest(surface: FlatSurface, parts=None):
    """Pick a forest inside the 1-skeleton.

    Default: a single tree through all vertices for genus 0; the empty forest
    when every cone angle is a full-turn multiple; otherwise one pruned tree
    through the singular vertices.  An explicit ``parts`` argument (a list of
    vertex sets) requests one tree per part, realized inside the subgraph
    induced on that part.
    """
    adj = _vertex_graph(surface)

    def bfs_tree(allowed, root):
        tree, seen = set(), {root}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for e, w in adj[v]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    tree.add(e)
                    queue.append(w)
        return tree, seen

    if parts is not None:
        forest = set()
        for part in parts:
            part = set(part)
            for v in part:
                if v not in adj:
                    raise PartitionUnrealizable(f"unknown vertex {v}")
            root = min(part)
            tree, seen = bfs_tree(part, root)
            if seen != part:
                raise PartitionUnrealizable(f"part {sorted(part)} is not connected")
            forest |= tree
        ok, witness = is_erasing(surface, forest, return_witness=True)
        if not ok:
            raise NotErasing(f"requested forest fails the holonomy criterion: {witness}",
                             witness)
        return frozenset(forest)

    singular = [v for v in surface.vertex_ids if not is_turn_multiple(surface.cone_angle(v))]
    if surface.genus() == 0:
        tree, seen = bfs_tree(set(surface.vertex_ids), min(surface.vertex_ids))
        if len(seen) != len(surface.vertex_ids):
            raise PartitionUnrealizable("1-skeleton is disconnected")
        return frozenset(tree)
    if not singular:
        return frozenset()

    # tree over all vertices, then prune regular leaves
    tree, _ = bfs_tree(set(surface.vertex_ids), min(singular))
    deg = {}
    for e in tree:
        for v in _edge_endpoints(surface, e):
            deg[v] = deg.get(v, 0) + 1
    changed = True
    while changed:
        changed = False
        for e in sorted(tree):
            a, b = _edge_endpoints(surface, e)
            for leaf, other in ((a, b), (b, a)):
                if deg.get(leaf) == 1 and leaf not in singular:
                    tree.discard(e)
                    deg[leaf] -= 1
                    deg[other] -= 1
                    changed = True
                    break
    ok, witness = is_erasing(surface, tree, return_witness=True)
    if not ok:
        raise NotErasing(f"no erasing forest found in the 1-skeleton: {witness}", witness)
    return frozenset(tree)


def boundary_rotation(surface: FlatSurface, e) -> float:
    """Rotation relating the two sides of forest edge e, in (-pi, pi].

    Computed by summing cone angles over the subtree component cut off by e
    that does not contain the tree's smallest vertex; verified against the
    stored vectors during surface validation."""
    if surface.edge_of(e) not in surface.forest:
        raise ValueError(f"edge {e} is not in the forest")
    return surface.forest_pairing(surface.edge_of(e))[0]


# ---------------------------------------------------------------------------
# cutting


@dataclass(frozen=True)
class BoundaryPair:
    """One slit: boundary sides a, abar with z(abar) = -e^{i theta} z(a)."""

    a: int
    abar: int
    rotation: float
    edge: int


@dataclass(frozen=True)
class CutSurface:
    """Surface slit open along its forest.

    Half-edge ids are those of the closed surface (the back map is the
    identity); forest half-edges lose their twins and become boundary sides.
    """

    surface: FlatSurface
    columns: tuple
    boundary: frozenset
    pairings: tuple
    num_edges: int      # N1, columns of the system
    num_triangles: int  # N2
    num_trees: int
    num_rows: int       # N2 plus one row per boundary pair

    def column_of(self, h):
        """(column index, sign) such that vec(h) = sign * Z[column]."""
        return self._col_of[h]

    def __post_init__(self):
        col_of = {}
        for i, rep in enumerate(self.columns):
            col_of[rep] = (i, 1.0)
            if rep not in self.boundary:
                col_of[self.surface.twin(rep)] = (i, -1.0)
        object.__setattr__(self, "_col_of", col_of)


def cut_along_forest(surface: FlatSurface) -> CutSurface:
    """Slit the surface open along its forest edges."""
    ok, witness = is_erasing(surface, surface.forest, return_witness=True)
    if not ok:
        raise ForestNotErasing(f"forest fails the holonomy criterion: {witness}", witness)

    boundary = set()
    for e in surface.forest:
        boundary.add(e)
        boundary.add(surface.twin(e))
    columns = sorted(h for h in surface.halfedges
                     if h in boundary or h < surface.twin(h))
    pairings = tuple(
        BoundaryPair(a, abar, theta, e)
        for e, (theta, a, abar) in sorted(
            (e, surface.forest_pairing(e)) for e in surface.forest))

    n = len(surface.vertex_ids)
    m = surface.num_trees()
    g = surface.genus()
    n1 = len(columns)
    n2 = len(surface.triangles)
    if n1 != 3 * (2 * g + m - 2) + 4 * (n - m) or n2 != 2 * (2 * g + m - 2) + 2 * (n - m):
        raise AssertionError("edge/triangle counts disagree with the Euler count")
    return CutSurface(surface, tuple(columns), frozenset(boundary), pairings,
                      n1, n2, m, n2 + len(pairings))


def solution_vector(cut: CutSurface) -> np.ndarray:
    """The surface's own edge vectors read off in column order."""
    return np.array([cut.surface.vec(rep) for rep in cut.columns], dtype=complex)


# ---------------------------------------------------------------------------
# the linear system


@dataclass(frozen=True)
class ChartSystem:
    """Normalized linear system whose kernel is the local chart."""

    rows: np.ndarray
    row_kind: tuple
    column_map: tuple
    kernel: np.ndarray
    rank: int
    cut: CutSurface

    @property
    def kernel_dim(self) -> int:
        return self.kernel.shape[1]

    @property
    def full_row_rank(self) -> bool:
        return self.rank == self.rows.shape[0]

    def fingerprint(self) -> str:
        import hashlib

        digest = hashlib.sha256()
        digest.update(repr(self.rows.shape).encode())
        digest.update(np.ascontiguousarray(self.rows).tobytes())
        return digest.hexdigest()[:16]

    def to_json(self) -> str:
        rows = [[[fmt_float(z.real), fmt_float(z.imag)] for z in row] for row in self.rows]
        kern = [[[fmt_float(z.real), fmt_float(z.imag)] for z in row] for row in self.kernel]
        parts = ['{\n  "rows": [']
        parts.append(", ".join(
            "[" + ", ".join("[%s, %s]" % (re, im) for re, im in row) + "]" for row in rows))
        parts.append('],\n  "row_kind": [')
        parts.append(", ".join(f'"{k}:{i}"' for k, i in self.row_kind))
        parts.append('],\n  "column_map": [')
        parts.append(", ".join(str(h) for h in self.column_map))
        parts.append('],\n  "kernel": [')
        parts.append(", ".join(
            "[" + ", ".join("[%s, %s]" % (re, im) for re, im in row) + "]" for row in kern))
        parts.append(f'],\n  "rank": {self.rank}\n}}\n')
        return "".join(parts)


def _deterministic_kernel(nullspace: np.ndarray) -> np.ndarray:
    """Fixed basis of a numeric null space: orthonormalize the projections of
    the standard basis vectors taken in column order, with a phase convention."""
    n, d = nullspace.shape
    if d == 0:
        return nullspace
    proj = nullspace @ nullspace.conj().T
    basis = []
    for j in range(n):
        v = proj[:, j].copy()
        for b in basis:
            v -= (b.conj() @ v) * b
        norm = np.linalg.norm(v)
        if norm > 1e-6:
            v /= norm
            k = np.argmax(np.abs(v) > 1e-9)
            v *= abs(v[k]) / v[k]
            basis.append(v)
            if len(basis) == d:
                break
    if len(basis) != d:
        raise AssertionError("failed to orthonormalize the kernel basis")
    return np.column_stack(basis)


def assemble_system(cut: CutSurface) -> ChartSystem:
    """Build the normalized system and its kernel for a cut surface.

    Row order: triangle rows by triangle id, then boundary-pair rows by forest
    edge id.  The numeric rank must match the closed-form prediction (one less
    than the row count exactly when every cone angle is a full-turn multiple).
    """
    surface = cut.surface
    rows = np.zeros((cut.num_rows, cut.num_edges), dtype=complex)
    row_kind = []
    r = 0
    for tid in sorted(surface.triangles):
        for h in surface.triangle(tid):
            col, sign = cut.column_of(h)
            rows[r, col] += sign
        row_kind.append(("triangle", tid))
        r += 1
    for pair in cut.pairings:
        col_a, _ = cut.column_of(pair.a)
        col_abar, _ = cut.column_of(pair.abar)
        rows[r, col_a] += cmath.exp(1j * pair.rotation)
        rows[r, col_abar] += 1.0
        row_kind.append(("pair", pair.edge))
        r += 1

    all_multiples = all(is_turn_multiple(surface.cone_angle(v)) for v in surface.vertex_ids)
    predicted = cut.num_rows - (1 if all_multiples else 0)

    u, s, vh = np.linalg.svd(rows)
    rank = int(np.sum(s > KERNEL_RANK_TOL * s[0]))
    if rank != predicted:
        raise DimensionMismatch(rank, predicted)
    kernel = _deterministic_kernel(vh[rank:].conj().T)

    if np.linalg.norm(rows @ kernel) > KERNEL_RESIDUAL_TOL * np.linalg.norm(rows):
        raise DimensionMismatch(rank, predicted)
    z0 = solution_vector(cut)
    if np.linalg.norm(rows @ z0) > KERNEL_RESIDUAL_TOL * np.linalg.norm(rows) * np.linalg.norm(z0):
        raise DimensionMismatch(rank, predicted)
    return ChartSystem(rows, tuple(row_kind), cut.columns, kernel, rank, cut)


def surface_from_solution(cut: CutSurface, z, system: ChartSystem | None = None) -> FlatSurface:
    """Rebuild a surface with the cut's combinatorics from a kernel vector."""
    z = np.asarray(z, dtype=complex)
    if system is None:
        system = assemble_system(cut)
    if np.linalg.norm(system.rows @ z) > SOLUTION_RESIDUAL_TOL * max(np.linalg.norm(z), 1e-300):
        raise NotInKernel("vector is not in the kernel of the chart system")

    surface = cut.surface
    vectors = {}
    for col, rep in enumerate(cut.columns):
        vectors[rep] = complex(z[col])
        if rep not in cut.boundary:
            vectors[surface.twin(rep)] = -complex(z[col])
    targets = [(v, surface.cone_angle(v)) for v in surface.vertex_ids]
    try:
        return FlatSurface(surface.triangles, {h: surface.twin(h) for h in surface.halfedges},
                           vectors, surface.forest, targets)
    except OrientationViolation as exc:
        raise DegenerateTriangle(exc.triangle) from exc
    except ClosureViolation as exc:
        raise NotInKernel(f"triangle {exc.triangle} does not close") from exc


def chart_for(surface: FlatSurface):
    cut = cut_along_forest(surface)
    return cut, assemble_system(cut)


def perturb_surface(surface: FlatSurface, rng, rel: float = 0.01,
                    system: ChartSystem | None = None, max_attempts: int = 60) -> FlatSurface:
    """Random nearby surface in the same chart (same combinatorics and forest).

    Perturbs the solution vector along a random kernel direction by ``rel``
    times its norm, rejecting samples that degenerate a triangle or drift out
    of the angle targets."""
    if system is None:
        _, system = chart_for(surface)
    cut = system.cut
    z0 = solution_vector(cut)
    d = system.kernel_dim
    size = rel * np.linalg.norm(z0)
    for attempt in range(max_attempts):
        coeff = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        direction = system.kernel @ coeff
        norm = np.linalg.norm(direction)
        if norm < 1e-30:
            continue
        try:
            return surface_from_solution(cut, z0 + direction * (size / norm), system)
        except (DegenerateTriangle, AngleMismatch, NotInKernel):
            size *= 0.7
    raise DegenerateTriangle("could not find a valid nearby surface")


# ---------------------------------------------------------------------------
# chart transitions


def transition_for_flip(source: FlatSurface, edge) -> np.ndarray:
    """Linear map from the chart of ``source`` to the chart after flipping
    ``edge``: identity on every column except the flipped edge, whose new
    value is z_e + s_a z_{e(a)} - s_c z_{e(c)} read off the source quad."""
    cut = cut_along_forest(source)
    h = source.edge_of(edge)
    a = source.next(h)
    c = source.next(source.twin(h))
    n1 = cut.num_edges
    mat = np.eye(n1, dtype=complex)
    row = np.zeros(n1, dtype=complex)
    col_e, _ = cut.column_of(h)
    col_a, sign_a = cut.column_of(a)
    col_c, sign_c = cut.column_of(c)
    row[col_e] += 1.0
    row[col_a] += sign_a
    row[col_c] -= sign_c
    mat[col_e] = row
    return mat


def _match_forest_halfedges(source: FlatSurface, target: FlatSurface, tol: float = 1e-9):
    """Map each forest half-edge of target onto the geometrically identical
    forest half-edge of source (same origin vertex, same vector)."""
    pool = {}
    for e in source.forest:
        for h in (e, source.twin(e)):
            pool.setdefault(source.origin(h), []).append(h)
    matching = {}
    used = set()
    for e in target.forest:
        for h in (e, target.twin(e)):
            v, w = target.origin(h), target.vec(h)
            cands = [x for x in pool.get(v, ())
                     if x not in used and abs(source.vec(x) - w) <= tol * (1.0 + abs(w))]
            if len(cands) != 1:
                raise NotSameMetric(
                    f"forest half-edge at vertex {v} has {len(cands)} geometric matches")
            matching[h] = cands[0]
            used.add(cands[0])
    return matching


def _anchor_and_offset(surf: FlatSurface, germ_halfedge):
    """(anchor half-edge, ccw angle from the anchor germ to the germ of the
    given outgoing half-edge) at its origin vertex.

    The anchor is the smallest forest half-edge at the vertex when one exists;
    otherwise the vertex must be a full-turn regular point, germs there are
    determined by the absolute direction alone, and (None, None) is returned.
    A vertex with cone angle above 2*pi and no forest edge has several germs
    per direction and no canonical way to match them between triangulations.
    """
    v = surf.origin(germ_halfedge)
    forest_out = [h for h in surf.corners_at(v) if surf.edge_of(h) in surf.forest]
    if not forest_out:
        if abs(surf.cone_angle(v) - TWO_PI) > angle_tol(TWO_PI):
            raise Unsupported(
                f"vertex {v} has cone angle {surf.cone_angle(v)!r} and no forest edge "
                "to anchor directions; germs there are ambiguous")
        return None, None
    anchor = min(forest_out)
    theta = 0.0
    h = anchor
    for _ in range(len(surf.corners_at(v)) + 1):
        if h == germ_halfedge:
            return anchor, theta
        theta += surf.corner_angle(h)
        h = surf.sigma(h)
    raise AssertionError("germ does not rotate back to the anchor")


def _locate_germ(surf: FlatSurface, vertex, anchor, theta, direction, length):
    """Resolve a germ description to a (corner half-edge, vector) pair.

    Anchored form: ``theta`` is the ccw angle from the anchor germ.  Anchor
    None: ``direction`` is an absolute plane direction at a full-turn vertex.
    """
    from ._geom import ccw_angle

    if anchor is None:
        tol = 1e-9
        for h in surf.corners_at(vertex):
            ang = surf.corner_angle(h)
            delta = ccw_angle(surf.vec(h), direction)
            if delta <= tol or delta >= TWO_PI - tol:
                delta = 0.0
            elif delta >= ang - tol:
                continue
            unit = surf.vec(h) / abs(surf.vec(h))
            return h, unit * cmath.exp(1j * delta) * length
        raise TransitionUndefined(f"no corner at vertex {vertex} contains the direction")

    total = surf.cone_angle(vertex)
    theta %= total
    h = anchor
    acc = 0.0
    for _ in range(len(surf.corners_at(vertex)) + 1):
        ang = surf.corner_angle(h)
        delta = theta - acc
        if delta <= ang - angle_tol(ang):
            delta = max(delta, 0.0)
            unit = surf.vec(h) / abs(surf.vec(h))
            return h, unit * cmath.exp(1j * delta) * length
        if delta <= ang + angle_tol(ang):
            # lands on the trailing ray, which is the next corner's leading ray
            h = surf.sigma(h)
            unit = surf.vec(h) / abs(surf.vec(h))
            return h, unit * length
        acc += ang
        h = surf.sigma(h)
    raise TransitionUndefined("angle offset exceeds the cone angle")


def chart_transition(source: FlatSurface, target: FlatSurface) -> np.ndarray:
    """Linear map sending source-chart coordinates to target-chart coordinates.

    The two surfaces must carry the same metric, vertex labels and forest;
    each target edge is developed across the source triangulation and written
    as a signed sum of source columns (a combinatorial expression, constant on
    a chart neighbourhood)."""
    from .flips import develop_segment

    if sorted(source.vertex_ids) != sorted(target.vertex_ids):
        raise NotSameMetric("vertex labels differ")
    for v in source.vertex_ids:
        if abs(source.cone_angle(v) - target.cone_angle(v)) > angle_tol(source.cone_angle(v)):
            raise NotSameMetric(f"cone angles differ at vertex {v}")
    if len(source.forest) != len(target.forest):
        raise NotSameMetric("forests differ")

    cut_s = cut_along_forest(source)
    cut_t = cut_along_forest(target)
    matching = _match_forest_halfedges(source, target)

    mat = np.zeros((cut_t.num_edges, cut_s.num_edges), dtype=complex)
    for col_t, rep in enumerate(cut_t.columns):
        if rep in cut_t.boundary:
            col_s, sign = cut_s.column_of(matching[rep])
            mat[col_t, col_s] = sign
            continue
        v = target.origin(rep)
        w = target.vec(rep)
        anchor_t, theta = _anchor_and_offset(target, rep)
        anchor_s = matching[anchor_t] if anchor_t is not None else None
        corner, w_src = _locate_germ(source, v, anchor_s, theta, w / abs(w), abs(w))
        try:
            trace = develop_segment(source, corner, w_src)
        except (DoesNotTerminateAtVertex, HitsVertexEarly) as exc:
            raise NotSameMetric(
                f"target edge {rep} does not develop to a source geodesic") from exc
        except ExitsThroughForest as exc:
            raise TransitionUndefined(
                f"target edge {rep} crosses the forest") from exc
        for h, sign in trace.chain:
            col_s, rep_sign = cut_s.column_of(h)
            mat[col_t, col_s] += sign * rep_sign
    z_s = solution_vector(cut_s)
    z_t = solution_vector(cut_t)
    if np.linalg.norm(mat @ z_s - z_t) > 1e-8 * (1.0 + np.linalg.norm(z_t)):
        raise NotSameMetric("transition does not reproduce the target coordinates")
    return mat


# ---------------------------------------------------------------------------
# tree exchange surgery (re-choosing the forest on a fixed triangulation)


def exchange_sequence(surface: FlatSurface, tree_from, tree_to):
    """Single-edge exchanges (remove, add) turning one spanning tree into the
    other; every intermediate set is again a spanning tree."""
    edges = set(surface.edges())
    a1 = {surface.edge_of(e) for e in tree_from}
    a2 = {surface.edge_of(e) for e in tree_to}
    for name, tree in (("source", a1), ("target", a2)):
        if not tree <= edges:
            raise NotSpanningTree(f"{name} tree uses unknown edges")

    def vertex_set(tree):
        out = set()
        for e in tree:
            out.update(_edge_endpoints(surface, e))
        return out

    def check_tree(tree):
        verts = vertex_set(tree)
        if len(tree) != max(len(verts) - 1, 0):
            raise NotSpanningTree("edge set is not a tree")

    check_tree(a1)
    check_tree(a2)
    if vertex_set(a1) != vertex_set(a2) and (a1 or a2):
        raise NotSpanningTree("trees span different vertex sets")

    moves = []
    current = set(a1)
    for e in sorted(a2 - a1):
        # adding e closes a unique cycle; drop its smallest edge outside a2
        va, vb = _edge_endpoints(surface, e)
        adjacency = {}
        for f in current:
            x, y = _edge_endpoints(surface, f)
            adjacency.setdefault(x, []).append((f, y))
            adjacency.setdefault(y, []).append((f, x))
        prev = {va: None}
        queue = deque([va])
        while queue and vb not in prev:
            x = queue.popleft()
            for f, y in adjacency.get(x, ()):
                if y not in prev:
                    prev[y] = (f, x)
                    queue.append(y)
        if vb not in prev:
            raise NotSpanningTree("trees span different vertex sets")
        path = []
        x = vb
        while prev[x] is not None:
            f, x = prev[x]
            path.append(f)
        candidates = [f for f in path if f not in a2]
        if not candidates:
            raise NotSpanningTree("exchange cycle lies inside the target tree")
        out = min(candidates)
        moves.append((out, e))
        current.discard(out)
        current.add(e)
    return moves


def apply_tree_exchange(surface: FlatSurface, remove_edge, add_edge):
    """Cut the forest-complement along ``add_edge`` and reglue along
    ``remove_edge``, producing the same metric surface carrying the exchanged
    forest.  Returns the new surface and the (unit-modulus, one entry per row)
    chart transition matrix.
    """
    remove_edge = surface.edge_of(remove_edge)
    add_edge = surface.edge_of(add_edge)
    if remove_edge not in surface.forest:
        raise NotSpanningTree(f"edge {remove_edge} is not in the forest")
    if add_edge in surface.forest:
        raise NotSpanningTree(f"edge {add_edge} is already in the forest")

    new_forest = (surface.forest - {remove_edge}) | {add_edge}
    theta, a_side, abar_side = surface.forest_pairing(remove_edge)

    # triangle components of the cut surface minus the added slit
    blocked = set(surface.forest) | {add_edge}
    comp = {}
    for t0 in sorted(surface.triangles):
        if t0 in comp:
            continue
        comp[t0] = t0
        queue = deque([t0])
        while queue:
            t = queue.popleft()
            for h in surface.triangle(t):
                if surface.edge_of(h) in blocked:
                    continue
                t2 = surface.triangle_of(surface.twin(h))
                if t2 not in comp:
                    comp[t2] = t0
                    queue.append(t2)
    side_a = comp[surface.triangle_of(a_side)]
    side_abar = comp[surface.triangle_of(abar_side)]
    if side_a == side_abar:
        raise NotSpanningTree("the added edge does not separate the glued slit sides")

    rot = cmath.exp(-1j * theta)
    vectors = {}
    for h in surface.halfedges:
        if comp[surface.triangle_of(h)] == side_abar:
            vectors[h] = rot * surface.vec(h)
        else:
            vectors[h] = surface.vec(h)
    targets = [(v, surface.angle_target(v)) for v in surface.vertex_ids]
    result = FlatSurface(surface.triangles, {h: surface.twin(h) for h in surface.halfedges},
                         vectors, new_forest, targets)

    cut_old = cut_along_forest(surface)
    cut_new = cut_along_forest(result)
    mat = np.zeros((cut_new.num_edges, cut_old.num_edges), dtype=complex)
    for col_new, rep in enumerate(cut_new.columns):
        factor = rot if comp[surface.triangle_of(rep)] == side_abar else 1.0
        col_old, sign = cut_old.column_of(rep)
        mat[col_new, col_old] = factor * sign
    return result, mat


def reforest(surface: FlatSurface, tree_edges):
    """Re-choose the forest (a single spanning tree) on a fixed triangulation.

    Applies the exchange sequence edge by edge; returns the resulting surface,
    the accumulated chart transition matrix, and the sequence."""
    moves = exchange_sequence(surface, surface.forest, tree_edges)
    current = surface
    cut = cut_along_forest(surface)
    mat = np.eye(cut.num_edges, dtype=complex)
    for out, into in moves:
        current, step = apply_tree_exchange(current, out, into)
        mat = step @ mat
    return current, mat, moves
