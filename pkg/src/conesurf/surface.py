"""Flat surfaces with cone singularities as complexes of Euclidean triangles.

A surface is stored as a half-edge complex: every triangle is a ccw cycle of
three half-edges, a twin involution glues half-edges in pairs, and each
half-edge carries a complex vector (its planar development).  A distinguished
set of edges, the *forest* (disjoint trees in the 1-skeleton), absorbs all
rotational holonomy: away from the forest, twin half-edges develop to exactly
opposite vectors; across a forest edge the development picks up a fixed
rotation determined by the cone angles hanging off the tree.

Vertices with cone angle an exact multiple of 2*pi may stay off the forest
(they behave like marked regular points); every other vertex must lie on it.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

from ._geom import TWO_PI, angle_tol, ccw_angle, cross, fmt_float, is_turn_multiple, reduce_angle
from .errors import (
    AngleMismatch,
    ClosureViolation,
    DegenerateInput,
    ForestNotTrees,
    GaussBonnetViolation,
    GluingMismatch,
    InconsistentRotation,
    NonIntegerGenus,
    OrientationViolation,
    UnknownVertex,
)

VEC_TOL = 1e-9
AREA_TOL = 1e-12


@dataclass(frozen=True)
class HalfEdge:
    """Read-only view of one half-edge."""

    id: int
    triangle: int
    next: int
    twin: int
    origin: int


class FlatSurface:
    """Validated triangulated flat surface.

    Instances are immutable; every mutating-style operation returns a new
    surface.  Construction runs the full validation suite and raises one of
    the errors from :mod:`conesurf.errors` on the first violated invariant.
    """

    def __init__(self, triangles, twin, vectors, forest=(), vertices=None,
                 origin_map=None, angle_targets=None):
        """
        Parameters
        ----------
        triangles:
            Mapping triangle id -> (h1, h2, h3) in ccw order, or a sequence
            (ids are then positional).
        twin:
            Mapping half-edge -> half-edge; a fixed-point-free involution.
        vectors:
            Mapping half-edge -> complex development vector.
        forest:
            Iterable of edge ids (an edge is named by the smaller of its two
            half-edge ids) forming disjoint trees.
        vertices:
            Optional list of (vertex id, target cone angle or None), one per
            vertex, listed in the order of vertex orbits sorted by their
            smallest half-edge id.
        origin_map / angle_targets:
            Alternative to ``vertices``: a per-half-edge origin vertex id
            (checked for consistency on each orbit) with optional targets.
        """
        if not isinstance(triangles, dict):
            triangles = {i: tuple(t) for i, t in enumerate(triangles)}
        tris = {}
        tri_of = {}
        nxt = {}
        for tid, cyc in triangles.items():
            cyc = tuple(int(h) for h in cyc)
            if len(cyc) != 3 or len(set(cyc)) != 3:
                raise ValueError(f"triangle {tid} is not a triple of distinct half-edges")
            # canonical rotation: start the cycle at the smallest half-edge
            k = cyc.index(min(cyc))
            cyc = cyc[k:] + cyc[:k]
            tris[int(tid)] = cyc
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if a in nxt:
                    raise ValueError(f"half-edge {a} appears in more than one triangle")
                nxt[a] = b
                tri_of[a] = int(tid)
        halfedges = sorted(nxt)

        twin = {int(h): int(k) for h, k in dict(twin).items()}
        for h in halfedges:
            k = twin.get(h)
            if k is None:
                raise ValueError(f"half-edge {h} has no twin (surfaces are closed)")
            if k == h or k not in nxt or twin.get(k) != h:
                raise ValueError(f"twin map is not a fixed-point-free involution at {h}")

        vec = {int(h): complex(v) for h, v in dict(vectors).items()}
        if set(vec) != set(halfedges):
            raise ValueError("vectors must be given for exactly the half-edges of the triangles")
        for h, v in vec.items():
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"non-finite vector on half-edge {h}")

        self._tris = tris
        self._tri_of = tri_of
        self._next = nxt
        self._twin = twin
        self._vec = vec
        self._halfedges = tuple(halfedges)

        prev = {nxt[h]: h for h in halfedges}
        self._prev = prev

        # vertex orbits of sigma(h) = twin(prev(h)), the ccw rotation of
        # outgoing half-edges around the origin of h
        orbits = []
        seen = set()
        for h in halfedges:
            if h in seen:
                continue
            orbit = []
            x = h
            while x not in seen:
                seen.add(x)
                orbit.append(x)
                x = twin[prev[x]]
            if x != h:
                raise ValueError("vertex rotation is not a permutation")
            orbits.append(tuple(orbit))
        orbits.sort(key=lambda o: min(o))

        if origin_map is not None:
            if vertices is not None:
                raise ValueError("pass either vertices or origin_map, not both")
            vertices = []
            for orbit in orbits:
                ids = {origin_map[h] for h in orbit}
                if len(ids) != 1:
                    raise ValueError("origin map is inconsistent on a vertex orbit")
                vid = ids.pop()
                target = None if angle_targets is None else angle_targets.get(vid)
                vertices.append((vid, target))
        if vertices is None:
            vertices = [(i, None) for i in range(len(orbits))]
        vertices = [(int(v), None if a is None else float(a)) for v, a in vertices]
        if len(vertices) != len(orbits):
            raise ValueError(
                f"{len(vertices)} vertices declared but the gluing produces {len(orbits)}")
        if len({v for v, _ in vertices}) != len(vertices):
            raise ValueError("duplicate vertex ids")
        origin = {}
        corners_at = {}
        for (vid, _), orbit in zip(vertices, orbits):
            corners_at[vid] = orbit
            for h in orbit:
                origin[h] = vid
        self._origin = origin
        self._corners_at = corners_at
        self._vertex_ids = tuple(v for v, _ in vertices)
        self._angle_target = {v: a for v, a in vertices}

        self._validate_geometry()
        self._validate_forest(forest)
        self._validate_angles()

    # -- validation ---------------------------------------------------------

    def _validate_geometry(self):
        corner = {}
        for tid, (h1, h2, h3) in self._tris.items():
            v1, v2, v3 = self._vec[h1], self._vec[h2], self._vec[h3]
            scale = max(abs(v1), abs(v2), abs(v3))
            residual = abs(v1 + v2 + v3)
            if residual > VEC_TOL * (1.0 + scale):
                raise ClosureViolation(tid, residual)
            area = 0.5 * cross(v1, v2)
            if area <= AREA_TOL * scale * scale:
                raise OrientationViolation(tid, area)
        for h in self._halfedges:
            u = self._vec[h]
            w = -self._vec[self._prev[h]]
            corner[h] = math.atan2(cross(u, w), (u.conjugate() * w).real)
        self._corner = corner
        self._vertex_angle = {
            v: sum(corner[h] for h in orbit) for v, orbit in self._corners_at.items()
        }

    def _validate_forest(self, forest):
        forest = frozenset(int(e) for e in forest)
        for e in forest:
            if e not in self._next:
                raise ValueError(f"forest names unknown half-edge {e}")
            if e != min(e, self._twin[e]):
                raise ValueError(f"forest edge {e} must be named by the smaller half-edge id")
        # acyclicity of the forest graph (union-find on vertex ids)
        parent = {v: v for v in self._vertex_ids}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in sorted(forest):
            a, b = find(self._origin[e]), find(self._origin[self._twin[e]])
            if a == b:
                raise ForestNotTrees(f"forest edge {e} closes a cycle")
            parent[a] = b
        self._forest = forest

        for h in self._halfedges:
            if h > self._twin[h]:
                continue
            k = self._twin[h]
            scale = 1.0 + abs(self._vec[h])
            if h in forest:
                continue
            residual = abs(self._vec[k] + self._vec[h])
            if residual > VEC_TOL * scale:
                raise GluingMismatch(h, residual)

        pairing = {}
        for e in sorted(forest):
            pairing[e] = self._forest_rotation(e)
        self._forest_pairing = pairing

    def _tree_component_angles(self, e):
        """Split the tree containing forest edge e at e; return the total cone
        angle of the component not containing the tree's smallest vertex."""
        adj = {}
        for f in self._forest:
            a, b = self._origin[f], self._origin[self._twin[f]]
            adj.setdefault(a, []).append((f, b))
            adj.setdefault(b, []).append((f, a))
        va, vb = self._origin[e], self._origin[self._twin[e]]

        def component(start):
            comp, stack = {start}, [start]
            while stack:
                x = stack.pop()
                for f, y in adj[x]:
                    if f != e and y not in comp:
                        comp.add(y)
                        stack.append(y)
            return comp

        ca, cb = component(va), component(vb)
        smallest = min(ca | cb)
        chosen = cb if smallest in ca else ca
        return sum(self._vertex_angle[v] for v in chosen)

    def _forest_rotation(self, e):
        """Rotation across forest edge e with its oriented pairing (a, abar).

        Returns (theta, a, abar) such that vec(abar) = -exp(i*theta)*vec(a)
        within tolerance, with theta the angle sum over the split-off subtree
        reduced to (-pi, pi].
        """
        theta = reduce_angle(self._tree_component_angles(e))
        h, k = e, self._twin[e]
        rot = -cmath.exp(1j * theta)
        scale = VEC_TOL * (1.0 + abs(self._vec[h]))
        if abs(self._vec[k] - rot * self._vec[h]) <= scale:
            return theta, h, k
        if abs(self._vec[h] - rot * self._vec[k]) <= scale:
            return theta, k, h
        actual = ccw_angle(self._vec[h], -self._vec[k])
        raise InconsistentRotation(e, theta, reduce_angle(actual))

    def _validate_angles(self):
        on_forest = set()
        for e in self._forest:
            on_forest.add(self._origin[e])
            on_forest.add(self._origin[self._twin[e]])
        for v in self._vertex_ids:
            alpha = self._vertex_angle[v]
            if v not in on_forest and not is_turn_multiple(alpha):
                raise AngleMismatch(v, alpha, TWO_PI * round(alpha / TWO_PI))
            target = self._angle_target[v]
            if target is not None and abs(alpha - target) > angle_tol(target):
                raise AngleMismatch(v, alpha, target)

        chi = len(self._vertex_ids) - len(self._halfedges) // 2 + len(self._tris)
        if chi % 2 != 0 or chi > 2:
            raise NonIntegerGenus(f"Euler characteristic {chi}")
        self._genus = (2 - chi) // 2

        total = sum(self._vertex_angle.values())
        expected = TWO_PI * (2 * self._genus + len(self._vertex_ids) - 2)
        if abs(total - expected) > angle_tol(total):
            raise GaussBonnetViolation(total, expected)

    # -- combinatorics ------------------------------------------------------

    @property
    def halfedges(self):
        return self._halfedges

    def next(self, h):
        return self._next[h]

    def prev(self, h):
        return self._prev[h]

    def twin(self, h):
        return self._twin[h]

    def origin(self, h):
        return self._origin[h]

    def head(self, h):
        return self._origin[self._next[h]]

    def vec(self, h) -> complex:
        return self._vec[h]

    def triangle_of(self, h):
        return self._tri_of[h]

    @property
    def triangles(self):
        return dict(self._tris)

    def triangle(self, tid):
        return self._tris[tid]

    def halfedge(self, h) -> HalfEdge:
        return HalfEdge(h, self._tri_of[h], self._next[h], self._twin[h], self._origin[h])

    def edge_of(self, h):
        return min(h, self._twin[h])

    def edges(self):
        return tuple(h for h in self._halfedges if h < self._twin[h])

    @property
    def forest(self):
        return self._forest

    @property
    def vertex_ids(self):
        return self._vertex_ids

    def corners_at(self, v):
        """Outgoing half-edges at v in ccw (rotation) order."""
        if v not in self._corners_at:
            raise UnknownVertex(f"vertex {v}")
        return self._corners_at[v]

    def sigma(self, h):
        """Next outgoing half-edge rotating ccw around origin(h)."""
        return self._twin[self._prev[h]]

    # -- geometry -----------------------------------------------------------

    def corner_angle(self, h) -> float:
        """Interior angle of the triangle of h at origin(h)."""
        return self._corner[h]

    def cone_angle(self, v) -> float:
        if v not in self._vertex_angle:
            raise UnknownVertex(f"vertex {v}")
        return self._vertex_angle[v]

    def angle_target(self, v):
        if v not in self._angle_target:
            raise UnknownVertex(f"vertex {v}")
        return self._angle_target[v]

    def genus(self) -> int:
        return self._genus

    def total_area(self) -> float:
        return sum(
            0.5 * cross(self._vec[h1], self._vec[h2]) for h1, h2, _ in self._tris.values())

    def triangle_area(self, tid) -> float:
        h1, h2, _ = self._tris[tid]
        return 0.5 * cross(self._vec[h1], self._vec[h2])

    def crossing_rotation(self, h) -> float:
        """Rotation picked up by crossing the edge of h, in (-pi, pi].

        This is the angle relating the developments on the two sides of the
        edge; it is zero on non-forest edges up to numerical noise."""
        u = self._vec[h]
        w = -self._vec[self._twin[h]]
        return reduce_angle(math.atan2(cross(u, w), (u.conjugate() * w).real))

    def forest_pairing(self, e):
        """(theta, a, abar) for forest edge e; vec(abar) = -e^{i theta} vec(a)."""
        return self._forest_pairing[e]

    def num_trees(self) -> int:
        """Number of forest trees, counting vertices off the forest as
        one-point trees."""
        covered = set()
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self._forest:
            for v in (self._origin[e], self._origin[self._twin[e]]):
                if v not in parent:
                    parent[v] = v
                    covered.add(v)
        for e in self._forest:
            a = find(self._origin[e])
            b = find(self._origin[self._twin[e]])
            if a != b:
                parent[a] = b
        trees = len({find(v) for v in covered})
        return trees + len(self._vertex_ids) - len(covered)

    # -- derived surfaces ----------------------------------------------------

    def scale(self, w: complex) -> "FlatSurface":
        """Surface with every development vector multiplied by w (w != 0)."""
        w = complex(w)
        if abs(w) < 1e-300:
            raise DegenerateInput("scale factor must be nonzero")
        return FlatSurface(
            dict(self._tris),
            dict(self._twin),
            {h: w * v for h, v in self._vec.items()},
            self._forest,
            [(v, self._angle_target[v]) for v in self._vertex_ids],
        )

    def with_vectors(self, vectors) -> "FlatSurface":
        """Same combinatorics and forest, new development vectors."""
        return FlatSurface(
            dict(self._tris),
            dict(self._twin),
            dict(vectors),
            self._forest,
            [(v, self._angle_target[v]) for v in self._vertex_ids],
        )

    def relabel_halfedges(self, mapping) -> "FlatSurface":
        """Apply a bijective relabelling of half-edge ids."""
        mapping = {int(a): int(b) for a, b in dict(mapping).items()}
        if set(mapping) != set(self._halfedges) or len(set(mapping.values())) != len(mapping):
            raise ValueError("relabelling must be a bijection on the half-edges")
        tris = {t: tuple(mapping[h] for h in cyc) for t, cyc in self._tris.items()}
        twin = {mapping[h]: mapping[k] for h, k in self._twin.items()}
        vec = {mapping[h]: v for h, v in self._vec.items()}
        forest = {min(mapping[e], mapping[self._twin[e]]) for e in self._forest}
        orbits = sorted(
            (tuple(sorted(mapping[h] for h in orbit)), v)
            for v, orbit in self._corners_at.items())
        vertices = [(v, self._angle_target[v]) for _, v in orbits]
        return FlatSurface(tris, twin, vec, forest, vertices)

    # -- serialization -------------------------------------------------------

    def to_spec(self) -> "SurfaceSpec":
        verts = []
        for v in self._vertex_ids:
            target = self._angle_target[v]
            verts.append((v, self._vertex_angle[v] if target is None else target))
        return SurfaceSpec(
            vertices=tuple(verts),
            triangles=tuple(self._tris[t] for t in sorted(self._tris)),
            gluing=tuple((h, self._twin[h]) for h in self.edges()),
            vectors={h: self._vec[h] for h in self._halfedges},
            forest=tuple(sorted(self._forest)),
        )

    def to_json(self) -> str:
        return self.to_spec().to_json()

    def __repr__(self):
        return (f"FlatSurface(genus={self._genus}, vertices={len(self._vertex_ids)}, "
                f"triangles={len(self._tris)}, forest_edges={len(self._forest)})")


# ---------------------------------------------------------------------------
# declarative descriptions and the exchange file format


@dataclass
class SurfaceSpec:
    """Declarative description of a flat surface (the file-format contents)."""

    vertices: tuple
    triangles: tuple
    gluing: tuple
    vectors: dict
    forest: tuple = ()

    def to_json(self) -> str:
        parts = ['{\n  "vertices": [']
        vitems = []
        for v, a in self.vertices:
            if a is None:
                vitems.append(f'{{"id": {int(v)}}}')
            else:
                vitems.append(f'{{"id": {int(v)}, "angle": {fmt_float(float(a))}}}')
        parts.append(", ".join(vitems))
        parts.append('],\n  "triangles": [')
        parts.append(", ".join("[%d, %d, %d]" % tuple(t) for t in self.triangles))
        parts.append('],\n  "gluing": [')
        parts.append(", ".join("[%d, %d]" % (a, b) for a, b in self.gluing))
        parts.append('],\n  "vectors": {')
        vecitems = []
        for h in sorted(self.vectors):
            z = complex(self.vectors[h])
            vecitems.append(f'"{int(h)}": [{fmt_float(z.real)}, {fmt_float(z.imag)}]')
        parts.append(", ".join(vecitems))
        parts.append('},\n  "forest": [')
        parts.append(", ".join(str(int(e)) for e in self.forest))
        parts.append("]\n}\n")
        return "".join(parts)

    @classmethod
    def from_json(cls, text: str) -> "SurfaceSpec":
        doc = json.loads(text)
        if not isinstance(doc, dict):
            raise ValueError("surface file must contain a JSON object")
        required = {"vertices", "triangles", "gluing", "vectors", "forest"}
        unknown = set(doc) - required
        if unknown:
            raise ValueError(f"unknown fields in surface file: {sorted(unknown)}")
        missing = required - set(doc)
        if missing:
            raise ValueError(f"missing fields in surface file: {sorted(missing)}")
        verts = []
        for entry in doc["vertices"]:
            extra = set(entry) - {"id", "angle"}
            if extra:
                raise ValueError(f"unknown vertex fields: {sorted(extra)}")
            verts.append((int(entry["id"]),
                          float(entry["angle"]) if "angle" in entry else None))
        triangles = tuple(tuple(int(h) for h in t) for t in doc["triangles"])
        gluing = tuple((int(a), int(b)) for a, b in doc["gluing"])
        vectors = {}
        for key, val in doc["vectors"].items():
            re, im = val
            vectors[int(key)] = complex(float(re), float(im))
        forest = tuple(int(e) for e in doc["forest"])
        return cls(tuple(verts), triangles, gluing, vectors, forest)


def build_surface(spec: SurfaceSpec) -> FlatSurface:
    """Assemble and validate a surface from its declarative description."""
    twin = {}
    for a, b in spec.gluing:
        if a in twin or b in twin or a == b:
            raise ValueError(f"half-edge glued twice in pair ({a}, {b})")
        twin[a] = b
        twin[b] = a
    return FlatSurface(list(spec.triangles), twin, spec.vectors, spec.forest, list(spec.vertices))


def load_surface(path) -> FlatSurface:
    with open(path, "r", encoding="utf-8") as fh:
        return build_surface(SurfaceSpec.from_json(fh.read()))


def save_surface(surface: FlatSurface, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(surface.to_json())


# ---------------------------------------------------------------------------
# canonical example constructors


def make_torus(u: complex, v: complex) -> FlatSurface:
    """Torus obtained from the parallelogram spanned by u, v (ccw)."""
    u, v = complex(u), complex(v)
    if cross(u, v) <= AREA_TOL * max(abs(u), abs(v)) ** 2:
        raise DegenerateInput("need Im(conj(u) v) > 0")
    triangles = [(0, 1, 2), (3, 4, 5)]
    twin = {0: 3, 3: 0, 1: 4, 4: 1, 2: 5, 5: 2}
    vectors = {0: u, 1: v, 2: -u - v, 3: -u, 4: -v, 5: u + v}
    return FlatSurface(triangles, twin, vectors, (), [(0, TWO_PI)])


def make_doubled_polygon(points) -> FlatSurface:
    """Double of a strictly convex polygon across its boundary.

    The two copies of the polygon are glued fold-to-fold, producing a genus-0
    surface with one cone point of angle twice the interior angle at each
    polygon vertex.  The forest is the path of fold edges p0-p1-...-p(k-1);
    the remaining fold edge (p(k-1), p0) is the reflection axis used to
    develop the back copy.
    """
    pts = [complex(p) for p in points]
    k = len(pts)
    if k < 3:
        raise DegenerateInput("need at least 3 vertices")
    for i in range(k):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % k]
        if cross(b - a, c - b) <= AREA_TOL * max(abs(b - a), abs(c - b)) ** 2:
            raise DegenerateInput("polygon must be strictly convex and ccw")

    axis = pts[0] - pts[-1]
    rot = (axis / abs(axis)) ** 2

    def reflect(z):
        return pts[-1] + rot * (z - pts[-1]).conjugate()

    qts = [reflect(p) for p in pts]

    ntri = k - 2
    triangles = {}
    vectors = {}
    for t in range(ntri):
        a, b, c = 3 * t, 3 * t + 1, 3 * t + 2
        triangles[t] = (a, b, c)
        vectors[a] = pts[t + 1] - pts[0]
        vectors[b] = pts[t + 2] - pts[t + 1]
        vectors[c] = pts[0] - pts[t + 2]
    off = 3 * ntri
    for t in range(ntri):
        a, b, c = off + 3 * t, off + 3 * t + 1, off + 3 * t + 2
        triangles[ntri + t] = (a, b, c)
        vectors[a] = qts[t + 2] - qts[0]
        vectors[b] = qts[t + 1] - qts[t + 2]
        vectors[c] = qts[0] - qts[t + 1]

    twin = {}

    def glue(x, y):
        twin[x] = y
        twin[y] = x

    for t in range(ntri - 1):
        glue(3 * t + 2, 3 * (t + 1))          # front diagonal (p0, p_{t+2})
        glue(off + 3 * t, off + 3 * (t + 1) + 2)  # back diagonal (q0, q_{t+2})
    glue(0, off + 2)                           # fold (p0, p1)
    for i in range(1, k - 1):
        glue(3 * (i - 1) + 1, off + 3 * (i - 1) + 1)  # fold (p_i, p_{i+1})
    glue(3 * (ntri - 1) + 2, off + 3 * (ntri - 1))    # fold (p_{k-1}, p0)

    forest = []
    forest.append(min(0, twin[0]))
    for i in range(1, k - 1):
        h = 3 * (i - 1) + 1
        forest.append(min(h, twin[h]))

    def interior_angle(i):
        u = pts[(i + 1) % k] - pts[i]
        w = pts[i - 1] - pts[i]
        return math.atan2(cross(u, w), (u.conjugate() * w).real)

    vertices = [(i, 2.0 * interior_angle(i)) for i in range(k)]
    return FlatSurface(triangles, twin, vectors, forest, vertices)


def make_regular_4g_gon(g: int) -> FlatSurface:
    """Regular 4g-gon with opposite sides identified: genus g, one cone point
    of angle 2*pi*(2g-1), empty forest (a translation surface)."""
    g = int(g)
    if g < 2:
        raise DegenerateInput("need g >= 2")
    n = 4 * g
    pts = [cmath.exp(2j * math.pi * j / n) for j in range(n)]
    ntri = n - 2
    triangles = {}
    vectors = {}
    for t in range(ntri):
        a, b, c = 3 * t, 3 * t + 1, 3 * t + 2
        triangles[t] = (a, b, c)
        vectors[a] = pts[t + 1] - pts[0]
        vectors[b] = pts[t + 2] - pts[t + 1]
        vectors[c] = pts[0] - pts[t + 2]

    def side_halfedge(j):
        if j == 0:
            return 0
        if j == n - 1:
            return 3 * (ntri - 1) + 2
        return 3 * (j - 1) + 1

    twin = {}
    for t in range(ntri - 1):
        twin[3 * t + 2] = 3 * (t + 1)
        twin[3 * (t + 1)] = 3 * t + 2
    for j in range(2 * g):
        a, b = side_halfedge(j), side_halfedge(j + 2 * g)
        twin[a] = b
        twin[b] = a
    return FlatSurface(triangles, twin, vectors, (), [(0, TWO_PI * (2 * g - 1))])


# ---------------------------------------------------------------------------
# canonical equality


def isomorphic(s1: FlatSurface, s2: FlatSurface, tol: float = VEC_TOL):
    """Canonical equality of surfaces.

    True when there is a bijection of half-edges commuting with next and twin,
    preserving origin vertex ids and forest membership, and matching vectors
    within tolerance.  Returns the bijection (dict) or None.
    """
    if len(s1.halfedges) != len(s2.halfedges):
        return None
    if sorted(s1.vertex_ids) != sorted(s2.vertex_ids):
        return None
    if len(s1.forest) != len(s2.forest):
        return None

    def close(a, b):
        return abs(a - b) <= tol * (1.0 + abs(a))

    h0 = s1.halfedges[0]
    for cand in s2.halfedges:
        if s2.origin(cand) != s1.origin(h0) or not close(s1.vec(h0), s2.vec(cand)):
            continue
        if (s1.edge_of(h0) in s1.forest) != (s2.edge_of(cand) in s2.forest):
            continue
        mapping = {h0: cand}
        stack = [h0]
        used = {cand}
        ok = True
        while stack and ok:
            h = stack.pop()
            for nh, img in ((s1.next(h), s2.next(mapping[h])),
                            (s1.twin(h), s2.twin(mapping[h]))):
                if nh in mapping:
                    if mapping[nh] != img:
                        ok = False
                        break
                    continue
                if img in used:
                    ok = False
                    break
                if s2.origin(img) != s1.origin(nh) or not close(s1.vec(nh), s2.vec(img)):
                    ok = False
                    break
                if (s1.edge_of(nh) in s1.forest) != (s2.edge_of(img) in s2.forest):
                    ok = False
                    break
                mapping[nh] = img
                used.add(img)
                stack.append(nh)
        if ok and len(mapping) == len(s1.halfedges):
            return mapping
    return None
