"""Genus-zero chart coordinates, the Hermitian area form of signature
(1, n-3), and the comparison of the induced unit-area density with the
complex hyperbolic volume density.

For a sphere with n cone points carrying a spanning forest tree, pick one
vertex to exclude; the tree edges not touching it give n-2 chart coordinates
and every other edge vector is a linear function of them.  The surface area
is a Hermitian form in these coordinates; after normalizing it to
diag(1, ..., 1, -1) (sign flipped so unit-area surfaces sit on f = -1), the
unit-area locus modulo the circle action carries two densities: the one
induced by the chart volume and the one of the hyperbolic metric.  Their
ratio is a constant of the family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._geom import cross
from .charts import ChartSystem, chart_for, solution_vector
from .errors import (
    FrameNotTangent,
    MetricNotPositive,
    NotGenusZero,
    PointNotOnQ1,
    SignatureUnexpected,
    TooFewVertices,
    Unsupported,
)
from .surface import FlatSurface
from .volume import kernel_density

Q1_TOL = 1e-9
TANGENT_TOL = 1e-8


@dataclass(frozen=True)
class GenusZeroChart:
    """Chart of a genus-zero surface by its tree-edge vectors."""

    surface: FlatSurface
    system: ChartSystem
    excluded_vertex: int
    coordinate_edges: tuple
    coordinate_columns: tuple
    expansion: np.ndarray  # all columns as linear functions of the coordinates

    @property
    def dim(self) -> int:
        return len(self.coordinate_edges)

    def coordinates(self, surface: FlatSurface | None = None) -> np.ndarray:
        """Chart coordinates of a surface with this chart's combinatorics."""
        from .charts import cut_along_forest

        cut = self.system.cut if surface is None else cut_along_forest(surface)
        z = solution_vector(cut)
        return z[list(self.coordinate_columns)]

    def solution(self, coords) -> np.ndarray:
        return self.expansion @ np.asarray(coords, dtype=complex)


def genus_zero_chart(surface: FlatSurface, excluded_vertex=None) -> GenusZeroChart:
    """Chart coordinates on the tree edges away from one excluded vertex.

    The forest must be a single spanning tree and the excluded vertex one of
    its leaves; the remaining n-2 tree edges parametrize the chart."""
    if surface.genus() != 0:
        raise NotGenusZero(f"genus {surface.genus()}")
    n = len(surface.vertex_ids)
    if n < 4:
        raise TooFewVertices(f"need at least 4 cone points, got {n}")
    if len(surface.forest) != n - 1:
        raise NotGenusZero("forest must be a single spanning tree")

    degree = {}
    for e in surface.forest:
        for v in (surface.origin(e), surface.origin(surface.twin(e))):
            degree[v] = degree.get(v, 0) + 1
    leaves = sorted(v for v, d in degree.items() if d == 1)
    if excluded_vertex is None:
        excluded_vertex = leaves[-1]
    if degree.get(excluded_vertex) != 1:
        raise Unsupported(
            f"vertex {excluded_vertex} is not a leaf of the forest tree (leaves: {leaves})")

    cut, system = chart_for(surface)
    edges = tuple(sorted(
        e for e in surface.forest
        if excluded_vertex not in (surface.origin(e), surface.origin(surface.twin(e)))))
    pair_of = {p.edge: p for p in cut.pairings}
    columns = tuple(cut.column_of(pair_of[e].a)[0] for e in edges)
    if len(columns) != system.kernel_dim:
        raise SignatureUnexpected((len(columns), system.kernel_dim))

    selection = system.kernel[list(columns), :]
    expansion = system.kernel @ np.linalg.inv(selection)
    if np.linalg.norm(system.rows @ expansion) > 1e-10 * (1 + np.linalg.norm(system.rows)):
        raise SignatureUnexpected("expansion does not satisfy the chart system")
    return GenusZeroChart(surface, system, excluded_vertex, edges, columns, expansion)


# ---------------------------------------------------------------------------
# the area form


def area_of_solution(cut, z) -> float:
    """Total area of a chart point, summed triangle by triangle."""
    surface = cut.surface
    total = 0.0
    for h1, h2, _ in surface.triangles.values():
        c1, s1 = cut.column_of(h1)
        c2, s2 = cut.column_of(h2)
        total += 0.5 * cross(s1 * z[c1], s2 * z[c2])
    return total


def min_triangle_area_of_solution(cut, z) -> float:
    surface = cut.surface
    areas = []
    for h1, h2, _ in surface.triangles.values():
        c1, s1 = cut.column_of(h1)
        c2, s2 = cut.column_of(h2)
        areas.append(0.5 * cross(s1 * z[c1], s2 * z[c2]))
    return min(areas)


@dataclass(frozen=True)
class AreaForm:
    """Hermitian matrix H with area(v) = v* H v in chart coordinates."""

    matrix: np.ndarray
    signature: tuple
    normalizer: np.ndarray | None = None


def area_form(chart: GenusZeroChart) -> AreaForm:
    """Recover the Hermitian area form by polarization of the area quadratic.

    Four area evaluations per entry; the eigenvalue signs must come out as one
    positive and n-3 negative (all cone angles below a full turn)."""
    d = chart.dim
    cut = chart.system.cut

    def q(v):
        return area_of_solution(cut, chart.expansion @ v)

    h = np.zeros((d, d), dtype=complex)
    eye = np.eye(d, dtype=complex)
    for j in range(d):
        for k in range(d):
            x, y = eye[:, j], eye[:, k]
            re = q(x + y) - q(x - y)
            im = q(x + 1j * y) - q(x - 1j * y)
            h[j, k] = 0.25 * (re - 1j * im)
    if np.linalg.norm(h - h.conj().T) > 1e-12 * (1 + np.linalg.norm(h)):
        raise SignatureUnexpected("polarized form is not Hermitian")
    h = 0.5 * (h + h.conj().T)
    eig = np.linalg.eigvalsh(h)
    tol = 1e-10 * max(abs(eig))
    pos = int(np.sum(eig > tol))
    neg = int(np.sum(eig < -tol))
    if pos + neg != d:
        raise SignatureUnexpected((pos, neg))
    if (pos, neg) != (1, d - 1):
        raise SignatureUnexpected((pos, neg))
    return AreaForm(h, (pos, neg))


def normalize_form(form: AreaForm) -> AreaForm:
    """Normalizer P with P* (-H) P = diag(1, ..., 1, -1).

    Deterministic: descending eigenvalues of -H, each eigenvector's first
    significant entry made real positive."""
    if form.signature[0] != 1:
        raise SignatureUnexpected(form.signature)
    neg_h = -form.matrix
    eig, vecs = np.linalg.eigh(neg_h)
    order = np.argsort(-eig)
    eig, vecs = eig[order], vecs[:, order]
    d = len(eig)
    if not (np.all(eig[: d - 1] > 0) and eig[d - 1] < 0):
        raise SignatureUnexpected(form.signature)
    for j in range(d):
        col = vecs[:, j]
        k = int(np.argmax(np.abs(col) > 1e-9))
        vecs[:, j] = col * (abs(col[k]) / col[k])
    normalizer = vecs / np.sqrt(np.abs(eig))
    check = normalizer.conj().T @ neg_h @ normalizer
    target = np.diag(np.concatenate([np.ones(d - 1), [-1.0]]))
    if np.linalg.norm(check - target) > 1e-9 * d:
        raise SignatureUnexpected("normalization failed numerically")
    return AreaForm(form.matrix, form.signature, normalizer)


# ---------------------------------------------------------------------------
# densities on the unit-area locus


def minkowski_product(x, y) -> complex:
    """Hermitian product of signature (n-3, 1): conjugate-linear in the first
    argument, negative on the last coordinate."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    return complex(np.sum(x[:-1].conj() * y[:-1]) - x[-1].conjugate() * y[-1])


def quadric_value(z) -> float:
    return minkowski_product(z, z).real


def _realify(columns) -> np.ndarray:
    cols = [np.asarray(c, dtype=complex) for c in columns]
    return np.array([np.concatenate([c.real, c.imag]) for c in cols]).T


def _check_point_and_frame(z, frame):
    z = np.asarray(z, dtype=complex)
    if abs(quadric_value(z) + 1.0) > Q1_TOL:
        raise PointNotOnQ1(f"f(Z) = {quadric_value(z)!r}")
    frame = np.asarray(frame, dtype=complex)
    n = z.shape[0]
    if frame.shape != (n, 2 * (n - 1)):
        raise FrameNotTangent(f"frame must be {n} x {2 * (n - 1)}")
    for j in range(frame.shape[1]):
        col = frame[:, j]
        if abs(minkowski_product(z, col)) > TANGENT_TOL * (1 + np.linalg.norm(col)):
            raise FrameNotTangent(f"frame column {j} is not orthogonal to the point")
    return z, frame


def tangent_frame(z) -> np.ndarray:
    """Real frame of the orthogonal complement of z: the complex basis vectors
    paired with their i-rotations, interleaved."""
    z = np.asarray(z, dtype=complex)
    n = z.shape[0]
    cols = []
    for k in range(n - 1):
        b = np.zeros(n, dtype=complex)
        b[k] = 1.0
        b[-1] = z[k].conjugate() / z[-1].conjugate()
        cols.extend([b, 1j * b])
    return np.array(cols).T


def reference_frame(z) -> np.ndarray:
    """The closed-form frame used for the determinant identities: for each k,
    the vector with conj(z_last) in slot k and conj(z_k) in the last slot,
    paired with its i-rotation."""
    z = np.asarray(z, dtype=complex)
    n = z.shape[0]
    cols = []
    for k in range(n - 1):
        u = np.zeros(n, dtype=complex)
        u[k] = z[-1].conjugate()
        u[-1] = z[k].conjugate()
        cols.extend([u, 1j * u])
    return np.array(cols).T


def unit_area_density(z, frame, chart_constant: float, completion=None) -> float:
    """Density induced on the unit-area locus modulo the circle action.

    Evaluates to chart_constant times the Lebesgue volume of (frame, a, b)
    divided by |det_2| of the two constraint 1-forms on the completing pair
    (a, b); the default completion is (Z, iZ), giving |det_2| = 4."""
    z, frame = _check_point_and_frame(z, frame)
    if completion is None:
        completion = (z, 1j * z)
    a, b = (np.asarray(c, dtype=complex) for c in completion)

    def df(x):
        return 2.0 * minkowski_product(z, x).real

    def df_j(x):
        return -2.0 * minkowski_product(z, x).imag

    det2 = df(a) * df_j(b) - df(b) * df_j(a)
    if abs(det2) < 1e-12:
        raise FrameNotTangent("completion pair is degenerate for the constraint forms")
    volume = abs(np.linalg.det(_realify(list(frame.T) + [a, b])))
    return chart_constant * volume / abs(det2)


def hyperbolic_density(z, frame) -> float:
    """Riemannian density of the hyperbolic metric on the frame: square root
    of the Gram determinant of the real part of the Hermitian product."""
    z, frame = _check_point_and_frame(z, frame)
    k = frame.shape[1]
    gram = np.empty((k, k))
    for i in range(k):
        for j in range(k):
            gram[i, j] = minkowski_product(frame[:, i], frame[:, j]).real
    eig = np.linalg.eigvalsh(gram)
    if eig[0] <= 0:
        raise MetricNotPositive(f"Gram matrix has eigenvalue {eig[0]!r}")
    return math.sqrt(float(np.linalg.det(gram)))


def chart_constant(chart: GenusZeroChart, normalizer: np.ndarray) -> float:
    """Density of the chart volume against Lebesgue measure in the normalized
    coordinates: the kernel density of the pushed-forward standard frame."""
    frame = chart.expansion @ normalizer
    return kernel_density(chart.system, frame).value


@dataclass(frozen=True)
class RatioScan:
    ratios: tuple
    residuals: tuple  # |f(Z) + 1| per sample
    spread: float
    chart_constant: float
    passed: bool


def ratio_scan(chart: GenusZeroChart, samples: int, rng, rel: float = 0.01,
               tolerance: float = 1e-6) -> RatioScan:
    """Sample nearby unit-area surfaces in one chart and compare the two
    densities; the ratio must be constant across samples (and equals a quarter
    of the chart constant with these conventions)."""
    form = normalize_form(area_form(chart))
    p = form.normalizer
    c0 = chart_constant(chart, p)
    cut = chart.system.cut
    v0 = chart.coordinates()
    p_inv = np.linalg.inv(p)

    ratios = []
    residuals = []
    guard = 0
    while len(ratios) < samples:
        guard += 1
        if guard > 20 * samples:
            raise MetricNotPositive("sampling kept leaving the chart")
        v = v0 + rel * np.linalg.norm(v0) * (
            rng.standard_normal(chart.dim) + 1j * rng.standard_normal(chart.dim))
        z_full = chart.expansion @ v
        areas_min = min_triangle_area_of_solution(cut, z_full)
        area = area_of_solution(cut, z_full)
        if area <= 0 or areas_min < 1e-10 * area / len(chart.surface.triangles):
            continue
        zeta = (p_inv @ v) / math.sqrt(area)
        base = tangent_frame(zeta)
        mixer = rng.standard_normal((base.shape[1], base.shape[1]))
        frame = base @ mixer
        try:
            mu1 = unit_area_density(zeta, frame, c0)
            hyp = hyperbolic_density(zeta, frame)
        except (PointNotOnQ1, FrameNotTangent, MetricNotPositive):
            continue
        ratios.append(mu1 / hyp)
        residuals.append(abs(quadric_value(zeta) + 1.0))
    low, high = min(ratios), max(ratios)
    spread = (high - low) / abs(low)
    return RatioScan(tuple(ratios), tuple(residuals), spread, c0, spread < tolerance)
