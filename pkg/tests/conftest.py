import cmath
import math

import numpy as np
import pytest

from conesurf import (
    FlatSurface,
    build_surface,
    make_doubled_polygon,
    make_regular_4g_gon,
    make_torus,
)
from conesurf.surface import SurfaceSpec


@pytest.fixture
def square_torus():
    return make_torus(1, 1j)


@pytest.fixture
def skew_torus():
    return make_torus(1, 2 + 1j)


@pytest.fixture
def doubled_triangle():
    return make_doubled_polygon([0, 1, cmath.exp(1j * math.pi / 3)])


@pytest.fixture
def pillowcase():
    return make_doubled_polygon([0, 1, 1 + 1j, 1j])


@pytest.fixture
def doubled_pentagon():
    return make_doubled_polygon([cmath.exp(2j * math.pi * k / 5) for k in range(5)])


@pytest.fixture
def octagon_surface():
    return make_regular_4g_gon(2)


@pytest.fixture
def golden_surfaces(square_torus, octagon_surface, doubled_triangle, pillowcase,
                    doubled_pentagon):
    return {
        "square_torus": square_torus,
        "octagon": octagon_surface,
        "doubled_triangle": doubled_triangle,
        "pillowcase": pillowcase,
        "doubled_pentagon": doubled_pentagon,
    }


def make_marked_torus() -> FlatSurface:
    """Unit square torus with a marked regular point at the center and a
    one-edge forest tree joining it to the corner vertex."""
    m = 0.5 + 0.5j
    spec = SurfaceSpec(
        vertices=((0, 2 * math.pi), (1, 2 * math.pi)),
        triangles=((0, 1, 2), (3, 4, 5), (6, 7, 8), (9, 10, 11)),
        gluing=((0, 6), (3, 9), (1, 5), (4, 8), (7, 11), (2, 10)),
        vectors={
            0: 1 + 0j, 1: m - 1, 2: -m,
            3: 1j, 4: m - 1 - 1j, 5: 1 - m,
            6: -1 + 0j, 7: m - 1j, 8: 1 + 1j - m,
            9: -1j, 10: m, 11: 1j - m,
        },
        forest=(2,),
    )
    return build_surface(spec)


@pytest.fixture
def marked_torus():
    return make_marked_torus()


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
