"""Shared fixtures: small reference complexes and cached catalog entries."""

import pytest

from knotball.models.complex import make_complex, simplex, simplex_boundary
from knotball.services import catalog


RP2_6 = [
    (1, 2, 4), (1, 2, 6), (1, 3, 5), (1, 3, 6), (1, 4, 5),
    (2, 3, 4), (2, 3, 5), (2, 5, 6), (3, 4, 6), (4, 5, 6),
]


def torus_7():
    facets = []
    for i in range(7):
        facets.append([i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1])
        facets.append([i % 7 + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1])
    return make_complex(facets)


@pytest.fixture
def sphere3_min():
    """Boundary of the 4-simplex on 1..5."""
    return simplex_boundary(range(1, 6))


@pytest.fixture
def sphere2_min():
    return simplex_boundary(range(1, 5))


@pytest.fixture
def tetrahedron():
    return simplex(range(1, 5))


@pytest.fixture
def rp2():
    return make_complex(RP2_6)


@pytest.fixture
def torus():
    return torus_7()


@pytest.fixture
def subdivided_sphere3():
    """Boundary of the 4-simplex with facet 1234 stellarly subdivided by vertex 6."""
    facets = [F for F in simplex_boundary(range(1, 6)).sorted_facets() if F != (1, 2, 3, 4)]
    facets += [(1, 2, 3, 6), (1, 2, 4, 6), (1, 3, 4, 6), (2, 3, 4, 6)]
    return make_complex(facets)


@pytest.fixture(scope="session")
def load():
    """Catalog loader; complexes are cached for the whole session."""
    return catalog.load
