"""Seeded random inputs for the cross-validation harness."""

from __future__ import annotations

import random
from itertools import combinations

from .complex import (
    PseudomanifoldKind,
    SimplicialComplex,
    barycentric_subdivision,
    independence_complex,
    octahedron,
    pseudomanifold_status,
    tetrahedron_boundary,
    torus_7,
)
from .graph import Graph

EDGE_PROBABILITIES = (0.3, 0.5, 0.7)


def random_graph(m: int, p: float, rng: random.Random) -> Graph:
    """Erdos-Renyi G(m, p)."""
    return Graph(m, [e for e in combinations(range(m), 2) if rng.random() < p])


def random_flag_complex(rng: random.Random, max_vertices: int = 9) -> SimplicialComplex:
    """Independence complex of G(m, p), m <= max_vertices, p from EDGE_PROBABILITIES."""
    m = rng.randint(1, max_vertices)
    return independence_complex(random_graph(m, rng.choice(EDGE_PROBABILITIES), rng))


def random_facet_complex(rng: random.Random, max_vertices: int = 9) -> SimplicialComplex:
    """Downward closure of a handful of random vertex sets.

    Labels missing from every facet are left in place as unused vertices.
    """
    m = rng.randint(1, max_vertices)
    count = rng.randint(1, 2 * m)
    facets = [rng.sample(range(1, m + 1), rng.randint(1, min(m, 5))) for _ in range(count)]
    return SimplicialComplex(m, facets)


def random_complex(rng: random.Random, max_vertices: int = 9) -> SimplicialComplex:
    if rng.random() < 0.5:
        return random_flag_complex(rng, max_vertices)
    return random_facet_complex(rng, max_vertices)


def random_complexes(count: int, seed: int, max_vertices: int = 9) -> list[SimplicialComplex]:
    rng = random.Random(seed)
    return [random_complex(rng, max_vertices) for _ in range(count)]


def closed_surfaces() -> list[SimplicialComplex]:
    """Closed 2-dimensional builtins and their first barycentric subdivisions."""
    base = [octahedron(), tetrahedron_boundary(), torus_7()]
    return base + [barycentric_subdivision(cx) for cx in base]


def delete_facet(cx: SimplicialComplex, index: int) -> SimplicialComplex:
    facets = [f for k, f in enumerate(cx.facets) if k != index]
    used = sorted({v for f in facets for v in f})
    relabel = {v: k + 1 for k, v in enumerate(used)}
    return SimplicialComplex(len(used), [[relabel[v] for v in f] for f in facets])


def punctured_surfaces(count: int, seed: int) -> list[SimplicialComplex]:
    """Distinct 2-pseudomanifolds with boundary, each a closed surface minus one facet."""
    rng = random.Random(seed)
    pool = [(s, k) for s, cx in enumerate(closed_surfaces()) for k in range(len(cx.facets))]
    surfaces = closed_surfaces()
    rng.shuffle(pool)
    out = []
    for s, k in pool:
        cx = delete_facet(surfaces[s], k)
        if pseudomanifold_status(cx).kind is PseudomanifoldKind.WITH_BOUNDARY:
            out.append(cx)
        if len(out) == count:
            break
    return out
