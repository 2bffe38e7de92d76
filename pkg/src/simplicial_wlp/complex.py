"""Abstract simplicial complexes stored by their facets.

Faces are sorted tuples of positive vertex labels; the empty tuple is the
empty face. A complex on vertices 1..n keeps only its maximal faces and
enumerates lower-dimensional faces on demand.
"""

from __future__ import annotations

import enum
import re
import threading
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .graph import Graph, components

Face = tuple[int, ...]


def _antichain(faces: Iterable[Face]) -> tuple[Face, ...]:
    """Keep only inclusion-maximal faces, sorted lexicographically."""
    kept: list[frozenset] = []
    for face in sorted(set(faces), key=len, reverse=True):
        s = frozenset(face)
        if not any(s <= k for k in kept):
            kept.append(s)
    return tuple(sorted(tuple(sorted(k)) for k in kept))


class SimplicialComplex:
    """Immutable simplicial complex on the vertex labels 1..n."""

    def __init__(self, n: int, facets: Iterable[Sequence[int]]):
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        raw = []
        for f in facets:
            face = tuple(sorted(set(int(v) for v in f)))
            if not face:
                raise ValueError("facets must be nonempty")
            if len(face) != len(f):
                raise ValueError(f"repeated vertex in facet {list(f)}")
            for v in face:
                if not 1 <= v <= n:
                    raise ValueError(f"vertex label {v} out of range 1..{n}")
            raw.append(face)
        if not raw:
            raise ValueError("facet list is empty")
        self._n = n
        self._facets = _antichain(raw)
        self._faces: dict[int, tuple[Face, ...]] = {}
        self._lock = threading.Lock()

    @property
    def n(self) -> int:
        return self._n

    @property
    def facets(self) -> tuple[Face, ...]:
        return self._facets

    @property
    def dim(self) -> int:
        return max(len(f) for f in self._facets) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self._facets}) == 1

    def faces_of_dim(self, k: int) -> tuple[Face, ...]:
        """All k-faces in lexicographic order; empty when k is out of range."""
        if k < -1 or k > self.dim:
            return ()
        with self._lock:
            cached = self._faces.get(k)
            if cached is None:
                found = set()
                for f in self._facets:
                    if len(f) >= k + 1:
                        found.update(combinations(f, k + 1))
                cached = self._faces[k] = tuple(sorted(found))
        return cached

    def __contains__(self, face) -> bool:
        s = set(face)
        return any(s <= set(f) for f in self._facets)

    def f_vector(self) -> tuple[int, ...]:
        """(f_-1, f_0, ..., f_dim)."""
        return tuple(len(self.faces_of_dim(k)) for k in range(-1, self.dim + 1))

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._n == other._n and self._facets == other._facets

    def __hash__(self):
        return hash((self._n, self._facets))

    def __repr__(self):
        body = ", ".join("".join(map(str, f)) if self._n < 10 else str(list(f))
                         for f in self._facets)
        return f"SimplicialComplex(n={self._n}, <{body}>)"


def from_facets(n: int, facets: Iterable[Sequence[int]]) -> SimplicialComplex:
    return SimplicialComplex(n, facets)


def faces_of_dim(cx: SimplicialComplex, k: int) -> tuple[Face, ...]:
    return cx.faces_of_dim(k)


def f_vector(cx: SimplicialComplex) -> tuple[int, ...]:
    return cx.f_vector()


def skeleton(cx: SimplicialComplex, d: int) -> SimplicialComplex:
    """The subcomplex of faces of dimension at most d."""
    if d < 0:
        raise ValueError("skeleton dimension must be nonnegative")
    if d >= cx.dim:
        return cx
    faces = [f for f in cx.facets if len(f) <= d + 1]
    faces.extend(cx.faces_of_dim(d))
    return SimplicialComplex(cx.n, faces)


def one_skeleton_graph(cx: SimplicialComplex, unused_vertices: bool = True) -> Graph:
    """The 1-skeleton G(cx).

    By default the graph has indices 0..n-1 (index i is label i+1), so labels
    that lie in no facet show up as isolated vertices. With
    ``unused_vertices=False`` only the 0-faces are kept, in label order; this
    is the graph whose incidence matrix matches the degree-1 map of A(cx).
    """
    if unused_vertices:
        verts = tuple(range(1, cx.n + 1))
    else:
        verts = tuple(v for (v,) in cx.faces_of_dim(0))
    index = {v: i for i, v in enumerate(verts)}
    edges = [(index[a], index[b]) for a, b in cx.faces_of_dim(1)]
    return Graph(len(verts), edges, labels=verts)


def ridges(cx: SimplicialComplex) -> tuple[Face, ...]:
    if not cx.is_pure():
        raise ValueError("ridges are only defined for pure complexes")
    return cx.faces_of_dim(cx.dim - 1)


def _ridge_incidence(cx: SimplicialComplex) -> dict[Face, list[int]]:
    """Map each ridge to the indices of the facets containing it."""
    out: dict[Face, list[int]] = {r: [] for r in cx.faces_of_dim(cx.dim - 1)}
    for idx, f in enumerate(cx.facets):
        for r in combinations(f, len(f) - 1):
            out[r].append(idx)
    return out


def dual_graph(cx: SimplicialComplex) -> Graph:
    """Facets (in sorted order) as vertices, adjacent when they share a ridge."""
    if not cx.is_pure():
        raise ValueError("dual graph requires a pure complex")
    edges = set()
    for owners in _ridge_incidence(cx).values():
        for a, b in combinations(owners, 2):
            edges.add((a, b))
    return Graph(len(cx.facets), edges, labels=cx.facets)


class PseudomanifoldKind(enum.Enum):
    NOT_PSEUDOMANIFOLD = "not-pseudomanifold"
    WITH_BOUNDARY = "with-boundary"
    WITHOUT_BOUNDARY = "without-boundary"


@dataclass(frozen=True)
class PseudomanifoldStatus:
    kind: PseudomanifoldKind
    boundary_ridges: tuple[Face, ...] = ()
    reason: str = ""

    @property
    def is_pseudomanifold(self) -> bool:
        return self.kind is not PseudomanifoldKind.NOT_PSEUDOMANIFOLD


def pseudomanifold_status(cx: SimplicialComplex) -> PseudomanifoldStatus:
    """Classify cx as a combinatorial pseudomanifold with or without boundary.

    Dimension 0 is rejected: the ridge there is the empty face, and none of
    the degree-d results apply.
    """
    no = PseudomanifoldKind.NOT_PSEUDOMANIFOLD
    if not cx.is_pure():
        return PseudomanifoldStatus(no, reason="not pure")
    if cx.dim < 1:
        return PseudomanifoldStatus(no, reason="dimension 0")
    boundary = []
    for r, owners in _ridge_incidence(cx).items():
        if len(owners) > 2:
            return PseudomanifoldStatus(no, reason=f"ridge {r} lies in {len(owners)} facets")
        if len(owners) == 1:
            boundary.append(r)
    if len(components(dual_graph(cx)).components) != 1:
        return PseudomanifoldStatus(no, reason="dual graph is disconnected")
    if boundary:
        return PseudomanifoldStatus(PseudomanifoldKind.WITH_BOUNDARY, tuple(boundary))
    return PseudomanifoldStatus(PseudomanifoldKind.WITHOUT_BOUNDARY)


def barycentric_subdivision(cx: SimplicialComplex) -> SimplicialComplex:
    """Order complex of the nonempty faces of cx.

    New vertex labels follow the faces sorted by (dimension, lex), so the
    original vertices keep labels 1..f_0 when every vertex is used.
    """
    faces = [f for k in range(0, cx.dim + 1) for f in cx.faces_of_dim(k)]
    label = {f: i + 1 for i, f in enumerate(faces)}
    chains = set()
    for facet in cx.facets:
        for order in permutations(facet):
            chains.add(tuple(sorted(label[tuple(sorted(order[:j]))]
                                    for j in range(1, len(order) + 1))))
    return SimplicialComplex(len(faces), chains)


def maximal_independent_sets(g: Graph) -> list[frozenset]:
    """Bron-Kerbosch with pivoting on the complement graph."""
    nbrs = g.adjacency()
    everyone = frozenset(range(g.vertex_count))
    non = [everyone - nbrs[v] - {v} for v in range(g.vertex_count)]
    out: list[frozenset] = []

    def expand(r, p, x):
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(non[u] & p))
        for v in list(p - non[pivot]):
            expand(r | {v}, p & non[v], x & non[v])
            p = p - {v}
            x = x | {v}

    expand(frozenset(), everyone, frozenset())
    return out


def independence_complex(g: Graph) -> SimplicialComplex:
    """Complex of independent sets of g; graph index i becomes label i+1."""
    sets = maximal_independent_sets(g)
    return SimplicialComplex(g.vertex_count, [[v + 1 for v in s] for s in sets])


def path_graph(m: int) -> Graph:
    return Graph(m, [(i, i + 1) for i in range(m - 1)])


def cycle(m: int) -> SimplicialComplex:
    if m < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return SimplicialComplex(m, [(i, i % m + 1) for i in range(1, m + 1)])


def octahedron() -> SimplicialComplex:
    return SimplicialComplex(6, [(a, b, c) for a in (1, 2) for b in (3, 4) for c in (5, 6)])


def tetrahedron_boundary() -> SimplicialComplex:
    return SimplicialComplex(4, combinations(range(1, 5), 3))


def torus_7() -> SimplicialComplex:
    """The 7-vertex (Moebius-Csaszar) torus."""
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex(7, [[v + 1 for v in t] for t in tris])


def path_independence(m: int) -> SimplicialComplex:
    if m < 1:
        raise ValueError("path needs at least one vertex")
    return independence_complex(path_graph(m))


_BUILTINS = {
    "octahedron": octahedron,
    "tetrahedron_boundary": tetrahedron_boundary,
    "torus_7": torus_7,
    "example_2_1": lambda: SimplicialComplex(5, [(1, 2, 3), (1, 3, 4), (4, 5)]),
}
_BUILTINS_WITH_ARG = {
    "cycle": cycle,
    "path_independence": path_independence,
}
BUILTIN_NAMES = tuple(_BUILTINS) + tuple(f"{k}(m)" for k in _BUILTINS_WITH_ARG)

_CALL = re.compile(r"^\s*([a-z_0-9]+)\s*(?:\(\s*(\d+)\s*\))?\s*$")


def builtin(name: str) -> SimplicialComplex:
    """Look up a named complex, e.g. ``octahedron`` or ``cycle(4)``."""
    m = _CALL.match(name)
    if m is None:
        raise KeyError(f"unknown builtin {name!r}")
    key, arg = m.group(1), m.group(2)
    if arg is None and key in _BUILTINS:
        return _BUILTINS[key]()
    if arg is not None and key in _BUILTINS_WITH_ARG:
        return _BUILTINS_WITH_ARG[key](int(arg))
    raise KeyError(f"unknown builtin {name!r}; known: {', '.join(BUILTIN_NAMES)}")


class FacetFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_facets(text: str) -> SimplicialComplex:
    """Parse the plain-text facet format.

    An optional first content line ``n <count>`` fixes the vertex count;
    otherwise n is the largest label seen. Blank lines and ``#`` lines are
    skipped; every other line is one facet.
    """
    n = None
    facets = []
    seen_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if not seen_content and tokens[0] == "n":
            seen_content = True
            if len(tokens) != 2 or not tokens[1].isdigit() or int(tokens[1]) < 1:
                raise FacetFileError(f"bad header {line!r}", lineno)
            n = int(tokens[1])
            continue
        seen_content = True
        try:
            facet = [int(t) for t in tokens]
        except ValueError:
            raise FacetFileError(f"non-integer token in {line!r}", lineno) from None
        if any(v < 1 for v in facet):
            raise FacetFileError("vertex labels must be positive", lineno)
        if n is not None and any(v > n for v in facet):
            raise FacetFileError(f"label exceeds n={n}", lineno)
        if len(set(facet)) != len(facet):
            raise FacetFileError("repeated vertex", lineno)
        facets.append(facet)
    if not facets:
        raise FacetFileError("no facets found")
    if n is None:
        n = max(max(f) for f in facets)
    return SimplicialComplex(n, facets)


def format_facets(cx: SimplicialComplex) -> str:
    lines = [f"n {cx.n}"] + [" ".join(map(str, f)) for f in cx.facets]
    return "\n".join(lines) + "\n"


def load(path: str) -> SimplicialComplex:
    with open(path) as fh:
        return parse_facets(fh.read())
