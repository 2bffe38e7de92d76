"""Small undirected simple graphs and the algorithms the WLP criteria need."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .linalg import IntMatrix

DEFAULT_CLIQUE_BOUND = 64


class Graph:
    """Undirected simple graph on vertex indices 0..vertex_count-1.

    ``labels`` only affects how vertices are reported in certificates.
    """

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]],
                 labels: Sequence[Hashable] | None = None):
        if vertex_count < 1:
            raise ValueError("a graph needs at least one vertex")
        es = set()
        for e in edges:
            a, b = e
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            if not (0 <= a < vertex_count and 0 <= b < vertex_count):
                raise ValueError(f"edge {e} out of range")
            es.add((min(a, b), max(a, b)))
        self.vertex_count = vertex_count
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(es))
        if labels is None:
            labels = tuple(range(vertex_count))
        if len(labels) != vertex_count:
            raise ValueError("one label per vertex required")
        self.labels = tuple(labels)

    def adjacency(self) -> list[frozenset]:
        nbrs: list[set] = [set() for _ in range(self.vertex_count)]
        for a, b in self.edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
        return [frozenset(s) for s in nbrs]

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def __repr__(self):
        return f"Graph({self.vertex_count}, {list(self.edges)})"


@dataclass(frozen=True)
class Component:
    vertices: tuple[int, ...]
    edge_count: int
    bipartite: bool

    @property
    def is_tree(self) -> bool:
        return self.edge_count == len(self.vertices) - 1


@dataclass(frozen=True)
class ComponentSummary:
    components: tuple[Component, ...]

    @property
    def bipartite_count(self) -> int:
        """b_G, the number of bipartite connected components."""
        return sum(c.bipartite for c in self.components)


def _two_color(g: Graph):
    """BFS 2-coloring per component.

    Returns (color, parent, depth, comp_of, conflict) where conflict is the
    first monochromatic edge met, per component.
    """
    nbrs = g.adjacency()
    color = [-1] * g.vertex_count
    parent = [-1] * g.vertex_count
    depth = [0] * g.vertex_count
    comps: list[list[int]] = []
    conflicts: list[tuple[int, int] | None] = []
    for s in range(g.vertex_count):
        if color[s] >= 0:
            continue
        color[s] = 0
        members = [s]
        conflict = None
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in sorted(nbrs[u]):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    members.append(w)
                    queue.append(w)
                elif color[w] == color[u] and conflict is None:
                    conflict = (u, w)
        comps.append(sorted(members))
        conflicts.append(conflict)
    return color, parent, depth, comps, conflicts


def components(g: Graph) -> ComponentSummary:
    _, _, _, comps, conflicts = _two_color(g)
    where = {}
    for i, members in enumerate(comps):
        for v in members:
            where[v] = i
    edge_counts = [0] * len(comps)
    for a, _ in g.edges:
        edge_counts[where[a]] += 1
    return ComponentSummary(tuple(
        Component(tuple(m), edge_counts[i], conflicts[i] is None)
        for i, m in enumerate(comps)))


@dataclass(frozen=True)
class BipartiteResult:
    bipartite: bool
    coloring: tuple[int, ...] | None = None
    odd_cycle: tuple[int, ...] | None = None

    def __bool__(self):
        return self.bipartite


def is_bipartite(g: Graph) -> BipartiteResult:
    """2-coloring, or an odd cycle (closed walk, first vertex not repeated)."""
    color, parent, depth, _, conflicts = _two_color(g)
    for conflict in conflicts:
        if conflict is None:
            continue
        u, w = conflict
        left, right = [u], [w]
        while left[-1] != right[-1]:
            if depth[left[-1]] >= depth[right[-1]]:
                left.append(parent[left[-1]])
            else:
                right.append(parent[right[-1]])
        # left ends at the common ancestor; walk u..lca then back down to w
        return BipartiteResult(False, odd_cycle=tuple(left + right[-2::-1]))
    return BipartiteResult(True, coloring=tuple(color))


def incidence_matrix(g: Graph) -> IntMatrix:
    """|V| x |E| 0/1 matrix with vertices and edges in lex order."""
    rows = [[0] * len(g.edges) for _ in range(g.vertex_count)]
    for j, (a, b) in enumerate(g.edges):
        rows[a][j] = 1
        rows[b][j] = 1
    return IntMatrix(g.vertex_count, len(g.edges), rows)


def is_eulerian(g: Graph) -> bool:
    """True iff no vertex has odd degree (connectivity is not required)."""
    return all(d % 2 == 0 for d in g.degrees())


def clique_number(g: Graph, bound: int = DEFAULT_CLIQUE_BOUND) -> int:
    """Exact clique number by branch and bound with greedy-coloring bounds."""
    if g.vertex_count > bound:
        raise ValueError(f"graph has {g.vertex_count} vertices, exact clique search "
                         f"is limited to {bound}")
    nbr_bits = [0] * g.vertex_count
    for a, b in g.edges:
        nbr_bits[a] |= 1 << b
        nbr_bits[b] |= 1 << a
    best = 1

    def color_bound(cand: int) -> list[tuple[int, int]]:
        # greedy sequential coloring; returns (vertex, color) in color order
        out = []
        k = 0
        while cand:
            k += 1
            avail = cand
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~(1 << v) & ~nbr_bits[v]
                cand &= ~(1 << v)
                out.append((v, k))
        return out

    def expand(size: int, cand: int):
        nonlocal best
        order = color_bound(cand)
        for v, k in reversed(order):
            if size + k <= best:
                return
            expand(size + 1, cand & nbr_bits[v])
            cand &= ~(1 << v)
        if size > best:
            best = size

    expand(0, (1 << g.vertex_count) - 1)
    return best
