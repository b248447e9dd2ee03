"""Vertex-coloured undirected simple graphs.

Vertices are the dense integers ``0..n-1``; colours are opaque string
tokens drawn from a declared palette. Instances are immutable.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exceptions import InputError

DEFAULT_PALETTE = ("white",)

Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def product_color(base: str, bit: int) -> str:
    """Colour token of the pair ``(base, bit)``, e.g. ``"white|1"``."""
    return f"{base}|{bit}"


def product_palette(palette: Sequence[str]) -> tuple[str, ...]:
    return tuple(product_color(c, b) for c in palette for b in (0, 1))


@dataclass(frozen=True)
class Graph:
    """A finite vertex-coloured simple graph.

    ``colors[v]`` is the colour of vertex ``v``; ``edges`` holds normalised
    pairs ``(u, v)`` with ``u < v``.
    """

    palette: tuple[str, ...]
    colors: tuple[str, ...]
    edges: frozenset[Edge]
    adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        palette = tuple(self.palette)
        if not palette:
            raise InputError("palette must be nonempty")
        if len(set(palette)) != len(palette):
            raise InputError(f"palette tokens must be distinct: {palette!r}")
        colors = tuple(self.colors)
        known = set(palette)
        for v, c in enumerate(colors):
            if c not in known:
                raise InputError(f"vertex {v} has colour {c!r} outside palette {palette!r}")
        n = len(colors)
        edges = set()
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in self.edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {e!r} references a vertex outside 0..{n - 1}")
            if u == v:
                raise InputError(f"loop at vertex {u} is not allowed")
            e = _norm_edge(u, v)
            edges.add(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "palette", palette)
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in nbrs))

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]] = (),
        colors: Sequence[str] | None = None,
        palette: Sequence[str] | None = None,
    ) -> "Graph":
        """Build a graph; duplicate edges in the input are an error."""
        edge_list = [tuple(e) for e in edges]
        seen = set()
        for e in edge_list:
            if len(e) != 2:
                raise InputError(f"edge {e!r} must have two endpoints")
            key = _norm_edge(*e)
            if key in seen:
                raise InputError(f"duplicate edge {e!r}")
            seen.add(key)
        if palette is None:
            palette = tuple(dict.fromkeys(colors)) if colors else DEFAULT_PALETTE
        if colors is None:
            colors = (palette[0],) * n
        if len(colors) != n:
            raise InputError(f"expected {n} colours, got {len(colors)}")
        return cls(tuple(palette), tuple(colors), frozenset(seen))

    @property
    def n(self) -> int:
        return len(self.colors)

    def __len__(self) -> int:
        return len(self.colors)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def vertices(self) -> range:
        return range(len(self.colors))

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def color_count(self, color: str) -> int:
        return sum(1 for c in self.colors if c == color)

    def with_palette(self, palette: Sequence[str]) -> "Graph":
        return Graph(tuple(palette), self.colors, self.edges)

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is this graph's vertex ``order[i]``."""
        pos = {v: i for i, v in enumerate(order)}
        if sorted(pos) != list(range(self.n)):
            raise InputError("relabelling must be a permutation of the vertices")
        return Graph(
            self.palette,
            tuple(self.colors[v] for v in order),
            frozenset(_norm_edge(pos[u], pos[v]) for u, v in self.edges),
        )

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph on ``vertices``, relabelled densely in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        return Graph(
            self.palette,
            tuple(self.colors[v] for v in vertices),
            frozenset(_norm_edge(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos),
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, colors={list(self.colors)}, edges={self.sorted_edges()})"


def is_color_subgraph(g: Graph, f: Graph, embedding: Sequence[int]) -> bool:
    """Whether ``g``, placed into ``f`` through ``embedding``, agrees on colours.

    Edges are not constrained. ``embedding[i]`` is the vertex of ``f``
    corresponding to vertex ``i`` of ``g``.
    """
    if len(embedding) != g.n:
        raise InputError(f"embedding has {len(embedding)} entries for {g.n} vertices")
    if len(set(embedding)) != len(embedding):
        raise InputError("embedding must be injective")
    for v in embedding:
        if not 0 <= v < f.n:
            raise InputError(f"embedding references vertex {v} outside the host graph")
    return all(g.colors[i] == f.colors[w] for i, w in enumerate(embedding))


def quotient_delete(g: Graph, v: int) -> Graph:
    """Delete ``v`` and record each survivor's former adjacency to ``v`` in its colour.

    A survivor ``w`` gets colour ``"<old>|1"`` if ``vw`` was an edge and
    ``"<old>|0"`` otherwise; the result uses the product palette.
    """
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} is not in a graph of order {g.n}")
    rest = [w for w in g.vertices() if w != v]
    pos = {w: i for i, w in enumerate(rest)}
    colors = tuple(product_color(g.colors[w], int(w in g.adj[v])) for w in rest)
    edges = frozenset(
        _norm_edge(pos[a], pos[b]) for a, b in g.edges if a != v and b != v
    )
    return Graph(product_palette(g.palette), colors, edges)


def is_local_isomorphism(g: Graph, g2: Graph, vs: Sequence[int], vs2: Sequence[int]) -> bool:
    """Whether ``vs[i] -> vs2[i]`` is a local isomorphism from ``g`` to ``g2``."""
    if len(vs) != len(vs2):
        raise InputError(f"tuple lengths differ: {len(vs)} vs {len(vs2)}")
    for a in vs:
        if not 0 <= a < g.n:
            raise InputError(f"vertex {a} not in left graph")
    for b in vs2:
        if not 0 <= b < g2.n:
            raise InputError(f"vertex {b} not in right graph")
    ell = len(vs)
    for i in range(ell):
        if g.colors[vs[i]] != g2.colors[vs2[i]]:
            return False
        for j in range(i + 1, ell):
            if (vs[i] == vs[j]) != (vs2[i] == vs2[j]):
                return False
            if g.has_edge(vs[i], vs[j]) != g2.has_edge(vs2[i], vs2[j]):
                return False
    return True


def bfs_distances(g: Graph, source: int) -> list[float]:
    dist: list[float] = [math.inf] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] == math.inf:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def radius(g: Graph) -> float:
    """Minimum eccentricity; ``math.inf`` for empty or disconnected graphs."""
    if g.n == 0:
        return math.inf
    best = math.inf
    for v in g.vertices():
        ecc = max(bfs_distances(g, v))
        best = min(best, ecc)
    return int(best) if best != math.inf else math.inf


def is_connected(g: Graph) -> bool:
    return g.n > 0 and all(d != math.inf for d in bfs_distances(g, 0))


def disjoint_union(gs: Sequence[Graph], palette: Sequence[str] | None = None) -> Graph:
    """Disjoint union; vertices of ``gs[i]`` follow those of ``gs[:i]``."""
    if palette is None:
        palette = gs[0].palette if gs else DEFAULT_PALETTE
    colors: list[str] = []
    edges: set[Edge] = set()
    offset = 0
    for h in gs:
        colors.extend(h.colors)
        edges.update((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph(tuple(palette), tuple(colors), frozenset(edges))


def component_vertex_sets(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in g.vertices():
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(sorted(comp))
    return out


def connected_components(g: Graph) -> list[tuple[Graph, tuple[int, ...]]]:
    """Components as ``(graph, original_ids)`` pairs, ordered by smallest vertex.

    Vertex ``i`` of a component graph is ``original_ids[i]`` in ``g``.
    """
    return [(g.induced(comp), tuple(comp)) for comp in component_vertex_sets(g)]


# Small named graphs used throughout tests and the CLI.

def path_graph(n: int, palette: Sequence[str] = DEFAULT_PALETTE) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], palette=palette)


def cycle_graph(n: int, palette: Sequence[str] = DEFAULT_PALETTE) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], palette=palette)


def complete_graph(n: int, palette: Sequence[str] = DEFAULT_PALETTE) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)], palette=palette)


def empty_graph(n: int = 0, palette: Sequence[str] = DEFAULT_PALETTE) -> Graph:
    return Graph.from_edges(n, [], palette=palette)
