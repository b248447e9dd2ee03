"""Rooted forests as partial orders, elimination trees and tree depth."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .exceptions import InputError, NotASubtreeError
from .graph import Graph, _norm_edge


@dataclass(frozen=True)
class RootedForest:
    """A forest given by parent pointers; ``parent[v] is None`` marks a root."""

    parent: tuple[int | None, ...]
    depth: tuple[int, ...] = field(init=False, repr=False, compare=False)
    children: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        parent = tuple(self.parent)
        n = len(parent)
        for v, p in enumerate(parent):
            if p is not None and not 0 <= p < n:
                raise InputError(f"parent of {v} is {p}, outside 0..{n - 1}")
        depth = [0] * n
        for v in range(n):
            # walk to the root; a cycle would revisit a vertex
            seen = {v}
            d, u = 1, parent[v]
            while u is not None:
                if u in seen:
                    raise InputError(f"parent pointers contain a cycle through {v}")
                seen.add(u)
                d += 1
                u = parent[u]
            depth[v] = d
        kids: list[list[int]] = [[] for _ in range(n)]
        for v, p in enumerate(parent):
            if p is not None:
                kids[p].append(v)
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "depth", tuple(depth))
        object.__setattr__(self, "children", tuple(tuple(c) for c in kids))

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def roots(self) -> list[int]:
        return [v for v, p in enumerate(self.parent) if p is None]

    @property
    def is_tree(self) -> bool:
        return len(self.roots) == 1

    @property
    def root(self) -> int:
        roots = self.roots
        if len(roots) != 1:
            raise InputError(f"forest has {len(roots)} roots, expected exactly one")
        return roots[0]

    def ancestors(self, v: int) -> list[int]:
        """Proper ancestors of ``v``, from the root down to its parent."""
        out = []
        u = self.parent[v]
        while u is not None:
            out.append(u)
            u = self.parent[u]
        out.reverse()
        return out

    def leq(self, u: int, v: int) -> bool:
        """``u`` is ``v`` or an ancestor of ``v``."""
        while v is not None:
            if v == u:
                return True
            v = self.parent[v]
        return False

    def comparable(self, u: int, v: int) -> bool:
        return self.leq(u, v) or self.leq(v, u)

    def comparable_pairs(self) -> list[tuple[int, int]]:
        """All pairs ``(a, v)`` with ``a`` a proper ancestor of ``v``."""
        return [(a, v) for v in range(self.n) for a in self.ancestors(v)]

    def preorder(self) -> list[int]:
        out = []
        stack = list(reversed(self.roots))
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.children[u]))
        return out

    def to_dict(self) -> dict[str, int]:
        return {str(v): p for v, p in enumerate(self.parent) if p is not None}


def height(t: RootedForest) -> int:
    """Number of vertices on a longest root-to-leaf chain."""
    if t.n == 0:
        raise InputError("height of an empty forest is undefined")
    return max(t.depth)


def is_elimination_forest(f: Graph, t: RootedForest) -> bool:
    if t.n != f.n:
        raise InputError(f"forest has {t.n} vertices, graph has {f.n}")
    return all(t.comparable(u, v) for u, v in f.edges)


def is_elimination_tree(f: Graph, t: RootedForest) -> bool:
    """Whether the single-rooted ``t`` orders every edge of ``f``."""
    if t.n != f.n:
        raise InputError(f"tree has {t.n} vertices, graph has {f.n}")
    if len(t.roots) != 1:
        raise InputError(f"expected a tree, got {len(t.roots)} roots")
    return is_elimination_forest(f, t)


@dataclass(frozen=True)
class Decomposed:
    """A graph together with one of its elimination trees."""

    graph: Graph
    tree: RootedForest

    def __post_init__(self):
        if not isinstance(self.tree, RootedForest):
            object.__setattr__(self, "tree", RootedForest(tuple(self.tree)))
        if not is_elimination_tree(self.graph, self.tree):
            raise InputError("tree is not an elimination tree of the graph")

    @classmethod
    def from_parents(cls, graph: Graph, parent: Sequence[int | None]) -> "Decomposed":
        return cls(graph, RootedForest(tuple(parent)))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def root(self) -> int:
        return self.tree.root

    @property
    def height(self) -> int:
        return height(self.tree)

    @property
    def colors(self) -> tuple[str, ...]:
        return self.graph.colors

    def __repr__(self) -> str:
        return (
            f"Decomposed(colors={list(self.graph.colors)}, edges={self.graph.sorted_edges()}, "
            f"parent={list(self.tree.parent)})"
        )


def _restricted_parent(t: RootedForest, keep: set[int], v: int) -> int | None:
    u = t.parent[v]
    while u is not None and u not in keep:
        u = t.parent[u]
    return u


def induced_subtree(t: RootedForest, u_set: Iterable[int]) -> tuple[RootedForest, tuple[int, ...]]:
    """Restriction of the tree order to ``u_set``.

    Returns the restricted tree on dense ids together with the original id
    of each new vertex (sorted ascending). Raises ``NotASubtreeError`` if
    ``u_set`` has no unique minimal element.
    """
    keep = set(u_set)
    if not keep:
        raise InputError("vertex subset must be nonempty")
    for v in keep:
        if not 0 <= v < t.n:
            raise InputError(f"vertex {v} not in tree")
    order = tuple(sorted(keep))
    pos = {v: i for i, v in enumerate(order)}
    parent = []
    for v in order:
        p = _restricted_parent(t, keep, v)
        parent.append(None if p is None else pos[p])
    restricted = RootedForest(tuple(parent))
    if len(restricted.roots) != 1:
        raise NotASubtreeError(
            f"subset {sorted(keep)} has {len(restricted.roots)} minimal elements"
        )
    return restricted, order


def sub_decomposed(d: Decomposed, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> tuple[Decomposed, tuple[int, ...]]:
    """``(G, T[V(G)])`` for a graph ``G`` given in ``d``'s vertex ids.

    Colours are inherited from ``d``. Returns the decomposed graph on dense
    ids and the original id of each of its vertices.
    """
    tree, order = induced_subtree(d.tree, vertices)
    pos = {v: i for i, v in enumerate(order)}
    g = Graph(
        d.graph.palette,
        tuple(d.graph.colors[v] for v in order),
        frozenset(_norm_edge(pos[a], pos[b]) for a, b in edges),
    )
    return Decomposed(g, tree), order


# --- tree depth ---------------------------------------------------------

def _components_of_mask(adj_masks: Sequence[int], mask: int) -> list[int]:
    comps = []
    rest = mask
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            v = b.bit_length() - 1
            new = adj_masks[v] & mask & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def _mask_vertices(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def tree_depth(g: Graph) -> tuple[int, RootedForest]:
    """Exact tree depth and an elimination forest achieving it.

    Connected vertex sets are solved by trying every root and recursing on
    the components that remain; results are memoised per vertex subset.
    Ties go to the smallest root id.
    """
    if g.n == 0:
        raise InputError("tree depth of the empty graph is undefined")
    adj_masks = [sum(1 << w for w in g.adj[v]) for v in g.vertices()]

    @lru_cache(maxsize=None)
    def solve_connected(mask: int) -> tuple[int, int]:
        # returns (depth, chosen root)
        if mask & (mask - 1) == 0:
            return 1, mask.bit_length() - 1
        best = None
        for v in _mask_vertices(mask):
            rest = mask & ~(1 << v)
            sub = max(solve_connected(c)[0] for c in _components_of_mask(adj_masks, rest))
            if best is None or 1 + sub < best[0]:
                best = (1 + sub, v)
        return best

    parent: list[int | None] = [None] * g.n

    def build(mask: int, above: int | None) -> None:
        _, r = solve_connected(mask)
        parent[r] = above
        rest = mask & ~(1 << r)
        for c in _components_of_mask(adj_masks, rest):
            build(c, r)

    full = (1 << g.n) - 1
    depth = 0
    for comp in _components_of_mask(adj_masks, full):
        depth = max(depth, solve_connected(comp)[0])
        build(comp, None)
    forest = RootedForest(tuple(parent))
    return depth, forest


def decompose(g: Graph) -> Decomposed:
    """A ``Decomposed`` for ``g`` built from an optimal elimination forest.

    For a connected ``g`` the tree height equals the tree depth. Extra roots
    of a disconnected graph are hung below the first root.
    """
    _, forest = tree_depth(g)
    roots = forest.roots
    parent = list(forest.parent)
    for r in roots[1:]:
        parent[r] = roots[0]
    return Decomposed(g, RootedForest(tuple(parent)))


# --- rooted sums ----------------------------------------------------------

def rooted_sum(spec: Sequence[tuple[Decomposed, int]]) -> Decomposed:
    """Glue ``mult`` disjoint copies of each summand at their roots.

    The merged root is vertex 0 of the result; non-root vertices of each copy
    follow in summand order.
    """
    if not spec:
        raise InputError("rooted sum needs at least one summand")
    root_colors = {d.graph.colors[d.root] for d, _ in spec}
    if len(root_colors) != 1:
        raise InputError(f"summands are not compatible: root colours {sorted(root_colors)}")
    first = spec[0][0]
    palette = list(first.graph.palette)
    for d, _ in spec[1:]:
        for c in d.graph.palette:
            if c not in palette:
                palette.append(c)
    colors = [first.graph.colors[first.root]]
    parent: list[int | None] = [None]
    edges = set()
    for d, mult in spec:
        if mult < 1:
            raise InputError(f"multiplicity must be positive, got {mult}")
        r = d.root
        for _ in range(mult):
            pos = {r: 0}
            for v in range(d.n):
                if v != r:
                    pos[v] = len(colors)
                    colors.append(d.graph.colors[v])
                    parent.append(None)
            for v in range(d.n):
                if v != r:
                    parent[pos[v]] = pos[d.tree.parent[v]]
            edges.update(_norm_edge(pos[a], pos[b]) for a, b in d.graph.edges)
    g = Graph(tuple(palette), tuple(colors), frozenset(edges))
    return Decomposed(g, RootedForest(tuple(parent)))
