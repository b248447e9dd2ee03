"""Canonical keys and exhaustive enumeration of small graphs.

Canonical forms use colour refinement plus individualisation: the key is
the minimum encoding over all leaves of the (isomorphism-invariant)
search tree. Transpositions that are automorphisms prune sibling
branches, which keeps empty and complete graphs cheap.
"""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .decomposition import Decomposed, RootedForest, tree_depth
from .exceptions import CapacityError, InputError
from .graph import DEFAULT_PALETTE, Graph, _norm_edge, is_connected

CANONICAL_BOUND = 8

CanonicalKey = bytes


class _Structure:
    """Coloured graph with optional parent pointers, as used by the search."""

    __slots__ = ("n", "colors", "adj", "parent", "kids")

    def __init__(self, colors, adj, parent=None):
        self.n = len(colors)
        self.colors = colors
        self.adj = adj
        self.parent = parent
        if parent is not None:
            kids = [[] for _ in range(self.n)]
            for v, p in enumerate(parent):
                if p is not None:
                    kids[p].append(v)
            self.kids = kids
        else:
            self.kids = None

    def signature(self, v, cell_of):
        nb = {}
        for w in self.adj[v]:
            c = cell_of[w]
            nb[c] = nb.get(c, 0) + 1
        sig = tuple(sorted(nb.items()))
        if self.parent is None:
            return sig
        p = self.parent[v]
        ch = {}
        for w in self.kids[v]:
            c = cell_of[w]
            ch[c] = ch.get(c, 0) + 1
        return (sig, -1 if p is None else cell_of[p], tuple(sorted(ch.items())))

    def refine(self, cells):
        while True:
            cell_of = {}
            for i, cell in enumerate(cells):
                for v in cell:
                    cell_of[v] = i
            new = []
            changed = False
            for cell in cells:
                if len(cell) == 1:
                    new.append(cell)
                    continue
                groups = {}
                for v in cell:
                    groups.setdefault(self.signature(v, cell_of), []).append(v)
                if len(groups) > 1:
                    changed = True
                    for sig in sorted(groups):
                        new.append(groups[sig])
                else:
                    new.append(cell)
            cells = new
            if not changed:
                return cells

    def swap_is_automorphism(self, v, w):
        adj = self.adj
        for x in range(self.n):
            if x == v or x == w:
                continue
            if (x in adj[v]) != (x in adj[w]):
                return False
        if self.parent is not None:
            sigma = {v: w, w: v}
            for x in range(self.n):
                px = self.parent[x]
                lhs = self.parent[sigma.get(x, x)]
                rhs = None if px is None else sigma.get(px, px)
                if lhs != rhs:
                    return False
        return True

    def encode(self, order):
        pos = {v: i for i, v in enumerate(order)}
        colors = tuple(self.colors[v] for v in order)
        edges = tuple(sorted(_norm_edge(pos[u], pos[w]) for u in range(self.n) for w in self.adj[u] if u < w))
        if self.parent is None:
            return (colors, edges)
        par = tuple(-1 if self.parent[v] is None else pos[self.parent[v]] for v in order)
        return (colors, edges, par)

    def canonical(self):
        # initial cells: by colour (and depth, when a tree is present)
        if self.parent is None:
            inv = {v: (self.colors[v],) for v in range(self.n)}
        else:
            depth = [0] * self.n
            for v in range(self.n):
                u, d = v, 0
                while u is not None:
                    d += 1
                    u = self.parent[u]
                depth[v] = d
            inv = {v: (self.colors[v], depth[v]) for v in range(self.n)}
        groups = {}
        for v in range(self.n):
            groups.setdefault(inv[v], []).append(v)
        cells = [groups[key] for key in sorted(groups)]
        best = [None, None]

        def search(cells):
            cells = self.refine(cells)
            for idx, cell in enumerate(cells):
                if len(cell) > 1:
                    break
            else:
                order = [c[0] for c in cells]
                enc = self.encode(order)
                if best[0] is None or enc < best[0]:
                    best[0], best[1] = enc, order
                return
            tried = []
            for v in sorted(cell):
                if any(self.swap_is_automorphism(v, w) for w in tried):
                    continue
                tried.append(v)
                rest = [w for w in cell if w != v]
                search(cells[:idx] + [[v], rest] + cells[idx + 1:])

        search(cells)
        return best[0], best[1]


def _encoding_to_key(enc) -> CanonicalKey:
    return json.dumps(enc, separators=(",", ":")).encode()


def _structure(obj: Graph | Decomposed) -> _Structure:
    if isinstance(obj, Decomposed):
        g = obj.graph
        return _Structure(g.colors, g.adj, obj.tree.parent)
    return _Structure(obj.colors, obj.adj)


def canonical_form(obj: Graph | Decomposed, bound: int = CANONICAL_BOUND):
    """``(key, representative)`` where the representative is relabelled canonically."""
    if obj.n > bound:
        raise CapacityError(f"order {obj.n} exceeds canonicalisation bound {bound}")
    if obj.n == 0:
        return _encoding_to_key(((), ())), obj
    enc, order = _structure(obj).canonical()
    key = _encoding_to_key(enc)
    if isinstance(obj, Decomposed):
        g = obj.graph.relabel(order)
        pos = {v: i for i, v in enumerate(order)}
        parent = tuple(None if obj.tree.parent[v] is None else pos[obj.tree.parent[v]] for v in order)
        return key, Decomposed(g, RootedForest(parent))
    return key, obj.relabel(order)


def canonical_key(obj: Graph | Decomposed, bound: int = CANONICAL_BOUND) -> CanonicalKey:
    """Isomorphism-invariant key (respects colours, and tree order for decomposed graphs)."""
    return canonical_form(obj, bound)[0]


# --- graph streams --------------------------------------------------------

def _subsets(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    for bits in range(1 << len(items)):
        yield tuple(x for i, x in enumerate(items) if bits >> i & 1)


def _extend(g: Graph, color: str, nbrs: Sequence[int]) -> Graph:
    n = g.n
    return Graph(g.palette, g.colors + (color,), g.edges | {(u, n) for u in nbrs})


@lru_cache(maxsize=None)
def _hereditary_levels(n_max: int, palette: tuple[str, ...], td_limit: int | None):
    """Per-order lists of ``(key, graph)`` for a vertex-deletion-closed class.

    The class is all graphs (``td_limit is None``) or all graphs of tree
    depth at most ``td_limit``. Every member of order ``n`` arises from one
    of order ``n - 1`` by adding a vertex, so growing level by level is
    exhaustive.
    """
    if n_max > CANONICAL_BOUND:
        raise CapacityError(f"n_max {n_max} exceeds enumeration bound {CANONICAL_BOUND}")
    empty = Graph(palette, (), frozenset())
    levels = [[canonical_form(empty)]]
    for n in range(1, n_max + 1):
        found = {}
        for _, g in levels[-1]:
            for color in palette:
                for nbrs in _subsets(range(n - 1)):
                    cand = _extend(g, color, nbrs)
                    if td_limit is not None and tree_depth(cand)[0] > td_limit:
                        continue
                    key, rep = canonical_form(cand)
                    if key not in found:
                        found[key] = rep
        levels.append(sorted(found.items()))
    return tuple(tuple(level) for level in levels)


def enum_graphs(n_max: int, palette: Sequence[str] = DEFAULT_PALETTE) -> Iterator[Graph]:
    """One graph per isomorphism class of order ``0..n_max``, by order then key."""
    for level in _hereditary_levels(n_max, tuple(palette), None):
        for _, g in level:
            yield g


def enum_graphs_keyed(n_max: int, palette: Sequence[str] = DEFAULT_PALETTE, td_limit: int | None = None):
    for level in _hereditary_levels(n_max, tuple(palette), td_limit):
        yield from level


def enum_conn_tdk(k: int, n_max: int, palette: Sequence[str] = DEFAULT_PALETTE) -> Iterator[Graph]:
    """Connected graphs of tree depth at most ``k`` and order at most ``n_max``."""
    if k < 1:
        raise InputError("k must be at least 1")
    for _, g in enum_conn_tdk_keyed(k, n_max, palette):
        yield g


def enum_conn_tdk_keyed(k: int, n_max: int, palette: Sequence[str] = DEFAULT_PALETTE):
    limit = min(k, n_max) if n_max > 0 else 1
    for key, g in enum_graphs_keyed(n_max, palette, limit):
        if is_connected(g):
            yield key, g


# --- decomposed graphs ----------------------------------------------------

@lru_cache(maxsize=None)
def _decomposed_levels(k: int, n_max: int, palette: tuple[str, ...]):
    if n_max > CANONICAL_BOUND:
        raise CapacityError(f"n_max {n_max} exceeds enumeration bound {CANONICAL_BOUND}")
    if n_max < 1 or k < 1:
        return ()
    first = {}
    for c in palette:
        d = Decomposed(Graph(palette, (c,), frozenset()), RootedForest((None,)))
        key, rep = canonical_form(d)
        first[key] = rep
    levels = [sorted(first.items())]
    for n in range(2, n_max + 1):
        found = {}
        for _, d in levels[-1]:
            for p in range(d.n):
                if d.tree.depth[p] >= k:
                    continue
                chain = d.tree.ancestors(p) + [p]
                for color in palette:
                    for nbrs in _subsets(chain):
                        g = _extend(d.graph, color, nbrs)
                        cand = Decomposed(g, RootedForest(d.tree.parent + (p,)))
                        key, rep = canonical_form(cand)
                        if key not in found:
                            found[key] = rep
        levels.append(sorted(found.items()))
    return tuple(tuple(level) for level in levels)


def enum_decomposed(k: int, n_max: int, palette: Sequence[str] = DEFAULT_PALETTE) -> Iterator[Decomposed]:
    """All ``(F, T)`` with ``T`` a single-rooted elimination tree of height ``<= k``.

    One representative per isomorphism class (of graph and tree order
    together); ``F`` may be disconnected.
    """
    for level in _decomposed_levels(k, n_max, tuple(palette)):
        for _, d in level:
            yield d


def enum_supergraphs_respecting(d: Decomposed) -> Iterator[Graph]:
    """Graphs on ``V(d)`` containing ``F^d`` for which ``T^d`` is still an elimination tree.

    Ordered by number of added edges, so ``F^d`` itself comes first.
    """
    missing = [e for e in (_norm_edge(a, v) for a, v in d.tree.comparable_pairs()) if e not in d.graph.edges]
    missing.sort()
    subsets = sorted(_subsets(range(len(missing))), key=lambda s: (len(s), s))
    for s in subsets:
        yield Graph(d.graph.palette, d.graph.colors, d.graph.edges | {missing[i] for i in s})


# --- elimination trees ----------------------------------------------------

def _set_partitions(items: list) -> Iterator[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _component_groups(f: Graph, vertices: frozenset[int]) -> list[frozenset[int]]:
    comps = []
    seen = set()
    for s in sorted(vertices):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in f.adj[u]:
                if w in vertices and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def _forests(f: Graph, vertices: frozenset[int], h: int) -> list[dict[int, int | None]]:
    """All elimination forests of ``f[vertices]`` with height at most ``h``."""
    if not vertices:
        return [{}]
    if h <= 0:
        return []
    out = []
    comps = _component_groups(f, vertices)
    for blocks in _set_partitions(comps):
        per_block = [_trees(f, frozenset().union(*b), h) for b in blocks]
        for combo in product(*per_block):
            merged = {}
            for part in combo:
                merged.update(part)
            out.append(merged)
    return out


def _trees(f: Graph, vertices: frozenset[int], h: int) -> list[dict[int, int | None]]:
    out = []
    for r in sorted(vertices):
        for sub in _forests(f, vertices - {r}, h - 1):
            tree = {v: (r if p is None else p) for v, p in sub.items()}
            tree[r] = None
            out.append(tree)
    return out


def enum_elim_trees(f: Graph, k: int) -> Iterator[RootedForest]:
    """All single-rooted elimination trees of ``f`` with height at most ``k``."""
    if f.n == 0:
        raise InputError("graph must be nonempty")
    for t in _trees(f, frozenset(f.vertices()), k):
        yield RootedForest(tuple(t[v] for v in f.vertices()))


def enum_elim_forests(f: Graph) -> Iterator[RootedForest]:
    """All elimination forests of ``f`` (any height)."""
    for t in _forests(f, frozenset(f.vertices()), max(f.n, 1)):
        yield RootedForest(tuple(t[v] for v in f.vertices()))
