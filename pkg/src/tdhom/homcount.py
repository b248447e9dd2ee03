"""Exact homomorphism, embedding and epimorphism counts.

Two independent engines: exhaustive backtracking over all vertex maps
(the reference), and a dynamic program along an elimination tree that
carries only the images of the current ancestor chain. The tree engine
also serves the past-injective and past-preserving variants used in
:mod:`tdhom.restricted`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .decomposition import Decomposed, decompose
from .enumeration import CanonicalKey, enum_conn_tdk_keyed
from .exceptions import InputError
from .graph import Graph, connected_components

PinMap = Mapping[int, int]


def _check_pins(n_pattern: int, n_target: int, pins: PinMap | None) -> dict[int, int]:
    pins = dict(pins or {})
    for u, v in pins.items():
        if not 0 <= u < n_pattern:
            raise InputError(f"pin {u}->{v}: pattern vertex {u} does not exist")
        if not 0 <= v < n_target:
            raise InputError(f"pin {u}->{v}: target vertex {v} does not exist")
    return pins


# --- exhaustive reference engine -------------------------------------------

def iter_homomorphisms(
    f: Graph, g: Graph, pins: PinMap | None = None, injective: bool = False
) -> Iterator[tuple[int, ...]]:
    """Yield every colour- and edge-preserving map ``V(f) -> V(g)`` as a tuple.

    Vertices are assigned in id order and each partial map is checked
    against the edges to already-assigned vertices.
    """
    pins = _check_pins(f.n, g.n, pins)
    n = f.n
    back = [[w for w in f.adj[u] if w < u] for u in range(n)]
    choice: list[int] = [0] * n
    used: set[int] = set()

    def rec(u: int):
        if u == n:
            yield tuple(choice)
            return
        cands = [pins[u]] if u in pins else range(g.n)
        for x in cands:
            if g.colors[x] != f.colors[u]:
                continue
            if injective and x in used:
                continue
            if any(not g.has_edge(x, choice[w]) for w in back[u]):
                continue
            choice[u] = x
            if injective:
                used.add(x)
            yield from rec(u + 1)
            if injective:
                used.discard(x)

    yield from rec(0)


def hom_count(f: Graph, g: Graph, pins: PinMap | None = None) -> int:
    """Number of homomorphisms ``f -> g`` extending ``pins`` (exhaustive)."""
    return sum(1 for _ in iter_homomorphisms(f, g, pins))


def emb_count(f: Graph, g: Graph, pins: PinMap | None = None) -> int:
    """Number of injective homomorphisms ``f -> g`` extending ``pins``."""
    return sum(1 for _ in iter_homomorphisms(f, g, pins, injective=True))


def is_epimorphism(f: Graph, g: Graph, h: Sequence[int]) -> bool:
    """Whether the homomorphism ``h`` is vertex-surjective and covers every edge of ``g``."""
    if len(set(h)) != g.n:
        return False
    covered = {(min(h[a], h[b]), max(h[a], h[b])) for a, b in f.edges}
    return covered == g.edges


def epi_count(f: Graph, g: Graph, pins: PinMap | None = None) -> int:
    """Number of epimorphisms ``f -> g``: surjective on vertices and on edges."""
    if f.n < g.n or len(f.edges) < len(g.edges):
        _check_pins(f.n, g.n, pins)
        return 0
    return sum(1 for h in iter_homomorphisms(f, g, pins) if is_epimorphism(f, g, h))


# --- elimination-tree engine ---------------------------------------------------

HOM, PAST_INJECTIVE, PAST_PRESERVING = "hom", "pi", "pp"


class _TreePlan:
    """Per-pattern data for the chain dynamic program."""

    __slots__ = ("colors", "children", "root", "edge_anc", "nonedge_anc", "depth")

    def __init__(self, d: Decomposed):
        t = d.tree
        self.colors = d.graph.colors
        self.children = t.children
        self.root = t.root
        self.depth = t.depth
        self.edge_anc = []
        self.nonedge_anc = []
        for u in range(d.n):
            anc = t.ancestors(u)
            # chain positions (index into the ancestor tuple) adjacent / not adjacent to u
            self.edge_anc.append(tuple(i for i, a in enumerate(anc) if d.graph.has_edge(a, u)))
            self.nonedge_anc.append(tuple(i for i, a in enumerate(anc) if not d.graph.has_edge(a, u)))


@lru_cache(maxsize=4096)
def _plan(d: Decomposed) -> _TreePlan:
    return _TreePlan(d)


def tree_count(d: Decomposed, g: Graph, pins: PinMap | None = None, mode: str = HOM) -> int:
    """Count maps of ``d`` into ``g`` by recursion over the elimination tree.

    ``mode`` selects plain homomorphisms, past-injective ones (distinct
    images along every ancestor chain), or past-preserving ones (also
    non-edges between comparable vertices map to non-edges).
    """
    if mode not in (HOM, PAST_INJECTIVE, PAST_PRESERVING):
        raise InputError(f"unknown counting mode {mode!r}")
    pins = _check_pins(d.n, g.n, pins)
    plan = _plan(d)
    adj = g.adj
    by_color: dict[str, tuple[int, ...]] = {}
    for x in g.vertices():
        by_color.setdefault(g.colors[x], ())
        by_color[g.colors[x]] += (x,)
    injective = mode != HOM
    preserving = mode == PAST_PRESERVING

    def count(u: int, chain: tuple[int, ...]) -> int:
        if u in pins:
            cands: Sequence[int] = (pins[u],) if g.colors[pins[u]] == plan.colors[u] else ()
        else:
            cands = by_color.get(plan.colors[u], ())
        e_anc = plan.edge_anc[u]
        if e_anc:
            allowed = adj[chain[e_anc[0]]]
            for i in e_anc[1:]:
                allowed = allowed & adj[chain[i]]
            cands = [x for x in cands if x in allowed]
        if preserving:
            for i in plan.nonedge_anc[u]:
                bad = adj[chain[i]]
                cands = [x for x in cands if x not in bad]
        if injective and chain:
            cands = [x for x in cands if x not in chain]
        kids = plan.children[u]
        if not kids:
            return len(cands)
        total = 0
        for x in cands:
            ext = chain + (x,)
            prod = 1
            for c in kids:
                prod *= count(c, ext)
                if not prod:
                    break
            total += prod
        return total

    return count(plan.root, ())


def hom_count_td(d: Decomposed, g: Graph, pins: PinMap | None = None) -> int:
    """Number of homomorphisms ``F^d -> g`` extending ``pins``, via the tree of ``d``."""
    return tree_count(d, g, pins, HOM)


def hom_count_fast(f: Graph, g: Graph) -> int:
    """``hom(f, g)`` via optimal elimination trees of each component of ``f``."""
    total = 1
    for comp, _ in connected_components(f):
        total *= tree_count(_decomposition_of(comp), g)
        if not total:
            return 0
    return total


@lru_cache(maxsize=8192)
def _decomposition_of(f: Graph) -> Decomposed:
    return decompose(f)


# --- hom vectors ------------------------------------------------------------

@dataclass(frozen=True)
class HomVector:
    """Homomorphism counts from every connected pattern of tree depth ``<= k``.

    ``entries`` maps canonical pattern keys to counts; ``patterns`` keeps the
    canonical pattern graphs in the same order.
    """

    k: int
    size_bound: int
    palette: tuple[str, ...]
    entries: dict[CanonicalKey, int] = field(compare=False)
    patterns: tuple[Graph, ...] = field(compare=False, repr=False)

    def __eq__(self, other):
        if not isinstance(other, HomVector):
            return NotImplemented
        return (self.k, self.size_bound, self.palette, self.entries) == (
            other.k, other.size_bound, other.palette, other.entries)

    def __hash__(self):
        return hash((self.k, self.size_bound, self.palette))

    def __getitem__(self, key: CanonicalKey) -> int:
        return self.entries[key]

    def __len__(self) -> int:
        return len(self.entries)

    def items(self):
        return self.entries.items()


@lru_cache(maxsize=None)
def pattern_family(k: int, size_bound: int, palette: tuple[str, ...]) -> tuple[tuple[CanonicalKey, Graph, Decomposed], ...]:
    """Connected patterns of tree depth ``<= k`` with an optimal decomposition each."""
    return tuple((key, f, decompose(f)) for key, f in enum_conn_tdk_keyed(k, size_bound, palette))


def hom_vector(g: Graph, k: int, size_bound: int, palette: Sequence[str] | None = None) -> HomVector:
    """Hom counts from each pattern in ``enum_conn_tdk(k, size_bound, palette)`` into ``g``."""
    palette = tuple(palette) if palette is not None else g.palette
    family = pattern_family(k, size_bound, palette)
    counts = hom_vector_tuple(g.with_palette(palette), k, size_bound, palette)
    entries = {key: c for (key, _, _), c in zip(family, counts)}
    return HomVector(k, size_bound, palette, entries, tuple(f for _, f, _ in family))


@lru_cache(maxsize=None)
def hom_vector_tuple(g: Graph, k: int, size_bound: int, palette: tuple[str, ...]) -> tuple[int, ...]:
    """Counts aligned with ``pattern_family(k, size_bound, palette)``; memoised per graph."""
    return tuple(tree_count(d, g) for _, _, d in pattern_family(k, size_bound, palette))
