"""Past-injective and past-preserving homomorphisms, shrinking epimorphisms.

Also holds the decomposition ``hom = s-epi * pi-hom`` of homomorphism
counts, the two triangular transforms between hom, pi-hom and pp-hom
vectors, and a checker for the agreement of the three indistinguishability
notions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .decomposition import Decomposed, sub_decomposed
from .enumeration import enum_conn_tdk_keyed, enum_decomposed, enum_supergraphs_respecting
from .exceptions import ConstructionError, InputError
from .graph import Graph, _norm_edge, is_color_subgraph
from .homcount import (
    PAST_INJECTIVE,
    PAST_PRESERVING,
    PinMap,
    hom_count,
    hom_vector_tuple,
    iter_homomorphisms,
    pattern_family,
    tree_count,
)

Image = tuple[frozenset[int], frozenset[tuple[int, int]]]


def pi_hom_count(d: Decomposed, g: Graph, pins: PinMap | None = None) -> int:
    """Homomorphisms of ``d`` into ``g`` that are injective on every ancestor chain."""
    return tree_count(d, g, pins, PAST_INJECTIVE)


def pp_hom_count(d: Decomposed, g: Graph, pins: PinMap | None = None) -> int:
    """Past-injective homomorphisms that also map comparable non-edges to non-edges."""
    return tree_count(d, g, pins, PAST_PRESERVING)


def is_past_injective(d: Decomposed, h: Sequence[int]) -> bool:
    return all(h[a] != h[v] for a, v in d.tree.comparable_pairs())


def is_past_preserving(d: Decomposed, g: Graph, h: Sequence[int]) -> bool:
    return is_past_injective(d, h) and all(
        d.graph.has_edge(a, v) == g.has_edge(h[a], h[v]) for a, v in d.tree.comparable_pairs()
    )


def pi_hom_count_exhaustive(d: Decomposed, g: Graph, pins: PinMap | None = None) -> int:
    """Reference count by filtering all homomorphisms."""
    return sum(1 for h in iter_homomorphisms(d.graph, g, pins) if is_past_injective(d, h))


def pp_hom_count_exhaustive(d: Decomposed, g: Graph, pins: PinMap | None = None) -> int:
    return sum(1 for h in iter_homomorphisms(d.graph, g, pins) if is_past_preserving(d, g, h))


# --- shrinking epimorphisms -----------------------------------------------

def iter_shrinking_maps(d: Decomposed) -> Iterator[tuple[int, ...]]:
    """Idempotent colour-preserving maps with ``f(u)`` an ancestor-or-self of ``u``.

    Maps that would send an edge to a loop are skipped, so each yielded map
    is a shrinking epimorphism onto its own image graph.
    """
    t = d.tree
    order = t.preorder()
    colors = d.graph.colors
    f = [0] * d.n
    choices = []
    for u in range(d.n):
        opts = [a for a in t.ancestors(u) if colors[a] == colors[u]] + [u]
        choices.append(opts)
    back = [[w for w in d.graph.adj[u] if t.leq(w, u) and w != u] for u in range(d.n)]

    def rec(i: int):
        if i == len(order):
            yield tuple(f)
            return
        u = order[i]
        for a in choices[u]:
            # idempotence: the chosen ancestor must itself be fixed
            if a != u and f[a] != a:
                continue
            if any(f[w] == a for w in back[u]):
                continue
            f[u] = a
            yield from rec(i + 1)

    yield from rec(0)


def image_of(d: Decomposed, f: Sequence[int]) -> Image:
    return (
        frozenset(f),
        frozenset(_norm_edge(f[a], f[b]) for a, b in d.graph.edges),
    )


@lru_cache(maxsize=4096)
def shrink_images(d: Decomposed) -> dict[Image, int]:
    """Number of shrinking epimorphisms onto each image, in ``d``'s vertex ids."""
    out: dict[Image, int] = {}
    for f in iter_shrinking_maps(d):
        key = image_of(d, f)
        out[key] = out.get(key, 0) + 1
    return out


def s_epi_count_labeled(d: Decomposed, vertices, edges) -> int:
    """Shrinking epimorphisms from ``d`` onto the graph ``(vertices, edges)`` in ``d``'s ids."""
    key = (frozenset(vertices), frozenset(_norm_edge(a, b) for a, b in edges))
    return shrink_images(d).get(key, 0)


def s_epi_count(d: Decomposed, g: Graph, embedding: Sequence[int] | None = None) -> int:
    """Shrinking epimorphisms from ``d`` onto ``g``.

    ``embedding[i]`` names the vertex of ``d`` that vertex ``i`` of ``g`` is;
    it defaults to the identity. The count is 0 unless ``g`` agrees with
    ``d`` on colours under the embedding.
    """
    if embedding is None:
        embedding = list(range(g.n))
    if not is_color_subgraph(g, d.graph, embedding):
        return 0
    return s_epi_count_labeled(d, embedding, [(embedding[a], embedding[b]) for a, b in g.edges])


# --- factorisation --------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    """``h = tail o shrink`` with ``shrink`` a shrinking epimorphism onto ``image``.

    ``image`` is a graph on a subset of ``d``'s vertex ids; ``tail`` maps each
    image vertex into the target.
    """

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]
    shrink: tuple[int, ...]
    tail: tuple[tuple[int, int], ...]

    @property
    def tail_map(self) -> dict[int, int]:
        return dict(self.tail)

    def compose(self) -> tuple[int, ...]:
        tail = self.tail_map
        return tuple(tail[self.shrink[u]] for u in range(len(self.shrink)))


def _check_hom(d: Decomposed, h: Sequence[int], target: Graph) -> None:
    if len(h) != d.n:
        raise InputError(f"map has {len(h)} entries for {d.n} vertices")
    for u, x in enumerate(h):
        if not 0 <= x < target.n:
            raise InputError(f"image {x} of vertex {u} is not a target vertex")
        if d.graph.colors[u] != target.colors[x]:
            raise InputError(f"vertex {u} changes colour under the map")
    for a, b in d.graph.edges:
        if not target.has_edge(h[a], h[b]):
            raise InputError(f"edge {a}-{b} is not preserved")


def factorize_hom(d: Decomposed, h_map: Sequence[int], target: Graph) -> Factorization:
    """The unique (image, shrinking epimorphism, past-injective tail) factorisation of ``h_map``.

    Each vertex is sent to the topmost vertex on its ancestor chain that
    ``h_map`` identifies with it.
    """
    h = tuple(h_map)
    _check_hom(d, h, target)
    shrink = []
    for u in range(d.n):
        for a in d.tree.ancestors(u) + [u]:
            if h[a] == h[u]:
                shrink.append(a)
                break
    vertices, edges = image_of(d, shrink)
    tail = tuple((v, h[v]) for v in sorted(vertices))
    return Factorization(vertices, edges, tuple(shrink), tail)


def is_valid_factorization(d: Decomposed, fac: Factorization, target: Graph) -> bool:
    """Check every defining property of a factorisation triple independently."""
    f = fac.shrink
    t = d.tree
    if len(f) != d.n or not fac.vertices <= set(range(d.n)):
        return False
    # shrinking, idempotent, onto the image vertices
    if any(not t.leq(f[u], u) for u in range(d.n)):
        return False
    if any(f[f[u]] != f[u] for u in range(d.n)):
        return False
    if set(f) != set(fac.vertices):
        return False
    # homomorphism onto the image graph covering every image edge
    covered = set()
    for a, b in d.graph.edges:
        if f[a] == f[b]:
            return False
        e = _norm_edge(f[a], f[b])
        if e not in fac.edges:
            return False
        covered.add(e)
    if covered != set(fac.edges):
        return False
    # colours: f(u) has the colour of u (image colours are inherited from d)
    if any(d.graph.colors[f[u]] != d.graph.colors[u] for u in range(d.n)):
        return False
    tail = fac.tail_map
    if set(tail) != set(fac.vertices):
        return False
    for v, x in tail.items():
        if not 0 <= x < target.n or target.colors[x] != d.graph.colors[v]:
            return False
    for a, b in fac.edges:
        if not target.has_edge(tail[a], tail[b]):
            return False
    # past-injective along the induced tree: comparability is inherited
    verts = sorted(fac.vertices)
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            if t.comparable(a, b) and tail[a] == tail[b]:
                return False
    return True


def iter_factorizations(d: Decomposed, target: Graph) -> Iterator[Factorization]:
    """Every valid triple, built from shrinking maps and past-injective tails."""
    for f in iter_shrinking_maps(d):
        vertices, edges = image_of(d, f)
        sub, order = sub_decomposed(d, vertices, edges)
        for g in iter_homomorphisms(sub.graph, target):
            if is_past_injective(sub, g):
                yield Factorization(vertices, edges, f, tuple(zip(order, g)))


# --- identity checks ------------------------------------------------------

@dataclass
class IdentityReport:
    lhs: int
    rhs: int
    terms: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {"lhs": str(self.lhs), "rhs": str(self.rhs), "ok": self.ok, "terms": self.terms}


def cor1_identity_check(d: Decomposed, h: Graph) -> IdentityReport:
    """``hom(d, h)`` against the sum over shrink images of ``s-epi * pi-hom``."""
    lhs = hom_count(d.graph, h)
    rhs = 0
    terms = []
    for (vertices, edges), s in sorted(shrink_images(d).items(), key=lambda kv: (len(kv[0][0]), sorted(kv[0][0]), sorted(kv[0][1]))):
        sub, _ = sub_decomposed(d, vertices, edges)
        pi = pi_hom_count(sub, h)
        rhs += s * pi
        terms.append({
            "vertices": sorted(vertices),
            "edges": [list(e) for e in sorted(edges)],
            "s_epi": str(s),
            "pi_hom": str(pi),
        })
    return IdentityReport(lhs, rhs, terms)


def corpp1_identity_check(d: Decomposed, h: Graph) -> IdentityReport:
    """``pi-hom(d, h)`` against the sum of ``pp-hom`` over tree-respecting supergraphs."""
    lhs = pi_hom_count(d, h)
    rhs = 0
    terms = []
    for g in enum_supergraphs_respecting(d):
        pp = pp_hom_count(Decomposed(g, d.tree), h)
        rhs += pp
        terms.append({"edges": [list(e) for e in g.sorted_edges()], "pp_hom": str(pp)})
    return IdentityReport(lhs, rhs, terms)


# --- triangular transforms -------------------------------------------------

def _check_unit_triangular(a: list[list[int]], lower: bool) -> bool:
    m = len(a)
    for i in range(m):
        if a[i][i] != 1:
            return False
        for j in range(m):
            if (lower and j > i or not lower and j < i) and a[i][j] != 0:
                return False
    return True


def forward_substitute(a: list[list[int]], c: Sequence[int]) -> list[int]:
    """Solve ``a b = c`` for unit lower-triangular integer ``a``."""
    if not _check_unit_triangular(a, lower=True):
        raise ConstructionError("matrix is not unit lower-triangular")
    b: list[int] = []
    for i in range(len(c)):
        b.append(c[i] - sum(a[i][j] * b[j] for j in range(i)))
    return b


def back_substitute(a: list[list[int]], c: Sequence[int]) -> list[int]:
    """Solve ``a b = c`` for unit upper-triangular integer ``a``."""
    if not _check_unit_triangular(a, lower=False):
        raise ConstructionError("matrix is not unit upper-triangular")
    m = len(c)
    b = [0] * m
    for i in reversed(range(m)):
        b[i] = c[i] - sum(a[i][j] * b[j] for j in range(i + 1, m))
    return b


@dataclass
class TriangularSystem:
    """A unit-triangular system ``matrix @ solved = rhs`` over a pattern family.

    ``direct`` holds independently counted values for the unknowns.
    """

    direction: str
    family: list[Decomposed]
    labels: list[dict]
    matrix: list[list[int]]
    rhs: list[int]
    solved: list[int]
    direct: list[int]

    @property
    def ok(self) -> bool:
        return self.solved == self.direct

    @property
    def unit_triangular(self) -> bool:
        return _check_unit_triangular(self.matrix, lower=self.direction == "lower")

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "family": self.labels,
            "matrix": self.matrix,
            "rhs": [str(x) for x in self.rhs],
            "solved": [str(x) for x in self.solved],
            "direct": [str(x) for x in self.direct],
            "ok": self.ok,
        }


def _image_sort_key(img: Image):
    vertices, edges = img
    return (len(vertices), sorted(vertices), len(edges), sorted(edges))


def pihom_from_hom(base: Decomposed, h: Graph) -> TriangularSystem:
    """Recover past-injective counts from plain hom counts over the shrink-image family.

    The family is every shrink image of ``base`` (closed under taking
    images again), ordered by order so that ``base`` comes last. Rows hold
    ``s-epi`` counts; the system is solved by forward substitution.
    """
    images = sorted(shrink_images(base), key=_image_sort_key)
    index = {img: i for i, img in enumerate(images)}
    family = []
    matrix = []
    for img in images:
        sub, order = sub_decomposed(base, *img)
        family.append(sub)
        row = [0] * len(images)
        for (sv, se), cnt in shrink_images(sub).items():
            key = (frozenset(order[v] for v in sv), frozenset(_norm_edge(order[a], order[b]) for a, b in se))
            if key not in index:
                raise ConstructionError("shrink-image family is not closed")
            row[index[key]] = cnt
        matrix.append(row)
    rhs = [hom_count(sub.graph, h) for sub in family]
    solved = forward_substitute(matrix, rhs)
    direct = [pi_hom_count_exhaustive(sub, h) for sub in family]
    labels = [{"vertices": sorted(v), "edges": [list(e) for e in sorted(e)]} for v, e in images]
    return TriangularSystem("lower", family, labels, matrix, rhs, solved, direct)


def pphom_from_pihom(base: Decomposed, h: Graph) -> TriangularSystem:
    """Recover past-preserving counts from past-injective ones over tree-respecting supergraphs.

    Entry ``(i, j)`` is 1 when the ``i``-th supergraph is contained in the
    ``j``-th; ordering by edge count makes this unit upper-triangular. The
    first solved entry is ``pp-hom(base, h)``.
    """
    graphs = list(enum_supergraphs_respecting(base))
    family = [Decomposed(g, base.tree) for g in graphs]
    matrix = [[int(gi.edges <= gj.edges) for gj in graphs] for gi in graphs]
    rhs = [pi_hom_count(d, h) for d in family]
    solved = back_substitute(matrix, rhs)
    direct = [pp_hom_count_exhaustive(d, h) for d in family]
    labels = [{"edges": [list(e) for e in g.sorted_edges()]} for g in graphs]
    return TriangularSystem("upper", family, labels, matrix, rhs, solved, direct)


# --- the three notions of indistinguishability ----------------------------

@dataclass
class TheoremPPReport:
    k: int
    size_bound: int
    hom_equal: bool
    pi_equal: bool
    pp_equal: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.hom_equal == self.pi_equal == self.pp_equal

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "size_bound": self.size_bound,
            "hom_equal": self.hom_equal,
            "pi_hom_equal": self.pi_equal,
            "pp_hom_equal": self.pp_equal,
            "agree": self.agree,
            "witnesses": self.witnesses,
        }


@lru_cache(maxsize=None)
def _restricted_vector(g: Graph, k: int, size_bound: int, palette: tuple[str, ...], mode: str) -> tuple[int, ...]:
    return tuple(tree_count(d, g, None, mode) for d in enum_decomposed(k, size_bound, palette))


def _first_difference(a, b):
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return None


def theorem_pp_check(g: Graph, g2: Graph, k: int, size_bound: int, palette: Sequence[str] | None = None) -> TheoremPPReport:
    """Compare hom, pi-hom and pp-hom indistinguishability up to ``size_bound`` vertices.

    Condition (i) ranges over connected patterns of tree depth ``<= k``;
    (ii) and (iii) over all decomposed graphs of height ``<= k``.
    """
    if palette is None:
        palette = tuple(dict.fromkeys(g.palette + g2.palette))
    palette = tuple(palette)
    gg, gg2 = g.with_palette(palette), g2.with_palette(palette)
    witnesses = {}
    hv, hv2 = hom_vector_tuple(gg, k, size_bound, palette), hom_vector_tuple(gg2, k, size_bound, palette)
    i = _first_difference(hv, hv2)
    if i is not None:
        f = pattern_family(k, size_bound, palette)[i][1]
        witnesses["hom"] = {"pattern": repr(f), "counts": [str(hv[i]), str(hv2[i])]}
    verdicts = [i is None]
    decs = list(enum_decomposed(k, size_bound, palette))
    for mode, name in ((PAST_INJECTIVE, "pi_hom"), (PAST_PRESERVING, "pp_hom")):
        a = _restricted_vector(gg, k, size_bound, palette, mode)
        b = _restricted_vector(gg2, k, size_bound, palette, mode)
        j = _first_difference(a, b)
        if j is not None:
            witnesses[name] = {"pattern": repr(decs[j]), "counts": [str(a[j]), str(b[j])]}
        verdicts.append(j is None)
    return TheoremPPReport(k, size_bound, *verdicts, witnesses=witnesses)
