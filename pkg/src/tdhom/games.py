"""Bijective pebble games and Ehrenfeucht-Fraisse games on pairs of graphs.

Both games are decided by refining partitions of vertex tuples from the
longest tuples down to the initial position. For the bijective game two
tuples stay together iff their one-vertex extensions hit every class the
same number of times; for the plain game iff they hit the same set of
classes.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Sequence

from .exceptions import InputError
from .graph import Graph, is_local_isomorphism

LEFT, RIGHT = 0, 1

Position = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class TuplePartition:
    """Classes of all ``length``-tuples of both graphs after ``round`` refinement steps."""

    length: int
    round: int
    classes: dict[Position, int]

    @property
    def num_classes(self) -> int:
        return len(set(self.classes.values()))

    def same_class(self, t: Sequence[int], t2: Sequence[int]) -> bool:
        return self.classes[(LEFT, tuple(t))] == self.classes[(RIGHT, tuple(t2))]


def atomic_type(g: Graph, t: Sequence[int]) -> tuple:
    """Equality pattern, adjacency pattern and colours of a tuple."""
    eq = tuple(t.index(x) for x in t)
    adj = tuple(g.has_edge(t[i], t[j]) for i in range(len(t)) for j in range(i + 1, len(t)))
    return (eq, adj, tuple(g.colors[x] for x in t))


def _dense(labels: dict[Position, object]) -> dict[Position, int]:
    ids = {lab: i for i, lab in enumerate(sorted(set(labels.values())))}
    return {pos: ids[lab] for pos, lab in labels.items()}


def _partitions(g: Graph, g2: Graph, k: int, signature: Callable) -> list[TuplePartition]:
    graphs = (g, g2)
    labels = {}
    for side, h in enumerate(graphs):
        for t in product(range(h.n), repeat=k):
            labels[(side, t)] = atomic_type(h, t)
    current = _dense(labels)
    out = [TuplePartition(k, 0, current)]
    for r in range(1, k + 1):
        length = k - r
        labels = {}
        for side, h in enumerate(graphs):
            for t in product(range(h.n), repeat=length):
                labels[(side, t)] = signature(current[(side, t + (x,))] for x in range(h.n))
        current = _dense(labels)
        out.append(TuplePartition(length, r, current))
    return out


def _count_signature(ids) -> tuple:
    return tuple(sorted(Counter(ids).items()))


def _set_signature(ids) -> tuple:
    return tuple(sorted(set(ids)))


def ck_partitions(g: Graph, g2: Graph, k: int) -> list[TuplePartition]:
    """Partitions for the ``k``-round bijective game; entry ``i`` covers ``(k-i)``-tuples.

    Two ``(k-i)``-tuples share a class in entry ``i`` iff Duplicator wins the
    remaining ``i`` rounds from that position.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    return _partitions(g, g2, k, _count_signature)


def fo_partitions(g: Graph, g2: Graph, k: int) -> list[TuplePartition]:
    """Same as :func:`ck_partitions` for the ordinary ``k``-round game."""
    if k < 0:
        raise InputError("k must be nonnegative")
    return _partitions(g, g2, k, _set_signature)


def _check_init(g: Graph, g2: Graph, init) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if init is None:
        return (), ()
    try:
        vs, vs2 = (tuple(init[0]), tuple(init[1]))
    except (TypeError, IndexError) as exc:
        raise InputError("initial position must be a pair of tuples") from exc
    if len(vs) != len(vs2):
        raise InputError(f"initial tuples have lengths {len(vs)} and {len(vs2)}")
    if any(not 0 <= v < g.n for v in vs) or any(not 0 <= v < g2.n for v in vs2):
        raise InputError("initial position references a missing vertex")
    return vs, vs2


def ck_equivalent(g: Graph, g2: Graph, k: int, init=None) -> bool:
    """Whether Duplicator wins the ``k``-round bijective pebble game from ``init``."""
    if k < 1:
        raise InputError("k must be at least 1")
    vs, vs2 = _check_init(g, g2, init)
    if g.n != g2.n:
        return False
    parts = ck_partitions(g, g2, k + len(vs))
    return parts[k].same_class(vs, vs2)


def fo_equivalent(g: Graph, g2: Graph, k: int, init=None) -> bool:
    """Whether Duplicator wins the ``k``-round Ehrenfeucht-Fraisse game."""
    if k < 0:
        raise InputError("k must be nonnegative")
    vs, vs2 = _check_init(g, g2, init)
    parts = fo_partitions(g, g2, k + len(vs))
    return parts[k].same_class(vs, vs2)


# --- direct game-tree search (reference) -----------------------------------

def ck_equivalent_brute(g: Graph, g2: Graph, k: int, init=None) -> bool:
    """Search the bijective game tree, trying every bijection in every round."""
    vs, vs2 = _check_init(g, g2, init)
    if g.n != g2.n:
        return False
    n = g.n
    bijections = list(permutations(range(n)))

    @lru_cache(maxsize=None)
    def wins(a: tuple[int, ...], b: tuple[int, ...], rounds: int) -> bool:
        if not is_local_isomorphism(g, g2, a, b):
            return False
        if rounds == 0:
            return True
        return any(all(wins(a + (v,), b + (f[v],), rounds - 1) for v in range(n)) for f in bijections)

    return wins(vs, vs2, k)


def fo_equivalent_brute(g: Graph, g2: Graph, k: int, init=None) -> bool:
    """Search the ordinary game tree: Spoiler picks a side and a vertex each round."""
    vs, vs2 = _check_init(g, g2, init)

    @lru_cache(maxsize=None)
    def wins(a: tuple[int, ...], b: tuple[int, ...], rounds: int) -> bool:
        if not is_local_isomorphism(g, g2, a, b):
            return False
        if rounds == 0:
            return True
        for v in g.vertices():
            if not any(wins(a + (v,), b + (w,), rounds - 1) for w in g2.vertices()):
                return False
        for w in g2.vertices():
            if not any(wins(a + (v,), b + (w,), rounds - 1) for v in g.vertices()):
                return False
        return True

    return wins(vs, vs2, k)
