"""Star graphs and a pair that no finite family of bounded stars tells apart.

``S_{p,q}`` is a grey centre with ``p`` white and ``q`` black tips, and
``hom(S_{i,j}, S_{p,q}) = p**i * q**j``. Solving a Vandermonde system over
the tip counts gives disjoint unions of ``S_{1,q}`` with equal counts from
every ``S_{i,j}`` with ``j <= m``, while only ``G`` has a grey vertex with a
white but no black neighbour, which two variables can express.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .exceptions import ConstructionError, InputError
from .games import ck_equivalent, fo_equivalent
from .graph import Graph, disjoint_union
from .homcount import hom_count_fast

STAR_PALETTE = ("white", "grey", "black")
WHITE, GREY, BLACK = STAR_PALETTE


@dataclass(frozen=True)
class StarSpec:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise InputError(f"star tip counts must be nonnegative, got ({self.p}, {self.q})")


def star(spec: StarSpec | tuple[int, int]) -> Graph:
    """Centre 0, white tips ``1..p``, black tips ``p+1..p+q``."""
    if not isinstance(spec, StarSpec):
        spec = StarSpec(*spec)
    colors = [GREY] + [WHITE] * spec.p + [BLACK] * spec.q
    edges = [(0, v) for v in range(1, spec.p + spec.q + 1)]
    return Graph.from_edges(len(colors), edges, colors, STAR_PALETTE)


def single(color: str) -> Graph:
    return Graph.from_edges(1, [], [color], STAR_PALETTE)


def star_hom(i: int, j: int, p: int, q: int) -> int:
    """Closed form ``p**i * q**j`` (with ``0**0 == 1``)."""
    if min(i, j, p, q) < 0:
        raise InputError("star parameters must be nonnegative")
    return p ** i * q ** j


def check_fo2_sentence(g: Graph) -> bool:
    """Some grey vertex has a white neighbour and no black neighbour."""
    for x in g.vertices():
        if g.colors[x] != GREY:
            continue
        nbr = {g.colors[y] for y in g.adj[x]}
        if WHITE in nbr and BLACK not in nbr:
            return True
    return False


def solve_exact(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over the rationals; ``a`` must be invertible."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ConstructionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


@dataclass
class CounterexampleBundle:
    """``G = a0 * S_{1,0} + sum_q a[q] * S_{1,q}`` and ``G' = sum_q a_prime[q] * S_{1,q}``.

    The family is ``{S_{i,j} : i <= max_i, 0 <= j <= m}`` plus a single white
    and a single black vertex.
    """

    m: int
    max_i: int
    a: dict[int, int]
    a_prime: dict[int, int]
    a0: int
    g: Graph
    g2: Graph
    checks: dict = field(default_factory=dict)

    def family(self) -> list[tuple[str, Graph]]:
        out = [(f"S_{i},{j}", star((i, j))) for i in range(self.max_i + 1) for j in range(self.m + 1)]
        out.append(("W", single(WHITE)))
        out.append(("B", single(BLACK)))
        return out

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "max_i": self.max_i,
            "a0": self.a0,
            "a": {str(q): c for q, c in sorted(self.a.items())},
            "a_prime": {str(q): c for q, c in sorted(self.a_prime.items())},
            "orders": [self.g.n, self.g2.n],
            "checks": self.checks,
        }


def _multiplicities(m: int) -> dict[int, int]:
    """Integer ``y`` over ``q = 1..m+1`` with ``sum y_q > 0`` and ``sum q**j y_q = 0`` for ``j = 1..m``."""
    qs = range(1, m + 2)
    a = [[Fraction(q) ** j for q in qs] for j in range(m + 1)]
    b = [Fraction(1)] + [Fraction(0)] * m
    y = solve_exact(a, b)
    scale = lcm(*(v.denominator for v in y))
    return {q: int(v * scale) for q, v in zip(qs, y)}


def build_counterexample(m: int, max_i: int = 3) -> CounterexampleBundle:
    """Build and self-check the pair for exponents up to ``m``."""
    if m < 1:
        raise InputError("m must be at least 1")
    if max_i < 0:
        raise InputError("max_i must be nonnegative")
    y = _multiplicities(m)
    a = {q: -v for q, v in y.items() if v < 0}
    a_prime = {q: v for q, v in y.items() if v > 0}
    a0 = sum(a_prime.values()) - sum(a.values())
    if a0 <= 0:
        raise ConstructionError(f"expected more components in G', got a0 = {a0}")
    parts = [star((1, 0))] * a0
    for q, c in sorted(a.items()):
        parts += [star((1, q))] * c
    g = disjoint_union(parts, STAR_PALETTE)
    g2 = disjoint_union([star((1, q)) for q, c in sorted(a_prime.items()) for _ in range(c)], STAR_PALETTE)
    bundle = CounterexampleBundle(m, max_i, a, a_prime, a0, g, g2)
    bundle.checks = verify_bundle(bundle)
    if not bundle.checks["ok"]:
        raise ConstructionError(f"counterexample for m={m} failed verification: {bundle.checks}")
    return bundle


def verify_bundle(bundle: CounterexampleBundle) -> dict:
    mismatches = []
    for name, f in bundle.family():
        x, y = hom_count_fast(f, bundle.g), hom_count_fast(f, bundle.g2)
        if x != y:
            mismatches.append({"pattern": name, "counts": [str(x), str(y)]})
    sentence = (check_fo2_sentence(bundle.g), check_fo2_sentence(bundle.g2))
    fo2 = fo_equivalent(bundle.g, bundle.g2, 2)
    checks = {
        "family_size": len(bundle.family()),
        "hom_mismatches": mismatches,
        "sentence": list(sentence),
        "fo2_equivalent": fo2,
    }
    ok = not mismatches and sentence == (True, False) and not fo2
    if bundle.g.n == bundle.g2.n:
        checks["c2_equivalent"] = ck_equivalent(bundle.g, bundle.g2, 2)
        ok = ok and not checks["c2_equivalent"]
    else:
        checks["order_discrepancy"] = [bundle.g.n, bundle.g2.n]
    checks["ok"] = ok
    return checks
