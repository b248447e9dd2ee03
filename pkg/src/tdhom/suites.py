"""Verification suites behind ``tdhom verify``.

Each suite returns a JSON-ready report with a ``schema`` field, its
configuration, summary counts and a list of violations; an empty list
means every checked identity held.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations, product
from typing import Callable, Sequence

from .counterexample import build_counterexample, star, star_hom
from .decomposition import decompose
from .enumeration import enum_conn_tdk, enum_decomposed, enum_graphs
from .exceptions import InputError
from .games import ck_equivalent, ck_equivalent_brute
from .graph import DEFAULT_PALETTE, Graph, quotient_delete, radius
from .homcount import hom_count, hom_count_td, iter_homomorphisms
from .io import decomposed_to_dict, graph_to_dict
from .restricted import (
    cor1_identity_check,
    factorize_hom,
    is_valid_factorization,
    iter_factorizations,
    pihom_from_hom,
    pphom_from_pihom,
    theorem_pp_check,
)
from .witness import (
    MismatchReport,
    exponent_products,
    exponent_vector,
    matching_bijection,
    profiles,
    smallest_separating_sum,
    verify_equivalence_theorem,
)

SCHEMA_PREFIX = "tdhom.verify"
TWO_COLORS = ("white", "black")


def run_items(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    """Map ``fn`` over ``items``, optionally in worker processes; order is preserved."""
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
    return [fn(x) for x in items]


def _report(suite: str, config: dict, start: float, violations: list, **summary) -> dict:
    return {
        "schema": f"{SCHEMA_PREFIX}.{suite}/1",
        "suite": suite,
        "config": config,
        **summary,
        "violations": violations,
        "ok": not violations,
        "seconds": round(time.perf_counter() - start, 3),
    }


def _palette(colors: int) -> tuple[str, ...]:
    if colors == 1:
        return DEFAULT_PALETTE
    if colors == 2:
        return TWO_COLORS
    raise InputError("colors must be 1 or 2")


# --- hom as a sum over shrink images, and the factorisation bijection -----

def _lovasz_item(args) -> list[dict]:
    d, targets, fac_limit = args
    out = []
    for h in targets:
        rep = cor1_identity_check(d, h)
        if not rep.ok:
            out.append({"check": "cor1", "pattern": decomposed_to_dict(d), "target": graph_to_dict(h),
                        "lhs": str(rep.lhs), "rhs": str(rep.rhs)})
        if h.n > fac_limit:
            continue
        homs = set(iter_homomorphisms(d.graph, h))
        facs = list(iter_factorizations(d, h))
        composed = [fac.compose() for fac in facs]
        msg = None
        if any(not is_valid_factorization(d, fac, h) for fac in facs):
            msg = "invalid factorisation triple"
        elif len(composed) != len(set(composed)) or set(composed) != homs:
            msg = f"{len(homs)} homomorphisms but {len(facs)} triples"
        elif any(factorize_hom(d, hm, h).compose() != hm for hm in homs):
            msg = "factorize_hom does not recompose"
        if msg:
            out.append({"check": "factorization", "pattern": decomposed_to_dict(d),
                        "target": graph_to_dict(h), "message": msg})
    return out


def suite_lovasz_decomp(n: int = 4, k: int = 3, colors: int = 2, target_n: int | None = None,
                        factor_n: int = 3, jobs: int = 1) -> dict:
    start = time.perf_counter()
    palette = _palette(colors)
    target_n = n if target_n is None else target_n
    bases = list(enum_decomposed(k, n, palette))
    targets = [h for h in enum_graphs(target_n, palette) if h.n > 0]
    rows = run_items(_lovasz_item, [(d, targets, factor_n) for d in bases], jobs)
    violations = [v for r in rows for v in r]
    config = {"n": n, "k": k, "colors": colors, "target_n": target_n, "factor_n": factor_n}
    return _report("lovasz-decomp", config, start, violations, patterns=len(bases), targets=len(targets),
                   checks=len(bases) * len(targets))


# --- triangular transforms -------------------------------------------------

def _triangular_item(args) -> list[dict]:
    d, targets = args
    out = []
    for h in targets:
        for name, system in (("lemma3", pihom_from_hom(d, h)), ("pp4", pphom_from_pihom(d, h))):
            if not system.unit_triangular or not system.ok:
                out.append({"check": name, "pattern": decomposed_to_dict(d), "target": graph_to_dict(h),
                            "unit_triangular": system.unit_triangular, "system": system.to_dict()})
    return out


def suite_triangular(n: int = 4, k: int | None = None, colors: int = 1, target_n: int | None = None,
                     jobs: int = 1) -> dict:
    start = time.perf_counter()
    palette = _palette(colors)
    k = n if k is None else k
    target_n = n if target_n is None else target_n
    bases = list(enum_decomposed(k, n, palette))
    targets = [h for h in enum_graphs(target_n, palette) if h.n > 0]
    rows = run_items(_triangular_item, [(d, targets) for d in bases], jobs)
    violations = [v for r in rows for v in r]
    config = {"n": n, "k": k, "colors": colors, "target_n": target_n}
    return _report("triangular", config, start, violations, patterns=len(bases), targets=len(targets),
                   systems=2 * len(bases) * len(targets))


# --- exponent vectors ------------------------------------------------------

def random_family(rng: random.Random, max_rows: int = 5, max_len: int = 4, max_entry: int = 5):
    """Distinct positive rows; the row count is capped by the number of possible rows."""
    m = rng.randint(1, max_len)
    ell = rng.randint(1, min(max_rows, max_entry ** m))
    rows: set[tuple[int, ...]] = set()
    while len(rows) < ell:
        rows.add(tuple(rng.randint(1, max_entry) for _ in range(m)))
    return sorted(rows)


def suite_lemma4(trials: int = 200, seed: int = 0, max_rows: int = 5, max_len: int = 4,
                 max_entry: int = 5) -> dict:
    start = time.perf_counter()
    rng = random.Random(seed)
    violations = []
    for t in range(trials):
        rows = random_family(rng, max_rows, max_len, max_entry)
        ev = exponent_vector(rows)
        ell = len(rows)
        # recompute the products from scratch rather than trusting the object
        prods = [1] * ell
        for i, row in enumerate(rows):
            for a, e in zip(row, ev.d):
                for _ in range(e):
                    prods[i] *= a
        if len(set(prods)) != ell or tuple(prods) != exponent_products(rows, ev.d):
            violations.append({"trial": t, "rows": rows, "d": list(ev.d), "message": "products collide"})
        if not all(1 <= x <= ell * ell for x in ev.d):
            violations.append({"trial": t, "rows": rows, "d": list(ev.d), "message": "exponent out of range"})
    config = {"trials": trials, "seed": seed, "max_rows": max_rows, "max_len": max_len, "max_entry": max_entry}
    return _report("lemma4", config, start, violations, families=trials)


# --- pinned vertex versus quotient ---------------------------------------

def sample_wr_instances(count: int, n: int, k_max: int, seed: int, palette=DEFAULT_PALETTE):
    rng = random.Random(seed)
    by_order: dict[int, list[Graph]] = {}
    for g in enum_graphs(n, palette):
        if g.n >= 2:
            by_order.setdefault(g.n, []).append(g)
    orders = sorted(by_order)
    out = []
    while len(out) < count:
        order = rng.choice(orders)
        g, g2 = rng.choice(by_order[order]), rng.choice(by_order[order])
        v, v2 = rng.randrange(order), rng.randrange(order)
        if g.colors[v] != g2.colors[v2]:
            continue
        out.append((g, g2, v, v2, rng.randint(1, k_max)))
    return out


def suite_wr(samples: int = 100, n: int = 5, k: int = 3, seed: int = 0, colors: int = 1) -> dict:
    start = time.perf_counter()
    violations = []
    agree_true = 0
    for g, g2, v, v2, kk in sample_wr_instances(samples, n, k, seed, _palette(colors)):
        a = ck_equivalent(g, g2, kk, init=((v,), (v2,)))
        b = ck_equivalent(quotient_delete(g, v), quotient_delete(g2, v2), kk)
        agree_true += a and b
        if a != b:
            violations.append({"g": graph_to_dict(g), "g2": graph_to_dict(g2), "v": v, "v2": v2, "k": kk,
                               "pinned": a, "quotient": b})
    config = {"samples": samples, "n": n, "k": k, "seed": seed, "colors": colors}
    return _report("wr", config, start, violations, samples=samples, equivalent=agree_true)


# --- locality ---------------------------------------------------------------

def suite_radius(n: int = 7, k: int = 3, colors: int = 1) -> dict:
    start = time.perf_counter()
    violations = []
    checked = 0
    for kk in range(1, k + 1):
        bound = 2 ** (kk - 1) - 1
        for f in enum_conn_tdk(kk, n, _palette(colors)):
            checked += 1
            r = radius(f)
            if r > bound:
                violations.append({"k": kk, "graph": graph_to_dict(f), "radius": r, "bound": bound})
    return _report("radius", {"n": n, "k": k, "colors": colors}, start, violations, graphs=checked)


# --- counterexample ---------------------------------------------------------

def suite_counterexample(m: int = 3, max_i: int = 3) -> dict:
    start = time.perf_counter()
    violations = []
    bundles = []
    for i, j, p, q in product(range(4), repeat=4):
        got = hom_count(star((i, j)), star((p, q)))
        if got != star_hom(i, j, p, q):
            violations.append({"check": "star_hom", "args": [i, j, p, q], "engine": str(got)})
    for mm in range(1, m + 1):
        b = build_counterexample(mm, max_i)
        bundles.append(b.to_dict())
        if not b.checks["ok"]:
            violations.append({"check": "bundle", "m": mm, "checks": b.checks})
    return _report("counterexample", {"m": m, "max_i": max_i}, start, violations, bundles=bundles)


# --- main theorem ------------------------------------------------------------

def suite_main(n: int = 5, k: int = 3, budget: int = 7, colors: int = 1, jobs: int = 1) -> dict:
    start = time.perf_counter()
    per_k = [verify_equivalence_theorem(n, kk, _palette(colors), budget, jobs) for kk in range(1, k + 1)]
    violations = [dict(v, k=r["config"]["k"]) for r in per_k for v in r["violations"]]
    config = {"n": n, "k": k, "budget": budget, "colors": colors}
    return _report("main", config, start, violations,
                   pairs=sum(r["pairs"] for r in per_k),
                   equivalent=sum(r["equivalent"] for r in per_k),
                   witnesses_found=sum(r["witnesses_found"] for r in per_k),
                   exhaustions=sum(r["exhaustions"] for r in per_k),
                   per_k=[{key: r[key] for key in ("config", "pairs", "equivalent", "witnesses_found", "exhaustions")}
                          for r in per_k])


# --- matching bijection and the rooted-sum bound ----------------------------

def suite_lemma5(n: int = 4, k: int = 2, budget: int = 3, colors: int = 1) -> dict:
    start = time.perf_counter()
    palette = _palette(colors)
    family = list(enum_decomposed(k, budget, palette))
    graphs = [g for g in enum_graphs(n, palette) if g.n > 0]
    violations = []
    matched = mismatched = 0
    for g, g2 in combinations(graphs, 2):
        if g.n != g2.n:
            continue
        res = matching_bijection(g, g2, family)
        eq = ck_equivalent(g, g2, k)
        if isinstance(res, MismatchReport):
            mismatched += 1
            if eq:
                violations.append({"g": graph_to_dict(g), "g2": graph_to_dict(g2),
                                   "message": "pebble-equivalent pair without a matching bijection"})
            if res.separator is None:
                violations.append({"g": graph_to_dict(g), "g2": graph_to_dict(g2),
                                   "message": "no separating rooted sum"})
            ell = len(set(profiles(g, family)) | set(profiles(g2, family)))
            bound = len(family) * ell * ell
            if smallest_separating_sum(g, g2, family, bound) is None:
                violations.append({"g": graph_to_dict(g), "g2": graph_to_dict(g2),
                                   "message": f"no rooted sum of at most {bound} members separates"})
        else:
            matched += 1
    config = {"n": n, "k": k, "budget": budget, "colors": colors}
    return _report("lemma5", config, start, violations, family=len(family), matched=matched, mismatched=mismatched)


# --- three notions and oracles ----------------------------------------------

def suite_theorem_pp(n: int = 4, k: int = 3, budget: int = 5, colors: int = 1) -> dict:
    start = time.perf_counter()
    palette = _palette(colors)
    graphs = [g for g in enum_graphs(n, palette) if g.n > 0]
    violations = []
    pairs = 0
    for kk in range(1, k + 1):
        for g, g2 in combinations(graphs, 2):
            pairs += 1
            rep = theorem_pp_check(g, g2, kk, budget, palette)
            if not rep.agree:
                violations.append({"g": graph_to_dict(g), "g2": graph_to_dict(g2), "report": rep.to_dict()})
    config = {"n": n, "k": k, "budget": budget, "colors": colors}
    return _report("theorem-pp", config, start, violations, pairs=pairs)


def suite_oracle(pattern_n: int = 5, target_n: int = 4, game_n: int = 4, k: int = 3, colors: int = 1) -> dict:
    start = time.perf_counter()
    palette = _palette(colors)
    violations = []
    patterns = [f for f in enum_graphs(pattern_n, palette) if f.n > 0]
    targets = [h for h in enum_graphs(target_n, palette) if h.n > 0]
    for f in patterns:
        d = decompose(f)
        for h in targets:
            a, b = hom_count_td(d, h), hom_count(f, h)
            if a != b:
                violations.append({"check": "hom", "pattern": graph_to_dict(f), "target": graph_to_dict(h),
                                   "tree": str(a), "brute": str(b)})
    games = [g for g in enum_graphs(game_n, palette) if g.n > 0]
    game_pairs = 0
    for g, g2 in combinations(games, 2):
        if g.n != g2.n:
            continue
        for kk in range(1, k + 1):
            game_pairs += 1
            if ck_equivalent(g, g2, kk) != ck_equivalent_brute(g, g2, kk):
                violations.append({"check": "game", "g": graph_to_dict(g), "g2": graph_to_dict(g2), "k": kk})
    config = {"pattern_n": pattern_n, "target_n": target_n, "game_n": game_n, "k": k, "colors": colors}
    return _report("oracle", config, start, violations, hom_pairs=len(patterns) * len(targets), game_pairs=game_pairs)


SUITES = {
    "main": suite_main,
    "lovasz-decomp": suite_lovasz_decomp,
    "triangular": suite_triangular,
    "lemma4": suite_lemma4,
    "lemma5": suite_lemma5,
    "wr": suite_wr,
    "radius": suite_radius,
    "counterexample": suite_counterexample,
    "theorem-pp": suite_theorem_pp,
    "oracle": suite_oracle,
}
