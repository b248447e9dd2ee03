"""JSON and graph6 serialisation of graphs and decomposed graphs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable, Iterator

import networkx as nx

from .decomposition import Decomposed, RootedForest
from .exceptions import InputError
from .graph import DEFAULT_PALETTE, Graph


def graph_to_dict(g: Graph) -> dict:
    return {
        "palette": list(g.palette),
        "vertices": [{"id": v, "color": c} for v, c in enumerate(g.colors)],
        "edges": [list(e) for e in g.sorted_edges()],
    }


def decomposed_to_dict(d: Decomposed) -> dict:
    out = graph_to_dict(d.graph)
    out["parent"] = d.tree.to_dict()
    return out


def graph_from_dict(data: Any) -> Graph:
    if not isinstance(data, dict):
        raise InputError("graph JSON must be an object")
    try:
        palette = tuple(data.get("palette") or DEFAULT_PALETTE)
        vertices = data["vertices"]
        ids = [int(v["id"]) for v in vertices]
        if sorted(ids) != list(range(len(ids))):
            raise InputError("vertex ids must be 0..n-1")
        colors = [None] * len(ids)
        for v in vertices:
            colors[int(v["id"])] = v.get("color", palette[0])
        edges = [(int(a), int(b)) for a, b in data.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed graph JSON: {exc}") from exc
    return Graph.from_edges(len(ids), edges, colors, palette)


def decomposed_from_dict(data: Any) -> Decomposed:
    g = graph_from_dict(data)
    raw = data.get("parent")
    if not isinstance(raw, dict):
        raise InputError("decomposed graph JSON needs a 'parent' object")
    parent: list[int | None] = [None] * g.n
    try:
        for v, p in raw.items():
            v = int(v)
            if not 0 <= v < g.n:
                raise InputError(f"parent entry for missing vertex {v}")
            parent[v] = int(p)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed parent map: {exc}") from exc
    return Decomposed(g, RootedForest(tuple(parent)))


def graph_from_graph6(text: str, palette=DEFAULT_PALETTE) -> Graph:
    """Uncoloured graph6 input; every vertex takes the palette's first colour."""
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    try:
        nxg = nx.from_graph6_bytes(text.encode("ascii"))
    except (nx.NetworkXError, ValueError, UnicodeEncodeError) as exc:
        raise InputError(f"malformed graph6 string: {exc}") from exc
    palette = tuple(palette)
    return Graph.from_edges(nxg.number_of_nodes(), list(nxg.edges()), [palette[0]] * nxg.number_of_nodes(), palette)


def graph_to_graph6(g: Graph) -> str:
    """graph6 string of the underlying uncoloured graph."""
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges)
    return nx.to_graph6_bytes(nxg, header=False).decode("ascii").strip()


def parse_graph_text(text: str) -> Graph:
    """JSON object, or a graph6 string as fallback."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
        return graph_from_dict(data)
    return graph_from_graph6(stripped)


def load_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_graph_text(text)


def load_decomposed(path: str | Path) -> Decomposed:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from exc
    return decomposed_from_dict(data)


def load_pattern(path: str | Path) -> Graph | Decomposed:
    """A decomposed graph if the file carries parent pointers, else a plain graph."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if text.strip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON in {path}: {exc}") from exc
        if isinstance(data, dict) and "parent" in data:
            return decomposed_from_dict(data)
        return graph_from_dict(data)
    return graph_from_graph6(text)


def dumps(obj: Graph | Decomposed) -> str:
    data = decomposed_to_dict(obj) if isinstance(obj, Decomposed) else graph_to_dict(obj)
    return json.dumps(data, sort_keys=True)


def write_jsonl(items: Iterable[Graph | Decomposed], fh) -> int:
    count = 0
    for item in items:
        fh.write(dumps(item) + "\n")
        count += 1
    return count


def read_jsonl(lines: Iterable[str]) -> Iterator[Graph | Decomposed]:
    for line in lines:
        line = line.strip()
        if not line:
            continue
        data = json.loads(line)
        yield decomposed_from_dict(data) if "parent" in data else graph_from_dict(data)
