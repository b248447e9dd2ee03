"""scikit-learn transformer mapping graphs to their hom vectors."""

from __future__ import annotations

import json

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .exceptions import InputError
from .graph import Graph
from .homcount import hom_vector_tuple, pattern_family
from .io import graph_from_dict, parse_graph_text


def as_graph(item) -> Graph:
    """Accept a Graph, a graph JSON object, or a JSON / graph6 string."""
    if isinstance(item, Graph):
        return item
    if isinstance(item, dict):
        return graph_from_dict(item)
    if isinstance(item, (str, bytes)):
        text = item.decode("ascii") if isinstance(item, bytes) else item
        return parse_graph_text(text)
    raise InputError(f"cannot read a graph from {type(item).__name__}")


def check_graphs(X) -> list[Graph]:
    """Validate a 1-d collection of graphs; numpy object arrays of shape (n,) or (n, 1) are fine."""
    if isinstance(X, (Graph, dict, str, bytes)):
        raise InputError("expected a collection of graphs, got a single graph")
    if isinstance(X, np.ndarray):
        if X.ndim == 2 and X.shape[1] == 1:
            X = X[:, 0]
        elif X.ndim != 1:
            raise InputError(f"expected a 1-d array of graphs, got shape {X.shape}")
    try:
        items = list(X)
    except TypeError as exc:
        raise InputError("expected an iterable of graphs") from exc
    if not items:
        raise InputError("need at least one graph")
    return [as_graph(x) for x in items]


class HomVectorizer(BaseEstimator, TransformerMixin):
    """Hom counts from every connected pattern of tree depth ``<= k`` and order ``<= size_bound``.

    Two graphs get equal rows exactly when no pattern in the family tells them
    apart. The default ``dtype=object`` keeps counts as exact Python ints;
    pass ``dtype=float`` (or similar) for downstream numeric estimators.
    """

    def __init__(self, k=2, size_bound=4, palette=None, dtype=object):
        self.k = k
        self.size_bound = size_bound
        self.palette = palette
        self.dtype = dtype

    def _check_params(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise InputError(f"k must be a positive integer, got {self.k!r}")
        if not isinstance(self.size_bound, int) or self.size_bound < 1:
            raise InputError(f"size_bound must be a positive integer, got {self.size_bound!r}")

    def fit(self, X, y=None):
        self._check_params()
        graphs = check_graphs(X)
        if self.palette is not None:
            palette = tuple(self.palette)
        else:
            palette = tuple(dict.fromkeys(c for g in graphs for c in g.palette))
        self.palette_ = palette
        self.patterns_ = [f for _, f, _ in pattern_family(self.k, self.size_bound, palette)]
        self.n_features_out_ = len(self.patterns_)
        return self

    def transform(self, X):
        check_is_fitted(self, "patterns_")
        graphs = check_graphs(X)
        known = set(self.palette_)
        rows = []
        for g in graphs:
            used = set(g.colors)
            if not used <= known:
                raise InputError(f"graph uses colours {sorted(used - known)} unseen during fit")
            rows.append(hom_vector_tuple(g.with_palette(self.palette_), self.k, self.size_bound, self.palette_))
        out = np.empty((len(rows), self.n_features_out_), dtype=object)
        for i, row in enumerate(rows):
            out[i, :] = row
        return out if self.dtype is object else out.astype(self.dtype)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "patterns_")
        names = []
        for i, f in enumerate(self.patterns_):
            desc = json.dumps({"colors": list(f.colors), "edges": [list(e) for e in f.sorted_edges()]},
                              separators=(",", ":"))
            names.append(f"hom{i}:{desc}")
        return np.asarray(names, dtype=object)
