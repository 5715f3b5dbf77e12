"""Immutable undirected graphs with optional edge weights and +/- labels.

Node ids are arbitrary non-negative integers (not required to be dense).
All derived orderings are sorted by node id so downstream output is
reproducible. A Graph is never mutated after build_graph returns it, so
instances are safe to share across threads.
"""

import math

from .errors import (
    DuplicateEdge,
    DuplicateNode,
    InputError,
    InvalidNodeId,
    NonFiniteWeight,
    SelfLoop,
    UnknownEndpoint,
    UnknownNode,
)

VALUE_TOL = 1e-9


class Graph:
    """Undirected simple graph; construct via build_graph."""

    __slots__ = ("nodes", "edges", "weights", "labels", "adjacency", "exact")

    def __init__(self, nodes, edges, weights, labels, adjacency, exact):
        self.nodes = nodes          # sorted tuple of node ids
        self.edges = edges          # sorted tuple of (min, max) pairs
        self.weights = weights      # {edge: float} or None
        self.labels = labels        # {edge: "+"|"-"} or None
        self.adjacency = adjacency  # {node: sorted tuple of neighbours}
        self.exact = exact          # True when all weights are integral

    @property
    def node_set(self):
        return frozenset(self.nodes)

    def __len__(self):
        return len(self.nodes)

    def num_edges(self):
        return len(self.edges)

    def has_edge(self, u, v):
        return v in self.adjacency.get(u, ())

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.nodes == other.nodes and self.edges == other.edges
                and self.weights == other.weights and self.labels == other.labels)

    def __repr__(self):
        return f"Graph(n={len(self.nodes)}, e={len(self.edges)})"


def build_graph(nodes, edges):
    """Validate and build a Graph.

    `edges` entries are (u, v), (u, v, weight) or (u, v, weight, label);
    weight may be None. Weights and labels must each be given for all
    edges or for none.
    """
    seen = set()
    for x in nodes:
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            raise InvalidNodeId(f"node id {x!r} is not a non-negative integer")
        if x in seen:
            raise DuplicateNode(f"node {x} appears more than once")
        seen.add(x)
    node_tuple = tuple(sorted(seen))

    edge_pairs = []
    weights = {}
    labels = {}
    for entry in edges:
        u, v = entry[0], entry[1]
        w = entry[2] if len(entry) > 2 else None
        lab = entry[3] if len(entry) > 3 else None
        if u not in seen:
            raise UnknownEndpoint(f"edge endpoint {u} is not a declared node")
        if v not in seen:
            raise UnknownEndpoint(f"edge endpoint {v} is not a declared node")
        if u == v:
            raise SelfLoop(f"self-loop at node {u}")
        e = (u, v) if u < v else (v, u)
        if e in weights or e in labels or e in edge_pairs:
            raise DuplicateEdge(f"edge {e} appears more than once")
        edge_pairs.append(e)
        if w is not None:
            w = float(w)
            if not math.isfinite(w):
                raise NonFiniteWeight(f"edge {e} has non-finite weight {w}")
            weights[e] = w
        if lab is not None:
            if lab not in ("+", "-"):
                raise InputError(f"edge {e} has invalid label {lab!r}; expected '+' or '-'")
            labels[e] = lab

    edge_tuple = tuple(sorted(edge_pairs))
    if weights and len(weights) != len(edge_tuple):
        raise InputError("edge weights must be given for all edges or none")
    if labels and len(labels) != len(edge_tuple):
        raise InputError("edge labels must be given for all edges or none")

    adj = {x: [] for x in node_tuple}
    for (u, v) in edge_tuple:
        adj[u].append(v)
        adj[v].append(u)
    adjacency = {x: tuple(sorted(ns)) for x, ns in adj.items()}

    exact = all(w == int(w) for w in weights.values()) if weights else True
    return Graph(node_tuple, edge_tuple,
                 weights if weights else None,
                 labels if labels else None,
                 adjacency, exact)


def _require_subset(g, s):
    s = frozenset(s)
    extra = s - g.node_set
    if extra:
        raise UnknownNode(f"nodes {sorted(extra)} are not in the graph")
    return s


def connected_components(g):
    """Partition the nodes into maximal connected sets.

    Blocks are returned ordered by their smallest member.
    """
    remaining = set(g.nodes)
    components = []
    for start in g.nodes:
        if start not in remaining:
            continue
        comp = {start}
        frontier = [start]
        remaining.discard(start)
        while frontier:
            x = frontier.pop()
            for y in g.adjacency[x]:
                if y in remaining:
                    remaining.discard(y)
                    comp.add(y)
                    frontier.append(y)
        components.append(frozenset(comp))
    return components


def induced_subgraph(g, s):
    """Subgraph on node set s with exactly g's edges inside s."""
    s = _require_subset(g, s)
    kept = [e for e in g.edges if e[0] in s and e[1] in s]
    entries = []
    for e in kept:
        w = g.weights[e] if g.weights is not None else None
        lab = g.labels[e] if g.labels is not None else None
        entries.append((e[0], e[1], w, lab))
    return build_graph(sorted(s), entries)


def is_coalition_connected(g, s):
    """True iff s induces a connected subgraph; empty sets and singletons count."""
    s = _require_subset(g, s)
    if len(s) <= 1:
        return True
    start = min(s)
    seen = {start}
    frontier = [start]
    while frontier:
        x = frontier.pop()
        for y in g.adjacency[x]:
            if y in s and y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen) == len(s)


def values_equal(a, b, exact=False):
    """Compare two valuation results; exact mode uses equality."""
    if exact:
        return a == b
    return abs(a - b) <= VALUE_TOL
