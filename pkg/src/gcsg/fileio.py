"""JSON file formats for problems, decompositions and results.

Problem files
-------------
::

    {
      "graph": {
        "nodes": [0, 1, 2],
        "edges": [{"u": 0, "v": 1, "weight": 2.0, "label": "+"}, ...]
      },
      "valuation": {"kind": "edge_sum"},
      "grid": {"rows": 2, "cols": 3}          // optional
    }

"weight" and "label" are optional per edge but must be used consistently
(all edges or none). A table valuation lists every subset of the node
set once, as sorted id lists::

    {"kind": "table", "table": [{"set": [], "value": 0}, {"set": [0], "value": 1}, ...]}

Decomposition files
-------------------
::

    {"bags": [[0, 1], [1, 2]], "tree": [[0, 1]]}

Bag indices in "tree" are 0-based positions into "bags".
"""

import json
import math
from dataclasses import dataclass

from .errors import (
    DuplicateEdge,
    DuplicateNode,
    GcsgError,
    InvalidNodeId,
    ParseError,
    SelfLoop,
    UnknownEndpoint,
    ValidationError,
)
from .graph import Graph, build_graph
from .treedecomp import TreeDecomposition
from .valuation import ALL_KINDS, ValuationSpec

TABLE_NODE_CAP = 16


@dataclass(frozen=True)
class Problem:
    graph: Graph
    valuation: ValuationSpec
    grid: tuple | None = None  # (rows, cols)


def _expect(cond, path, message):
    if not cond:
        raise ValidationError(f"{path}: {message}")


def _load(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def parse_problem(text):
    """Parse and validate a problem file into a Problem."""
    doc = _load(text)
    _expect(isinstance(doc, dict), "$", "problem file must be a JSON object")
    _expect("graph" in doc, "$", "missing required key 'graph'")
    _expect("valuation" in doc, "$", "missing required key 'valuation'")

    gdoc = doc["graph"]
    _expect(isinstance(gdoc, dict), "graph", "must be an object")
    nodes = gdoc.get("nodes")
    _expect(isinstance(nodes, list), "graph.nodes", "must be a list of node ids")
    edges_doc = gdoc.get("edges", [])
    _expect(isinstance(edges_doc, list), "graph.edges", "must be a list")

    declared = set()
    for idx, x in enumerate(nodes):
        path = f"graph.nodes[{idx}]"
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            raise InvalidNodeId(f"{path}: node id {x!r} is not a non-negative integer")
        if x in declared:
            raise DuplicateNode(f"{path}: node {x} appears more than once")
        declared.add(x)

    entries = []
    seen_pairs = set()
    for idx, edoc in enumerate(edges_doc):
        path = f"graph.edges[{idx}]"
        _expect(isinstance(edoc, dict), path, "must be an object with 'u' and 'v'")
        _expect("u" in edoc and "v" in edoc, path, "must name both endpoints 'u' and 'v'")
        u, v = edoc["u"], edoc["v"]
        for end in (u, v):
            if not isinstance(end, int) or isinstance(end, bool) or end not in declared:
                raise UnknownEndpoint(f"{path}: endpoint {end!r} is not a declared node")
        if u == v:
            raise SelfLoop(f"{path}: self-loop at node {u}")
        pair = (u, v) if u < v else (v, u)
        if pair in seen_pairs:
            raise DuplicateEdge(f"{path}: edge {pair} appears more than once")
        seen_pairs.add(pair)
        w = edoc.get("weight")
        if w is not None:
            _expect(isinstance(w, (int, float)) and not isinstance(w, bool)
                    and math.isfinite(w), f"{path}.weight", "must be a finite number")
        lab = edoc.get("label")
        if lab is not None:
            _expect(lab in ("+", "-"), f"{path}.label", "must be '+' or '-'")
        entries.append((u, v, w, lab))

    try:
        graph = build_graph(nodes, entries)
    except GcsgError as exc:
        raise type(exc)(f"graph: {exc}") from exc

    vdoc = doc["valuation"]
    _expect(isinstance(vdoc, dict), "valuation", "must be an object")
    kind = vdoc.get("kind")
    _expect(kind in ALL_KINDS, "valuation.kind",
            f"must be one of {', '.join(ALL_KINDS)}")
    table = None
    if kind == "table":
        table = _parse_table(vdoc.get("table"), graph)
    else:
        _expect("table" not in vdoc, "valuation.table",
                f"not allowed for kind '{kind}'")
    if kind == "edge_sum":
        _expect(graph.weights is not None or not graph.edges,
                "valuation.kind", "edge_sum requires edge weights on the graph")
    if kind == "correlation":
        _expect(graph.labels is not None or not graph.edges,
                "valuation.kind", "correlation requires edge labels on the graph")
    spec = ValuationSpec(kind, table)

    grid = None
    if "grid" in doc and doc["grid"] is not None:
        grid = _parse_grid(doc["grid"], graph)

    return Problem(graph, spec, grid)


def _parse_table(tdoc, graph):
    _expect(isinstance(tdoc, list), "valuation.table", "must be a list of entries")
    n = len(graph.nodes)
    _expect(n <= TABLE_NODE_CAP, "valuation.table",
            f"table valuations are capped at {TABLE_NODE_CAP} nodes")
    node_set = graph.node_set
    table = {}
    for idx, entry in enumerate(tdoc):
        path = f"valuation.table[{idx}]"
        _expect(isinstance(entry, dict) and "set" in entry and "value" in entry,
                path, "must be an object with 'set' and 'value'")
        s = entry["set"]
        _expect(isinstance(s, list), f"{path}.set", "must be a sorted list of node ids")
        key = frozenset(s)
        _expect(len(key) == len(s), f"{path}.set", "contains duplicate ids")
        _expect(key <= node_set, f"{path}.set", "contains ids not in the graph")
        _expect(key not in table, f"{path}.set", "duplicate table entry")
        val = entry["value"]
        _expect(isinstance(val, (int, float)) and not isinstance(val, bool)
                and math.isfinite(val), f"{path}.value", "must be a finite number")
        table[key] = float(val)
    if frozenset() not in table or table[frozenset()] != 0:
        raise ValidationError(
            "valuation.table: table must define the empty set with value 0")
    _expect(len(table) == 2 ** n, "valuation.table",
            f"must cover all {2 ** n} subsets of the node set, got {len(table)}")
    return table


def _parse_grid(grid_doc, graph):
    _expect(isinstance(grid_doc, dict) and "rows" in grid_doc and "cols" in grid_doc,
            "grid", "must be an object with 'rows' and 'cols'")
    rows, cols = grid_doc["rows"], grid_doc["cols"]
    _expect(isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0,
            "grid", "rows and cols must be positive integers")
    n = rows * cols
    _expect(len(graph.nodes) == n, "grid",
            f"rows*cols = {n} does not match the {len(graph.nodes)} graph nodes")
    _expect(graph.nodes == tuple(range(n)), "grid",
            "grid numbering requires node ids 0..rows*cols-1")
    expected = set()
    for r in range(rows):
        for c in range(cols):
            x = r * cols + c
            if c + 1 < cols:
                expected.add((x, x + 1))
            if r + 1 < rows:
                expected.add((x, x + cols))
    _expect(set(graph.edges) == expected, "grid",
            "edge set does not match the canonical grid edges")
    return (rows, cols)


def serialize_problem(problem):
    """Inverse of parse_problem; parse(serialize(p)) == p."""
    g = problem.graph
    edges = []
    for e in g.edges:
        entry = {"u": e[0], "v": e[1]}
        if g.weights is not None:
            w = g.weights[e]
            entry["weight"] = int(w) if w.is_integer() else w
        if g.labels is not None:
            entry["label"] = g.labels[e]
        edges.append(entry)
    doc = {"graph": {"nodes": list(g.nodes), "edges": edges},
           "valuation": {"kind": problem.valuation.kind}}
    if problem.valuation.table is not None:
        doc["valuation"]["table"] = [
            {"set": sorted(k), "value": v}
            for k, v in sorted(problem.valuation.table.items(),
                               key=lambda kv: (len(kv[0]), sorted(kv[0])))]
    if problem.grid is not None:
        doc["grid"] = {"rows": problem.grid[0], "cols": problem.grid[1]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_decomposition(text):
    """Parse a decomposition file; validity against a graph is the caller's check."""
    doc = _load(text)
    _expect(isinstance(doc, dict), "$", "decomposition file must be a JSON object")
    bags_doc = doc.get("bags")
    _expect(isinstance(bags_doc, list) and bags_doc, "bags",
            "must be a non-empty list of node-id lists")
    bags = []
    for idx, bag in enumerate(bags_doc):
        _expect(isinstance(bag, list), f"bags[{idx}]", "must be a list of node ids")
        bags.append(bag)
    tree_doc = doc.get("tree", [])
    _expect(isinstance(tree_doc, list), "tree", "must be a list of bag-index pairs")
    edges = []
    for idx, pair in enumerate(tree_doc):
        _expect(isinstance(pair, list) and len(pair) == 2
                and all(isinstance(x, int) for x in pair),
                f"tree[{idx}]", "must be a pair of bag indexes")
        edges.append((pair[0], pair[1]))
    return TreeDecomposition(bags, edges)


def serialize_decomposition(td):
    doc = {"bags": [sorted(b) for b in td.bags],
           "tree": [list(e) for e in sorted(td.tree_edges)]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def serialize_result(result, include_stats=False, include_timing=True):
    """Result document: blocks as sorted lists, the value, optional stats."""
    doc = result.to_dict(include_timing=include_timing)
    if not include_stats:
        doc.pop("stats", None)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
