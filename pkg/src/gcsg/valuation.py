"""Coalition valuation functions and executable property checkers.

Four built-in families (edge_sum, correlation, coordination, modularity)
plus an explicit table form. edge_sum, correlation and coordination are
independent of disconnected members: a node's marginal contribution to a
coalition is unchanged by adding a non-adjacent node. modularity is not,
which check_idm demonstrates on concrete inputs.

All functions are pure: same (graph, coalition) always gives the same
value, so results may be memoised and shared across workers.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    EmptyEdgeSet,
    InputError,
    MissingEntry,
    MissingLabels,
    MissingWeights,
    SeparationViolated,
    TooLarge,
)
from .graph import VALUE_TOL, _require_subset

IDM_KINDS = ("edge_sum", "correlation", "coordination")
ALL_KINDS = IDM_KINDS + ("modularity", "table")

IDM_CHECK_CAP = 12


@dataclass(frozen=True)
class ValuationSpec:
    """Declarative description of a valuation: a built-in kind or a table."""
    kind: str
    table: dict | None = None

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise InputError(f"unknown valuation kind {self.kind!r}")
        if (self.kind == "table") != (self.table is not None):
            raise InputError("a table is required exactly when kind='table'")


def edge_sum_value(g, c):
    """Sum of weights over edges with both endpoints inside c."""
    if g.weights is None and g.edges:
        raise MissingWeights("edge_sum needs edge weights on the graph")
    c = _require_subset(g, c)
    total = 0.0
    for i in c:
        for j in g.adjacency[i]:
            if j > i and j in c:
                total += g.weights[(i, j)]
    return total


def correlation_value(g, c):
    """Positive edges inside c plus negative edges with exactly one end in c."""
    if g.labels is None and g.edges:
        raise MissingLabels("correlation needs +/- edge labels on the graph")
    c = _require_subset(g, c)
    count = 0
    for i in c:
        for j in g.adjacency[i]:
            if j in c:
                if j > i and g.labels[(min(i, j), max(i, j))] == "+":
                    count += 1
            elif g.labels[(min(i, j), max(i, j))] == "-":
                count += 1
    return float(count)


def coordination_value(g, c):
    """For each member, its mutually-adjacent (inside, outside) neighbour pairs.

    Counts ordered pairs (j, k) with j in c, k outside, where i, j and k
    are pairwise adjacent, so the total is twice the number of triangles
    with exactly two corners inside c. Requiring the j-k edge keeps a
    node's marginal contribution independent of non-neighbours; dropping
    it would not.
    """
    c = _require_subset(g, c)
    total = 0
    for i in c:
        neighbours = g.adjacency[i]
        inside = [j for j in neighbours if j in c]
        outside = [k for k in neighbours if k not in c]
        for j in inside:
            adj_j = g.adjacency[j]
            for k in outside:
                if k in adj_j:
                    total += 1
    return float(total)


def modularity_value(g, c):
    """Intra-edge fraction minus the squared (intra + boundary) fraction.

    The squared term makes a node's marginal contribution depend on
    non-neighbours, so this family fails the IDM check.
    """
    e = len(g.edges)
    if e == 0:
        raise EmptyEdgeSet("modularity is undefined on an edgeless graph")
    c = _require_subset(g, c)
    intra = 0
    boundary = 0
    for i in c:
        for j in g.adjacency[i]:
            if j in c:
                if j > i:
                    intra += 1
            else:
                boundary += 1
    return intra / e - ((intra + boundary) / (2 * e)) ** 2


def table_value(spec, c):
    """Explicit set-function lookup."""
    key = frozenset(c)
    if spec.table is None or key not in spec.table:
        raise MissingEntry(f"no table entry for coalition {sorted(key)}")
    return float(spec.table[key])


class Valuation:
    """A ValuationSpec bound to a graph, with memoised evaluation."""

    def __init__(self, g, spec):
        if isinstance(spec, str):
            spec = ValuationSpec(spec)
        self.graph = g
        self.spec = spec
        self.kind = spec.kind
        self.is_idm = spec.kind in IDM_KINDS
        self._cache = {}
        if spec.kind == "edge_sum" and g.weights is None and g.edges:
            raise MissingWeights("edge_sum needs edge weights on the graph")
        if spec.kind == "correlation" and g.labels is None and g.edges:
            raise MissingLabels("correlation needs +/- edge labels on the graph")

    def __call__(self, c):
        key = frozenset(c)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        kind = self.kind
        if kind == "edge_sum":
            val = edge_sum_value(self.graph, key)
        elif kind == "correlation":
            val = correlation_value(self.graph, key)
        elif kind == "coordination":
            val = coordination_value(self.graph, key)
        elif kind == "modularity":
            val = modularity_value(self.graph, key)
        else:
            val = table_value(self.spec, key)
        self._cache[key] = val
        return val


def bind_valuation(g, spec):
    return Valuation(g, spec)


@dataclass(frozen=True)
class IdmReport:
    """Outcome of the exhaustive marginal-contribution independence check."""
    ok: bool
    pair: tuple | None = None
    context: tuple | None = None
    lhs: float | None = None
    rhs: float | None = None
    pairs_checked: int = 0
    sets_checked: int = 0

    def describe(self):
        if self.ok:
            return (f"pass: {self.pairs_checked} non-adjacent pairs, "
                    f"{self.sets_checked} contexts checked")
        i, j = self.pair
        return (f"violation: nodes ({i},{j}) with context {list(self.context)}: "
                f"marginal of {i} is {self.lhs} alone vs {self.rhs} with {j} present")


def check_idm(g, v, max_n=IDM_CHECK_CAP):
    """Exhaustively test independence of disconnected members.

    For every non-adjacent pair (i, j) and every coalition C avoiding
    both, compares the marginal contribution of i to C against its
    marginal to C+{j}. Contexts are scanned in increasing cardinality so
    the first violation reported is a minimal counterexample.
    """
    n = len(g.nodes)
    if n > max_n:
        raise TooLarge(f"IDM check is exponential; {n} nodes exceeds the cap {max_n}")
    exact = g.exact
    tol = 0.0 if exact else VALUE_TOL
    pairs_checked = 0
    sets_checked = 0
    for idx, i in enumerate(g.nodes):
        adj_i = g.adjacency[i]
        for j in g.nodes[idx + 1:]:
            if j in adj_i:
                continue
            pairs_checked += 1
            rest = [x for x in g.nodes if x != i and x != j]
            for size in range(len(rest) + 1):
                for comb in combinations(rest, size):
                    sets_checked += 1
                    c = frozenset(comb)
                    lhs = v(c | {i}) - v(c)
                    rhs = v(c | {i, j}) - v(c | {j})
                    if abs(lhs - rhs) > tol:
                        return IdmReport(False, (i, j), comb, lhs, rhs,
                                         pairs_checked, sets_checked)
    return IdmReport(True, None, None, None, None, pairs_checked, sets_checked)


def check_separator_additivity(g, v, a, b):
    """Test the crossing-free marginal identity v(A) - v(A&B) = v(A|B) - v(B).

    Requires that no edge joins A-B to B-A; violating that precondition is
    an error, not a False result.
    """
    a = _require_subset(g, a)
    b = _require_subset(g, b)
    only_a = a - b
    only_b = b - a
    for x in only_a:
        for y in g.adjacency[x]:
            if y in only_b:
                raise SeparationViolated(
                    f"edge ({min(x, y)},{max(x, y)}) joins the two exclusive sides")
    lhs = v(a) - v(a & b)
    rhs = v(a | b) - v(b)
    return abs(lhs - rhs) <= VALUE_TOL
