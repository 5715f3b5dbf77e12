"""Tree decompositions: the data type, validation, the per-bag DP scaffold,
a min-fill heuristic builder, and separator-based construction.

A decomposition is a list of node bags plus a tree over bag indices
(0-based) satisfying node coverage, edge coverage and the running
intersection property. The scaffold orders bags by BFS distance from a
root and precomputes, per bag, the nodes seen for the first time, the
interface with already-processed bags, and the child bags.
"""

import math
from dataclasses import dataclass

from .errors import (
    Disconnected,
    EmptyDecomposition,
    InputError,
    InternalCheckError,
    InvalidDecomposition,
    InvalidSeparator,
    NotAGrid,
)
from .graph import connected_components, induced_subgraph


class TreeDecomposition:
    """Bags of nodes arranged in a tree; construct then check with validate."""

    __slots__ = ("bags", "tree_edges")

    def __init__(self, bags, tree_edges):
        self.bags = tuple(frozenset(b) for b in bags)
        self.tree_edges = frozenset(
            (i, j) if i < j else (j, i) for (i, j) in tree_edges)

    def all_nodes(self):
        out = set()
        for b in self.bags:
            out |= b
        return frozenset(out)

    def __eq__(self, other):
        if not isinstance(other, TreeDecomposition):
            return NotImplemented
        return self.bags == other.bags and self.tree_edges == other.tree_edges

    def __repr__(self):
        return f"TreeDecomposition(bags={len(self.bags)}, width={width(self) if self.bags else '-'})"


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass(frozen=True)
class DecompositionReport:
    ok: bool
    violations: tuple

    def describe(self):
        if self.ok:
            return "pass"
        return "; ".join(f"{v.kind}: {v.detail}" for v in self.violations)


def _tree_violations(td):
    """Structural problems of the bag tree alone (no graph needed)."""
    m = len(td.bags)
    out = []
    for (i, j) in td.tree_edges:
        if not (0 <= i < m and 0 <= j < m):
            out.append(Violation("not-a-tree", f"edge ({i},{j}) references a missing bag"))
            return out
        if i == j:
            out.append(Violation("not-a-tree", f"self-edge at bag {i}"))
            return out
    if len(td.tree_edges) != max(m - 1, 0):
        out.append(Violation(
            "not-a-tree",
            f"{len(td.tree_edges)} tree edges for {m} bags (need {max(m - 1, 0)})"))
        return out
    if m > 0:
        adj = {i: [] for i in range(m)}
        for (i, j) in td.tree_edges:
            adj[i].append(j)
            adj[j].append(i)
        seen = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        if len(seen) != m:
            out.append(Violation("not-a-tree", "bag tree is not connected"))
    return out


def _bags_of_node(td):
    index = {}
    for i, b in enumerate(td.bags):
        for x in b:
            index.setdefault(x, []).append(i)
    return index


def _running_intersection_violations(td):
    m = len(td.bags)
    adj = {i: [] for i in range(m)}
    for (i, j) in td.tree_edges:
        adj[i].append(j)
        adj[j].append(i)
    out = []
    for x, holding in sorted(_bags_of_node(td).items()):
        holding_set = set(holding)
        seen = {holding[0]}
        frontier = [holding[0]]
        while frontier:
            i = frontier.pop()
            for j in adj[i]:
                if j in holding_set and j not in seen:
                    seen.add(j)
                    frontier.append(j)
        if len(seen) != len(holding):
            out.append(Violation(
                "disconnected-node",
                f"bags containing node {x} do not form a connected subtree"))
    return out


def validate(td, g):
    """Check the three decomposition properties against g.

    Violations are returned as data, not raised.
    """
    out = []
    out.extend(_tree_violations(td))
    if len(td.bags) > len(g.nodes):
        out.append(Violation("too-many-bags",
                             f"{len(td.bags)} bags for {len(g.nodes)} nodes"))

    index = _bags_of_node(td)
    covered = set(index)
    node_set = g.node_set
    for x in sorted(node_set - covered):
        out.append(Violation("uncovered-node", f"node {x} is in no bag"))
    for x in sorted(covered - node_set):
        out.append(Violation("foreign-node", f"bag node {x} is not in the graph"))

    for (u, v) in g.edges:
        bags_u = index.get(u, ())
        bags_v = set(index.get(v, ()))
        if not any(i in bags_v for i in bags_u):
            out.append(Violation("uncovered-edge", f"edge ({u},{v}) is inside no bag"))

    if not any(v.kind == "not-a-tree" for v in out):
        out.extend(_running_intersection_violations(td))

    return DecompositionReport(not out, tuple(out))


def width(td):
    """Largest bag size minus one."""
    if not td.bags:
        raise EmptyDecomposition("decomposition has no bags")
    return max(len(b) for b in td.bags) - 1


def default_root(td):
    """Lowest-indexed bag containing the globally smallest node id."""
    smallest = min(td.all_nodes())
    for i, b in enumerate(td.bags):
        if smallest in b:
            return i
    raise EmptyDecomposition("decomposition has no bags")


@dataclass(frozen=True)
class DPScaffold:
    """Per-bag bookkeeping for the dynamic program, in BFS order.

    Position k holds bag order[k]; new_nodes[k] are the nodes appearing
    for the first time at k, interface[k] the overlap with earlier bags
    (always bag & parent bag), children[k] the positions attached below.
    """
    order: tuple
    parent: tuple      # parent position per position; -1 at the root
    bags: tuple        # frozenset per position
    new_nodes: tuple   # frozenset per position
    interface: tuple   # frozenset per position
    children: tuple    # tuple of positions per position

    def __len__(self):
        return len(self.order)


def build_scaffold(td, root):
    """BFS-order the bags from `root` and derive the DP scaffold.

    Equal-distance ties are broken by original bag index, so position
    order is reproducible.
    """
    m = len(td.bags)
    if not (0 <= root < m):
        raise InvalidDecomposition(f"root bag index {root} out of range")
    problems = _tree_violations(td) + _running_intersection_violations(td)
    if problems:
        raise InvalidDecomposition(DecompositionReport(False, tuple(problems)).describe())

    adj = {i: [] for i in range(m)}
    for (i, j) in td.tree_edges:
        adj[i].append(j)
        adj[j].append(i)

    dist = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for i in frontier:
            for j in adj[i]:
                if j not in dist:
                    dist[j] = dist[i] + 1
                    nxt.append(j)
        frontier = nxt

    order = sorted(range(m), key=lambda i: (dist[i], i))
    pos_of = {bag: k for k, bag in enumerate(order)}

    parent = []
    for k, i in enumerate(order):
        if k == 0:
            parent.append(-1)
            continue
        ups = [j for j in adj[i] if dist[j] == dist[i] - 1]
        if len(ups) != 1:
            raise InvalidDecomposition(f"bag {i} has {len(ups)} parents in the bag tree")
        parent.append(pos_of[ups[0]])

    bags = tuple(td.bags[i] for i in order)
    new_nodes = []
    interface = []
    seen = set()
    for k in range(m):
        fresh = bags[k] - seen
        overlap = bags[k] & seen
        new_nodes.append(frozenset(fresh))
        interface.append(frozenset(overlap))
        seen |= bags[k]
        if k > 0 and overlap != bags[k] & bags[parent[k]]:
            raise InternalCheckError(
                "interface of a bag differs from its overlap with the parent bag; "
                "running intersection check is inconsistent")

    children = [[] for _ in range(m)]
    for k in range(1, m):
        children[parent[k]].append(k)

    return DPScaffold(tuple(order), tuple(parent), bags,
                      tuple(new_nodes), tuple(interface),
                      tuple(tuple(c) for c in children))


# -- min-fill heuristic -------------------------------------------------------

def min_fill_decompose(g):
    """Elimination-ordering decomposition, greedy by fill-in.

    Ties go to smallest degree, then smallest node id. Exact (width 1) on
    trees and forests with at least one edge; heuristic otherwise.
    """
    if not g.nodes:
        raise InputError("cannot decompose an empty graph")
    adj = {x: set(g.adjacency[x]) for x in g.nodes}
    remaining = set(g.nodes)

    bags = []
    eliminated = []
    while remaining:
        best = None
        for x in sorted(remaining):
            nbrs = adj[x]
            fill = 0
            ns = sorted(nbrs)
            for a_i, a in enumerate(ns):
                adj_a = adj[a]
                for b in ns[a_i + 1:]:
                    if b not in adj_a:
                        fill += 1
            key = (fill, len(nbrs), x)
            if best is None or key < best[0]:
                best = (key, x)
        v = best[1]
        nbrs = sorted(adj[v])
        bags.append(frozenset([v] + nbrs))
        eliminated.append(v)
        for a_i, a in enumerate(nbrs):
            for b in nbrs[a_i + 1:]:
                adj[a].add(b)
                adj[b].add(a)
        for a in nbrs:
            adj[a].discard(v)
        del adj[v]
        remaining.discard(v)

    elim_pos = {v: k for k, v in enumerate(eliminated)}
    edges = []
    roots = []
    for k, v in enumerate(eliminated):
        others = bags[k] - {v}
        if others:
            first_out = min(others, key=lambda u: elim_pos[u])
            edges.append((k, elim_pos[first_out]))
        else:
            roots.append(k)
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(bags, edges)


# -- separators ---------------------------------------------------------------

def _rectangle_cut(coords, id_of):
    """Cut a full rectangle of grid coordinates along its central shorter line."""
    rows = sorted({r for (r, _) in coords})
    cols = sorted({c for (_, c) in coords})
    r0, r1 = rows[0], rows[-1]
    c0, c1 = cols[0], cols[-1]
    height = r1 - r0 + 1
    length = c1 - c0 + 1
    if len(coords) != height * length:
        raise NotAGrid("node set does not fill a rectangle of the grid")
    if height <= length:
        cut = c0 + (length - 1) // 2
        sep = frozenset(id_of[(r, cut)] for r in rows)
        left = frozenset(id_of[(r, c)] for (r, c) in coords if c < cut)
        right = frozenset(id_of[(r, c)] for (r, c) in coords if c > cut)
    else:
        cut = r0 + (height - 1) // 2
        sep = frozenset(id_of[(cut, c)] for c in cols)
        left = frozenset(id_of[(r, c)] for (r, c) in coords if r < cut)
        right = frozenset(id_of[(r, c)] for (r, c) in coords if r > cut)
    return sep, left, right


def _check_is_subgrid(g, rows, cols):
    """Verify g is an induced sub-rectangle of the rows x cols grid."""
    coords = {}
    for x in g.nodes:
        if not (0 <= x < rows * cols):
            raise NotAGrid(f"node {x} is outside the {rows}x{cols} grid")
        coords[x] = divmod(x, cols)
    expected = set()
    for x in g.nodes:
        r, c = coords[x]
        for (nr, nc) in ((r, c + 1), (r + 1, c)):
            if nr < rows and nc < cols:
                y = nr * cols + nc
                if y in coords:
                    expected.add((x, y) if x < y else (y, x))
    if set(g.edges) != expected:
        raise NotAGrid("edge set does not match the grid edges on these nodes")
    return coords


def make_grid_finder(rows, cols):
    """Separator finder for (sub-rectangles of) the rows x cols grid.

    The returned callable cuts the central row or column, whichever is
    shorter, giving |S| <= sqrt(n) and both sides at most half the nodes,
    so it certifies the (beta=1, c=1/2, alpha=1/2) separator constants.
    """
    def finder(g):
        coords = _check_is_subgrid(g, rows, cols)
        id_of = {rc: x for x, rc in coords.items()}
        return _rectangle_cut(set(coords.values()), id_of)
    return finder


def grid_separator(g, rows, cols):
    """Central-line separator of the canonical rows x cols grid."""
    n = rows * cols
    if len(g.nodes) != n or g.nodes != tuple(range(n)):
        raise NotAGrid(f"expected the canonical {rows}x{cols} grid on nodes 0..{n - 1}")
    return make_grid_finder(rows, cols)(g)


def greedy_separator(g):
    """Guarantee-free balanced separator from BFS levels.

    Picks the BFS level (from the smallest node id) whose removal allows
    the remaining components to be packed into two sides of at most
    ceil(2n/3) nodes each, preferring small levels, then better balance.
    Falls back to S = N when no level works.
    """
    n = len(g.nodes)
    all_nodes = g.node_set
    if n <= 2:
        return all_nodes, frozenset(), frozenset()
    comps = connected_components(g)
    if len(comps) > 1:
        raise Disconnected("greedy separator needs a connected graph")

    root = g.nodes[0]
    levels = []
    seen = {root}
    frontier = [root]
    while frontier:
        levels.append(sorted(frontier))
        nxt = []
        for x in frontier:
            for y in g.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt

    bound = math.ceil(2 * n / 3)
    best = None
    for idx, level in enumerate(levels):
        sep = frozenset(level)
        rest = all_nodes - sep
        pieces = connected_components(induced_subgraph(g, rest)) if rest else []
        pieces.sort(key=lambda p: (-len(p), min(p)))
        side_a, side_b = set(), set()
        for p in pieces:
            if len(side_a) <= len(side_b):
                side_a |= p
            else:
                side_b |= p
        larger = max(len(side_a), len(side_b))
        if larger > bound:
            continue
        key = (len(sep), larger, idx)
        if best is None or key < best[0]:
            best = (key, sep, frozenset(side_a), frozenset(side_b))
    if best is None:
        return all_nodes, frozenset(), frozenset()
    return best[1], best[2], best[3]


def _check_separator(g, sep, side_a, side_b):
    nodes = g.node_set
    if sep | side_a | side_b != nodes or len(sep) + len(side_a) + len(side_b) != len(nodes):
        raise InvalidSeparator("separator output does not partition the node set")
    if not sep:
        raise InvalidSeparator("empty separator makes no progress")
    for x in side_a:
        for y in g.adjacency[x]:
            if y in side_b:
                raise InvalidSeparator(f"edge ({min(x, y)},{max(x, y)}) crosses the two sides")


def separator_decompose(g, finder, beta=None, c=None, alpha=None):
    """Build a decomposition by recursive separation.

    Each level separates the current (connected) piece, decomposes both
    sides, adds the separator to every bag of both sub-decompositions and
    joins their root bags by one tree edge. Disconnected pieces are
    decomposed per component with the subtrees chained together.

    When the (beta, c, alpha) constants are given, every finder output is
    checked against |S| <= beta*m^c and side sizes <= alpha*m, and the
    final width against beta*n^c / (1 - alpha^c).
    """
    if not g.nodes:
        raise InputError("cannot decompose an empty graph")
    certified = beta is not None and c is not None and alpha is not None
    bags, edges = _decompose_piece(g, finder, beta, c, alpha, certified)
    td = TreeDecomposition(bags, edges)
    if certified:
        n = len(g.nodes)
        limit = beta * n ** c / (1 - alpha ** c)
        if width(td) > limit + 1e-9:
            raise InternalCheckError(
                f"certified separator constants promise width <= {limit:.3f}, got {width(td)}")
    return td


def _decompose_piece(g, finder, beta, c, alpha, certified):
    """Recursive helper; returns (bag list, edge list) with bag 0 the root."""
    comps = connected_components(g)
    if len(comps) > 1:
        bags, edges = [], []
        prev_root = None
        for comp in comps:
            sub_bags, sub_edges = _decompose_piece(
                induced_subgraph(g, comp), finder, beta, c, alpha, certified)
            off = len(bags)
            bags.extend(sub_bags)
            edges.extend((i + off, j + off) for (i, j) in sub_edges)
            if prev_root is not None:
                edges.append((prev_root, off))
            prev_root = off if prev_root is None else prev_root
        return bags, edges

    n = len(g.nodes)
    if n == 1:
        return [set(g.nodes)], []

    sep, side_a, side_b = finder(g)
    _check_separator(g, sep, side_a, side_b)
    if certified:
        if len(sep) > beta * n ** c + 1e-9:
            raise InvalidSeparator(
                f"separator of size {len(sep)} exceeds the certified {beta}*{n}^{c}")
        if max(len(side_a), len(side_b)) > alpha * n + 1e-9:
            raise InvalidSeparator(
                f"side of size {max(len(side_a), len(side_b))} exceeds the certified {alpha}*{n}")

    if not side_a and not side_b:
        return [set(g.nodes)], []
    if not side_a or not side_b:
        only = side_a or side_b
        bags, edges = _decompose_piece(
            induced_subgraph(g, only), finder, beta, c, alpha, certified)
        return [b | sep for b in bags], edges

    bags_a, edges_a = _decompose_piece(
        induced_subgraph(g, side_a), finder, beta, c, alpha, certified)
    bags_b, edges_b = _decompose_piece(
        induced_subgraph(g, side_b), finder, beta, c, alpha, certified)
    off = len(bags_a)
    bags = [b | sep for b in bags_a] + [b | sep for b in bags_b]
    edges = list(edges_a)
    edges.extend((i + off, j + off) for (i, j) in edges_b)
    edges.append((0, off))
    return bags, edges


def restrict_decomposition(td, keep):
    """Decomposition induced on a node subset.

    Bags are intersected with `keep`; emptied bags are removed and each
    surviving bag reattached to its nearest surviving ancestor, which
    preserves the three decomposition properties for the subgraph.
    """
    keep = frozenset(keep)
    m = len(td.bags)
    new_bags = [b & keep for b in td.bags]
    if all(new_bags):
        return TreeDecomposition(new_bags, td.tree_edges)

    adj = {i: [] for i in range(m)}
    for (i, j) in td.tree_edges:
        adj[i].append(j)
        adj[j].append(i)
    order_bfs = _bfs_order(adj, m)
    parent = {0: None}
    for i in order_bfs:
        for j in adj[i]:
            if j not in parent:
                parent[j] = i

    # nearest surviving ancestor (inclusive), walking top-down
    up = {}
    kept = []
    edges = []
    chain_roots = []
    for i in order_bfs:
        p = parent[i]
        above = up[p] if p is not None else None
        if new_bags[i]:
            kept.append(i)
            up[i] = i
            if above is not None:
                edges.append((above, i))
            else:
                chain_roots.append(i)
        else:
            up[i] = above
    if not kept:
        raise InputError("restriction removes every bag")
    for a, b in zip(chain_roots, chain_roots[1:]):
        edges.append((a, b))

    index = {i: k for k, i in enumerate(kept)}
    return TreeDecomposition([new_bags[i] for i in kept],
                             [(index[a], index[b]) for (a, b) in edges])


def _bfs_order(adj, m):
    order = []
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            order.append(i)
            for j in sorted(adj[i]):
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    if len(order) != m:
        raise InvalidDecomposition("bag tree is not connected")
    return order
