"""Exact solvers for coalition structure generation over a graph.

Three procedures:

* solve_exhaustive — enumerates acyclic edge subsets (spanning forests)
  with a backtracking union-find; each forest's components form one
  candidate structure.
* solve_treedp — bottom-up dynamic program over a tree decomposition
  keyed by partitions of each bag's interface, then a top-down witness
  reconstruction.
* solve_oracle — enumerates every partition of the node set.

solve() dispatches per connected component; the componentwise shortcut
is only sound for valuations that are independent of disconnected
members, so it is disabled for the modularity and table kinds.

Everything here is deterministic: equal-value candidates are tie-broken
by smallest partition code.
"""

import math
import time
from dataclasses import dataclass

from .errors import (
    Disconnected,
    InputError,
    InternalCheckError,
    InvalidDecomposition,
    MethodNeedsDecomposition,
    MissingChildEntry,
    MissingWitness,
    TooLarge,
)
from .graph import (
    VALUE_TOL,
    connected_components,
    induced_subgraph,
    is_coalition_connected,
)
from .partition import (
    CoalitionStructure,
    encode,
    enumerate_partitions,
    restrict,
    split_connected,
    structure_value,
)
from .treedecomp import (
    build_scaffold,
    default_root,
    min_fill_decompose,
    make_grid_finder,
    greedy_separator,
    restrict_decomposition,
    separator_decompose,
    validate,
    width,
)
from .valuation import Valuation, bind_valuation

EXHAUSTIVE_CAP = 16
ORACLE_CAP = 12

METHODS = ("exhaustive", "treedp", "oracle")


@dataclass(frozen=True)
class SolveResult:
    structure: CoalitionStructure
    value: float
    stats: dict

    def to_dict(self, include_timing=True):
        stats = dict(self.stats)
        if not include_timing:
            stats.pop("elapsed_ms", None)
        val = self.value
        if float(val).is_integer():
            val = int(val)
        return {"blocks": [list(b) for b in self.structure.blocks],
                "value": val, "stats": stats}


def _finish(g, v, structure, value, stats):
    if structure.ground != g.node_set:
        raise InternalCheckError("solver output does not cover the node set")
    recomputed = structure_value(g, v, structure)
    if abs(recomputed - value) > VALUE_TOL:
        raise InternalCheckError(
            f"solver value {value} disagrees with its structure's value {recomputed}")
    return SolveResult(structure, value, stats)


def _partition_code_from_roots(nodes, find):
    labels = {}
    code = []
    for x in nodes:
        r = find(x)
        if r not in labels:
            labels[r] = len(labels)
        code.append(labels[r])
    return tuple(code)


def solve_exhaustive(g, v, cap=EXHAUSTIVE_CAP):
    """Search every acyclic edge subset; components are the candidates.

    Subsets that would close a cycle are pruned at the branching point,
    so the visit count equals the number of spanning forests of g and is
    bounded by C(e+n, n).
    """
    t0 = time.perf_counter()
    n = len(g.nodes)
    if n > cap:
        raise TooLarge(f"{n} nodes exceeds the exhaustive search cap {cap}")
    if not is_coalition_connected(g, g.node_set):
        raise Disconnected("exhaustive search expects a connected graph")
    if isinstance(v, str) or not callable(v):
        v = bind_valuation(g, v)

    edges = g.edges
    m = len(edges)
    parent = {x: x for x in g.nodes}
    members = {x: frozenset([x]) for x in g.nodes}
    value_of = {x: v(frozenset([x])) for x in g.nodes}

    def find(x):
        # no path compression: unions must be undoable in O(1)
        while parent[x] != x:
            x = parent[x]
        return x

    state = {
        "total": sum(value_of.values()),
        "candidates": 0,
        "best_value": -math.inf,
        "best_code": None,
        "best_blocks": None,
    }
    nodes = g.nodes

    def visit():
        state["candidates"] += 1
        total = state["total"]
        if total < state["best_value"]:
            return
        if total == state["best_value"]:
            code = _partition_code_from_roots(nodes, find)
            if code >= state["best_code"]:
                return
        else:
            code = _partition_code_from_roots(nodes, find)
        roots = {find(x) for x in nodes}
        state["best_value"] = total
        state["best_code"] = code
        state["best_blocks"] = [members[r] for r in roots]

    def explore(start):
        visit()
        for k in range(start, m):
            a, b = edges[k]
            ra, rb = find(a), find(b)
            if ra == rb:
                continue
            if len(members[ra]) < len(members[rb]) or (
                    len(members[ra]) == len(members[rb]) and rb < ra):
                ra, rb = rb, ra
            # ra absorbs rb
            old_members = members[ra]
            old_value = value_of[ra]
            merged = old_members | members[rb]
            merged_value = v(merged)
            delta = merged_value - old_value - value_of[rb]
            parent[rb] = ra
            members[ra] = merged
            value_of[ra] = merged_value
            state["total"] += delta
            explore(k + 1)
            state["total"] -= delta
            value_of[ra] = old_value
            members[ra] = old_members
            parent[rb] = rb

    explore(0)

    bound = math.comb(len(edges) + n, n)
    if state["candidates"] > bound:
        raise InternalCheckError(
            f"visited {state['candidates']} forests, above the C(e+n,n) bound {bound}")

    structure = CoalitionStructure.from_blocks(state["best_blocks"])
    stats = {
        "algorithm": "exhaustive",
        "candidates": state["candidates"],
        "elapsed_ms": (time.perf_counter() - t0) * 1000.0,
    }
    return _finish(g, v, structure, state["best_value"], stats)


def solve_oracle(g, v, cap=ORACLE_CAP):
    """Ground truth: evaluate every partition of the node set."""
    t0 = time.perf_counter()
    n = len(g.nodes)
    if n > cap:
        raise TooLarge(f"{n} nodes exceeds the oracle cap {cap}")
    if isinstance(v, str) or not callable(v):
        v = bind_valuation(g, v)

    best_value = -math.inf
    best = None
    count = 0
    for p in enumerate_partitions(g.node_set):
        count += 1
        val = structure_value(g, v, p)
        if val > best_value:
            best_value = val
            best = p
    if best is None:
        best = CoalitionStructure.empty()
        best_value = 0.0
    stats = {
        "algorithm": "oracle",
        "candidates": count,
        "elapsed_ms": (time.perf_counter() - t0) * 1000.0,
    }
    return _finish(g, v, best, best_value, stats)


@dataclass
class DPTable:
    """Per scaffold position: partition code of the interface -> (value, witness)."""
    entries: list
    evaluations: int

    def root_value(self):
        entry = self.entries[0].get(())
        if entry is None:
            raise MissingWitness("root table has no entry for the empty interface")
        return entry[0]


def dp_fill(g, v, scaffold, td):
    """Fill the per-bag tables bottom-up.

    For every partition of a bag, the score is the sum over blocks of the
    block value minus the value of its already-seen part, plus the child
    table entries matching the partition's restriction to each child
    interface. The maximum per interface code is kept, with the witness
    partition of the whole bag; ties keep the first (smallest-code)
    witness because partitions are enumerated in code order.
    """
    if isinstance(v, str) or not callable(v):
        v = bind_valuation(g, v)
    m = len(scaffold)
    tables = [dict() for _ in range(m)]
    evaluations = 0
    for pos in range(m - 1, -1, -1):
        bag = scaffold.bags[pos]
        fresh = scaffold.new_nodes[pos]
        interface = scaffold.interface[pos]
        kids = scaffold.children[pos]
        kid_interfaces = [scaffold.interface[k] for k in kids]
        table = tables[pos]
        for cand in enumerate_partitions(bag):
            evaluations += 1
            score = 0.0
            for block in cand.blocks:
                b = frozenset(block)
                score += v(b) - v(b - fresh)
            for k, ki in zip(kids, kid_interfaces):
                child_key = encode(restrict(cand, ki))
                child = tables[k].get(child_key)
                if child is None:
                    raise MissingChildEntry(
                        f"bag position {k} has no entry for interface code {child_key}")
                score += child[0]
            key = encode(restrict(cand, interface))
            cur = table.get(key)
            if cur is None or score > cur[0]:
                table[key] = (score, cand)
    return DPTable(tables, evaluations)


def dp_reconstruct(tables, scaffold):
    """Compose the stored witnesses top-down into a structure over N.

    Walks the bags in scaffold order keeping a union-find over the nodes
    placed so far; at each bag the accumulated partition restricted to
    the bag's interface selects the witness, whose blocks are then merged
    in. This is the incremental form of repeatedly unioning the witness
    with the running structure, which the agreement between witness and
    interface keeps well-defined.
    """
    parent = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    members = {}
    for pos in range(len(scaffold)):
        key = _partition_code_from_roots(sorted(scaffold.interface[pos]), find)
        entry = tables.entries[pos].get(key)
        if entry is None:
            raise MissingWitness(
                f"no witness at bag position {pos} for interface code {key}")
        witness = entry[1]
        for block in witness.blocks:
            first = block[0]
            if first not in parent:
                parent[first] = first
                members[first] = {first}
            for x in block[1:]:
                if x not in parent:
                    parent[x] = x
                    members[x] = {x}
                ra, rb = find(first), find(x)
                if ra != rb:
                    parent[rb] = ra
                    members[ra] |= members.pop(rb)
    blocks = [members[r] for r in parent if parent[r] == r]
    return CoalitionStructure.from_blocks(blocks)


def solve_treedp(g, v, td, root=None, split=False, _skip_validate=False):
    """Dynamic programming over a validated tree decomposition."""
    t0 = time.perf_counter()
    if not is_coalition_connected(g, g.node_set):
        raise Disconnected("the decomposition solver expects a connected graph")
    if not _skip_validate:
        report = validate(td, g)
        if not report.ok:
            raise InvalidDecomposition(report.describe())
    if isinstance(v, str) or not callable(v):
        v = bind_valuation(g, v)
    if root is None:
        root = default_root(td)
    scaffold = build_scaffold(td, root)
    tables = dp_fill(g, v, scaffold, td)
    value = tables.root_value()
    structure = dp_reconstruct(tables, scaffold)
    achieved = structure_value(g, v, structure)
    if abs(achieved - value) > VALUE_TOL:
        raise InternalCheckError(
            f"reconstructed structure scores {achieved}, root table says {value}")
    if split:
        structure = split_connected(g, structure)
    stats = {
        "algorithm": "treedp",
        "candidates": tables.evaluations,
        "bags": len(td.bags),
        "width": width(td),
        "elapsed_ms": (time.perf_counter() - t0) * 1000.0,
    }
    return _finish(g, v, structure, value, stats)


GRID_SEPARATOR_CONSTANTS = (1.0, 0.5, 0.5)


def _component_decomposition(sub, td, whole, comp, decomposition, separator, grid):
    if td is not None:
        return td if whole else restrict_decomposition(td, comp)
    if decomposition == "minfill":
        return min_fill_decompose(sub)
    if decomposition == "separator":
        if separator == "grid":
            if grid is None:
                raise InputError("the grid separator needs grid metadata (rows, cols)")
            finder = make_grid_finder(*grid)
            return separator_decompose(sub, finder, *GRID_SEPARATOR_CONSTANTS)
        if separator == "greedy":
            return separator_decompose(sub, greedy_separator)
        raise InputError(f"unknown separator finder {separator!r}")
    if decomposition is None:
        raise MethodNeedsDecomposition(
            "method 'treedp' needs a decomposition file or construction strategy")
    raise InputError(f"unknown decomposition strategy {decomposition!r}")


def solve(g, v, method="treedp", td=None, decomposition="minfill",
          separator="greedy", grid=None, split=False,
          exhaustive_cap=EXHAUSTIVE_CAP, oracle_cap=ORACLE_CAP):
    """Solve over an arbitrary (possibly disconnected) graph.

    IDM valuations are solved per connected component and the results
    combined; their total is the sum because disconnected coalitions
    contribute independently. For the non-IDM kinds (modularity, table)
    that shortcut is unsound, so the whole graph is solved in one piece,
    which restricts the usable method to the oracle when g is
    disconnected.
    """
    t0 = time.perf_counter()
    if method not in METHODS:
        raise InputError(f"unknown method {method!r}; expected one of {METHODS}")
    if isinstance(v, str) or not callable(v):
        v = bind_valuation(g, v)

    if not g.nodes:
        return SolveResult(CoalitionStructure.empty(), 0.0,
                           {"algorithm": method, "candidates": 0, "components": 0,
                            "elapsed_ms": (time.perf_counter() - t0) * 1000.0})

    # bare callables are trusted to be IDM; the built-in non-IDM kinds are known
    idm = v.is_idm if isinstance(v, Valuation) else True
    components = connected_components(g) if idm else [g.node_set]
    if not idm and method != "oracle" and not is_coalition_connected(g, g.node_set):
        raise Disconnected(
            "this valuation kind does not allow componentwise solving; "
            "use the oracle for disconnected graphs")

    blocks = []
    total = 0.0
    candidates = 0
    widths = []
    bags = 0
    for comp in components:
        whole = len(components) == 1 and comp == g.node_set
        sub = g if whole else induced_subgraph(g, comp)
        if method == "exhaustive":
            res = solve_exhaustive(sub, v, cap=exhaustive_cap)
        elif method == "oracle":
            res = solve_oracle(sub, v, cap=oracle_cap)
        else:
            comp_td = _component_decomposition(
                sub, td, whole, comp, decomposition, separator, grid)
            res = solve_treedp(sub, v, comp_td, split=split)
            widths.append(res.stats["width"])
            bags += res.stats["bags"]
        blocks.extend(res.structure.blocks)
        total += res.value
        candidates += res.stats["candidates"]

    structure = CoalitionStructure.from_blocks(blocks)
    if split:
        structure = split_connected(g, structure)
    stats = {
        "algorithm": method,
        "candidates": candidates,
        "components": len(components),
        "elapsed_ms": (time.perf_counter() - t0) * 1000.0,
    }
    if widths:
        stats["width"] = max(widths)
        stats["bags"] = bags
    return _finish(g, v, structure, total, stats)
