"""Generators for the benchmark graph families: path, cycle, star, tree,
grid and sparse random graphs, plus seeded weight/label decoration."""

import random

from .errors import InputError
from .graph import build_graph

FAMILY_NAMES = ("path", "cycle", "star", "tree", "grid", "random")


def path_graph(n):
    return build_graph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise InputError(f"cycle needs at least 3 nodes, got {n}")
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return build_graph(range(n), edges)


def star_graph(n):
    """Node 0 is the hub, 1..n-1 are leaves."""
    return build_graph(range(n), [(0, i) for i in range(1, n)])


def grid_graph(rows, cols):
    """rows x cols grid, node id = row * cols + col (row-major)."""
    if rows < 1 or cols < 1:
        raise InputError("grid dimensions must be positive")
    n = rows * cols
    edges = []
    for r in range(rows):
        for c in range(cols):
            x = r * cols + c
            if c + 1 < cols:
                edges.append((x, x + 1))
            if r + 1 < rows:
                edges.append((x, x + cols))
    return build_graph(range(n), edges)


def grid_dims(n):
    """Deterministic r x c factorisation with r the largest divisor <= sqrt(n)."""
    r = 1
    d = 1
    while d * d <= n:
        if n % d == 0:
            r = d
        d += 1
    return r, n // r


def random_tree(n, rng):
    """Uniform-ish random tree: attach each node to a random earlier one."""
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return build_graph(range(n), edges)


def random_graph(n, e, rng):
    """Connected-ish sparse random graph: a random tree plus extra edges."""
    max_e = n * (n - 1) // 2
    e = min(e, max_e)
    chosen = set()
    if e >= n - 1:
        for i in range(1, n):
            j = rng.randrange(i)
            chosen.add((j, i))
    while len(chosen) < e:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        chosen.add((u, v) if u < v else (v, u))
    return build_graph(range(n), sorted(chosen))


def family_graph(name, n, rng=None):
    """Build one instance of a named family at size n."""
    if name == "path":
        return path_graph(n)
    if name == "cycle":
        return cycle_graph(n)
    if name == "star":
        return star_graph(n)
    if name == "tree":
        return random_tree(n, rng or random.Random(0))
    if name == "grid":
        r, c = grid_dims(n)
        return grid_graph(r, c)
    if name == "random":
        r = rng or random.Random(0)
        return random_graph(n, 2 * n, r)
    raise InputError(f"unknown graph family {name!r}")


def with_random_weights(g, rng, lo=-5, hi=5):
    """Copy of g with integer edge weights drawn uniformly from [lo, hi]."""
    entries = [(u, v, rng.randint(lo, hi)) for (u, v) in g.edges]
    return build_graph(g.nodes, entries)


def with_random_labels(g, rng):
    """Copy of g with uniform random +/- edge labels."""
    entries = [(u, v, None, rng.choice("+-")) for (u, v) in g.edges]
    return build_graph(g.nodes, entries)
