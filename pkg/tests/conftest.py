import random

import pytest

from gcsg import (
    build_graph,
    cycle_graph,
    grid_graph,
    path_graph,
    random_graph,
    star_graph,
    with_random_labels,
    with_random_weights,
)


@pytest.fixture
def t3():
    """Triangle fixture: weights 2, 3, -4; optimum {{0},{1,2}} worth 3."""
    return build_graph([0, 1, 2], [(0, 1, 2), (1, 2, 3), (0, 2, -4)])


def family_instances(max_n, seed=0, randoms=3):
    """Deterministic (name, graph) list over the benchmark families."""
    rng = random.Random(seed)
    out = []
    for n in range(1, max_n + 1):
        out.append((f"path{n}", path_graph(n)))
    for n in range(3, max_n + 1):
        out.append((f"cycle{n}", cycle_graph(n)))
        out.append((f"star{n}", star_graph(n)))
    for rows in (1, 2):
        for cols in range(2, max_n + 1):
            if rows * cols <= max_n and rows <= cols:
                out.append((f"grid{rows}x{cols}", grid_graph(rows, cols)))
    for k in range(randoms):
        n = rng.randint(3, max_n)
        out.append((f"random{k}n{n}", random_graph(n, 2 * n, rng)))
    return out


def idm_fixtures(g, seed=0):
    """The three IDM valuation kinds with decorated copies of g."""
    rng = random.Random(seed)
    return [
        ("edge_sum", with_random_weights(g, rng)),
        ("correlation", with_random_labels(g, rng)),
        ("coordination", g),
    ]
