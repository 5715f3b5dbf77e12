import random
from itertools import combinations

import pytest

from gcsg import (
    build_graph,
    bind_valuation,
    check_idm,
    check_separator_additivity,
    coordination_value,
    correlation_value,
    edge_sum_value,
    modularity_value,
    path_graph,
    star_graph,
    table_value,
)
from gcsg.errors import (
    EmptyEdgeSet,
    MissingEntry,
    MissingLabels,
    MissingWeights,
    SeparationViolated,
    TooLarge,
)
from gcsg.valuation import ValuationSpec
from tests.conftest import family_instances, idm_fixtures


def test_edge_sum_examples(t3):
    assert edge_sum_value(t3, {0, 1, 2}) == 1
    assert edge_sum_value(t3, frozenset()) == 0
    assert edge_sum_value(t3, {1, 2}) == 3


def test_edge_sum_needs_weights():
    g = path_graph(2)
    with pytest.raises(MissingWeights):
        edge_sum_value(g, {0, 1})


@pytest.mark.parametrize("label,coalition,expected", [
    ("+", {0, 1}, 1),  # positive edge inside
    ("-", {0}, 1),     # negative edge leaving
    ("-", {0, 1}, 0),  # negative edge fully inside
])
def test_correlation_single_edge(label, coalition, expected):
    g = build_graph([0, 1], [(0, 1, None, label)])
    assert correlation_value(g, coalition) == expected


def test_correlation_needs_labels():
    with pytest.raises(MissingLabels):
        correlation_value(path_graph(2), {0})


def _coordination_oracle(g, c):
    """Independent route: ordered triples (i, j, k) forming a triangle
    with i, j inside and k outside."""
    c = frozenset(c)
    count = 0
    for i in c:
        for j in c:
            for k in g.node_set - c:
                if (g.has_edge(i, j) and g.has_edge(i, k) and g.has_edge(j, k)):
                    count += 1
    return count


def test_coordination_triangle():
    k3 = build_graph([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    assert coordination_value(k3, {0, 1}) == 2
    assert coordination_value(k3, {0, 1, 2}) == 0  # no outsider
    assert coordination_value(k3, frozenset()) == 0


def test_coordination_triangle_free_graphs_score_zero():
    # no mutually-adjacent neighbour pairs exist without a triangle
    assert coordination_value(path_graph(3), {0, 1}) == 0
    assert coordination_value(star_graph(4), {0, 1}) == 0


def test_coordination_counts_per_triangle():
    diamond = build_graph(range(4), [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    # both triangles have exactly two corners inside {1,2}
    assert coordination_value(diamond, {1, 2}) == 4
    assert coordination_value(diamond, {0, 3}) == 0


def test_coordination_matches_triple_oracle():
    rng = random.Random(5)
    for name, g in family_instances(7, seed=3):
        nodes = sorted(g.node_set)
        for _ in range(5):
            c = frozenset(x for x in nodes if rng.random() < 0.5)
            assert coordination_value(g, c) == _coordination_oracle(g, c), name


def test_modularity_single_edge():
    g = path_graph(2)
    assert modularity_value(g, {0, 1}) == 0.75
    assert modularity_value(g, frozenset()) == 0
    assert modularity_value(g, {0}) == -0.25


def test_modularity_needs_edges():
    with pytest.raises(EmptyEdgeSet):
        modularity_value(build_graph([0, 1], []), {0})


def test_table_value():
    spec = ValuationSpec("table", {
        frozenset(): 0.0, frozenset({0}): 1.0,
        frozenset({1}): 2.0, frozenset({0, 1}): 5.0,
    })
    assert table_value(spec, {0, 1}) == 5
    assert table_value(spec, frozenset()) == 0
    with pytest.raises(MissingEntry):
        table_value(spec, {2})


def test_empty_coalition_is_worthless():
    for name, g in family_instances(5):
        for kind, gg in idm_fixtures(g):
            assert bind_valuation(gg, kind)(frozenset()) == 0, (name, kind)
        if g.edges:
            assert modularity_value(g, frozenset()) == 0, name


def test_idm_fixtures_pass_check():
    for name, g in family_instances(7, seed=1):
        for kind, gg in idm_fixtures(g, seed=2):
            report = check_idm(gg, bind_valuation(gg, kind))
            assert report.ok, (name, kind, report.describe())


def test_modularity_violates_idm_on_path():
    g = path_graph(3)
    report = check_idm(g, bind_valuation(g, "modularity"))
    assert not report.ok
    assert report.pair == (0, 2)
    # first violation in increasing-cardinality order: the empty context
    assert report.context == ()
    assert report.lhs == -0.0625 and report.rhs == -0.1875


def test_idm_vacuous_on_complete_graph():
    k3 = build_graph([0, 1, 2], [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    report = check_idm(k3, bind_valuation(k3, "edge_sum"))
    assert report.ok and report.pairs_checked == 0


def test_idm_size_guard():
    g = path_graph(13)
    with pytest.raises(TooLarge):
        check_idm(g, bind_valuation(g, "coordination"))


def test_separator_additivity_examples():
    g = build_graph([0, 1, 2], [(0, 1, 5), (1, 2, 7)])
    v = bind_valuation(g, "edge_sum")
    assert check_separator_additivity(g, v, {0, 1}, {1, 2})
    assert check_separator_additivity(g, v, {0, 1}, {0, 1})
    assert check_separator_additivity(g, v, {1}, {0, 1})


def test_separator_additivity_precondition():
    g = build_graph([0, 1, 2], [(0, 1, 5), (1, 2, 7)])
    v = bind_valuation(g, "edge_sum")
    with pytest.raises(SeparationViolated):
        check_separator_additivity(g, v, {0}, {1})


def test_separator_additivity_exhaustive_small():
    """Crossing-free (A, B) pairs satisfy the marginal identity exactly."""
    for name, g in family_instances(5, seed=4, randoms=2):
        nodes = sorted(g.node_set)
        subsets = []
        for size in range(len(nodes) + 1):
            subsets.extend(frozenset(c) for c in combinations(nodes, size))
        for kind, gg in idm_fixtures(g, seed=5):
            v = bind_valuation(gg, kind)
            for a in subsets:
                for b in subsets:
                    crossing = any(y in (b - a) for x in (a - b)
                                   for y in gg.adjacency[x])
                    if crossing:
                        continue
                    assert v(a) - v(a & b) == v(a | b) - v(b), (name, kind, a, b)


def test_disconnected_parts_add_up():
    """With no edges between two node sets, their union's value is the sum."""
    g = build_graph(range(5), [(0, 1, 3), (3, 4, -2)])
    for kind, gg in idm_fixtures(g, seed=6):
        v = bind_valuation(gg, kind)
        a, b = frozenset({0, 1}), frozenset({3, 4})
        assert v(a | b) == v(a) + v(b), kind


def test_separator_additivity_can_return_false():
    # modularity's squared term breaks the identity without breaking the
    # precondition, so the checker reports False rather than raising
    g = path_graph(3)
    v = bind_valuation(g, "modularity")
    assert check_separator_additivity(g, v, {0}, {2}) is False
