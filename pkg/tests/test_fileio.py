import json

import pytest

from gcsg import (
    min_fill_decompose,
    parse_decomposition,
    parse_problem,
    path_graph,
    serialize_decomposition,
    serialize_problem,
    solve,
    serialize_result,
    validate,
)
from gcsg.errors import ParseError, UnknownEndpoint, ValidationError
from gcsg.valuation import ValuationSpec

T3_TEXT = json.dumps({
    "graph": {
        "nodes": [0, 1, 2],
        "edges": [
            {"u": 0, "v": 1, "weight": 2},
            {"u": 1, "v": 2, "weight": 3},
            {"u": 0, "v": 2, "weight": -4},
        ],
    },
    "valuation": {"kind": "edge_sum"},
})


def test_parse_triangle_fixture(t3):
    problem = parse_problem(T3_TEXT)
    assert problem.graph == t3
    assert problem.valuation == ValuationSpec("edge_sum")
    assert problem.grid is None


def test_problem_round_trip(t3):
    problem = parse_problem(T3_TEXT)
    again = parse_problem(serialize_problem(problem))
    assert again == problem
    # twice more through the serializer is a fixed point
    assert serialize_problem(again) == serialize_problem(problem)


def test_parse_rejects_bad_json():
    with pytest.raises(ParseError) as err:
        parse_problem("{not json")
    assert "line 1" in str(err.value)


def test_parse_unknown_endpoint_has_field_path():
    doc = json.loads(T3_TEXT)
    doc["graph"]["edges"][1] = {"u": 1, "v": 9, "weight": 3}
    with pytest.raises(UnknownEndpoint) as err:
        parse_problem(json.dumps(doc))
    assert "graph.edges[1]" in str(err.value)


def test_parse_table_requires_empty_set():
    doc = {
        "graph": {"nodes": [0], "edges": []},
        "valuation": {"kind": "table", "table": [{"set": [0], "value": 1}]},
    }
    with pytest.raises(ValidationError) as err:
        parse_problem(json.dumps(doc))
    assert "table must define the empty set with value 0" in str(err.value)


def test_parse_table_must_cover_power_set():
    doc = {
        "graph": {"nodes": [0, 1], "edges": []},
        "valuation": {"kind": "table", "table": [
            {"set": [], "value": 0}, {"set": [0], "value": 1},
        ]},
    }
    with pytest.raises(ValidationError) as err:
        parse_problem(json.dumps(doc))
    assert "all 4 subsets" in str(err.value)


def test_parse_table_round_trip():
    doc = {
        "graph": {"nodes": [0, 1], "edges": []},
        "valuation": {"kind": "table", "table": [
            {"set": [], "value": 0}, {"set": [0], "value": 1},
            {"set": [1], "value": 2}, {"set": [0, 1], "value": 5},
        ]},
    }
    problem = parse_problem(json.dumps(doc))
    assert problem.valuation.table[frozenset({0, 1})] == 5
    assert parse_problem(serialize_problem(problem)) == problem


def test_parse_missing_valuation_kind():
    with pytest.raises(ValidationError) as err:
        parse_problem(json.dumps({"graph": {"nodes": [0]}, "valuation": {}}))
    assert "valuation.kind" in str(err.value)


def test_parse_edge_sum_requires_weights():
    doc = {
        "graph": {"nodes": [0, 1], "edges": [{"u": 0, "v": 1}]},
        "valuation": {"kind": "edge_sum"},
    }
    with pytest.raises(ValidationError) as err:
        parse_problem(json.dumps(doc))
    assert "edge weights" in str(err.value)


def test_parse_grid_metadata():
    doc = {
        "graph": {"nodes": [0, 1, 2, 3], "edges": [
            {"u": 0, "v": 1}, {"u": 2, "v": 3}, {"u": 0, "v": 2}, {"u": 1, "v": 3},
        ]},
        "valuation": {"kind": "coordination"},
        "grid": {"rows": 2, "cols": 2},
    }
    problem = parse_problem(json.dumps(doc))
    assert problem.grid == (2, 2)
    assert parse_problem(serialize_problem(problem)) == problem


def test_parse_grid_metadata_mismatch():
    doc = {
        "graph": {"nodes": [0, 1, 2], "edges": [{"u": 0, "v": 1}, {"u": 1, "v": 2}]},
        "valuation": {"kind": "coordination"},
        "grid": {"rows": 2, "cols": 2},
    }
    with pytest.raises(ValidationError) as err:
        parse_problem(json.dumps(doc))
    assert "grid" in str(err.value)


def test_decomposition_round_trip():
    g = path_graph(4)
    td = min_fill_decompose(g)
    text = serialize_decomposition(td)
    again = parse_decomposition(text)
    assert again == td
    assert validate(again, g).ok


def test_decomposition_rejects_malformed():
    with pytest.raises(ValidationError):
        parse_decomposition(json.dumps({"bags": "nope", "tree": []}))
    with pytest.raises(ValidationError):
        parse_decomposition(json.dumps({"bags": [[0]], "tree": [[0]]}))


def test_result_document(t3):
    res = solve(t3, "edge_sum", method="oracle")
    doc = json.loads(serialize_result(res))
    assert doc == {"blocks": [[0], [1, 2]], "value": 3}
    with_stats = json.loads(serialize_result(res, include_stats=True))
    assert with_stats["stats"]["algorithm"] == "oracle"
    assert "elapsed_ms" in with_stats["stats"]
    frozen = json.loads(serialize_result(res, include_stats=True, include_timing=False))
    assert "elapsed_ms" not in frozen["stats"]
