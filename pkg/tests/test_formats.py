"""Serialization: graph6, edge lists, JSON documents, DOT output."""

import json
import random
from itertools import combinations

import networkx as nx
import pytest

from rankexpand.characterize import path_witness_lrw1, validate_witness
from rankexpand.decompositions import brute_force_rank_width
from rankexpand.expansion import (rank_expansion, theorem_driver,
                                  verify_certificate)
from rankexpand.formats import (FormatError, certificate_from_json,
                                certificate_to_json, dumps, emit_dot,
                                emit_edge_list, emit_expansion_dot, emit_graph,
                                emit_graph6, graph_from_json, graph_to_json,
                                parse_edge_list, parse_graph, parse_graph6,
                                rank_decomposition_from_json,
                                rank_decomposition_to_json,
                                tree_decomposition_from_json,
                                tree_decomposition_to_json, witness_from_json,
                                witness_to_json)
from rankexpand.graphs import Graph
from rankexpand.smallgraphs import cycle_graph, path_graph, star_graph


def random_graph(n, rng, p=0.5):
    edges = [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p]
    return Graph(range(n), edges)


def test_graph6_known_strings():
    c5 = parse_graph6("Dhc")
    assert c5 == cycle_graph(5)
    k14 = parse_graph6("D?{")
    assert sorted(k14.edges) == [(0, 4), (1, 4), (2, 4), (3, 4)]
    assert parse_graph6(">>graph6<<Dhc") == c5
    assert emit_graph6(cycle_graph(5)) == "Dhc"


def test_graph6_matches_reference_library():
    rng = random.Random(31)
    for _ in range(100):
        g = random_graph(rng.randrange(1, 11), rng)
        text = emit_graph6(g)
        ref = nx.from_graph6_bytes(text.encode())
        assert sorted(map(tuple, map(sorted, ref.edges()))) == sorted(g.edges)
        assert parse_graph6(text) == g


def test_graph6_malformed_inputs():
    with pytest.raises(FormatError):
        parse_graph6("")
    with pytest.raises(FormatError):
        parse_graph6("D")  # truncated body
    with pytest.raises(FormatError):
        parse_graph6("Dhc\x01")
    with pytest.raises(FormatError):
        emit_graph6(Graph(range(63)))
    # non-integer labels are fine: the encoder relabels in sorted order
    assert parse_graph6(emit_graph6(Graph(["a", "b"], [("a", "b")]))) == \
        path_graph(2)


def test_edge_list_parsing():
    g = parse_edge_list("1 2\n2 3\n")
    assert sorted(g.edges) == [(1, 2), (2, 3)]
    g = parse_edge_list("# comment\nn=4\n")
    assert g.n == 4 and g.m == 0
    g = parse_edge_list("a b\nc\n")
    assert set(g.vertices) == {"a", "b", "c"} and g.m == 1
    with pytest.raises(FormatError):
        parse_edge_list("1 2 3\n")
    with pytest.raises(FormatError):
        parse_edge_list("1 1\n")


def test_edge_list_roundtrip():
    rng = random.Random(37)
    for _ in range(100):
        g = random_graph(rng.randrange(0, 11), rng)
        assert parse_edge_list(emit_edge_list(g)) == g
    text = emit_edge_list(Graph(range(3)))
    assert "n=3" in text


def test_format_dispatch():
    g = path_graph(4)
    for fmt in ("graph6", "edge-list", "json"):
        assert parse_graph(emit_graph(g, fmt), fmt) == g
    with pytest.raises(FormatError):
        parse_graph("Cr", "nonsense")


def test_json_graph_roundtrip_mixed_labels():
    g = Graph([1, "x", (2, "y")], [(1, "x"), ("x", (2, "y"))])
    doc = graph_to_json(g)
    assert doc["schema"] == "graph/1"
    assert graph_from_json(json.loads(dumps(doc))) == g
    with pytest.raises(FormatError):
        graph_from_json({"schema": "graph/2", "vertices": [], "edges": []})


def test_json_decomposition_roundtrip():
    g = star_graph(4)
    width, D = brute_force_rank_width(g)
    doc = rank_decomposition_to_json(D)
    assert doc["schema"] == "rank-decomposition/1"
    back = rank_decomposition_from_json(json.loads(dumps(doc)))
    assert back == D


def test_json_certificate_roundtrip():
    cert = theorem_driver(cycle_graph(5))
    doc = certificate_to_json(cert)
    assert doc["schema"] == "certificate/1"
    back = certificate_from_json(json.loads(dumps(doc)))
    assert back == cert
    assert verify_certificate(back) == (True, [])
    td_doc = tree_decomposition_to_json(cert.decomposition)
    assert tree_decomposition_from_json(td_doc) == cert.decomposition


def test_json_witness_roundtrip():
    g = path_graph(5)
    W = path_witness_lrw1(g)
    doc = witness_to_json(W, g)
    assert doc["schema"] == "witness/1"
    W2, target = witness_from_json(json.loads(dumps(doc)))
    assert target == g
    assert validate_witness(W2, target) == (True, [])


def test_dumps_is_deterministic():
    cert = theorem_driver(cycle_graph(5))
    a = dumps(certificate_to_json(cert))
    b = dumps(certificate_to_json(theorem_driver(cycle_graph(5))))
    assert a == b and a.endswith("\n")


def test_dot_output():
    text = emit_dot(path_graph(3))
    assert text.startswith("graph G {") and "v0 -- v1;" in text
    g = cycle_graph(5)
    _, D = brute_force_rank_width(g)
    dot = emit_expansion_dot(rank_expansion(g, D))
    assert "subgraph cluster_0" in dot and "color=" in dot
