"""Decomposition objects, validators, and the exact width searches."""

import pytest

from rankexpand.decompositions import (RankDecomposition, TreeDecomposition,
                                       brute_force_linear_rank_width,
                                       brute_force_rank_width, rd_validate,
                                       rd_width, subcubic_tree_shapes,
                                       td_validate, td_width)
from rankexpand.graphs import Graph, GraphError, SizeLimitError, is_caterpillar
from rankexpand.smallgraphs import (CYCLE_5, NET, Q_OBSTRUCTION,
                                    complete_graph, cycle_graph,
                                    graphs_of_order, path_graph, star_graph)


def test_tree_shape_counts_match_double_factorial():
    # (2n-5)!! shapes on n leaves
    assert [len(subcubic_tree_shapes(n)) for n in (2, 3, 4, 5, 6)] == \
        [1, 1, 3, 15, 105]


def test_known_rank_widths():
    for g, expected in [(path_graph(5), 1), (star_graph(4), 1),
                        (complete_graph(5), 1), (CYCLE_5, 2),
                        (cycle_graph(4), 1), (NET, 1), (Q_OBSTRUCTION, 1)]:
        width, witness = brute_force_rank_width(g)
        assert width == expected
        assert rd_width(g, witness) == expected


def test_known_linear_rank_widths():
    for g, expected in [(path_graph(5), 1), (star_graph(4), 1),
                        (complete_graph(5), 1), (CYCLE_5, 2),
                        (NET, 2), (Q_OBSTRUCTION, 2)]:
        width, witness = brute_force_linear_rank_width(g)
        assert width == expected
        assert rd_width(g, witness) == expected
        assert witness.linear and is_caterpillar(witness.tree)


def test_rank_width_never_exceeds_linear_variant():
    for n in range(2, 7):
        for g in graphs_of_order(n, connected=True):
            assert brute_force_rank_width(g)[0] <= \
                brute_force_linear_rank_width(g)[0]


def test_width_search_size_guard():
    big = path_graph(9)
    with pytest.raises(SizeLimitError):
        brute_force_rank_width(big)
    with pytest.raises(SizeLimitError):
        brute_force_linear_rank_width(big)
    assert brute_force_rank_width(big, limit=9)[0] == 1


def test_trivial_graphs():
    assert brute_force_rank_width(Graph())[0] == 0
    assert brute_force_rank_width(Graph([7]))[0] == 0
    width, witness = brute_force_rank_width(Graph([0, 1], [(0, 1)]))
    assert width == 1
    assert rd_validate(Graph([0, 1], [(0, 1)]), witness)[0]


def test_rd_validate_rejects_bad_maps():
    g = path_graph(3)
    tree = Graph.from_edges([("L0", "I0"), ("L1", "I0"), ("L2", "I0")])
    good = RankDecomposition(tree=tree,
                             leaf_map={0: "L0", 1: "L1", 2: "L2"})
    assert rd_validate(g, good) == (True, [])
    missing = RankDecomposition(tree=tree, leaf_map={0: "L0", 1: "L1"})
    ok, problems = rd_validate(g, missing)
    assert not ok and any("keys" in p for p in problems)
    doubled = RankDecomposition(tree=tree,
                                leaf_map={0: "L0", 1: "L0", 2: "L2"})
    assert not rd_validate(g, doubled)[0]
    onto_inner = RankDecomposition(tree=tree,
                                   leaf_map={0: "L0", 1: "L1", 2: "I0"})
    assert not rd_validate(g, onto_inner)[0]
    with pytest.raises(GraphError):
        rd_width(g, missing)


def test_td_validate_axioms():
    g = path_graph(3)
    tree = Graph(["b0", "b1"], [("b0", "b1")])
    good = TreeDecomposition(tree, {"b0": frozenset({0, 1}),
                                    "b1": frozenset({1, 2})})
    assert td_validate(g, good) == (True, [])
    assert td_width(good) == 1

    uncovered = TreeDecomposition(tree, {"b0": frozenset({0, 1}),
                                         "b1": frozenset({1})})
    ok, problems = td_validate(g, uncovered)
    assert not ok and any("(T1)" in p for p in problems)

    no_edge = TreeDecomposition(tree, {"b0": frozenset({0, 2}),
                                       "b1": frozenset({1})})
    ok, problems = td_validate(g, no_edge)
    assert not ok and any("(T2)" in p for p in problems)

    tree3 = Graph(["b0", "b1", "b2"], [("b0", "b1"), ("b1", "b2")])
    broken = TreeDecomposition(tree3, {"b0": frozenset({0, 1}),
                                       "b1": frozenset({1, 2}),
                                       "b2": frozenset({0, 2})})
    ok, problems = td_validate(g, broken)
    assert not ok and any("(T3)" in p for p in problems)


def test_td_path_flag_checked():
    g = path_graph(2)
    tree = star_graph(2)
    bags = {0: frozenset({0, 1}), 1: frozenset({0}), 2: frozenset({1})}
    D = TreeDecomposition(tree, bags, path=True)
    assert td_validate(g, D)[0]  # a 3-vertex star is still a path
    claw = star_graph(3)
    bags = {0: frozenset({0, 1}), 1: frozenset({0}), 2: frozenset({1}),
            3: frozenset({0})}
    D = TreeDecomposition(claw, bags, path=True)
    ok, problems = td_validate(g, D)
    assert not ok and any("path" in p for p in problems)


def test_linear_witness_is_lexicographically_stable():
    g = cycle_graph(4)
    w1 = brute_force_linear_rank_width(g)[1]
    w2 = brute_force_linear_rank_width(g)[1]
    assert w1 == w2
    assert rd_width(g, w1) == 1
