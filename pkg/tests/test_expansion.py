"""The expansion construction, its verification, and the end-to-end driver."""

import pytest

from conftest import edge_key
from rankexpand.decompositions import (RankDecomposition, td_validate,
                                       td_width)
from rankexpand.expansion import (ExpansionError, assign_bases,
                                  build_expansion, coefficient_matrix,
                                  expansion_tree_decomposition,
                                  forest_tree_decomposition, longest_path_leaf,
                                  orient_from_leaf, path_reduction_check,
                                  rank_expansion, theorem_driver,
                                  verify_certificate, verify_pivot_minor)
from rankexpand.graphs import Graph, is_path
from rankexpand.smallgraphs import (cycle_graph, graphs_of_order, path_graph,
                                    star_graph)

D_KEY = edge_key("u1", "w")
E_KEY = edge_key("w", "v")
F1_KEY = edge_key("v", "w1")
F2_KEY = edge_key("v", "w2")


@pytest.fixture
def worked(worked_graph, worked_decomposition, worked_overrides):
    O = orient_from_leaf(worked_graph, worked_decomposition, root_leaf="x")
    A = assign_bases(worked_graph, O, worked_overrides)
    return worked_graph, O, A


def test_orientation_sides(worked):
    _, O, _ = worked
    assert O.side[E_KEY] == frozenset({"a4", "a5", "a6", "a7"})
    assert O.side[D_KEY] == frozenset({"a3", "a4", "a5", "a6", "a7"})
    assert O.side[F1_KEY] == frozenset({"a4", "a5"})
    assert O.inner_edges() == (D_KEY, E_KEY, F1_KEY, F2_KEY)


def test_documented_bases_and_expression_matrix(worked):
    _, _, A = worked
    assert A.bases[D_KEY] == ("a4", "a5")
    assert A.bases[E_KEY] == ("a4", "a5", "a7")
    Pe = A.expressed[E_KEY]
    assert Pe.rows == ("a4", "a5", "a6", "a7")
    assert Pe.cols == ("a4", "a5", "a7")
    assert Pe.to_lists() == [[1, 0, 0], [0, 1, 0], [0, 1, 1], [0, 0, 1]]


def test_coefficient_matrices(worked):
    _, O, A = worked
    assert coefficient_matrix(A, O, F1_KEY).to_lists() == [[1, 0, 0], [0, 1, 0]]
    assert coefficient_matrix(A, O, F2_KEY).to_lists() == [[0, 1, 1], [0, 0, 1]]


def test_default_bases_without_overrides(worked_graph, worked_decomposition):
    # the greedy completion is deterministic and feeds a valid construction
    O = orient_from_leaf(worked_graph, worked_decomposition, root_leaf="x")
    A = assign_bases(worked_graph, O)
    assert A.bases[E_KEY] == ("a4", "a5", "a6")
    R = build_expansion(worked_graph, O, A)
    assert verify_pivot_minor(R, worked_graph) == (True, [])


def test_expansion_size_and_blocks(worked):
    G, O, A = worked
    R = build_expansion(G, O, A)
    assert R.graph.n == 25
    assert len(R.inner_edges) == 4 == G.n - 3
    assert R.graph.n == G.n + 2 * sum(len(A.bases[e]) for e in R.inner_edges)
    k = 3
    assert R.graph.n <= (2 * k + 1) * G.n - 6 * k


def test_sector_edges_exact_set(worked):
    G, O, A = worked
    R = build_expansion(G, O, A)
    sector = R.sectors["v"]
    inside = {frozenset(e) for e in R.graph.edges
              if e[0] in sector and e[1] in sector}
    expected = {
        frozenset({("a4", F1_KEY, "v"), ("a4", E_KEY, "v")}),
        frozenset({("a5", F1_KEY, "v"), ("a5", E_KEY, "v")}),
        frozenset({("a7", F2_KEY, "v"), ("a7", E_KEY, "v")}),
        frozenset({("a6", F2_KEY, "v"), ("a5", E_KEY, "v")}),
        frozenset({("a6", F2_KEY, "v"), ("a7", E_KEY, "v")}),
        frozenset({("a4", F1_KEY, "v"), ("a6", F2_KEY, "v")}),
        frozenset({("a5", F1_KEY, "v"), ("a6", F2_KEY, "v")}),
    }
    assert inside == expected


def test_pivot_minor_and_path_reduction(worked):
    G, O, A = worked
    R = build_expansion(G, O, A)
    assert verify_pivot_minor(R, G) == (True, [])
    assert path_reduction_check(R, G) == (True, [])


def test_tree_decomposition_bags_slide(worked_graph, worked_decomposition,
                                       reordered_overrides):
    O = orient_from_leaf(worked_graph, worked_decomposition, root_leaf="x")
    A = assign_bases(worked_graph, O, reordered_overrides)
    R = build_expansion(worked_graph, O, A)
    D = expansion_tree_decomposition(R)
    assert td_validate(R.graph, D) == (True, [])
    assert D.bags[("z", "v", 1)] == frozenset({
        ("a7", E_KEY, "w"), ("a5", E_KEY, "w"), ("a4", E_KEY, "w"),
        ("a7", E_KEY, "v")})
    assert td_width(D) <= 2 * 3


def test_triangle_expansion_is_triangle():
    K3 = Graph([1, 2, 3], [(1, 2), (2, 3), (1, 3)])
    cert = theorem_driver(K3)
    assert cert.expansion.n == 3 and cert.expansion.m == 3
    assert cert.pivot_vertices == frozenset()
    assert verify_certificate(cert) == (True, [])


def test_override_validation(worked_graph, worked_decomposition, worked_overrides):
    O = orient_from_leaf(worked_graph, worked_decomposition, root_leaf="x")
    bad = dict(worked_overrides)
    bad[E_KEY] = ("a4", "a5", "a6", "a7")  # dependent, cannot be a basis
    with pytest.raises(ExpansionError):
        assign_bases(worked_graph, O, bad)
    bad[E_KEY] = ("a4", "a5")  # does not span
    with pytest.raises(ExpansionError):
        assign_bases(worked_graph, O, bad)
    with pytest.raises(ExpansionError):
        assign_bases(worked_graph, O, {("no", "edge"): ("a4",)})


def test_expansion_rejects_tiny_or_disconnected():
    with pytest.raises(ExpansionError):
        rank_expansion(path_graph(2),
                       RankDecomposition(tree=Graph(["L0", "L1"],
                                                    [("L0", "L1")]),
                                         leaf_map={0: "L0", 1: "L1"}))


def test_chain_coefficient_identity(worked):
    # composing the per-edge coefficient matrices walks the whole chain
    G, O, A = worked
    adj = G.adjacency_matrix()
    root_edge = O.outgoing["x"][0]
    inside = O.side[root_edge]
    outside = tuple(v for v in G.vertices if v not in inside)
    chain = coefficient_matrix(A, O, F1_KEY) @ \
        coefficient_matrix(A, O, E_KEY) @ coefficient_matrix(A, O, D_KEY)
    lhs = chain @ adj.submatrix(A.bases[root_edge], outside)
    assert lhs == adj.submatrix(A.bases[F1_KEY], outside)


def test_driver_connected_sweep_small():
    for n in range(3, 6):
        for g in graphs_of_order(n, connected=True):
            for linear in (False, True):
                cert = theorem_driver(g, linear=linear)
                assert verify_certificate(cert) == (True, []), sorted(g.edges)
                if linear:
                    assert cert.decomposition.path


def test_driver_disconnected_and_degenerate():
    cases = [
        Graph(),
        Graph(range(3)),                                  # edgeless
        Graph(range(4), [(0, 1), (2, 3)]),                # forest pieces
        Graph(range(8), [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
                         (6, 7)]),                        # two triangles + edge
        Graph(range(10), [(i, (i + 1) % 5) for i in range(5)] +
              [(5 + i, 5 + (i + 1) % 5) for i in range(5)]),  # two C5s
    ]
    for g in cases:
        for linear in (False, True):
            cert = theorem_driver(g, linear=linear)
            assert verify_certificate(cert) == (True, []), sorted(g.edges)


def test_driver_rejects_width_above_claim():
    with pytest.raises(ExpansionError):
        theorem_driver(cycle_graph(5), k=1)


def test_linear_driver_emits_paths():
    cert = theorem_driver(star_graph(4), linear=True)
    assert cert.decomposition.path and is_path(cert.decomposition.tree)
    assert td_width(cert.decomposition) <= cert.k + 1


def test_forest_tree_decomposition():
    f = Graph(range(7), [(0, 1), (1, 2), (3, 4), (5, 6)])
    D = forest_tree_decomposition(f)
    assert td_validate(f, D) == (True, [])
    assert td_width(D) <= 1


def test_longest_path_leaf_is_a_leaf():
    t = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("b", "e")])
    end = longest_path_leaf(t)
    assert t.degree(end) == 1


def test_custom_root_leaf(worked_graph, worked_decomposition):
    O = orient_from_leaf(worked_graph, worked_decomposition, root_leaf="La7")
    A = assign_bases(worked_graph, O)
    R = build_expansion(worked_graph, O, A)
    assert verify_pivot_minor(R, worked_graph) == (True, [])
    with pytest.raises(ExpansionError):
        orient_from_leaf(worked_graph, worked_decomposition, root_leaf="w")
