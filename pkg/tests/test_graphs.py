"""Graph transformations: local complementation, pivots, scripts, cut-rank."""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankexpand.gf2 import SingularError, principal_pivot
from rankexpand.graphs import (Graph, GraphError, ScriptError, apply_script,
                               are_isomorphic, connected_components, cut_rank,
                               delete_vertices, graph_from_adjacency,
                               induced_subgraph, is_caterpillar, is_connected,
                               is_path, is_subcubic_tree, is_tree,
                               local_complement, pivot_edge, pivot_script,
                               pivot_set, tree_path)
from rankexpand.smallgraphs import (complete_graph, cycle_graph,
                                    graphs_of_order, path_graph, star_graph)


def random_graph(n, rng, p=0.5):
    edges = [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p]
    return Graph(range(n), edges)


def test_basic_invariants():
    g = path_graph(4)
    assert g.n == 4 and g.m == 3
    assert g.degree(1) == 2
    with pytest.raises(GraphError):
        Graph([0], [(0, 0)])


def test_local_complement_path_center():
    g = path_graph(3)
    assert local_complement(g, 1) == complete_graph(3)
    assert local_complement(local_complement(g, 1), 1) == g


def test_pivot_pendant_path():
    # pivoting the edge of a pendant path swaps the two ends' roles
    g = Graph("auv", [("a", "u"), ("u", "v")])
    h = pivot_edge(g, "u", "v")
    assert h.edges == Graph("auv", [("a", "v"), ("u", "v")]).edges


def test_pivot_matches_triple_local_complement():
    rng = random.Random(3)
    for _ in range(60):
        g = random_graph(rng.randrange(3, 7), rng)
        if not g.edges:
            continue
        u, v = sorted(g.edges)[rng.randrange(g.m)]
        triple = local_complement(local_complement(local_complement(g, u), v), u)
        assert pivot_edge(g, u, v) == triple


def test_pivot_matches_matrix_pivot():
    rng = random.Random(5)
    for _ in range(60):
        g = random_graph(rng.randrange(3, 7), rng)
        if not g.edges:
            continue
        u, v = sorted(g.edges)[rng.randrange(g.m)]
        assert pivot_edge(g, u, v) == graph_from_adjacency(
            principal_pivot(g.adjacency_matrix(), {u, v}))


def test_pivot_commutation_identity():
    # pivoting uv then uc equals pivoting vc, on the documented 5-vertex case
    g = Graph("uvabc",
              [("u", "v"), ("u", "a"), ("u", "b"), ("v", "c"), ("v", "b"),
               ("a", "b")])
    left = pivot_edge(pivot_edge(g, "u", "v"), "u", "c")
    right = pivot_edge(g, "v", "c")
    assert left == right


def test_degree_one_pivot_then_delete_is_plain_delete():
    rng = random.Random(7)
    for _ in range(100):
        base = random_graph(rng.randrange(2, 7), rng)
        v = rng.randrange(base.n)
        u = "pendant"
        g = Graph(list(base.vertices) + [u], list(base.edges) + [(u, v)])
        assert delete_vertices(pivot_edge(g, u, v), [u, v]) == \
            delete_vertices(g, [u, v])


def test_pivot_set_requires_nonsingular_block():
    g = path_graph(3)
    with pytest.raises(SingularError):
        pivot_set(g, [0, 2])


def test_pivot_script_realizes_set_pivot():
    rng = random.Random(11)
    done = 0
    while done < 60:
        g = random_graph(rng.randrange(3, 8), rng)
        X = {v for v in g.vertices if rng.random() < 0.5}
        A = g.adjacency_matrix()
        try:
            target = graph_from_adjacency(principal_pivot(A, X))
        except SingularError:
            continue
        done += 1
        steps = pivot_script(g, X)
        assert apply_script(g, steps) == target
        assert all(step[0] == "pivot" for step in steps)


def test_cut_rank_examples_and_symmetry():
    c5 = cycle_graph(5)
    assert cut_rank(c5, [0, 1]) == 2
    assert cut_rank(c5, [0]) == 1
    assert cut_rank(c5, []) == 0
    rng = random.Random(13)
    for _ in range(40):
        g = random_graph(6, rng)
        X = {v for v in g.vertices if rng.random() < 0.5}
        assert cut_rank(g, X) == cut_rank(g, set(g.vertices) - X)


def test_apply_script_error_reports_step_index():
    g = path_graph(3)
    with pytest.raises(ScriptError) as err:
        apply_script(g, [("lc", 0), ("pivot", 0, 2), ("delete", 1)])
    assert err.value.index == 1


def test_structure_predicates():
    assert is_tree(star_graph(3))
    assert is_subcubic_tree(star_graph(3))
    assert not is_subcubic_tree(star_graph(4))
    assert is_path(path_graph(5))
    assert is_caterpillar(Graph(range(5), [(0, 1), (1, 2), (2, 3), (1, 4)]))
    spider = Graph(range(7), [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    assert not is_caterpillar(spider)
    assert len(connected_components(Graph(range(4), [(0, 1)]))) == 3


def test_tree_path():
    t = star_graph(3)
    assert tree_path(t, 1, 2) == [1, 0, 2]
    with pytest.raises(GraphError):
        tree_path(Graph(range(2)), 0, 1)


def test_are_isomorphic_small():
    assert are_isomorphic(path_graph(3), Graph("xyz", [("x", "y"), ("y", "z")]))
    assert not are_isomorphic(path_graph(4), star_graph(3))


def test_isomorphism_class_counts():
    # labeled-to-unlabeled collapse matches the known census
    assert [len(graphs_of_order(n)) for n in range(1, 7)] == [1, 2, 4, 11, 34, 156]
    assert [len(graphs_of_order(n, connected=True)) for n in range(1, 7)] == \
        [1, 1, 2, 6, 21, 112]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**30), st.integers(2, 7))
def test_local_complement_is_involution(seed, n):
    rng = random.Random(seed)
    g = random_graph(n, rng)
    v = rng.randrange(n)
    assert local_complement(local_complement(g, v), v) == g


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**30), st.integers(3, 7))
def test_cut_rank_invariant_under_pivot(seed, n):
    # pivoting an edge inside X never changes the rank of the cut around X
    rng = random.Random(seed)
    g = random_graph(n, rng)
    if not g.edges:
        return
    u, v = sorted(g.edges)[rng.randrange(g.m)]
    X = {u, v} | {w for w in g.vertices if rng.random() < 0.4}
    assert cut_rank(pivot_edge(g, u, v), X) == cut_rank(g, X)
