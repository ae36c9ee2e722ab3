"""Shared fixtures: the worked 7-vertex instance used across the suite."""

import pytest

from rankexpand.decompositions import RankDecomposition
from rankexpand.graphs import Graph


def edge_key(u, v):
    return (u, v) if str(u) <= str(v) else (v, u)


@pytest.fixture
def worked_graph():
    """Connected 7-vertex graph with rank-width 3 under the fixture tree."""
    return Graph(
        [f"a{i}" for i in range(1, 8)],
        [("a1", "a2"), ("a1", "a4"), ("a1", "a5"), ("a1", "a6"),
         ("a2", "a3"), ("a2", "a4"), ("a3", "a4"), ("a3", "a6"),
         ("a3", "a7"), ("a4", "a6"), ("a5", "a6"), ("a6", "a7")])


@pytest.fixture
def worked_decomposition():
    """Subcubic decomposition tree; a2 sits at the designated root leaf x."""
    tree = Graph.from_edges([
        ("x", "u1"), ("u1", "La1"), ("u1", "w"), ("w", "La3"), ("w", "v"),
        ("v", "w1"), ("w1", "La4"), ("w1", "La5"),
        ("v", "w2"), ("w2", "La6"), ("w2", "La7")])
    leaf_map = {"a2": "x", "a1": "La1", "a3": "La3", "a4": "La4",
                "a5": "La5", "a6": "La6", "a7": "La7"}
    return RankDecomposition(tree=tree, leaf_map=leaf_map)


@pytest.fixture
def worked_overrides():
    """The documented basis choice for the worked instance."""
    return {
        edge_key("u1", "w"): ("a4", "a5"),
        edge_key("w", "v"): ("a4", "a5", "a7"),
        edge_key("v", "w1"): ("a4", "a5"),
        edge_key("v", "w2"): ("a6", "a7"),
    }


@pytest.fixture
def reordered_overrides(worked_overrides):
    """Same bases with the middle cut reordered, exercising bag sliding."""
    out = dict(worked_overrides)
    out[edge_key("w", "v")] = ("a7", "a5", "a4")
    return out
