"""Rank-decompositions and tree-decompositions as validated objects.

Includes exact brute-force rank-width and linear rank-width for small graphs:
rank-width sweeps all (2n-5)!! leaf-labeled subcubic tree shapes, linear
rank-width optimizes over vertex orderings.  Cut-ranks are memoized per
vertex subset and shared across the whole search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import gf2
from .graphs import (Graph, GraphError, SizeLimitError, cut_rank,
                     is_caterpillar, is_path, is_subcubic_tree, is_tree,
                     tree_path)
from .labels import label_key, sort_labels

WIDTH_SEARCH_LIMIT = 8


@dataclass(frozen=True)
class RankDecomposition:
    """A subcubic tree plus a bijection from graph vertices to its leaves."""

    tree: Graph
    leaf_map: dict  # graph vertex -> tree leaf
    linear: bool = False

    def leaves(self):
        return frozenset(v for v in self.tree.vertices if self.tree.degree(v) == 1)

    def __hash__(self):
        return hash((self.tree, tuple(sorted(self.leaf_map.items(),
                                             key=lambda kv: label_key(kv[0]))),
                     self.linear))

    def __eq__(self, other):
        if not isinstance(other, RankDecomposition):
            return NotImplemented
        return (self.tree, self.leaf_map, self.linear) == \
            (other.tree, other.leaf_map, other.linear)


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree plus a bag of decomposed-graph vertices per tree node."""

    tree: Graph
    bags: dict  # tree node -> frozenset of graph vertices
    path: bool = False

    def __hash__(self):
        return hash((self.tree, tuple(sorted(
            ((k, frozenset(v)) for k, v in self.bags.items()),
            key=lambda kv: label_key(kv[0]))), self.path))


# -- validation ------------------------------------------------------------------

def rd_validate(G: Graph, D: RankDecomposition):
    """(ok, diagnostics) for a rank-decomposition against G."""
    problems = []
    T = D.tree
    special_two_leaf = T.n == 2 and T.m == 1
    if not special_two_leaf and not is_subcubic_tree(T):
        problems.append("tree is not subcubic (>=2 vertices, inner degree 3)")
    if D.linear and not is_caterpillar(T):
        problems.append("linear decomposition tree is not a caterpillar")
    leaves = set(v for v in T.vertices if T.degree(v) == 1) if T.n >= 2 else set()
    mapped = list(D.leaf_map.values())
    if set(D.leaf_map.keys()) != set(G.vertices):
        problems.append("leaf_map keys differ from V(G)")
    if len(set(mapped)) != len(mapped):
        problems.append("leaf_map is not injective")
    if set(mapped) != leaves:
        problems.append("leaf_map image differs from the leaf set")
    return (not problems, problems)


def rd_width(G: Graph, D: RankDecomposition) -> int:
    """Maximum cut-rank over all tree edges; raises on invalid input."""
    ok, problems = rd_validate(G, D)
    if not ok:
        raise GraphError("invalid rank-decomposition: " + "; ".join(problems))
    inverse = {leaf: v for v, leaf in D.leaf_map.items()}
    width = 0
    for (a, b) in D.tree.edges:
        side = _component_without(D.tree, a, b)
        X = {inverse[t] for t in side if t in inverse}
        width = max(width, cut_rank(G, X))
    return width


def _component_without(T: Graph, root, banned):
    """Vertices of the component of T - banned that contains root."""
    comp = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for w in T.neighbors(v):
            if w != banned and w not in comp:
                comp.add(w)
                stack.append(w)
    return comp


def td_validate(G: Graph, D: TreeDecomposition):
    """(ok, diagnostics) checking (T1)-(T3) and shape flags literally."""
    problems = []
    T = D.tree
    if not is_tree(T):
        problems.append("decomposition tree is not a tree")
    if D.path and not is_path(T):
        problems.append("path decomposition tree is not a path")
    if set(D.bags.keys()) != set(T.vertices):
        problems.append("bags must be indexed exactly by the tree nodes")
        return (False, problems)
    covered = set()
    for bag in D.bags.values():
        for v in bag:
            if not G.has_vertex(v):
                problems.append(f"bag vertex {v!r} is not in the graph")
        covered |= set(bag)
    missing = set(G.vertices) - covered
    if missing:
        problems.append(f"(T1) vertices not covered: {sort_labels(missing)}")
    for (u, v) in G.edges:
        if not any(u in bag and v in bag for bag in D.bags.values()):
            problems.append(f"(T2) edge ({u!r}, {v!r}) is in no bag")
    for v in G.vertices:
        holders = [t for t in T.vertices if v in D.bags[t]]
        if not holders or not is_tree(T):
            continue
        if not _induces_subtree(T, holders):
            problems.append(f"(T3) bags containing {v!r} do not induce a subtree")
    return (not problems, problems)


def _induces_subtree(T: Graph, nodes):
    nodes = set(nodes)
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in T.neighbors(v):
            if w in nodes and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == nodes


def td_width(D: TreeDecomposition) -> int:
    """max |bag| - 1."""
    if not D.bags:
        raise GraphError("decomposition has no bags")
    return max(len(bag) for bag in D.bags.values()) - 1


# -- cut-rank memoization ----------------------------------------------------------

class _CutTable:
    """Memoized cut-rank over vertex-subset bitmasks of a fixed graph."""

    def __init__(self, G: Graph):
        self.vertices = list(G.vertices)  # already label-sorted
        n = len(self.vertices)
        adj = G.adjacency_matrix()
        self.rows = list(adj.bits)
        self.full = (1 << n) - 1
        self.cache = {0: 0, self.full: 0}

    def rank(self, mask: int) -> int:
        cached = self.cache.get(mask)
        if cached is not None:
            return cached
        outside = self.full & ~mask
        sub = []
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            sub.append(self.rows[i] & outside)
            m &= m - 1
        r = gf2._rank_of_bits(sub)
        self.cache[mask] = r
        self.cache[outside] = r
        return r


# -- subcubic tree shape enumeration ------------------------------------------------

@lru_cache(maxsize=None)
def subcubic_tree_shapes(n: int):
    """All leaf-labeled subcubic tree shapes on n leaves ((2n-5)!! for n >= 3).

    Each shape is (edges, leaf_nodes, cut_masks): edges over string node ids
    "L{i}" / "I{j}", leaf i standing for the i-th graph vertex in label
    order, and one leaf-subset bitmask per tree edge (side chosen arbitrarily;
    cut-rank is symmetric).
    """
    if n < 2:
        return ()
    if n == 2:
        return (((("L0", "L1"),), ("L0", "L1"), (0b01,)),)
    trees = [[("L0", "I0"), ("L1", "I0"), ("L2", "I0")]]
    for i in range(3, n):
        nxt = []
        inner = f"I{i - 2}"
        leaf = f"L{i}"
        for edges in trees:
            for k, (a, b) in enumerate(edges):
                new_edges = edges[:k] + edges[k + 1:]
                new_edges = new_edges + [(a, inner), (inner, b), (leaf, inner)]
                nxt.append(new_edges)
        trees = nxt
    shapes = []
    leaf_nodes = tuple(f"L{i}" for i in range(n))
    for edges in trees:
        adj = {}
        for a, b in edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        masks = []
        for a, b in edges:
            # leaves on the b side of edge (a, b)
            mask = 0
            stack = [b]
            seen = {a, b}
            while stack:
                v = stack.pop()
                if v[0] == "L":
                    mask |= 1 << int(v[1:])
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            masks.append(mask)
        shapes.append((tuple(edges), leaf_nodes, tuple(masks)))
    return tuple(shapes)


def _decomposition_from_shape(G: Graph, shape, linear=False) -> RankDecomposition:
    edges, leaf_nodes, _ = shape
    verts = sort_labels(G.vertices)
    tree = Graph.from_edges(edges)
    leaf_map = {verts[i]: leaf_nodes[i] for i in range(len(verts))}
    return RankDecomposition(tree=tree, leaf_map=leaf_map, linear=linear)


def brute_force_rank_width(G: Graph, limit: int = WIDTH_SEARCH_LIMIT):
    """Exact rank-width with a witness decomposition (None when |V| <= 1)."""
    n = G.n
    if n > limit:
        raise SizeLimitError(f"rank-width search limited to n <= {limit}")
    if n <= 1:
        return 0, None
    table = _CutTable(G)
    best = None
    best_shape = None
    for shape in subcubic_tree_shapes(n):
        width = 0
        for mask in shape[2]:
            width = max(width, table.rank(mask))
            if best is not None and width >= best:
                break
        if best is None or width < best:
            best = width
            best_shape = shape
            if best == 0:
                break
    return best, _decomposition_from_shape(G, best_shape)


def _caterpillar_from_ordering(G: Graph, ordering) -> RankDecomposition:
    """Canonical caterpillar decomposition realizing a vertex ordering."""
    ordering = list(ordering)
    n = len(ordering)
    if n == 2:
        tree = Graph(["L0", "L1"], [("L0", "L1")])
        return RankDecomposition(tree=tree,
                                 leaf_map={ordering[0]: "L0", ordering[1]: "L1"},
                                 linear=True)
    edges = [("L0", "I0"), ("L1", "I0")]
    for i in range(2, n - 1):
        edges.append((f"L{i}", f"I{i - 1}"))
        edges.append((f"I{i - 2}", f"I{i - 1}"))
    edges.append((f"L{n - 1}", f"I{n - 3}"))
    tree = Graph.from_edges(edges)
    leaf_map = {ordering[i]: f"L{i}" for i in range(n)}
    return RankDecomposition(tree=tree, leaf_map=leaf_map, linear=True)


def brute_force_linear_rank_width(G: Graph, limit: int = WIDTH_SEARCH_LIMIT):
    """Exact linear rank-width via the vertex-ordering formulation.

    The witness is the caterpillar decomposition of the lexicographically
    least optimal ordering.
    """
    n = G.n
    if n > limit:
        raise SizeLimitError(f"linear rank-width search limited to n <= {limit}")
    if n <= 1:
        return 0, None
    if n == 2:
        D = _caterpillar_from_ordering(G, sort_labels(G.vertices))
        return cut_rank(G, [G.vertices[0]]), D
    table = _CutTable(G)
    verts = table.vertices
    full = table.full

    memo = {full: 0}

    def best_from(mask):
        """Optimal max prefix cut over completions of the prefix set `mask`."""
        cached = memo.get(mask)
        if cached is not None:
            return cached
        best = None
        for i in range(n):
            bit = 1 << i
            if mask & bit:
                continue
            nxt = mask | bit
            cost = max(table.rank(nxt), best_from(nxt))
            if best is None or cost < best:
                best = cost
        memo[mask] = best
        return best

    target = best_from(0)
    ordering = []
    mask = 0
    while mask != full:
        for i in range(n):  # ascending label order -> lex-least witness
            bit = 1 << i
            if mask & bit:
                continue
            nxt = mask | bit
            if max(table.rank(nxt), best_from(nxt)) <= target:
                ordering.append(verts[i])
                mask = nxt
                break
    return target, _caterpillar_from_ordering(G, ordering)


# -- helpers shared with the expansion pipeline --------------------------------------

def decomposition_leaf_for(D: RankDecomposition, vertex):
    try:
        return D.leaf_map[vertex]
    except KeyError:
        raise GraphError(f"{vertex!r} has no leaf in the decomposition") from None
