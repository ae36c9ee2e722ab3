"""Simple undirected labeled graphs and their pivot/complementation calculus.

Graphs are immutable values: every transformation returns a new graph.  The
adjacency matrix view (see :meth:`Graph.adjacency_matrix`) is authoritative
for set pivots; edge-level operations work on neighbor sets directly.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

from . import gf2
from .gf2 import Gf2Matrix, SingularError
from .labels import label_key, sort_labels


class GraphError(ValueError):
    """Base error for graph misuse (unknown vertices, bad edges, ...)."""


class SizeLimitError(GraphError):
    """An exhaustive search was asked to exceed its configured size guard."""


class ScriptError(GraphError):
    """A transform script step failed; carries the offending step index."""

    def __init__(self, index, message):
        super().__init__(f"step {index}: {message}")
        self.index = index


def _edge_key(u, v):
    if label_key(u) <= label_key(v):
        return (u, v)
    return (v, u)


class Graph:
    """Simple undirected graph with opaque, ordered vertex labels."""

    __slots__ = ("_vertices", "_index", "_neighbors", "_edges", "_adj")

    def __init__(self, vertices=(), edges=()):
        vs = sort_labels(set(vertices))
        self._vertices = tuple(vs)
        self._index = {v: i for i, v in enumerate(vs)}
        nbrs = {v: set() for v in vs}
        edge_set = set()
        for e in edges:
            u, v = e
            if u == v:
                raise GraphError(f"loop at {u!r} not allowed")
            if u not in nbrs or v not in nbrs:
                raise GraphError(f"edge ({u!r}, {v!r}) has an undeclared endpoint")
            nbrs[u].add(v)
            nbrs[v].add(u)
            edge_set.add(_edge_key(u, v))
        self._neighbors = {v: frozenset(s) for v, s in nbrs.items()}
        self._edges = frozenset(edge_set)
        self._adj = None

    @classmethod
    def from_edges(cls, edges, vertices=()):
        """Build a graph whose vertex set is inferred from the edge list."""
        vs = set(vertices)
        edges = [tuple(e) for e in edges]
        for u, v in edges:
            vs.add(u)
            vs.add(v)
        return cls(vs, edges)

    # -- basic access --------------------------------------------------------

    @property
    def vertices(self):
        return self._vertices

    @property
    def edges(self):
        return self._edges

    @property
    def n(self):
        return len(self._vertices)

    @property
    def m(self):
        return len(self._edges)

    def has_vertex(self, v):
        return v in self._index

    def has_edge(self, u, v):
        return _edge_key(u, v) in self._edges if u != v else False

    def neighbors(self, v):
        try:
            return self._neighbors[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def degree(self, v):
        return len(self.neighbors(v))

    def adjacency_matrix(self) -> Gf2Matrix:
        """A(G): symmetric zero-diagonal GF(2) matrix over the vertex order."""
        if self._adj is None:
            self._adj = gf2.from_symmetric_entries(self._vertices, self._edges)
        return self._adj

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        return hash((self._vertices, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def graph_from_adjacency(matrix: Gf2Matrix) -> Graph:
    """Graph whose adjacency matrix is the given symmetric zero-diag matrix."""
    if not matrix.is_symmetric() or not matrix.has_zero_diagonal():
        raise GraphError("adjacency matrix must be symmetric with zero diagonal")
    vs = matrix.rows
    edges = [(u, v) for i, u in enumerate(vs) for j, v in enumerate(vs)
             if i < j and (matrix.bits[i] >> j) & 1]
    return Graph(vs, edges)


# -- elementary transformations ----------------------------------------------

def local_complement(G: Graph, v) -> Graph:
    """G*v: complement the adjacency inside the neighborhood of v."""
    nbrs = sort_labels(G.neighbors(v))
    edges = set(G.edges)
    for x, y in combinations(nbrs, 2):
        k = _edge_key(x, y)
        if k in edges:
            edges.remove(k)
        else:
            edges.add(k)
    return Graph(G.vertices, edges)


def pivot_edge(G: Graph, u, v) -> Graph:
    """G^uv for an edge uv: three-set complementation plus the u,v swap.

    The equivalent form G*u*v*u is kept in the tests as an oracle.
    """
    if not G.has_edge(u, v):
        raise GraphError(f"({u!r}, {v!r}) is not an edge")
    nu = G.neighbors(u)
    nv = G.neighbors(v)
    v1 = nu & nv
    v2 = nu - nv - {v}
    v3 = nv - nu - {u}
    edges = set(G.edges)
    for a_side, b_side in ((v1, v2), (v1, v3), (v2, v3)):
        for x in a_side:
            for y in b_side:
                k = _edge_key(x, y)
                if k in edges:
                    edges.remove(k)
                else:
                    edges.add(k)

    def swap(x):
        if x == u:
            return v
        if x == v:
            return u
        return x

    return Graph(G.vertices, [(swap(a), swap(b)) for a, b in edges])


def pivot_set(G: Graph, X) -> Graph:
    """G^X: the graph with adjacency matrix A(G)*X (needs A(G)[X] nonsingular)."""
    X = set(X)
    for x in X:
        if not G.has_vertex(x):
            raise GraphError(f"unknown vertex {x!r}")
    if not X:
        return G
    return graph_from_adjacency(gf2.principal_pivot(G.adjacency_matrix(), X))


def pivot_script(G: Graph, X):
    """Edge-pivot steps realizing G^X, found greedily.

    Any edge inside the remaining pivot set is admissible (Tucker's theorem),
    so the lexicographically least one is taken each round.
    """
    X = set(X)
    if not gf2.is_nonsingular(G.adjacency_matrix(), X):
        raise SingularError("A(G)[X] is singular; no pivot sequence exists")
    steps = []
    cur = G
    remaining = set(X)
    while remaining:
        candidates = sorted(
            (e for e in cur.edges if e[0] in remaining and e[1] in remaining),
            key=lambda e: (label_key(e[0]), label_key(e[1])))
        if not candidates:  # impossible while A[remaining] stays nonsingular
            raise SingularError("no edge available inside the pivot set")
        u, v = candidates[0]
        steps.append(("pivot", u, v))
        cur = pivot_edge(cur, u, v)
        remaining -= {u, v}
    return steps


def cut_rank(G: Graph, X) -> int:
    """GF(2) rank of A(G)[X, V - X]."""
    X = set(X)
    for x in X:
        if not G.has_vertex(x):
            raise GraphError(f"unknown vertex {x!r}")
    rest = [v for v in G.vertices if v not in X]
    inside = [v for v in G.vertices if v in X]
    if not inside or not rest:
        return 0
    return gf2.rank(G.adjacency_matrix().submatrix(inside, rest))


def induced_subgraph(G: Graph, S) -> Graph:
    S = set(S)
    for v in S:
        if not G.has_vertex(v):
            raise GraphError(f"unknown vertex {v!r}")
    return Graph(S, [e for e in G.edges if e[0] in S and e[1] in S])


def delete_vertices(G: Graph, S) -> Graph:
    S = set(S)
    for v in S:
        if not G.has_vertex(v):
            raise GraphError(f"unknown vertex {v!r}")
    return induced_subgraph(G, set(G.vertices) - S)


# -- structure predicates ------------------------------------------------------

def connected_components(G: Graph):
    """Components as a list of vertex frozensets, in label order."""
    seen = set()
    comps = []
    for start in G.vertices:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in G.neighbors(v):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(connected_components(G)) == 1


def is_forest(G: Graph) -> bool:
    return G.m == G.n - len(connected_components(G))


def is_tree(G: Graph) -> bool:
    return G.n >= 1 and is_connected(G) and G.m == G.n - 1


def is_path(G: Graph) -> bool:
    if not is_tree(G):
        return False
    return all(G.degree(v) <= 2 for v in G.vertices)


def is_caterpillar(G: Graph) -> bool:
    """Tree whose vertices all lie within distance 1 of a central path."""
    if not is_tree(G):
        return False
    if G.n <= 2:
        return True
    spine = [v for v in G.vertices if G.degree(v) >= 2]
    if not spine:
        return True
    return is_path(induced_subgraph(G, spine))


def is_subcubic_tree(G: Graph) -> bool:
    """Tree with >= 2 vertices whose every inner vertex has degree 3."""
    if not is_tree(G) or G.n < 2:
        return False
    return all(G.degree(v) in (1, 3) for v in G.vertices)


def is_subcubic_caterpillar(G: Graph) -> bool:
    """Caterpillar with maximum degree at most 3."""
    return is_caterpillar(G) and all(G.degree(v) <= 3 for v in G.vertices)


def is_bipartite(G: Graph) -> bool:
    color = {}
    for start in G.vertices:
        if start in color:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in G.neighbors(v):
                if w not in color:
                    color[w] = color[v] ^ 1
                    queue.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def bfs_distances(G: Graph, source):
    """Hop distances from source to every reachable vertex."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in G.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def tree_path(G: Graph, u, v):
    """The unique u..v path (vertex list) in a tree/forest; GraphError if none."""
    if u == v:
        return [u]
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for w in G.neighbors(x):
            if w not in parent:
                parent[w] = x
                queue.append(w)
    if v not in parent:
        raise GraphError(f"{u!r} and {v!r} are not connected")
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    return path


# -- isomorphism ---------------------------------------------------------------

def _refined_invariants(G: Graph, rounds=2):
    inv = {v: G.degree(v) for v in G.vertices}
    for _ in range(rounds):
        inv = {v: (inv[v], tuple(sorted(inv[w] for w in G.neighbors(v))))
               for v in G.vertices}
    return inv


def are_isomorphic(G1: Graph, G2: Graph):
    """An adjacency-preserving bijection V(G1) -> V(G2), or None.

    Exact backtracking with invariant pruning; intended for graphs of at
    most a few dozen vertices.
    """
    if G1.n != G2.n or G1.m != G2.m:
        return None
    inv1 = _refined_invariants(G1)
    inv2 = _refined_invariants(G2)
    if sorted(inv1.values()) != sorted(inv2.values()):
        return None
    by_inv = {}
    for v in G2.vertices:
        by_inv.setdefault(inv2[v], []).append(v)
    # most-constrained-first: rare invariant classes, then high degree
    order = sorted(G1.vertices,
                   key=lambda v: (len(by_inv[inv1[v]]), -G1.degree(v), label_key(v)))
    mapping = {}
    used = set()

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for w in by_inv[inv1[v]]:
            if w in used:
                continue
            ok = True
            for u, x in mapping.items():
                if G1.has_edge(v, u) != G2.has_edge(w, x):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.remove(w)
        return False

    if extend(0):
        return dict(mapping)
    return None


# -- transform scripts ---------------------------------------------------------

def apply_script(G: Graph, script) -> Graph:
    """Replay a script of ("lc", v) / ("pivot", u, v) / ("delete", v) steps.

    The first invalid step raises ScriptError carrying its index.
    """
    cur = G
    for i, step in enumerate(script):
        kind = step[0] if step else None
        try:
            if kind == "lc" and len(step) == 2:
                cur = local_complement(cur, step[1])
            elif kind == "pivot" and len(step) == 3:
                cur = pivot_edge(cur, step[1], step[2])
            elif kind == "delete" and len(step) == 2:
                cur = delete_vertices(cur, [step[1]])
            else:
                raise GraphError(f"unknown step {step!r}")
        except GraphError as exc:
            raise ScriptError(i, str(exc)) from None
    return cur
