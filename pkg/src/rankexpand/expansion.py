"""Rank-expansions: bounded-tree-width supergraphs with a pivot-minor embedding.

Given a connected graph G with a rank-decomposition of width k, this module
builds a supergraph H together with a vertex set X and an embedding a -> a-bar
such that pivoting X in H and restricting to the embedded copies recovers G
exactly.  H also carries a tree-decomposition of width at most 2k (path
variant: at most k+1), emitted alongside the graph.

`theorem_driver` packages the whole pipeline, including the disconnected and
degenerate cases, into a self-contained certificate that `verify_certificate`
re-checks from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import gf2
from .decompositions import (RankDecomposition, TreeDecomposition,
                             brute_force_linear_rank_width,
                             brute_force_rank_width, rd_validate, rd_width)
from .graphs import (Graph, GraphError, bfs_distances, connected_components,
                     induced_subgraph, is_connected, is_forest, is_path,
                     pivot_set, tree_path)
from .labels import label_key, sort_labels


class ExpansionError(GraphError):
    """Construction input violates a precondition of the expansion."""


def _edge_key(u, v):
    if label_key(u) <= label_key(v):
        return (u, v)
    return (v, u)


# -- orientation -----------------------------------------------------------------

@dataclass(frozen=True)
class OrientedDecomposition:
    """A rank-decomposition with every tree edge directed away from one leaf.

    `side[e]` is the set of graph vertices whose leaves sit on the head side
    of e, i.e. the side not containing the root leaf.
    """

    decomposition: RankDecomposition
    root_leaf: object
    head: dict        # edge key -> head tree node
    order: tuple      # edge keys, breadth-first from the root leaf
    side: dict        # edge key -> frozenset of graph vertices (head side)
    incoming: dict    # tree node -> its unique incoming edge key
    outgoing: dict    # tree node -> tuple of outgoing edge keys

    @property
    def tree(self):
        return self.decomposition.tree

    @property
    def leaf_map(self):
        return self.decomposition.leaf_map

    def tail(self, e):
        return e[0] if self.head[e] == e[1] else e[1]

    def inner_vertices(self):
        T = self.tree
        return tuple(v for v in T.vertices if T.degree(v) >= 2)

    def inner_edges(self):
        """Inner tree edges in breadth-first order."""
        T = self.tree
        return tuple(e for e in self.order
                     if T.degree(e[0]) >= 2 and T.degree(e[1]) >= 2)


def orient_from_leaf(G: Graph, D: RankDecomposition,
                     root_leaf=None) -> OrientedDecomposition:
    """Direct all tree edges away from a chosen root leaf.

    Default root: the leaf carrying the least-labeled graph vertex.
    """
    ok, problems = rd_validate(G, D)
    if not ok:
        raise ExpansionError("invalid decomposition: " + "; ".join(problems))
    T = D.tree
    if root_leaf is None:
        root_leaf = D.leaf_map[sort_labels(G.vertices)[0]]
    if not T.has_vertex(root_leaf) or T.degree(root_leaf) != 1:
        raise ExpansionError(f"{root_leaf!r} is not a leaf of the tree")

    inverse = {leaf: a for a, leaf in D.leaf_map.items()}
    parent = {root_leaf: None}
    order = []
    head = {}
    incoming = {}
    outgoing = {v: [] for v in T.vertices}
    queue = [root_leaf]
    while queue:
        nxt = []
        for v in queue:
            for w in sorted(T.neighbors(v), key=label_key):
                if w in parent:
                    continue
                parent[w] = v
                e = _edge_key(v, w)
                head[e] = w
                incoming[w] = e
                outgoing[v].append(e)
                order.append(e)
                nxt.append(w)
        queue = nxt

    # head-side vertex sets, accumulated leaves-first
    side = {}
    for e in reversed(order):
        h = head[e]
        acc = set()
        if h in inverse:
            acc.add(inverse[h])
        for f in outgoing[h]:
            acc |= side[f]
        side[e] = frozenset(acc)

    return OrientedDecomposition(
        decomposition=D, root_leaf=root_leaf, head=head, order=tuple(order),
        side=side, incoming=incoming,
        outgoing={v: tuple(fs) for v, fs in outgoing.items()})


# -- basis assignment --------------------------------------------------------------

@dataclass(frozen=True)
class BasisAssignment:
    """Per-edge ordered row bases U_e plus the expression matrices P_e.

    P_e has one row per head-side vertex and one column per basis element;
    P_e @ A(G)[U_e, other side] reconstructs A(G)[head side, other side].
    """

    bases: dict      # edge key -> ordered tuple of graph vertices
    expressed: dict  # edge key -> coefficient matrix P_e


def assign_bases(G: Graph, O: OrientedDecomposition,
                 overrides=None) -> BasisAssignment:
    """Choose nested bases along the orientation, roots first.

    Each seed (the inherited part of the parent basis) stays in front; the
    completion scans candidate rows in ascending label order.  `overrides`
    maps edge keys to explicit ordered bases and is validated, not trusted.
    """
    overrides = dict(overrides or {})
    adj = G.adjacency_matrix()
    all_vertices = set(G.vertices)
    bases = {}
    expressed = {}
    for e in O.order:
        inside = O.side[e]
        outside = sort_labels(all_vertices - inside)
        M = adj.submatrix(sort_labels(inside), outside)
        tail = O.tail(e)
        if tail == O.root_leaf:
            seed = ()
        else:
            seed = tuple(a for a in bases[O.incoming[tail]] if a in inside)
        if e in overrides:
            U = tuple(overrides.pop(e))
            if not set(seed) <= set(U):
                raise ExpansionError(
                    f"override for {e!r} drops inherited rows {sort_labels(set(seed) - set(U))}")
            if not set(U) <= inside:
                raise ExpansionError(f"override for {e!r} leaves the head side")
            try:
                full = gf2.extend_basis(M, U)
            except gf2.Gf2Error as exc:
                raise ExpansionError(f"override for {e!r}: {exc}") from None
            if len(full) != len(U):
                raise ExpansionError(f"override for {e!r} does not span the row space")
        else:
            U = gf2.extend_basis(M, seed)
        if not U:
            raise ExpansionError("a cut has rank 0; the graph must be connected")
        bases[e] = U
        expressed[e] = gf2.express_rows(M, U)
    if overrides:
        raise ExpansionError(f"overrides for unknown edges: {sorted(overrides, key=label_key)}")
    return BasisAssignment(bases=bases, expressed=expressed)


def coefficient_matrix(assignment: BasisAssignment, O: OrientedDecomposition,
                       f) -> gf2.Gf2Matrix:
    """C_f: the rows of the outgoing basis U_f written in the incoming basis."""
    tail = O.tail(f)
    if tail not in O.incoming:
        raise ExpansionError(f"{f!r} has no incoming edge at its tail")
    e = O.incoming[tail]
    return assignment.expressed[e].submatrix(assignment.bases[f],
                                             assignment.bases[e])


# -- the expansion graph -------------------------------------------------------------

@dataclass(frozen=True)
class RankExpansion:
    """The constructed supergraph with its pivot set and embedding.

    Vertices of `graph` are triples (a, e, v): a copy of graph vertex a
    attached to tree edge e at tree node v.  Pivoting `pivot_vertices` and
    restricting to the image of `embed` recovers the original graph.
    """

    graph: Graph
    oriented: OrientedDecomposition
    assignment: BasisAssignment
    sectors: dict        # inner tree node -> frozenset of expansion vertices
    blocks: dict         # inner edge key -> frozenset (both copy rows)
    inner_edges: tuple
    pivot_vertices: frozenset
    embed: dict          # graph vertex a -> its designated copy a-bar
    left: dict           # inner edge key -> head-side copies, basis order
    right: dict          # inner edge key -> tail-side copies, basis order


def build_expansion(G: Graph, O: OrientedDecomposition,
                    assignment: BasisAssignment) -> RankExpansion:
    """Assemble the expansion graph from an orientation and nested bases."""
    if G.n < 3:
        raise ExpansionError("the construction needs at least 3 vertices")
    if not is_connected(G):
        raise ExpansionError("the construction needs a connected graph")
    T = O.tree
    bases = assignment.bases
    inner = set(O.inner_vertices())

    sectors = {}
    for v in inner:
        incident = [O.incoming[v]] + list(O.outgoing[v])
        sectors[v] = frozenset((a, e, v) for e in incident for a in bases[e])
    vertices = [t for v in inner for t in sectors[v]]

    edges = []
    inner_edges = O.inner_edges()
    for e in inner_edges:
        v, w = O.tail(e), O.head[e]
        for a in bases[e]:
            edges.append(((a, e, v), (a, e, w)))
    for v in inner:
        e = O.incoming[v]
        outs = O.outgoing[v]
        for f in outs:
            C = coefficient_matrix(assignment, O, f)
            for a in bases[f]:
                for b in bases[e]:
                    if C.entry(a, b):
                        edges.append(((a, f, v), (b, e, v)))
        for f1, f2 in combinations(outs, 2):
            for a in bases[f1]:
                for b in bases[f2]:
                    if G.has_edge(a, b):
                        edges.append(((a, f1, v), (b, f2, v)))

    H = Graph(vertices, edges)

    embed = {}
    for a in G.vertices:
        leaf = O.leaf_map[a]
        e = O.incoming.get(leaf) or O.outgoing[leaf][0]
        v = O.head[e] if O.head[e] != leaf else O.tail(e)
        (u,) = bases[e] if len(bases[e]) == 1 else (None,)
        if u is None:
            raise ExpansionError(f"leaf edge {e!r} carries more than one basis row")
        embed[a] = (u, e, v)

    blocks = {}
    left = {}
    right = {}
    for e in inner_edges:
        v, w = O.tail(e), O.head[e]
        left[e] = tuple((a, e, w) for a in bases[e])
        right[e] = tuple((a, e, v) for a in bases[e])
        blocks[e] = frozenset(left[e]) | frozenset(right[e])
    pivot = frozenset(t for e in inner_edges for t in blocks[e])

    return RankExpansion(graph=H, oriented=O, assignment=assignment,
                         sectors=sectors, blocks=blocks,
                         inner_edges=inner_edges, pivot_vertices=pivot,
                         embed=embed, left=left, right=right)


def rank_expansion(G: Graph, D: RankDecomposition, root_leaf=None,
                   overrides=None) -> RankExpansion:
    """One-call construction from a graph and a rank-decomposition."""
    O = orient_from_leaf(G, D, root_leaf)
    return build_expansion(G, O, assign_bases(G, O, overrides))


# -- verification ---------------------------------------------------------------------

def verify_pivot_minor(R: RankExpansion, G: Graph):
    """Pivot the inner blocks and compare the embedded copies with G.

    Returns (ok, mismatches); raises ExpansionError if the pivot block is
    singular, since then the pivot itself is undefined.
    """
    try:
        pivoted = pivot_set(R.graph, R.pivot_vertices)
    except gf2.SingularError as exc:
        raise ExpansionError(f"pivot block is singular: {exc}") from None
    mismatches = []
    verts = sort_labels(G.vertices)
    for a, b in combinations(verts, 2):
        expected = G.has_edge(a, b)
        got = pivoted.has_edge(R.embed[a], R.embed[b])
        if expected != got:
            mismatches.append((a, b, expected, got))
    return (not mismatches, mismatches)


def path_reduction_check(R: RankExpansion, G: Graph):
    """Independent adjacency check through small determinants.

    For each vertex pair, the adjacency after pivoting all inner blocks
    equals the determinant of the submatrix indexed by the copy rows along
    the tree path between the two leaves.  This never forms the full pivot.
    """
    O = R.oriented
    T = O.tree
    AH = R.graph.adjacency_matrix()
    inner_set = set(R.inner_edges)
    mismatches = []
    for a, b in combinations(sort_labels(G.vertices), 2):
        nodes = tree_path(T, O.leaf_map[a], O.leaf_map[b])
        rows = set()
        for x, y in zip(nodes, nodes[1:]):
            e = _edge_key(x, y)
            if e in inner_set:
                rows |= R.blocks[e]
        rows.add(R.embed[a])
        rows.add(R.embed[b])
        d = gf2.det(AH.submatrix(sort_labels(rows), sort_labels(rows)))
        if d != G.adjacency_matrix().entry(a, b):
            mismatches.append((a, b))
    return (not mismatches, mismatches)


# -- tree-decompositions of the expansion ------------------------------------------------

def expansion_tree_decomposition(R: RankExpansion) -> TreeDecomposition:
    """Width <= 2k tree-decomposition of the expansion.

    Each inner tree edge w->v with an m-element basis becomes the path
    w z1 .. zm p1 .. pm v; the z bags slide along the copy rows of the edge
    and the p bags slide through the sector at v.
    """
    O = R.oriented
    bases = R.assignment.bases
    inner = O.inner_vertices()
    root_edge = O.outgoing[O.root_leaf][0]
    y = O.head[root_edge]

    bags = {y: set(R.sectors[y])}
    tedges = []
    for v in inner:
        if v == y:
            continue
        e = O.incoming[v]
        w = O.tail(e)
        U = bases[e]
        m = len(U)
        outs = O.outgoing[v]
        r_out = [(a, f, v) for f in outs for a in bases[f]]
        bags[v] = set(r_out)

        z = [("z", v, i) for i in range(1, m + 1)]
        p = [("p", v, i) for i in range(1, m + 1)]
        bag = {(a, e, w) for a in U} | {(U[0], e, v)}
        bags[z[0]] = set(bag)
        for i in range(1, m):
            bag = (bag - {(U[i - 1], e, w)}) | {(U[i], e, v)}
            bags[z[i]] = set(bag)
        kept = {t for t in r_out if t[0] not in U}
        bag = kept | {(a, e, v) for a in U} | {t for t in r_out if t[0] == U[0]}
        bags[p[0]] = set(bag)
        for i in range(1, m):
            bag = (bag - {(U[i - 1], e, v)}) | {t for t in r_out if t[0] == U[i]}
            bags[p[i]] = set(bag)

        chain = [w] + z + p + [v]
        tedges.extend(zip(chain, chain[1:]))

    tree = Graph(bags.keys(), tedges)
    return TreeDecomposition(tree=tree,
                             bags={t: frozenset(b) for t, b in bags.items()})


def expansion_path_decomposition(R: RankExpansion) -> TreeDecomposition:
    """Path variant; requires the orientation root at the end of a longest path."""
    D = expansion_tree_decomposition(R)
    if not is_path(D.tree):
        raise ExpansionError(
            "bags do not form a path; root the orientation at the end of a "
            "longest path of a caterpillar decomposition")
    return TreeDecomposition(tree=D.tree, bags=D.bags, path=True)


def longest_path_leaf(T: Graph):
    """An end of a longest path of a tree (every such end is a leaf)."""
    start = T.vertices[0]
    dist = bfs_distances(T, start)
    return max(sort_labels(dist), key=lambda v: dist[v])


# -- end-to-end driver ---------------------------------------------------------------

@dataclass(frozen=True)
class ExpansionCertificate:
    """Everything needed to re-check one bounded-width supergraph claim."""

    graph: Graph
    k: int
    linear: bool
    expansion: Graph
    pivot_vertices: frozenset
    embed: dict
    decomposition: TreeDecomposition

    @property
    def width_bound(self):
        return self.k + 1 if self.linear else 2 * self.k

    @property
    def size_bound(self):
        # claimed only for graphs on >= 3 vertices
        return (2 * self.k + 1) * self.graph.n - 6 * self.k


def _singleton_bag_path(tag, bag_sets):
    """Path-shaped decomposition from an ordered list of bags."""
    nodes = [(tag, i) for i in range(len(bag_sets))]
    tree = Graph(nodes, zip(nodes, nodes[1:]))
    return TreeDecomposition(tree=tree,
                             bags={nodes[i]: frozenset(bag_sets[i])
                                   for i in range(len(nodes))},
                             path=True)


def forest_tree_decomposition(F: Graph) -> TreeDecomposition:
    """Width <= 1 decomposition of a forest: one bag {v, parent(v)} per vertex."""
    if not is_forest(F):
        raise ExpansionError("not a forest")
    if F.n == 0:
        return _singleton_bag_path("b", [set()])
    bags = {}
    tedges = list(F.edges)
    roots = []
    seen = set()
    for start in F.vertices:
        if start in seen:
            continue
        roots.append(start)
        seen.add(start)
        bags[start] = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in F.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    bags[w] = {w, v}
                    stack.append(w)
    tedges.extend(zip(roots, roots[1:]))  # stitch components into one tree
    tree = Graph(F.vertices, tedges)
    return TreeDecomposition(tree=tree,
                             bags={v: frozenset(b) for v, b in bags.items()})


def _relabel_decomposition(D: TreeDecomposition, tag):
    tree = Graph(((tag, v) for v in D.tree.vertices),
                 (((tag, u), (tag, v)) for u, v in D.tree.edges))
    return TreeDecomposition(tree=tree,
                             bags={(tag, v): bag for v, bag in D.bags.items()},
                             path=D.path)


def _path_ends(T: Graph):
    if T.n == 1:
        v = T.vertices[0]
        return v, v
    ends = sort_labels(v for v in T.vertices if T.degree(v) == 1)
    return ends[0], ends[1]


def _join_certificates(G: Graph, k: int, linear: bool, parts):
    """Disjoint-union certificates, stitching the decompositions together."""
    vertices = []
    edges = []
    pivot = set()
    embed = {}
    pieces = []
    for i, cert in enumerate(parts):
        if set(cert.expansion.vertices) & set(vertices):
            raise ExpansionError("expansion pieces share vertex labels")
        vertices.extend(cert.expansion.vertices)
        edges.extend(cert.expansion.edges)
        pivot |= cert.pivot_vertices
        embed.update(cert.embed)
        pieces.append(_relabel_decomposition(cert.decomposition, i))

    tedges = [e for D in pieces for e in D.tree.edges]
    if linear:
        prev_end = None
        for D in pieces:
            first, last = _path_ends(D.tree)
            if prev_end is not None:
                tedges.append((prev_end, first))
            prev_end = last
    else:
        anchor = pieces[0].tree.vertices[0]
        for D in pieces[1:]:
            tedges.append((anchor, D.tree.vertices[0]))
    tree = Graph((v for D in pieces for v in D.tree.vertices), tedges)
    bags = {}
    for D in pieces:
        bags.update(D.bags)
    D = TreeDecomposition(tree=tree, bags=bags, path=linear)
    return ExpansionCertificate(graph=G, k=k, linear=linear,
                                expansion=Graph(vertices, edges),
                                pivot_vertices=frozenset(pivot), embed=embed,
                                decomposition=D)


def _identity_certificate(G: Graph, k: int, linear: bool):
    """G as its own expansion: empty pivot, bags of at most two vertices."""
    if G.m == 0:
        bags = [{v} for v in G.vertices] or [set()]
        D = _singleton_bag_path("b", bags)
    elif linear:
        # only used for pieces with at most 2 vertices
        D = _singleton_bag_path("b", [set(G.vertices)])
    else:
        D = forest_tree_decomposition(G)
    return ExpansionCertificate(graph=G, k=k, linear=linear, expansion=G,
                                pivot_vertices=frozenset(),
                                embed={v: v for v in G.vertices},
                                decomposition=D)


def theorem_driver(G: Graph, k=None, decomposition=None,
                   linear=False) -> ExpansionCertificate:
    """Produce a bounded-width supergraph certificate for any input graph.

    Connected graphs on >= 3 vertices run the full construction; smaller or
    edgeless graphs stand for themselves; disconnected graphs split into a
    largest piece plus the rest, with forests kept as-is since they already
    have tree-width 1.
    """
    search = brute_force_linear_rank_width if linear else brute_force_rank_width

    if is_connected(G):
        if decomposition is not None:
            width = rd_width(G, decomposition)
            if linear and not decomposition.linear:
                raise ExpansionError(
                    "a path-shaped certificate needs a linear decomposition")
        elif G.n >= 3:
            width, decomposition = search(G)
        else:
            width, decomposition = (1 if G.m else 0), None
    else:
        decomposition = None
        width = 0
        for c in connected_components(G):
            sub = induced_subgraph(G, c)
            if sub.n >= 3:
                width = max(width, search(sub)[0])
            elif sub.m:
                width = max(width, 1)

    if k is None:
        k = width
    elif width > k:
        raise ExpansionError(f"graph has width {width}, above the claimed {k}")

    if k == 0:
        return _identity_certificate(G, 0, linear)
    if is_connected(G):
        if G.n < 3:
            return _identity_certificate(G, k, linear)
        if linear:
            root = longest_path_leaf(decomposition.tree)
        else:
            root = None
        R = rank_expansion(G, decomposition, root_leaf=root)
        ok, mismatches = verify_pivot_minor(R, G)
        if not ok:
            raise ExpansionError(f"construction failed to embed: {mismatches}")
        if linear:
            D = expansion_path_decomposition(R)
        else:
            D = expansion_tree_decomposition(R)
        return ExpansionCertificate(graph=G, k=k, linear=linear,
                                    expansion=R.graph,
                                    pivot_vertices=R.pivot_vertices,
                                    embed=dict(R.embed), decomposition=D)

    comps = connected_components(G)
    if linear:
        parts = [theorem_driver(induced_subgraph(G, c), k=k, linear=True)
                 for c in comps]
        return _join_certificates(G, k, True, parts)

    comps = sorted(comps, key=lambda c: (-len(c), label_key(sort_labels(c)[0])))
    largest = comps[0]
    rest = set(G.vertices) - largest
    parts = [theorem_driver(induced_subgraph(G, largest), k=k)]
    rest_graph = induced_subgraph(G, rest)
    if is_forest(rest_graph):
        parts.append(_identity_certificate(rest_graph, k, False))
    else:
        parts.append(theorem_driver(rest_graph, k=k))
    return _join_certificates(G, k, False, parts)


def verify_certificate(cert: ExpansionCertificate):
    """Re-check a certificate with no trust in how it was produced."""
    from .decompositions import td_validate, td_width

    problems = []
    G = cert.graph
    H = cert.expansion
    if set(cert.embed.keys()) != set(G.vertices):
        problems.append("embedding does not cover every vertex")
    if len(set(cert.embed.values())) != len(cert.embed):
        problems.append("embedding is not injective")
    try:
        pivoted = pivot_set(H, cert.pivot_vertices)
    except gf2.SingularError:
        problems.append("pivot block is singular")
        pivoted = None
    if pivoted is not None and not problems:
        for a, b in combinations(sort_labels(G.vertices), 2):
            if G.has_edge(a, b) != pivoted.has_edge(cert.embed[a], cert.embed[b]):
                problems.append(f"adjacency mismatch at ({a!r}, {b!r})")
                break
    ok, issues = td_validate(H, cert.decomposition)
    if not ok:
        problems.extend(issues)
    else:
        w = td_width(cert.decomposition)
        if w > cert.width_bound:
            problems.append(f"width {w} exceeds the bound {cert.width_bound}")
        if cert.linear and not cert.decomposition.path:
            problems.append("linear certificate lacks a path-shaped decomposition")
    if G.n >= 3 and H.n > cert.size_bound:
        problems.append(f"expansion has {H.n} vertices, above {cert.size_bound}")
    return (not problems, problems)
