"""Width-1 characterizations: hosts, scripts, and obstruction searches.

Graphs of rank-width at most 1 are exactly the distance-hereditary graphs and
exactly the vertex-minors of trees; graphs of linear rank-width at most 1 are
exactly the vertex-minors of paths, with C5, the net N, and Q as the excluded
vertex-minors.  Bipartite inputs admit pivot-only scripts.  Every function
here returns a replayable `Witness` or an exact boolean.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .decompositions import (brute_force_linear_rank_width,
                             brute_force_rank_width)
from .expansion import (ExpansionError, longest_path_leaf, rank_expansion)
from .graphs import (Graph, GraphError, SizeLimitError, apply_script,
                     bfs_distances, delete_vertices, induced_subgraph,
                     is_bipartite, is_connected, is_path,
                     is_subcubic_caterpillar, is_tree, local_complement,
                     pivot_edge, pivot_script, tree_path)
from .labels import label_key, sort_labels
from .smallgraphs import CYCLE_5, NET, Q_OBSTRUCTION, canonical_key

MINOR_SEARCH_LIMIT = 9
DH_LIMIT = 10


@dataclass(frozen=True)
class Witness:
    """A host graph, a transform script, and where each target vertex lands.

    Replaying `script` on `host` must produce exactly the image of
    `target_map`, isomorphic to the target graph via that map.
    """

    host: Graph
    script: tuple
    target_map: dict  # target vertex -> vertex surviving the script


def validate_witness(W: Witness, target: Graph):
    """(ok, diagnostics) replaying the script against the target graph."""
    problems = []
    if set(W.target_map.keys()) != set(target.vertices):
        problems.append("target_map keys differ from the target vertex set")
    if len(set(W.target_map.values())) != len(W.target_map):
        problems.append("target_map is not injective")
    try:
        final = apply_script(W.host, W.script)
    except GraphError as exc:
        return (False, problems + [f"script replay failed: {exc}"])
    if set(final.vertices) != set(W.target_map.values()):
        problems.append("script residue differs from the target_map image")
        return (False, problems)
    for a, b in combinations(sort_labels(target.vertices), 2):
        if target.has_edge(a, b) != final.has_edge(W.target_map[a],
                                                   W.target_map[b]):
            problems.append(f"adjacency mismatch at ({a!r}, {b!r})")
    return (not problems, problems)


# -- recognition ----------------------------------------------------------------

def is_distance_hereditary(G: Graph, limit: int = DH_LIMIT) -> bool:
    """Literal definition: every connected induced subgraph preserves distances."""
    n = G.n
    if n > limit:
        raise SizeLimitError(f"distance-hereditary check limited to n <= {limit}")
    verts = list(G.vertices)
    base = {v: bfs_distances(G, v) for v in verts}
    for size in range(2, n + 1):
        for subset in combinations(verts, size):
            sub = induced_subgraph(G, subset)
            if not is_connected(sub):
                continue
            for v in subset:
                dist = bfs_distances(sub, v)
                for w in subset:
                    if dist[w] != base[v][w]:
                        return False
    return True


def _minor_search(G: Graph, pattern: Graph, moves, limit):
    """Shared breadth-first search over transformation orbits plus deletions."""
    if G.n > limit:
        raise SizeLimitError(f"minor search limited to n <= {limit}")
    h = pattern.n
    if h > G.n:
        return False
    target = canonical_key(pattern)
    seen = set()
    stack = [G]
    while stack:
        g = stack.pop()
        key = canonical_key(g)
        if key in seen:
            continue
        seen.add(key)
        if g.n == h and key == target:
            return True
        for nxt in moves(g):
            stack.append(nxt)
        if g.n > h:
            for v in g.vertices:
                stack.append(delete_vertices(g, [v]))
    return False


def has_vertex_minor(G: Graph, pattern: Graph,
                     limit: int = MINOR_SEARCH_LIMIT) -> bool:
    """Exact search over local complementations and vertex deletions."""
    def moves(g):
        for v in g.vertices:
            yield local_complement(g, v)
    return _minor_search(G, pattern, moves, limit)


def has_pivot_minor(G: Graph, pattern: Graph,
                    limit: int = MINOR_SEARCH_LIMIT) -> bool:
    """Exact search over edge pivots and vertex deletions."""
    def moves(g):
        for u, v in g.edges:
            yield pivot_edge(g, u, v)
    return _minor_search(G, pattern, moves, limit)


def obstructions_found(G: Graph, linear: bool = False,
                       limit: int = MINOR_SEARCH_LIMIT):
    """Names of excluded vertex-minors present in G (C5; plus N, Q if linear)."""
    patterns = [("C5", CYCLE_5)]
    if linear:
        patterns += [("N", NET), ("Q", Q_OBSTRUCTION)]
    return tuple(name for name, pat in patterns
                 if has_vertex_minor(G, pat, limit))


# -- witness constructions ----------------------------------------------------------

def _require_connected(G: Graph):
    if not is_connected(G):
        raise GraphError("witness constructions need a connected graph")


def _triangles_in_sectors(R):
    """Triangles of a width-1 expansion, one per 3-sector with mutual edges."""
    H = R.graph
    triangles = []
    for v in sort_labels(R.sectors):
        sector = sort_labels(R.sectors[v])
        if len(sector) == 3 and all(
                H.has_edge(p, q) for p, q in combinations(sector, 2)):
            triangles.append(tuple(sector))
    return triangles


def _width1_expansion(G: Graph, linear: bool):
    search = brute_force_linear_rank_width if linear else brute_force_rank_width
    width, D = search(G)
    if width > 1:
        kind = "linear rank-width" if linear else "rank-width"
        raise GraphError(f"{kind} is {width}, above 1")
    root = longest_path_leaf(D.tree) if linear else None
    return rank_expansion(G, D, root_leaf=root)


def _restriction_steps(R, G: Graph):
    """Pivot steps realizing the block pivot, then deletion of non-copies."""
    steps = list(pivot_script(R.graph, R.pivot_vertices))
    keep = set(R.embed.values())
    for t in sort_labels(set(R.graph.vertices) - keep):
        steps.append(("delete", t))
    return steps


def tree_witness_rw1(G: Graph) -> Witness:
    """G as a vertex-minor of a tree (rank-width at most 1 required).

    Each triangle of the width-1 expansion becomes a claw through a fresh
    center; complementing and deleting the centers restores the expansion,
    then pivots and deletions carve out G.
    """
    _require_connected(G)
    if G.n <= 2:
        return Witness(host=G, script=(), target_map={v: v for v in G.vertices})
    R = _width1_expansion(G, linear=False)
    H = R.graph

    host_vertices = list(H.vertices)
    host_edges = set(H.edges)
    prefix = []
    for idx, tri in enumerate(_triangles_in_sectors(R)):
        center = ("lc-center", idx)
        host_vertices.append(center)
        for t in tri:
            host_edges.add((t, center))
        for p, q in combinations(tri, 2):
            host_edges.discard((p, q))
            host_edges.discard((q, p))
        prefix.append(("lc", center))
        prefix.append(("delete", center))
    Q = Graph(host_vertices, host_edges)
    if not is_tree(Q):
        raise ExpansionError("claw replacement did not produce a tree")

    script = tuple(prefix + _restriction_steps(R, G))
    return Witness(host=Q, script=script, target_map=dict(R.embed))


def caterpillar_to_path(H: Graph) -> Witness:
    """A subcubic caterpillar as a pivot-minor of a path.

    Each spine edge is subdivided twice; pivoting the middle edges recreates
    the spine, and the surviving subdivision vertices stand in for the legs.
    """
    if not is_subcubic_caterpillar(H):
        raise GraphError("host reduction needs a subcubic caterpillar")
    if H.n == 1:
        return Witness(host=H, script=(), target_map={v: v for v in H.vertices})

    # maximum-length spine, ties broken by least labels through double sweep
    start = sort_labels(H.vertices)[0]
    d0 = bfs_distances(H, start)
    end1 = max(sort_labels(d0), key=lambda v: d0[v])
    d1 = bfs_distances(H, end1)
    end2 = max(sort_labels(d1), key=lambda v: d1[v])
    spine = tree_path(H, end1, end2)
    on_spine = set(spine)

    leg = {}
    for i, p in enumerate(spine):
        rest = [w for w in H.neighbors(p) if w not in on_spine]
        if not rest:
            continue
        if len(rest) > 1 or i in (0, len(spine) - 1):
            raise GraphError("spine is not a maximum-length path")
        leg[i] = rest[0]

    verts = list(spine)
    edges = []
    script = []
    target_map = {p: p for p in spine}
    for i in range(len(spine) - 1):
        a, b = ("sub-a", i), ("sub-b", i)
        if H.has_vertex(a) or H.has_vertex(b):
            raise GraphError("vertex labels collide with subdivision names")
        verts += [a, b]
        edges += [(spine[i], a), (a, b), (b, spine[i + 1])]
        script.append(("pivot", a, b))
    for i in range(len(spine) - 1):
        script.append(("delete", ("sub-a", i)))
        if i in leg:
            target_map[leg[i]] = ("sub-b", i)
        else:
            script.append(("delete", ("sub-b", i)))
    return Witness(host=Graph(verts, edges), script=tuple(script),
                   target_map=target_map)


def path_witness_lrw1(G: Graph) -> Witness:
    """G as a vertex-minor of a path (linear rank-width at most 1 required).

    Pipeline: open each expansion triangle at its degree-2 corner, reduce the
    resulting caterpillar to a path, then replay complementations, pivots,
    and deletions on the path host.
    """
    _require_connected(G)
    if G.n <= 2:
        return Witness(host=G, script=(), target_map={v: v for v in G.vertices})
    R = _width1_expansion(G, linear=True)
    H = R.graph

    centers = []
    edges = set(H.edges)
    for tri in _triangles_in_sectors(R):
        low = [t for t in tri if H.degree(t) == 2]
        if not low:
            raise ExpansionError("expansion triangle with no degree-2 corner")
        c = low[0]
        others = [t for t in tri if t != c]
        edges.discard((others[0], others[1]))
        edges.discard((others[1], others[0]))
        centers.append(c)
    P = Graph(H.vertices, edges)

    base = caterpillar_to_path(P)
    relabel = base.target_map
    script = list(base.script)
    for c in centers:
        script.append(("lc", relabel[c]))
    for step in _restriction_steps(R, G):
        script.append((step[0],) + tuple(relabel[t] for t in step[1:]))
    return Witness(host=base.host, script=tuple(script),
                   target_map={a: relabel[t] for a, t in R.embed.items()})


def bipartite_tree_witness(G: Graph) -> Witness:
    """Pivot-only witness from a tree host (connected bipartite, rw <= 1)."""
    _require_connected(G)
    if not is_bipartite(G):
        raise GraphError("pivot-only tree witnesses need a bipartite graph")
    if G.n <= 2:
        return Witness(host=G, script=(), target_map={v: v for v in G.vertices})
    R = _width1_expansion(G, linear=False)
    if _triangles_in_sectors(R):
        raise ExpansionError("bipartite width-1 expansion grew a triangle")
    if not is_tree(R.graph):
        raise ExpansionError("triangle-free width-1 expansion is not a tree")
    return Witness(host=R.graph, script=tuple(_restriction_steps(R, G)),
                   target_map=dict(R.embed))


def bipartite_path_witness(G: Graph) -> Witness:
    """Pivot-only witness from a path host (connected bipartite, lrw <= 1)."""
    _require_connected(G)
    if not is_bipartite(G):
        raise GraphError("pivot-only path witnesses need a bipartite graph")
    if G.n <= 2:
        return Witness(host=G, script=(), target_map={v: v for v in G.vertices})
    R = _width1_expansion(G, linear=True)
    if _triangles_in_sectors(R):
        raise ExpansionError("bipartite width-1 expansion grew a triangle")
    base = caterpillar_to_path(R.graph)
    relabel = base.target_map
    script = list(base.script)
    for step in _restriction_steps(R, G):
        script.append((step[0],) + tuple(relabel[t] for t in step[1:]))
    return Witness(host=base.host, script=tuple(script),
                   target_map={a: relabel[t] for a, t in R.embed.items()})
