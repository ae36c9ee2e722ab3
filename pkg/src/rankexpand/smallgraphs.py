"""Named small graphs, canonical forms, and exhaustive isomorphism-class sweeps.

Canonical forms use invariant refinement plus a minimum edge-code search over
invariant-respecting vertex orders; feasible well past the n <= 9 desk scale
used here.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from .graphs import Graph, is_connected
from .labels import label_key


# -- constructors ---------------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(range(n))


def path_graph(n: int) -> Graph:
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return Graph(range(leaves + 1), [(0, i) for i in range(1, leaves + 1)])


# The three vertex-minor obstructions used by the width-1 characterizations.
# Their identity is pinned by the test suite (each must separate the classes
# exhaustively at n <= 6), not by any drawing.
CYCLE_5 = cycle_graph(5)

# triangle 0-1-2 with one pendant vertex on each corner ("net")
NET = Graph(range(6), [(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)])

# 4-cycle 1-2-3-4 with pendants 0 and 5 on the opposite corners 1 and 3
Q_OBSTRUCTION = Graph(range(6),
                      [(1, 2), (2, 3), (3, 4), (4, 1), (0, 1), (3, 5)])


# -- canonical forms -------------------------------------------------------------

def _pair_bit(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def canonical_key(G: Graph):
    """Hashable key equal for two graphs iff they are isomorphic."""
    n = G.n
    verts = G.vertices
    inv = {v: G.degree(v) for v in verts}
    for _ in range(2):
        nxt = {v: (inv[v], tuple(sorted(inv[w] for w in G.neighbors(v))))
               for v in verts}
        # compress to small ranks so invariants stay cheap to compare
        ranks = {t: i for i, t in enumerate(sorted(set(nxt.values())))}
        inv = {v: ranks[nxt[v]] for v in verts}

    groups = {}
    for v in verts:
        groups.setdefault(inv[v], []).append(v)
    ordered_groups = [sorted(groups[k], key=label_key) for k in sorted(groups)]

    best = None
    for perm_parts in product(*(permutations(g) for g in ordered_groups)):
        order = [v for part in perm_parts for v in part]
        pos = {v: i for i, v in enumerate(order)}
        code = 0
        for u, v in G.edges:
            code |= 1 << _pair_bit(pos[u], pos[v])
        if best is None or code < best:
            best = code
    return (n, best)


def graph_from_key(key) -> Graph:
    """Canonical representative on vertices 0..n-1 for a canonical key."""
    n, code = key
    edges = [(i, j) for j in range(n) for i in range(j)
             if (code >> _pair_bit(i, j)) & 1]
    return Graph(range(n), edges)


@lru_cache(maxsize=None)
def _iso_classes(n: int):
    """Canonical representatives of all graphs on n vertices, keyed order."""
    if n == 0:
        return (Graph(),)
    if n == 1:
        return (Graph([0]),)
    reps = {}
    new = n - 1
    for base in _iso_classes(n - 1):
        base_edges = list(base.edges)
        for mask in range(1 << (n - 1)):
            edges = base_edges + [(i, new) for i in range(n - 1)
                                  if (mask >> i) & 1]
            key = canonical_key(Graph(range(n), edges))
            if key not in reps:
                reps[key] = graph_from_key(key)
    return tuple(reps[k] for k in sorted(reps))


def graphs_of_order(n: int, connected: bool = False):
    """All isomorphism classes on n vertices (optionally connected only)."""
    reps = _iso_classes(n)
    if connected:
        return tuple(g for g in reps if is_connected(g))
    return reps
