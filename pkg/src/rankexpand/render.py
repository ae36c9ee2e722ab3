"""Matplotlib figure rendering for graphs and expansions.

Layouts come from networkx with a fixed seed so repeated runs of the same
input produce the same picture.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import networkx as nx

from .labels import sort_labels

_SEED = 20240901
_SECTOR_COLORS = ("tab:blue", "tab:orange", "tab:green", "tab:red",
                  "tab:purple", "tab:brown", "tab:pink", "tab:olive")


def _to_networkx(G):
    nxg = nx.Graph()
    nxg.add_nodes_from(G.vertices)
    nxg.add_edges_from(G.edges)
    return nxg


def render_graph(G, path: str, title: str = ""):
    """Draw a plain graph to an image file."""
    nxg = _to_networkx(G)
    pos = nx.spring_layout(nxg, seed=_SEED)
    fig, ax = plt.subplots(figsize=(6, 6))
    nx.draw_networkx(nxg, pos=pos, ax=ax, node_color="lightsteelblue",
                     labels={v: str(v) for v in G.vertices}, font_size=8)
    if title:
        ax.set_title(title)
    ax.set_axis_off()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_expansion(R, path: str, title: str = ""):
    """Draw an expansion with sector coloring and highlighted matchings."""
    H = R.graph
    nxg = _to_networkx(H)
    pos = nx.spring_layout(nxg, seed=_SEED)
    sector_of = {}
    for i, v in enumerate(sort_labels(R.sectors)):
        for t in R.sectors[v]:
            sector_of[t] = _SECTOR_COLORS[i % len(_SECTOR_COLORS)]
    matched = {frozenset((a, b))
               for e in R.inner_edges
               for a, b in zip(R.left[e], R.right[e])}

    fig, ax = plt.subplots(figsize=(8, 8))
    nx.draw_networkx_nodes(nxg, pos=pos, ax=ax, node_size=220,
                           node_color=[sector_of[v] for v in nxg.nodes()])
    plain = [e for e in nxg.edges() if frozenset(e) not in matched]
    bold = [e for e in nxg.edges() if frozenset(e) in matched]
    nx.draw_networkx_edges(nxg, pos=pos, ax=ax, edgelist=plain)
    nx.draw_networkx_edges(nxg, pos=pos, ax=ax, edgelist=bold,
                           edge_color="crimson", width=2.5)
    nx.draw_networkx_labels(nxg, pos=pos, ax=ax, font_size=6,
                            labels={v: str(v[0]) for v in nxg.nodes()})
    if title:
        ax.set_title(title)
    ax.set_axis_off()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
