"""Parsing and serialization: graph6, edge lists, JSON schemas, DOT.

All emitters are deterministic: vertices and edges are sorted by the package
label order, JSON objects use sorted keys, and nothing embeds timestamps.
"""

from __future__ import annotations

import json

from .decompositions import RankDecomposition, TreeDecomposition
from .graphs import Graph, GraphError
from .labels import label_key, sort_labels


class FormatError(ValueError):
    """Malformed input bytes or JSON documents."""


FORMATS = ("graph6", "edge-list", "json")


# -- graph6 ----------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (n <= 62) into a graph on vertices 0..n-1."""
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise FormatError("empty graph6 input")
    first = ord(s[0]) - 63
    if first == 63:
        raise FormatError("graph6 inputs above 62 vertices are not supported")
    if not 0 <= first <= 62:
        raise FormatError(f"invalid graph6 size byte {s[0]!r} at offset 0")
    n = first
    body = s[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise FormatError(f"graph6 body has {len(body)} chars, expected {need}")
    bits = []
    for off, ch in enumerate(body):
        val = ord(ch) - 63
        if not 0 <= val <= 63:
            raise FormatError(f"invalid graph6 char {ch!r} at offset {off + 1}")
        bits.extend((val >> (5 - i)) & 1 for i in range(6))
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph(range(n), edges)


def emit_graph6(G: Graph) -> str:
    """Encode a graph; vertices are relabeled to 0..n-1 in label order."""
    n = G.n
    if n > 62:
        raise FormatError("graph6 output limited to 62 vertices")
    pos = {v: i for i, v in enumerate(G.vertices)}
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if G.has_edge(G.vertices[i], G.vertices[j]) else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(n + 63)]
    for p in range(0, len(bits), 6):
        val = 0
        for b in bits[p:p + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return "".join(chars)


# -- edge lists ---------------------------------------------------------------------

def _token(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def parse_edge_list(text: str) -> Graph:
    """Whitespace edge list: "u v" per line, `#` comments, `n=<k>` directive.

    A single-token line declares an isolated vertex; `n=<k>` declares
    vertices 0..k-1.  Integer-looking tokens become int labels.
    """
    vertices = set()
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n=") and len(line.split()) == 1:
            try:
                count = int(line[2:])
            except ValueError:
                raise FormatError(f"line {lineno}: bad vertex count {line!r}") from None
            vertices.update(range(count))
            continue
        parts = line.split()
        if len(parts) == 1:
            vertices.add(_token(parts[0]))
        elif len(parts) == 2:
            u, v = _token(parts[0]), _token(parts[1])
            if u == v:
                raise FormatError(f"line {lineno}: loop at {u!r}")
            vertices.update((u, v))
            edges.append((u, v))
        else:
            raise FormatError(f"line {lineno}: expected 1 or 2 tokens, got {len(parts)}")
    return Graph(vertices, edges)


def emit_edge_list(G: Graph) -> str:
    lines = []
    if all(isinstance(v, int) for v in G.vertices) and \
            list(G.vertices) == list(range(G.n)):
        lines.append(f"n={G.n}")
    else:
        touched = {v for e in G.edges for v in e}
        for v in G.vertices:
            if v not in touched:
                lines.append(str(v))
    for u, v in sorted(G.edges, key=lambda e: (label_key(e[0]), label_key(e[1]))):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


# -- JSON label encoding ----------------------------------------------------------------

def encode_label(label):
    if isinstance(label, bool):
        raise FormatError("boolean labels are not supported")
    if isinstance(label, int):
        return ["i", label]
    if isinstance(label, str):
        return ["s", label]
    if isinstance(label, tuple):
        return ["t", [encode_label(x) for x in label]]
    raise FormatError(f"label {label!r} is not JSON-encodable")


def decode_label(doc):
    if not isinstance(doc, list) or len(doc) != 2:
        raise FormatError(f"bad label record {doc!r}")
    tag, payload = doc
    if tag == "i":
        return int(payload)
    if tag == "s":
        return str(payload)
    if tag == "t":
        return tuple(decode_label(x) for x in payload)
    raise FormatError(f"unknown label tag {tag!r}")


def _pairs(mapping):
    items = sorted(mapping.items(), key=lambda kv: label_key(kv[0]))
    return [[encode_label(k), encode_label(v)] for k, v in items]


def _unpairs(doc):
    if not isinstance(doc, list):
        raise FormatError("expected a list of pairs")
    return {decode_label(k): decode_label(v) for k, v in doc}


# -- JSON graph / decomposition / certificate / witness schemas ----------------------------

def graph_to_json(G: Graph) -> dict:
    return {
        "schema": "graph/1",
        "vertices": [encode_label(v) for v in G.vertices],
        "edges": [[encode_label(u), encode_label(v)] for u, v in
                  sorted(G.edges, key=lambda e: (label_key(e[0]), label_key(e[1])))],
    }


def graph_from_json(doc) -> Graph:
    if not isinstance(doc, dict) or doc.get("schema") != "graph/1":
        raise FormatError("expected a graph/1 document")
    vertices = [decode_label(v) for v in doc.get("vertices", [])]
    edges = [(decode_label(u), decode_label(v)) for u, v in doc.get("edges", [])]
    try:
        return Graph(vertices, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def parse_graph(text: str, fmt: str) -> Graph:
    if fmt == "graph6":
        return parse_graph6(text)
    if fmt == "edge-list":
        return parse_edge_list(text)
    if fmt == "json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad JSON: {exc}") from None
        return graph_from_json(doc)
    raise FormatError(f"unknown format {fmt!r}")


def emit_graph(G: Graph, fmt: str) -> str:
    if fmt == "graph6":
        return emit_graph6(G) + "\n"
    if fmt == "edge-list":
        return emit_edge_list(G)
    if fmt == "json":
        return dumps(graph_to_json(G))
    raise FormatError(f"unknown format {fmt!r}")


def rank_decomposition_to_json(D: RankDecomposition) -> dict:
    return {
        "schema": "rank-decomposition/1",
        "tree": graph_to_json(D.tree),
        "leaf_map": _pairs(D.leaf_map),
        "linear": bool(D.linear),
    }


def rank_decomposition_from_json(doc) -> RankDecomposition:
    if not isinstance(doc, dict) or doc.get("schema") != "rank-decomposition/1":
        raise FormatError("expected a rank-decomposition/1 document")
    return RankDecomposition(tree=graph_from_json(doc["tree"]),
                             leaf_map=_unpairs(doc["leaf_map"]),
                             linear=bool(doc.get("linear", False)))


def tree_decomposition_to_json(D: TreeDecomposition) -> dict:
    bags = sorted(D.bags.items(), key=lambda kv: label_key(kv[0]))
    return {
        "schema": "tree-decomposition/1",
        "tree": graph_to_json(D.tree),
        "bags": [[encode_label(t), [encode_label(v) for v in sort_labels(bag)]]
                 for t, bag in bags],
        "path": bool(D.path),
    }


def tree_decomposition_from_json(doc) -> TreeDecomposition:
    if not isinstance(doc, dict) or doc.get("schema") != "tree-decomposition/1":
        raise FormatError("expected a tree-decomposition/1 document")
    bags = {decode_label(t): frozenset(decode_label(v) for v in bag)
            for t, bag in doc["bags"]}
    return TreeDecomposition(tree=graph_from_json(doc["tree"]), bags=bags,
                             path=bool(doc.get("path", False)))


def certificate_to_json(cert) -> dict:
    return {
        "schema": "certificate/1",
        "graph": graph_to_json(cert.graph),
        "k": cert.k,
        "linear": bool(cert.linear),
        "expansion": graph_to_json(cert.expansion),
        "pivot": [encode_label(v) for v in sort_labels(cert.pivot_vertices)],
        "embed": _pairs(cert.embed),
        "decomposition": tree_decomposition_to_json(cert.decomposition),
    }


def certificate_from_json(doc):
    from .expansion import ExpansionCertificate

    if not isinstance(doc, dict) or doc.get("schema") != "certificate/1":
        raise FormatError("expected a certificate/1 document")
    return ExpansionCertificate(
        graph=graph_from_json(doc["graph"]),
        k=int(doc["k"]),
        linear=bool(doc["linear"]),
        expansion=graph_from_json(doc["expansion"]),
        pivot_vertices=frozenset(decode_label(v) for v in doc["pivot"]),
        embed=_unpairs(doc["embed"]),
        decomposition=tree_decomposition_from_json(doc["decomposition"]))


def _encode_step(step):
    return [step[0]] + [encode_label(v) for v in step[1:]]


def _decode_step(doc):
    if not isinstance(doc, list) or not doc or doc[0] not in ("lc", "pivot", "delete"):
        raise FormatError(f"bad script step {doc!r}")
    return (doc[0],) + tuple(decode_label(v) for v in doc[1:])


def witness_to_json(W, target: Graph) -> dict:
    return {
        "schema": "witness/1",
        "host": graph_to_json(W.host),
        "script": [_encode_step(s) for s in W.script],
        "target_map": _pairs(W.target_map),
        "target": graph_to_json(target),
    }


def witness_from_json(doc):
    from .characterize import Witness

    if not isinstance(doc, dict) or doc.get("schema") != "witness/1":
        raise FormatError("expected a witness/1 document")
    W = Witness(host=graph_from_json(doc["host"]),
                script=tuple(_decode_step(s) for s in doc["script"]),
                target_map=_unpairs(doc["target_map"]))
    return W, graph_from_json(doc["target"])


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# -- DOT -------------------------------------------------------------------------------

def _dot_label(v) -> str:
    text = repr(v) if isinstance(v, tuple) else str(v)
    return text.replace('"', r'\"')


def emit_dot(G: Graph, name: str = "G") -> str:
    ids = {v: f"v{i}" for i, v in enumerate(G.vertices)}
    lines = [f"graph {name} {{"]
    for v in G.vertices:
        lines.append(f'  {ids[v]} [label="{_dot_label(v)}"];')
    for u, v in sorted(G.edges, key=lambda e: (label_key(e[0]), label_key(e[1]))):
        lines.append(f"  {ids[u]} -- {ids[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_PALETTE = ("red", "blue", "darkgreen", "orange", "purple", "brown",
                "deeppink", "cadetblue")


def emit_expansion_dot(R, name: str = "H") -> str:
    """DOT with one cluster per sector and colored inner matchings."""
    H = R.graph
    ids = {v: f"v{i}" for i, v in enumerate(H.vertices)}
    lines = [f"graph {name} {{"]
    for i, v in enumerate(sort_labels(R.sectors)):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="sector {_dot_label(v)}";')
        for t in sort_labels(R.sectors[v]):
            lines.append(f'    {ids[t]} [label="{_dot_label(t)}"];')
        lines.append("  }")
    edge_color = {}
    for i, e in enumerate(R.inner_edges):
        color = _DOT_PALETTE[i % len(_DOT_PALETTE)]
        for a, b in zip(R.left[e], R.right[e]):
            edge_color[frozenset((a, b))] = color
    for u, v in sorted(H.edges, key=lambda e: (label_key(e[0]), label_key(e[1]))):
        color = edge_color.get(frozenset((u, v)))
        attr = f' [color={color}, penwidth=2]' if color else ""
        lines.append(f"  {ids[u]} -- {ids[v]}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
