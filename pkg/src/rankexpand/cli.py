"""Command-line interface.

Subcommands: expand, verify, rankwidth, lrankwidth, characterize, replay,
sweep.  Reports go to stdout as tab-delimited key/value lines; JSON, DOT,
and figure artifacts are written to the paths given by flags.

Exit codes: 0 success or property holds, 1 property fails, 2 usage error,
3 size guard tripped.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import characterize as ch
from . import formats
from .decompositions import (WIDTH_SEARCH_LIMIT, brute_force_linear_rank_width,
                             brute_force_rank_width, td_width)
from .expansion import (ExpansionError, build_expansion, assign_bases,
                        expansion_path_decomposition,
                        expansion_tree_decomposition, orient_from_leaf,
                        theorem_driver, verify_certificate, verify_pivot_minor)
from .graphs import Graph, GraphError, SizeLimitError, is_connected
from .labels import sort_labels
from .smallgraphs import graphs_of_order

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def _read_input(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if os.path.exists(arg):
        with open(arg, "r", encoding="utf-8") as fh:
            return fh.read()
    # not a file: treat the argument itself as inline graph text
    return arg


def _load_graph(args) -> Graph:
    return formats.parse_graph(_read_input(args.input), args.format)


def _report(*pairs):
    for key, value in pairs:
        print(f"{key}\t{value}")


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# -- subcommands --------------------------------------------------------------------

def _cmd_expand(args) -> int:
    G = _load_graph(args)
    decomposition = None
    if args.decomposition:
        with open(args.decomposition, "r", encoding="utf-8") as fh:
            import json
            decomposition = formats.rank_decomposition_from_json(json.load(fh))

    expansion_obj = None
    if decomposition is not None and is_connected(G) and G.n >= 3:
        root = None
        if args.root_leaf is not None:
            vertex = formats._token(args.root_leaf)
            if vertex not in decomposition.leaf_map:
                raise GraphError(f"{vertex!r} is not a graph vertex")
            root = decomposition.leaf_map[vertex]
        O = orient_from_leaf(G, decomposition, root_leaf=root)
        R = build_expansion(G, O, assign_bases(G, O))
        ok, mismatches = verify_pivot_minor(R, G)
        if not ok:
            print(f"error\tembedding mismatch {mismatches[:3]}", file=sys.stderr)
            return EXIT_FAIL
        D = (expansion_path_decomposition(R) if args.linear
             else expansion_tree_decomposition(R))
        from .expansion import ExpansionCertificate
        k = args.k
        if k is None:
            from .decompositions import rd_width
            k = rd_width(G, decomposition)
        cert = ExpansionCertificate(graph=G, k=k, linear=args.linear,
                                    expansion=R.graph,
                                    pivot_vertices=R.pivot_vertices,
                                    embed=dict(R.embed), decomposition=D)
        expansion_obj = R
    else:
        cert = theorem_driver(G, k=args.k, linear=args.linear)

    ok, problems = verify_certificate(cert)
    _report(("vertices", G.n),
            ("expansion-vertices", cert.expansion.n),
            ("k", cert.k),
            ("width", td_width(cert.decomposition)),
            ("width-bound", cert.width_bound),
            ("verified", "yes" if ok else "no"))
    for p in problems:
        print(f"problem\t{p}")
    if args.json:
        _write(args.json, formats.dumps(formats.certificate_to_json(cert)))
    if args.dot:
        if expansion_obj is not None:
            _write(args.dot, formats.emit_expansion_dot(expansion_obj))
        else:
            _write(args.dot, formats.emit_dot(cert.expansion, name="H"))
    if args.figure:
        from . import render
        if expansion_obj is not None:
            render.render_expansion(expansion_obj, args.figure)
        else:
            render.render_graph(cert.expansion, args.figure)
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_verify(args) -> int:
    import json
    cert = formats.certificate_from_json(json.loads(_read_input(args.input)))
    ok, problems = verify_certificate(cert)
    _report(("verified", "yes" if ok else "no"))
    for p in problems:
        print(f"problem\t{p}")
    return EXIT_OK if ok else EXIT_FAIL


def _width_command(args, linear: bool) -> int:
    G = _load_graph(args)
    search = brute_force_linear_rank_width if linear else brute_force_rank_width
    width, witness = search(G, limit=args.max_n)
    _report(("linear-rank-width" if linear else "rank-width", width))
    if args.json and witness is not None:
        _write(args.json,
               formats.dumps(formats.rank_decomposition_to_json(witness)))
    return EXIT_OK


def _cmd_characterize(args) -> int:
    G = _load_graph(args)
    rw, _ = brute_force_rank_width(G, limit=args.max_n)
    lrw, _ = brute_force_linear_rank_width(G, limit=args.max_n)
    dh = ch.is_distance_hereditary(G)
    obs = ch.obstructions_found(G, linear=True)
    _report(("rank-width", rw),
            ("linear-rank-width", lrw),
            ("distance-hereditary", "yes" if dh else "no"),
            ("obstructions", ",".join(obs) if obs else "none"))

    witness = None
    if is_connected(G):
        if lrw <= 1:
            witness = ch.path_witness_lrw1(G)
            _report(("witness", "path"))
        elif rw <= 1:
            witness = ch.tree_witness_rw1(G)
            _report(("witness", "tree"))
        else:
            _report(("witness", "none"))
    else:
        _report(("witness", "none"))
    if args.json and witness is not None:
        _write(args.json, formats.dumps(formats.witness_to_json(witness, G)))
    return EXIT_OK


def _cmd_replay(args) -> int:
    import json
    W, target = formats.witness_from_json(json.loads(_read_input(args.input)))
    ok, problems = ch.validate_witness(W, target)
    _report(("replayed", "yes" if ok else "no"))
    for p in problems:
        print(f"problem\t{p}")
    return EXIT_OK if ok else EXIT_FAIL


def _sweep_one(payload):
    g6, linear = payload
    G = formats.parse_graph6(g6)
    try:
        cert = theorem_driver(G, linear=linear)
        ok, problems = verify_certificate(cert)
    except (GraphError, ExpansionError) as exc:
        return (g6, False, [str(exc)])
    return (g6, ok, problems)


def _cmd_sweep(args) -> int:
    if args.max_n > WIDTH_SEARCH_LIMIT:
        raise SizeLimitError(
            f"sweep limited to n <= {WIDTH_SEARCH_LIMIT}")
    jobs = []
    for n in range(3, args.max_n + 1):
        for G in graphs_of_order(n, connected=True):
            jobs.append((formats.emit_graph6(G), args.linear))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_one, jobs))
    else:
        results = [_sweep_one(job) for job in jobs]
    failures = [(g6, problems) for g6, ok, problems in results if not ok]
    _report(("graphs", len(results)),
            ("mode", "linear" if args.linear else "tree"),
            ("failures", len(failures)))
    for g6, problems in failures:
        print(f"failure\t{g6}\t{'; '.join(problems)}")
    return EXIT_OK if not failures else EXIT_FAIL


# -- argument parsing ----------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankexpand",
        description="Build and check bounded-width supergraph certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p, formats_flag=True):
        p.add_argument("input", help="path, '-' for stdin, or inline graph text")
        if formats_flag:
            p.add_argument("--format", choices=formats.FORMATS,
                           default="graph6")

    p = sub.add_parser("expand", help="construct an expansion certificate")
    add_input(p)
    p.add_argument("--linear", action="store_true")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--root-leaf", default=None,
                   help="graph vertex whose leaf roots the orientation")
    p.add_argument("--decomposition", default=None,
                   help="rank-decomposition JSON file")
    p.add_argument("--json", default=None, help="write certificate JSON here")
    p.add_argument("--dot", default=None, help="write DOT here")
    p.add_argument("--figure", default=None, help="render a figure here")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("verify", help="re-check a certificate JSON")
    p.add_argument("input")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("rankwidth", help="exact rank-width with witness")
    add_input(p)
    p.add_argument("--max-n", type=int, default=WIDTH_SEARCH_LIMIT)
    p.add_argument("--json", default=None)
    p.set_defaults(func=lambda a: _width_command(a, linear=False))

    p = sub.add_parser("lrankwidth", help="exact linear rank-width with witness")
    add_input(p)
    p.add_argument("--max-n", type=int, default=WIDTH_SEARCH_LIMIT)
    p.add_argument("--json", default=None)
    p.set_defaults(func=lambda a: _width_command(a, linear=True))

    p = sub.add_parser("characterize", help="width-1 classification and witness")
    add_input(p)
    p.add_argument("--max-n", type=int, default=WIDTH_SEARCH_LIMIT)
    p.add_argument("--json", default=None, help="write witness JSON here")
    p.set_defaults(func=_cmd_characterize)

    p = sub.add_parser("replay", help="replay a witness JSON")
    p.add_argument("input")
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("sweep", help="exhaustive check over small graphs")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--linear", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SizeLimitError as exc:
        print(f"size-guard\t{exc}", file=sys.stderr)
        return EXIT_GUARD
    except (formats.FormatError, GraphError, OSError, ValueError,
            KeyError) as exc:
        print(f"error\t{exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
