"""Command-line front end.

Subcommands:

* ``apsp``    compute all-pairs shortest paths for a graph file
* ``verify``  compare a run against the built-in oracles, exit 1 on mismatch
* ``demo``    narrate every intermediate matrix on the embedded 3-node
              counter-example graph (edges 1-2 cost 2, 1-3 cost 4)
* ``bench``   time a full pipeline run, key=value output

Exit codes: 0 success / verified, 1 verification mismatch, 2 usage or input
errors.
"""

from __future__ import annotations

import argparse
import sys
import time

from .algorithm import FINISHERS, RunResult, SzTrace, run
from .graphio import Graph, ParseError, parse_file, random_connected
from .matrix import INF, WeightMatrix
from .product import BACKENDS, ProductBackend, ProductStats

DEMO_GRAPH = Graph(n=3, edges=((0, 1, 2), (0, 2, 4)))


def _backend_from_args(args, stats: ProductStats | None = None) -> ProductBackend:
    return ProductBackend(kind=args.backend, stats=stats)


def _print_matrix(title: str, m, out) -> None:
    out.write(title + ":\n")
    out.write(m.render())
    out.write("\n")


def _trace_blocks(trace: SzTrace, out) -> None:
    p = trace.params
    out.write(
        f"component nodes: {' '.join(str(v + 1) for v in trace.nodes)}\n"
        f"params: n={p.n} M={p.M} m={p.m} l={p.l}\n\n"
    )
    _print_matrix("D after repeated squaring", trace.d_squared, out)
    for k in range(p.l + 1):
        _print_matrix(f"A[{k}]", trace.a[k], out)
    for k in range(p.l, -1, -1):
        _print_matrix(f"C[{k}]", trace.c[k], out)
        _print_matrix(f"P[{k}]", trace.p[k], out)
        _print_matrix(f"Q[{k}]", trace.q[k], out)
    for k in range(1, p.l + 1):
        _print_matrix(f"B[{k}]", trace.b[k], out)
    if trace.finisher == "original":
        _print_matrix("B[0]", trace.b[0], out)
        _print_matrix("R", trace.r, out)
    else:
        _print_matrix("B-hat[0]", trace.b[0], out)
        _print_matrix("R-hat", trace.r, out)
    _print_matrix("delta", trace.delta, out)


def _emit_result(result: RunResult, fmt: str, out) -> None:
    if fmt == "csv":
        out.write("i,j,delta\n")
        delta = result.delta
        for i in range(delta.n):
            for j in range(delta.n):
                v = delta[i, j]
                out.write(f"{i + 1},{j + 1},{'inf' if v == INF else v}\n")
    else:
        out.write(result.delta.render())


def cmd_apsp(args) -> int:
    graph = parse_file(args.input)
    result = run(
        graph,
        finisher=args.finisher,
        backend=_backend_from_args(args),
        capture_trace=args.trace,
    )
    if args.trace:
        for trace in result.traces or []:
            _trace_blocks(trace, sys.stdout)
    _emit_result(result, args.format, sys.stdout)
    return 0


def cmd_verify(args) -> int:
    from .oracle import verify  # local import keeps startup light

    graph = parse_file(args.input)
    result = run(graph, finisher=args.finisher, backend=_backend_from_args(args))
    report = verify(graph, result.delta, backend=_backend_from_args(args))
    sys.stdout.write(report.render_text())
    return 0 if report.ok else 1


def cmd_demo(args) -> int:
    result = run(
        DEMO_GRAPH,
        finisher=args.finisher,
        backend=_backend_from_args(args),
        capture_trace=True,
    )
    out = sys.stdout
    out.write("demo graph: 3 nodes; edges 1-2 cost 2, 1-3 cost 4\n")
    out.write(f"finisher: {args.finisher}\n\n")
    _print_matrix("D (input costs)", _demo_input_matrix(), out)
    for trace in result.traces or []:
        _trace_blocks(trace, out)
    return 0


def _demo_input_matrix() -> WeightMatrix:
    from .graphio import build_matrix

    return build_matrix(DEMO_GRAPH)


def cmd_bench(args) -> int:
    if args.generate:
        graph = random_connected(
            args.nodes, args.max_cost, args.edge_prob, seed=args.seed
        )
    elif args.input:
        graph = parse_file(args.input)
    else:
        sys.stderr.write("bench: provide an input file or --generate\n")
        return 2
    stats = ProductStats()
    backend = _backend_from_args(args, stats=stats)
    start = time.perf_counter()
    result = run(graph, finisher=args.finisher, backend=backend)
    elapsed = time.perf_counter() - start
    n = graph.n
    max_cost = graph.max_cost
    m = max(1, (max_cost - 1).bit_length())
    sys.stdout.write(f"backend={args.backend}\n")
    sys.stdout.write(f"finisher={args.finisher}\n")
    sys.stdout.write(f"n={n}\n")
    sys.stdout.write(f"M={1 << m}\n")
    sys.stdout.write(f"edges={len(graph.edges)}\n")
    sys.stdout.write(f"products={stats.products}\n")
    sys.stdout.write(f"wall_time_s={elapsed:.6f}\n")
    if args.backend.startswith("encoded"):
        sys.stdout.write(f"peak_encoded_bits={stats.peak_encoded_bits}\n")
    finite = result.delta.finite_range()
    sys.stdout.write(f"max_distance={finite[1] if finite else 0}\n")
    return 0


def _add_common(sub, *, input_required: bool) -> None:
    if input_required:
        sub.add_argument("input", help="graph file (p sp / a lines)")
    sub.add_argument(
        "--finisher",
        choices=FINISHERS,
        default="corrected",
        help="which final assembly step to use",
    )
    sub.add_argument("--backend", choices=BACKENDS, default="naive")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="szapsp",
        description="All-pairs shortest paths for undirected graphs with small "
        "integer costs, with selectable finisher and product backend.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_apsp = subs.add_parser("apsp", help="compute the distance matrix")
    _add_common(p_apsp, input_required=True)
    p_apsp.add_argument("--format", choices=("text", "csv"), default="text")
    p_apsp.add_argument(
        "--trace", action="store_true", help="print intermediate matrices"
    )
    p_apsp.set_defaults(func=cmd_apsp)

    p_verify = subs.add_parser("verify", help="check a run against the oracles")
    _add_common(p_verify, input_required=True)
    p_verify.set_defaults(func=cmd_verify)

    p_demo = subs.add_parser("demo", help="narrate the embedded counter-example")
    _add_common(p_demo, input_required=False)
    p_demo.set_defaults(func=cmd_demo)

    p_bench = subs.add_parser("bench", help="time a full pipeline run")
    p_bench.add_argument("input", nargs="?", help="graph file")
    p_bench.add_argument(
        "--finisher", choices=FINISHERS, default="corrected"
    )
    p_bench.add_argument("--backend", choices=BACKENDS, default="naive")
    p_bench.add_argument("--generate", action="store_true")
    p_bench.add_argument("--nodes", type=int, default=64)
    p_bench.add_argument("--max-cost", type=int, default=8)
    p_bench.add_argument("--edge-prob", type=float, default=0.3)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError, ValueError) as exc:
        sys.stderr.write(f"szapsp: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
