"""Parsing, validation, and generation of undirected cost graphs.

File format (DIMACS shortest-path flavour, UTF-8, line-oriented):

    c free-text comment
    p sp <nodes> <arcs>
    a <u> <v> <w>        # undirected edge u-v with integer cost w >= 1

Node ids are 1-based in files and 0-based everywhere else in the library;
this module is the only place that converts. Duplicate edges collapse to the
minimum cost; self-loops are rejected.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .matrix import INF, WeightMatrix

# Costs above this are rejected so downstream clip bounds stay far away from
# the finite-value cap even after rounding M up to a power of two.
DEFAULT_MAX_COST = 1 << 20


class ParseError(ValueError):
    """Malformed graph file; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; edges are (u, v, cost) with 0-based u < v."""

    n: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph must have at least one node")
        seen = set()
        for u, v, w in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if u > v:
                raise ValueError(f"edge ({u},{v}) must be stored with u < v")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            if not isinstance(w, int) or w < 1:
                raise ValueError(f"edge ({u},{v}) cost must be an integer >= 1")

    @property
    def max_cost(self) -> int:
        return max((w for _, _, w in self.edges), default=1)


@dataclass(frozen=True)
class ComponentPartition:
    """Connected components: label per node plus node groups in index order."""

    labels: tuple[int, ...]
    groups: tuple[tuple[int, ...], ...]


def parse(text: str, max_cost: int = DEFAULT_MAX_COST) -> Graph:
    """Parse the edge-list format above into a validated Graph."""
    n = None
    declared_arcs = 0
    arc_lines = 0
    best: dict[tuple[int, int], int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise ParseError(line_no, "duplicate problem line")
            if len(fields) != 4 or fields[1] != "sp":
                raise ParseError(line_no, "expected 'p sp <nodes> <arcs>'")
            try:
                n = int(fields[2])
                declared_arcs = int(fields[3])
            except ValueError:
                raise ParseError(line_no, "node/arc counts must be integers") from None
            if n < 1:
                raise ParseError(line_no, "node count must be >= 1")
            if declared_arcs < 0:
                raise ParseError(line_no, "arc count must be >= 0")
        elif fields[0] == "a":
            if n is None:
                raise ParseError(line_no, "arc before problem line")
            if len(fields) != 4:
                raise ParseError(line_no, "expected 'a <u> <v> <w>'")
            try:
                u, v, w = int(fields[1]), int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError(line_no, "arc fields must be integers") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(line_no, f"node id out of range 1..{n}")
            if u == v:
                raise ParseError(line_no, "self-loops are not allowed")
            if w < 1:
                raise ParseError(line_no, "edge cost must be >= 1")
            if w > max_cost:
                raise ParseError(line_no, f"edge cost {w} exceeds cap {max_cost}")
            arc_lines += 1
            key = (min(u, v) - 1, max(u, v) - 1)
            if key not in best or w < best[key]:
                best[key] = w
        else:
            raise ParseError(line_no, f"unrecognized line type {fields[0]!r}")
    if n is None:
        raise ParseError(1, "missing problem line 'p sp <nodes> <arcs>'")
    if arc_lines != declared_arcs:
        raise ParseError(
            1, f"header declares {declared_arcs} arcs but file has {arc_lines}"
        )
    edges = tuple(sorted((u, v, w) for (u, v), w in best.items()))
    return Graph(n=n, edges=edges)


def parse_file(path: str, max_cost: int = DEFAULT_MAX_COST) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read(), max_cost=max_cost)


def render(graph: Graph) -> str:
    """Canonical form: sorted min-collapsed edges, 1-based ids, LF newlines."""
    lines = [f"p sp {graph.n} {len(graph.edges)}"]
    for u, v, w in sorted(graph.edges):
        lines.append(f"a {u + 1} {v + 1} {w}")
    return "\n".join(lines) + "\n"


def build_matrix(graph: Graph) -> WeightMatrix:
    """Cost matrix: zero diagonal, edge costs, INF for non-edges."""
    rows = [[0 if i == j else INF for j in range(graph.n)] for i in range(graph.n)]
    for u, v, w in graph.edges:
        rows[u][v] = w
        rows[v][u] = w
    return WeightMatrix(rows)


def components(graph: Graph) -> ComponentPartition:
    """Connected components via union-find."""
    parent = list(range(graph.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in graph.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru

    label_of_root: dict[int, int] = {}
    labels = []
    members: list[list[int]] = []
    for node in range(graph.n):
        root = find(node)
        if root not in label_of_root:
            label_of_root[root] = len(members)
            members.append([])
        lbl = label_of_root[root]
        labels.append(lbl)
        members[lbl].append(node)
    return ComponentPartition(
        labels=tuple(labels), groups=tuple(tuple(g) for g in members)
    )


def random_connected(
    n: int, max_cost: int, edge_prob: float, seed: int, max_tries: int = 1000
) -> Graph:
    """Erdos-Renyi G(n, p) with uniform costs in 1..max_cost, resampled until
    connected. Fully determined by the seed."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not (0.0 <= edge_prob <= 1.0):
        raise ValueError("edge_prob must be in [0, 1]")
    if max_cost < 1:
        raise ValueError("max_cost must be >= 1")
    rng = random.Random(seed)
    for _ in range(max_tries):
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < edge_prob:
                    edges.append((u, v, rng.randint(1, max_cost)))
        g = Graph(n=n, edges=tuple(edges))
        if len(components(g).groups) == 1:
            return g
    raise RuntimeError(
        f"no connected G({n}, {edge_prob}) sample within {max_tries} tries"
    )
