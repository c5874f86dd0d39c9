"""The Shoshan-Zwick APSP pipeline for undirected graphs with costs in 1..M.

The pipeline squares the cost matrix under clipped min-plus products, builds
the ladder A_0..A_l, runs the downward C/P/Q recursion, extracts bit matrices,
and hands off to one of two finishers:

* ``original``   the finisher as first published. Known to be wrong: P_0 can
                 carry negative values, so both its low-bit matrix
                 B_0 = (0 <= P_0 < M) and its remainder R = P_0 mod M are
                 miscomputed. Kept so the failure is reproducible.
* ``corrected``  replaces them with B^_0 = (-M < P_0 < 0), R^ = P_0 and the
                 sum M * sum_{k>=1} 2^k B_k + 2M * B^_0 + R^, which equals the
                 true distance for every connected pair.

Disconnected inputs are split into components; cross-component entries of the
result are +infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphio import Graph, build_matrix, components
from .matrix import (
    INF,
    BitMatrix,
    WeightMatrix,
    band,
    chop,
    clip,
    constant_matrix,
    ge_zero,
    scalar_add,
    vee,
    wedge,
    bar_wedge,
)
from .product import BackendUnsupportedError, ProductBackend, distance_product

FINISHERS = ("original", "corrected")


@dataclass(frozen=True)
class SzParams:
    """Problem-size parameters: n nodes, cost bound M = 2**m, l = ceil(log2 n)."""

    n: int
    M: int
    m: int
    l: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.m < 1 or self.M != 1 << self.m:
            raise ValueError("M must equal 2**m with m >= 1")
        if self.l != max(self.n - 1, 0).bit_length():
            raise ValueError("l must equal ceil(log2 n)")

    @classmethod
    def for_graph(cls, n: int, max_cost: int) -> "SzParams":
        """Round an arbitrary cost bound up to the next power of two (>= 2)."""
        if max_cost < 1:
            raise ValueError("max_cost must be >= 1")
        m = max(1, (max_cost - 1).bit_length())
        return cls(n=n, M=1 << m, m=m, l=max(n - 1, 0).bit_length())


@dataclass
class SzTrace:
    """Every intermediate matrix of one pipeline run over one component."""

    params: SzParams
    finisher: str
    nodes: tuple[int, ...]  # 0-based node ids this component covers
    d_squared: WeightMatrix
    a: list[WeightMatrix]  # A_0 .. A_l
    c: list[WeightMatrix]  # C_0 .. C_l
    p: list[WeightMatrix]  # P_0 .. P_l
    q: list[WeightMatrix]  # Q_0 .. Q_l
    b: list[BitMatrix]  # index 0 holds B_0 (original) or B^_0 (corrected)
    r: WeightMatrix  # R (original) or R^ (corrected)
    delta: WeightMatrix


@dataclass
class RunResult:
    delta: WeightMatrix
    traces: list[SzTrace] | None = None


def _product(a, b, backend):
    """Distance product with automatic fallback when a backend refuses."""
    try:
        return distance_product(a, b, backend)
    except BackendUnsupportedError:
        fallback = ProductBackend(kind="naive", stats=backend.stats if backend else None)
        return distance_product(a, b, fallback)


def _validate_input_matrix(d: WeightMatrix, params: SzParams) -> None:
    if d.n != params.n:
        raise ValueError(f"matrix dimension {d.n} does not match params n={params.n}")
    if not d.is_symmetric():
        raise ValueError("input matrix must be symmetric")
    for i in range(d.n):
        if d[i, i] != 0:
            raise ValueError("input matrix must have a zero diagonal")
    for i in range(d.n):
        for j in range(d.n):
            if i != j:
                v = d[i, j]
                if v != INF and not (1 <= v <= params.M):
                    raise ValueError(
                        f"off-diagonal entry ({i},{j})={v} outside 1..{params.M}"
                    )


def squaring_phase(
    d: WeightMatrix, params: SzParams, backend: ProductBackend | None = None
) -> WeightMatrix:
    """Apply D <- clip(D * D, 0, 2M) exactly m+1 times.

    Afterwards an entry holds the true distance whenever that distance is at
    most 2M, and +infinity-or-clipped content above that.
    """
    _validate_input_matrix(d, params)
    for _ in range(params.m + 1):
        nxt = clip(_product(d, d, backend), 0, 2 * params.M)
        if nxt == d:  # fixed point: remaining iterations cannot change it
            return nxt
        d = nxt
    return d


def ladder_phase(
    a0: WeightMatrix, params: SzParams, backend: ProductBackend | None = None
) -> list[WeightMatrix]:
    """A_k = clip(A_{k-1} * A_{k-1}, -M, M) for k = 1..l; returns [A_0..A_l]."""
    ladder = [a0]
    for _ in range(params.l):
        prev = ladder[-1]
        nxt = clip(_product(prev, prev, backend), -params.M, params.M)
        if nxt == prev:  # fixed point: every later level equals this one
            ladder.extend([nxt] * (params.l + 1 - len(ladder)))
            break
        ladder.append(nxt)
    return ladder


def cpq_recursion(
    d_squared: WeightMatrix,
    a: list[WeightMatrix],
    params: SzParams,
    backend: ProductBackend | None = None,
) -> tuple[list[WeightMatrix], list[WeightMatrix], list[WeightMatrix]]:
    """Downward recursion producing C_0..C_l, P_0..P_l, Q_0..Q_l.

    Seeds: C_l = -M, P_l = clip(D, 0, M), Q_l = +inf. Then for k = l-1..0:

        C_k = [clip(P_{k+1} * A_k, -M, M) /\\ C_{k+1}]
              \\/ [clip(Q_{k+1} * A_k, -M, M) /\\bar C_{k+1}]
        P_k = P_{k+1} \\/ Q_{k+1}
        Q_k = chop(C_k, 1-M, M)
    """
    M, l, n = params.M, params.l, params.n
    c: list[WeightMatrix | None] = [None] * (l + 1)
    p: list[WeightMatrix | None] = [None] * (l + 1)
    q: list[WeightMatrix | None] = [None] * (l + 1)
    c[l] = constant_matrix(n, -M)
    p[l] = clip(d_squared, 0, M)
    q[l] = constant_matrix(n, INF)
    for k in range(l - 1, -1, -1):
        keep_neg = wedge(clip(_product(p[k + 1], a[k], backend), -M, M), c[k + 1])
        keep_nonneg = bar_wedge(clip(_product(q[k + 1], a[k], backend), -M, M), c[k + 1])
        c[k] = vee(keep_neg, keep_nonneg)
        p[k] = vee(p[k + 1], q[k + 1])
        q[k] = chop(c[k], 1 - M, M)
    return c, p, q  # type: ignore[return-value]


def _msb_bits(c: list[WeightMatrix], params: SzParams) -> list[BitMatrix]:
    """B_k = (C_k >= 0) for k = 1..l (index 0 is left to the finisher)."""
    return [ge_zero(c[k]) for k in range(1, params.l + 1)]


def _assemble(
    high_bits: list[BitMatrix],
    weights: list[int],
    scale: int,
    remainder: WeightMatrix,
) -> WeightMatrix:
    acc = np.zeros((remainder.n, remainder.n), dtype=np.int64)
    for bits, w in zip(high_bits, weights):
        acc += bits._bits.astype(np.int64) * w
    vals = scale * acc + remainder._vals
    return WeightMatrix._wrap(np.where(remainder._mask, 0, vals), remainder._mask)


def _mod_trunc(a: WeightMatrix, modulus: int) -> WeightMatrix:
    """Sign-preserving remainder, e.g. (-2) mod 4 == -2. INF passes through."""
    vals = np.fmod(a._vals, np.int64(modulus))
    return WeightMatrix._wrap(vals, a._mask)


def finish_original(
    c: list[WeightMatrix], p: list[WeightMatrix], params: SzParams
) -> WeightMatrix:
    """The published finisher, bug included; disagrees with true distances."""
    delta, _, _ = _finish_original_parts(c, p, params)
    return delta


def _finish_original_parts(c, p, params):
    b0 = band(p[0], 0, params.M, hi_strict=True)
    r = _mod_trunc(p[0], params.M)
    bits = [b0] + _msb_bits(c, params)
    weights = [1 << k for k in range(params.l + 1)]
    return _assemble(bits, weights, params.M, r), bits, r


def finish_corrected(
    c: list[WeightMatrix], p: list[WeightMatrix], params: SzParams
) -> WeightMatrix:
    """The corrected finisher; equals the true distance on connected pairs."""
    delta, _, _ = _finish_corrected_parts(c, p, params)
    return delta


def _finish_corrected_parts(c, p, params):
    b0_hat = band(p[0], -params.M, 0, lo_strict=True, hi_strict=True)
    r_hat = p[0]
    bits = [b0_hat] + _msb_bits(c, params)
    weights = [2] + [1 << k for k in range(1, params.l + 1)]
    return _assemble(bits, weights, params.M, r_hat), bits, r_hat


def _run_component(
    d: WeightMatrix,
    params: SzParams,
    finisher: str,
    backend: ProductBackend | None,
    nodes: tuple[int, ...],
    capture_trace: bool,
) -> tuple[WeightMatrix, SzTrace | None]:
    d_squared = squaring_phase(d, params, backend)
    a = ladder_phase(scalar_add(d_squared, -params.M), params, backend)
    c, p, q = cpq_recursion(d_squared, a, params, backend)
    if finisher == "original":
        delta, bits, r = _finish_original_parts(c, p, params)
    else:
        delta, bits, r = _finish_corrected_parts(c, p, params)
    trace = None
    if capture_trace:
        trace = SzTrace(
            params=params,
            finisher=finisher,
            nodes=nodes,
            d_squared=d_squared,
            a=a,
            c=c,
            p=p,
            q=q,
            b=bits,
            r=r,
            delta=delta,
        )
    return delta, trace


def run(
    graph: Graph,
    finisher: str = "corrected",
    backend: ProductBackend | None = None,
    capture_trace: bool = False,
) -> RunResult:
    """Full APSP over a validated graph, one pipeline run per component."""
    if finisher not in FINISHERS:
        raise ValueError(f"unknown finisher {finisher!r}; choose from {FINISHERS}")
    n = graph.n
    out_vals = np.zeros((n, n), dtype=np.int64)
    out_mask = np.ones((n, n), dtype=bool)
    np.fill_diagonal(out_mask, False)
    traces: list[SzTrace] | None = [] if capture_trace else None

    for group in components(graph).groups:
        local = {node: idx for idx, node in enumerate(group)}
        sub_edges = [
            (local[u], local[v], w) for u, v, w in graph.edges if u in local
        ]
        sub = Graph(n=len(group), edges=tuple(sub_edges))
        max_cost = max((w for _, _, w in sub_edges), default=1)
        params = SzParams.for_graph(len(group), max_cost)
        delta, trace = _run_component(
            build_matrix(sub), params, finisher, backend, tuple(group), capture_trace
        )
        idx = np.fromiter(group, dtype=np.intp)
        out_vals[np.ix_(idx, idx)] = delta._vals
        out_mask[np.ix_(idx, idx)] = delta._mask
        if traces is not None and trace is not None:
            traces.append(trace)

    return RunResult(delta=WeightMatrix._wrap(out_vals, out_mask), traces=traces)
