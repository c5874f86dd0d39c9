"""All-pairs shortest paths for undirected graphs with integer costs in 1..M,
via clipped min-plus matrix squaring, with both the originally published
(erroneous) finisher and a corrected one."""

from .algorithm import (
    FINISHERS,
    RunResult,
    SzParams,
    SzTrace,
    cpq_recursion,
    finish_corrected,
    finish_original,
    ladder_phase,
    run,
    squaring_phase,
)
from .graphio import (
    ComponentPartition,
    Graph,
    ParseError,
    build_matrix,
    components,
    parse,
    parse_file,
    random_connected,
    render,
)
from .matrix import (
    INF,
    BitMatrix,
    WeightMatrix,
    band,
    bar_wedge,
    chop,
    clip,
    constant_matrix,
    ge_zero,
    scalar_add,
    vee,
    wedge,
)
from .oracle import (
    VerifyReport,
    check_trace_properties,
    dijkstra_all,
    floyd_warshall,
    minplus_reference,
    predicted_p0,
    verify,
)
from .product import (
    BACKENDS,
    BackendUnsupportedError,
    DegenerateMatrixError,
    EncodedMatrix,
    ProductBackend,
    ProductStats,
    decode_entry,
    distance_product,
    encode,
    minplus_identity,
    ring_matmul,
)

__all__ = [
    "BACKENDS",
    "BackendUnsupportedError",
    "BitMatrix",
    "ComponentPartition",
    "DegenerateMatrixError",
    "EncodedMatrix",
    "FINISHERS",
    "Graph",
    "INF",
    "ParseError",
    "ProductBackend",
    "ProductStats",
    "RunResult",
    "SzParams",
    "SzTrace",
    "VerifyReport",
    "WeightMatrix",
    "band",
    "bar_wedge",
    "build_matrix",
    "check_trace_properties",
    "chop",
    "clip",
    "components",
    "constant_matrix",
    "cpq_recursion",
    "decode_entry",
    "dijkstra_all",
    "distance_product",
    "encode",
    "finish_corrected",
    "finish_original",
    "floyd_warshall",
    "ge_zero",
    "ladder_phase",
    "minplus_identity",
    "minplus_reference",
    "parse",
    "parse_file",
    "predicted_p0",
    "random_connected",
    "render",
    "ring_matmul",
    "run",
    "scalar_add",
    "squaring_phase",
    "vee",
    "verify",
    "wedge",
]
