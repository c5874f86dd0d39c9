"""Min-plus (distance) matrix products.

Four interchangeable backends:

* ``naive``            direct cubic, vectorized row by row
* ``blocked``          cache-blocked cubic over square tiles
* ``encoded``          reduction to ordinary ring multiplication over
                       arbitrary-precision integers via power-of-(n+1) encoding
* ``encoded-strassen`` the same reduction with Strassen recursion for the
                       ring product

All backends produce identical, exact results. The encoded reduction maps an
entry a to (n+1)**(a - x) with x the smallest finite entry; summing those
powers and taking the largest exponent present recovers the *maximum* over k
of a_ik + b_kj, so the min-plus backend feeds negated matrices through the
encoding and negates the decoded result.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

from .matrix import INF, Entry, WeightMatrix, padded_values

BACKENDS = ("naive", "blocked", "encoded", "encoded-strassen")

# Pad used for +inf inside the int64 kernels. Finite entries are capped at
# 2**40 by WeightMatrix, so any sum involving the pad lands above _INF_CUT
# and any finite sum lands far below it.
_INF_PAD = 1 << 60
_INF_CUT = 1 << 59


class BackendUnsupportedError(RuntimeError):
    """The selected backend cannot handle this input (caller may fall back)."""


class DegenerateMatrixError(ValueError):
    """Raised when encoding a matrix with no finite entries."""


@dataclass
class ProductStats:
    """Mutable counters a backend fills in while it runs."""

    products: int = 0
    decode_checks: int = 0
    peak_encoded_bits: int = 0

    def note_bits(self, nbits: int) -> None:
        if nbits > self.peak_encoded_bits:
            self.peak_encoded_bits = nbits


@dataclass(frozen=True)
class ProductBackend:
    """Backend selector plus tuning knobs.

    ``max_encoded_spread`` bounds the max-min range of finite entries the
    encoded backends accept; beyond it they raise BackendUnsupportedError.
    """

    kind: str = "naive"
    tile_size: int = 32
    strassen_cutoff: int = 16
    max_encoded_spread: int = 1024
    stats: ProductStats | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.kind not in BACKENDS:
            raise ValueError(f"unknown backend {self.kind!r}; choose from {BACKENDS}")
        if self.tile_size < 1:
            raise ValueError("tile_size must be >= 1")
        if self.strassen_cutoff < 1:
            raise ValueError("strassen_cutoff must be >= 1")


@dataclass(frozen=True)
class EncodedMatrix:
    """Power-of-base encoding of a weight matrix.

    entries[i][j] == 0 where the source entry was INF, otherwise exactly
    base**(source[i][j] - shift) with shift the smallest finite source entry.
    """

    n: int
    base: int
    shift: int
    entries: tuple[tuple[int, ...], ...]


def minplus_identity(n: int) -> WeightMatrix:
    """Identity for the min-plus product: 0 diagonal, INF elsewhere."""
    if n < 1:
        raise ValueError("matrix dimension must be >= 1")
    vals = np.zeros((n, n), dtype=np.int64)
    mask = ~np.eye(n, dtype=bool)
    return WeightMatrix._wrap(vals, mask)


def distance_product(
    a: WeightMatrix, b: WeightMatrix, backend: ProductBackend | None = None
) -> WeightMatrix:
    """Entrywise min over k of a[i,k] + b[k,j], with INF absorbing."""
    if backend is None:
        backend = ProductBackend()
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    if backend.stats is not None:
        backend.stats.products += 1
    if backend.kind == "naive":
        return _minplus_rows(a, b)
    if backend.kind == "blocked":
        return _minplus_blocked(a, b, backend.tile_size)
    return _minplus_encoded(
        a,
        b,
        use_strassen=(backend.kind == "encoded-strassen"),
        cutoff=backend.strassen_cutoff,
        max_spread=backend.max_encoded_spread,
        stats=backend.stats,
    )


def _finish(raw: np.ndarray) -> WeightMatrix:
    mask = raw >= _INF_CUT
    return WeightMatrix._wrap(raw, mask)


def _minplus_rows(a: WeightMatrix, b: WeightMatrix) -> WeightMatrix:
    n = a.n
    av = padded_values(a, _INF_PAD)
    bv = padded_values(b, _INF_PAD)
    out = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        np.min(av[i][:, None] + bv, axis=0, out=out[i])
    return _finish(out)


def _minplus_blocked(a: WeightMatrix, b: WeightMatrix, tile: int) -> WeightMatrix:
    n = a.n
    av = padded_values(a, _INF_PAD)
    bv = padded_values(b, _INF_PAD)
    # 2*_INF_PAD is >= every candidate sum, so it never survives the min.
    out = np.full((n, n), 2 * _INF_PAD, dtype=np.int64)
    for i0 in range(0, n, tile):
        i1 = min(i0 + tile, n)
        for k0 in range(0, n, tile):
            k1 = min(k0 + tile, n)
            ablk = av[i0:i1, k0:k1]
            for j0 in range(0, n, tile):
                j1 = min(j0 + tile, n)
                bblk = bv[k0:k1, j0:j1]
                cand = np.min(ablk[:, :, None] + bblk[None, :, :], axis=1)
                np.minimum(out[i0:i1, j0:j1], cand, out=out[i0:i1, j0:j1])
    return _finish(out)


def _power_table(base: int, top: int) -> list[int]:
    """[base**0, base**1, ..., base**top]."""
    pows = [1]
    for _ in range(top):
        pows.append(pows[-1] * base)
    return pows


def encode(a: WeightMatrix) -> EncodedMatrix:
    """Encode entries as powers of n+1: INF -> 0, v -> (n+1)**(v - min)."""
    rng = a.finite_range()
    if rng is None:
        raise DegenerateMatrixError("cannot encode a matrix with no finite entries")
    shift = rng[0]
    base = a.n + 1
    pows = _power_table(base, rng[1] - shift)
    exps = (a._vals - shift).tolist()
    mask = a._mask.tolist()
    rows = tuple(
        tuple(0 if mask[i][j] else pows[exps[i][j]] for j in range(a.n))
        for i in range(a.n)
    )
    return EncodedMatrix(n=a.n, base=base, shift=shift, entries=rows)


def decode_entry(cprime: int, base: int, two_x: int) -> Entry:
    """Largest s with base**s <= cprime, plus two_x; 0 decodes to INF."""
    if base < 2:
        raise ValueError("base must be >= 2")
    if cprime < 0:
        raise ValueError("cprime must be nonnegative")
    if cprime == 0:
        return INF
    # base**s <= cprime forces s*(bit_length(base)-1) <= bit_length(cprime),
    # which seeds an upper bracket for the binary search.
    hi = cprime.bit_length() // (base.bit_length() - 1) + 1
    lo = 0
    while lo < hi - 1:  # invariant: base**lo <= cprime < base**hi
        mid = (lo + hi) // 2
        if base**mid <= cprime:
            lo = mid
        else:
            hi = mid
    assert base**lo <= cprime, "decode bracket lost its lower bound"
    assert cprime < base ** (lo + 1), "decode bracket lost its upper bound"
    return lo + two_x


def ring_matmul(
    a: EncodedMatrix,
    b: EncodedMatrix,
    use_strassen: bool = False,
    cutoff: int = 16,
) -> list[list[int]]:
    """Exact integer product of two encoded matrices over (+, *)."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    left = np.array(a.entries, dtype=object)
    right = np.array(b.entries, dtype=object)
    if use_strassen:
        return _strassen_padded(left, right, max(1, cutoff)).tolist()
    return np.dot(left, right).tolist()


def _strassen_padded(a: np.ndarray, b: np.ndarray, cutoff: int) -> np.ndarray:
    n = a.shape[0]
    size = 1
    while size < n:
        size *= 2
    if size != n:
        # zero blocks are absorbing for (+, *); pad, multiply, slice back out
        pa = np.zeros((size, size), dtype=object)
        pb = np.zeros((size, size), dtype=object)
        pa[:n, :n] = a
        pb[:n, :n] = b
        return _strassen(pa, pb, cutoff)[:n, :n]
    return _strassen(a, b, cutoff)


def _strassen(a: np.ndarray, b: np.ndarray, cutoff: int) -> np.ndarray:
    size = a.shape[0]
    if size <= cutoff:
        return np.dot(a, b)
    h = size // 2
    a11, a12, a21, a22 = a[:h, :h], a[:h, h:], a[h:, :h], a[h:, h:]
    b11, b12, b21, b22 = b[:h, :h], b[:h, h:], b[h:, :h], b[h:, h:]

    m1 = _strassen(a11 + a22, b11 + b22, cutoff)
    m2 = _strassen(a21 + a22, b11, cutoff)
    m3 = _strassen(a11, b12 - b22, cutoff)
    m4 = _strassen(a22, b21 - b11, cutoff)
    m5 = _strassen(a11 + a12, b22, cutoff)
    m6 = _strassen(a21 - a11, b11 + b12, cutoff)
    m7 = _strassen(a12 - a22, b21 + b22, cutoff)

    out = np.empty((size, size), dtype=object)
    out[:h, :h] = m1 + m4 - m5 + m7
    out[:h, h:] = m3 + m5
    out[h:, :h] = m2 + m4
    out[h:, h:] = m1 - m2 + m3 + m6
    return out


def _negate(a: WeightMatrix) -> WeightMatrix:
    vals = -a._vals
    return WeightMatrix._wrap(np.where(a._mask, 0, vals), a._mask)


def _minplus_encoded(
    a: WeightMatrix,
    b: WeightMatrix,
    *,
    use_strassen: bool,
    cutoff: int,
    max_spread: int,
    stats: ProductStats | None,
) -> WeightMatrix:
    n = a.n
    ra, rb = a.finite_range(), b.finite_range()
    if ra is None or rb is None:
        # No finite path through any k; skip the encoding entirely.
        return WeightMatrix._wrap(
            np.zeros((n, n), dtype=np.int64), np.ones((n, n), dtype=bool)
        )
    for name, (lo, hi) in (("left", ra), ("right", rb)):
        if hi - lo > max_spread:
            raise BackendUnsupportedError(
                f"{name} operand spread {hi - lo} exceeds encoding bound {max_spread}"
            )
    ea = encode(_negate(a))
    eb = encode(_negate(b))
    cprime = ring_matmul(ea, eb, use_strassen=use_strassen, cutoff=cutoff)
    two_x = ea.shift + eb.shift
    base = ea.base
    # One shared power table replaces per-cell exponentiation; the bisect
    # below is the same floor-log search decode_entry performs.
    max_exp = (ra[1] - ra[0]) + (rb[1] - rb[0])
    pows = _power_table(base, max_exp + 1)
    vals = np.zeros((n, n), dtype=np.int64)
    mask = np.zeros((n, n), dtype=bool)
    for i in range(n):
        row = cprime[i]
        for j in range(n):
            c = row[j]
            if stats is not None:
                stats.decode_checks += 1
                stats.note_bits(c.bit_length())
            if c == 0:
                mask[i, j] = True
            else:
                s = bisect_right(pows, c) - 1
                assert pows[s] <= c, "decode bracket lost its lower bound"
                assert c < pows[s + 1], "decode bracket lost its upper bound"
                vals[i, j] = -(s + two_x)
    return WeightMatrix._wrap(vals, mask)
