"""Exact integer matrices with an explicit +infinity element.

Entries are Python ints (or the ``INF`` sentinel); storage is a dense int64
array plus a boolean infinity mask, so +infinity is a true sentinel and never
a large finite number that could wrap around in arithmetic. All operations
return new matrices; nothing mutates in place.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence, Union

import numpy as np

INF = math.inf

Entry = Union[int, float]  # float is only ever INF

# Finite entries are capped so that kernels adding two of them (plus the
# internal infinity pad used by product code) can never overflow int64.
VALUE_LIMIT = 1 << 40


def _check_bound(value: int, name: str) -> int:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if abs(int(value)) > VALUE_LIMIT:
        raise ValueError(f"{name} magnitude exceeds supported range ({VALUE_LIMIT})")
    return int(value)


def _coerce_rows(rows: Iterable[Sequence[Entry]]) -> tuple[np.ndarray, np.ndarray]:
    data = [list(r) for r in rows]
    n = len(data)
    if n == 0:
        raise ValueError("matrix dimension must be >= 1")
    if any(len(r) != n for r in data):
        raise ValueError("matrix must be square")
    vals = np.zeros((n, n), dtype=np.int64)
    mask = np.zeros((n, n), dtype=bool)
    for i, row in enumerate(data):
        for j, x in enumerate(row):
            if x == INF:
                mask[i, j] = True
            elif isinstance(x, (int, np.integer)):
                v = int(x)
                if abs(v) > VALUE_LIMIT:
                    raise ValueError(
                        f"entry ({i},{j}) magnitude exceeds supported range"
                    )
                vals[i, j] = v
            else:
                raise ValueError(f"entry ({i},{j}) is not an int or INF: {x!r}")
    return vals, mask


class WeightMatrix:
    """Square matrix over the integers extended with +infinity.

    +infinity is absorbing under addition and compares greater than every
    finite value. Equality is entrywise; instances are immutable.
    """

    __slots__ = ("_vals", "_mask")

    def __init__(self, rows: Iterable[Sequence[Entry]]):
        vals, mask = _coerce_rows(rows)
        self._vals = vals
        self._mask = mask
        self._freeze()

    @classmethod
    def _wrap(cls, vals: np.ndarray, mask: np.ndarray) -> "WeightMatrix":
        """Adopt int64/bool arrays already known to be in range."""
        m = cls.__new__(cls)
        vals = np.ascontiguousarray(vals, dtype=np.int64)
        mask = np.ascontiguousarray(mask, dtype=bool)
        if mask.any():
            vals = np.where(mask, np.int64(0), vals)  # canonical: masked cells hold 0
        m._vals = vals
        m._mask = mask
        m._freeze()
        return m

    def _freeze(self) -> None:
        self._vals.flags.writeable = False
        self._mask.flags.writeable = False

    @property
    def n(self) -> int:
        return self._vals.shape[0]

    def __getitem__(self, ij: tuple[int, int]) -> Entry:
        i, j = ij
        if self._mask[i, j]:
            return INF
        return int(self._vals[i, j])

    def rows(self) -> list[list[Entry]]:
        return [
            [INF if self._mask[i, j] else int(self._vals[i, j]) for j in range(self.n)]
            for i in range(self.n)
        ]

    def is_symmetric(self) -> bool:
        return bool(
            np.array_equal(self._vals, self._vals.T)
            and np.array_equal(self._mask, self._mask.T)
        )

    def all_infinite(self) -> bool:
        return bool(self._mask.all())

    def finite_range(self) -> tuple[int, int] | None:
        """(min, max) over finite entries, or None if every entry is INF."""
        finite = self._vals[~self._mask]
        if finite.size == 0:
            return None
        return int(finite.min()), int(finite.max())

    def render(self) -> str:
        lines = []
        for i in range(self.n):
            lines.append(
                "\t".join(
                    "inf" if self._mask[i, j] else str(int(self._vals[i, j]))
                    for j in range(self.n)
                )
            )
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightMatrix):
            return NotImplemented
        return bool(
            np.array_equal(self._vals, other._vals)
            and np.array_equal(self._mask, other._mask)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"WeightMatrix({self.rows()!r})"


class BitMatrix:
    """Square 0/1 matrix."""

    __slots__ = ("_bits",)

    def __init__(self, rows: Iterable[Sequence[int]]):
        data = [list(r) for r in rows]
        n = len(data)
        if n == 0:
            raise ValueError("matrix dimension must be >= 1")
        if any(len(r) != n for r in data):
            raise ValueError("matrix must be square")
        if any(x not in (0, 1) for r in data for x in r):
            raise ValueError("bit matrix entries must be 0 or 1")
        self._bits = np.array(data, dtype=bool)
        self._bits.flags.writeable = False

    @classmethod
    def _wrap(cls, bits: np.ndarray) -> "BitMatrix":
        m = cls.__new__(cls)
        m._bits = np.ascontiguousarray(bits, dtype=bool)
        m._bits.flags.writeable = False
        return m

    @property
    def n(self) -> int:
        return self._bits.shape[0]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return int(self._bits[ij])

    def rows(self) -> list[list[int]]:
        return self._bits.astype(int).tolist()

    def render(self) -> str:
        return (
            "\n".join(
                "\t".join(str(int(b)) for b in self._bits[i]) for i in range(self.n)
            )
            + "\n"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return bool(np.array_equal(self._bits, other._bits))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows()!r})"


def constant_matrix(n: int, value: Entry) -> WeightMatrix:
    """n-by-n matrix with every entry equal to ``value`` (an int or INF)."""
    if n < 1:
        raise ValueError("matrix dimension must be >= 1")
    if value == INF:
        return WeightMatrix._wrap(
            np.zeros((n, n), dtype=np.int64), np.ones((n, n), dtype=bool)
        )
    v = _check_bound(value, "value")
    return WeightMatrix._wrap(
        np.full((n, n), v, dtype=np.int64), np.zeros((n, n), dtype=bool)
    )


def _same_dim(a: WeightMatrix, b: WeightMatrix) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def clip(a: WeightMatrix, lo: int, hi: int) -> WeightMatrix:
    """Raise entries below ``lo`` to ``lo``; send entries above ``hi`` to INF.

    +infinity stays +infinity (it is greater than ``hi``).
    """
    lo = _check_bound(lo, "lo")
    hi = _check_bound(hi, "hi")
    if lo > hi:
        raise ValueError("clip requires lo <= hi")
    finite = ~a._mask
    vals = np.where(finite & (a._vals < lo), lo, a._vals)
    mask = a._mask | (finite & (a._vals > hi))
    return WeightMatrix._wrap(vals, mask)


def chop(a: WeightMatrix, lo: int, hi: int) -> WeightMatrix:
    """Keep entries inside [lo, hi]; everything else becomes INF."""
    lo = _check_bound(lo, "lo")
    hi = _check_bound(hi, "hi")
    if lo > hi:
        raise ValueError("chop requires lo <= hi")
    mask = a._mask | (a._vals < lo) | (a._vals > hi)
    return WeightMatrix._wrap(a._vals, mask)


def wedge(a: WeightMatrix, b: WeightMatrix) -> WeightMatrix:
    """Keep a[i,j] where b[i,j] < 0, else INF. INF in ``b`` is not < 0."""
    _same_dim(a, b)
    keep = (~b._mask) & (b._vals < 0)
    return WeightMatrix._wrap(a._vals, a._mask | ~keep)


def bar_wedge(a: WeightMatrix, b: WeightMatrix) -> WeightMatrix:
    """Keep a[i,j] where b[i,j] >= 0, else INF. INF in ``b`` counts as >= 0."""
    _same_dim(a, b)
    keep = b._mask | (b._vals >= 0)
    return WeightMatrix._wrap(a._vals, a._mask | ~keep)


def vee(a: WeightMatrix, b: WeightMatrix) -> WeightMatrix:
    """Coalesce: a[i,j] if finite, else b[i,j] if finite, else INF."""
    _same_dim(a, b)
    vals = np.where(a._mask, b._vals, a._vals)
    return WeightMatrix._wrap(vals, a._mask & b._mask)


def scalar_add(a: WeightMatrix, c: int) -> WeightMatrix:
    """Add ``c`` to every finite entry; INF is unchanged."""
    c = _check_bound(c, "c")
    vals = a._vals + c
    finite = vals[~a._mask]
    if finite.size and int(np.abs(finite).max()) > VALUE_LIMIT:
        raise ValueError("scalar_add result exceeds supported range")
    return WeightMatrix._wrap(vals, a._mask)


def ge_zero(c: WeightMatrix) -> BitMatrix:
    """Boolean matrix of (entry >= 0); +infinity counts as >= 0."""
    return BitMatrix._wrap(c._mask | (c._vals >= 0))


def band(
    p: WeightMatrix,
    lo: int,
    hi: int,
    *,
    lo_strict: bool = False,
    hi_strict: bool = False,
) -> BitMatrix:
    """Boolean matrix of (lo <= entry <= hi), with either bound optionally
    strict. +infinity never lies inside a finite band."""
    lo = _check_bound(lo, "lo")
    hi = _check_bound(hi, "hi")
    if lo > hi:
        raise ValueError("band requires lo <= hi")
    above = (p._vals > lo) if lo_strict else (p._vals >= lo)
    below = (p._vals < hi) if hi_strict else (p._vals <= hi)
    return BitMatrix._wrap(~p._mask & above & below)


def padded_values(a: WeightMatrix, pad: int) -> np.ndarray:
    """int64 copy of the entries with INF cells replaced by ``pad``.

    For kernel use only; ``pad`` must leave headroom so sums cannot overflow.
    """
    return np.where(a._mask, np.int64(pad), a._vals)
