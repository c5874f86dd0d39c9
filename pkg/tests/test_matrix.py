"""Elementwise operator semantics, infinity conventions, and invariants."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from szapsp import (
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
from szapsp.matrix import VALUE_LIMIT

entries = st.one_of(st.integers(min_value=-60, max_value=60), st.just(INF))


@st.composite
def weight_matrices(draw, max_n: int = 5):
    n = draw(st.integers(min_value=1, max_value=max_n))
    rows = draw(
        st.lists(
            st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n
        )
    )
    return WeightMatrix(rows)


@st.composite
def matrix_pairs(draw, max_n: int = 5):
    n = draw(st.integers(min_value=1, max_value=max_n))
    def mat():
        return WeightMatrix(
            draw(
                st.lists(
                    st.lists(entries, min_size=n, max_size=n),
                    min_size=n,
                    max_size=n,
                )
            )
        )
    return mat(), mat()


class TestConstruction:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            WeightMatrix([])

    def test_rejects_ragged(self):
        with pytest.raises(ValueError):
            WeightMatrix([[1, 2], [3]])

    def test_rejects_non_integers(self):
        with pytest.raises(ValueError):
            WeightMatrix([[1.5]])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            WeightMatrix([[VALUE_LIMIT + 1]])

    def test_equality_is_entrywise(self):
        a = WeightMatrix([[1, INF], [0, -2]])
        assert a == WeightMatrix([[1, INF], [0, -2]])
        assert a != WeightMatrix([[1, 3], [0, -2]])
        assert a != WeightMatrix([[1, INF], [0, 2]])

    def test_indexing_and_rows(self):
        a = WeightMatrix([[0, INF], [5, -1]])
        assert a[0, 1] == INF
        assert a[1, 0] == 5
        assert a.rows() == [[0, INF], [5, -1]]

    def test_render_format(self):
        a = WeightMatrix([[0, INF], [-3, 7]])
        assert a.render() == "0\tinf\n-3\t7\n"

    def test_bitmatrix_validation(self):
        with pytest.raises(ValueError):
            BitMatrix([[0, 2], [1, 0]])
        b = BitMatrix([[0, 1], [1, 0]])
        assert b[0, 1] == 1
        assert b.render() == "0\t1\n1\t0\n"


class TestClip:
    def test_squashes_below_and_infs_above(self):
        a = WeightMatrix([[-8, -6], [-6, -8]])
        assert clip(a, -4, 4) == WeightMatrix([[-4, -4], [-4, -4]])

    def test_identity_when_in_range(self):
        a = WeightMatrix([[0, 3], [2, 4]])
        assert clip(a, 0, 4) == a

    def test_entrywise_with_inf(self):
        a = WeightMatrix([[INF, -2], [0, 6]])
        assert clip(a, -4, 4) == WeightMatrix([[INF, -2], [0, INF]])

    def test_rejects_inverted_bounds(self):
        with pytest.raises(ValueError):
            clip(WeightMatrix([[0]]), 3, 2)

    @given(weight_matrices(), st.integers(-50, 50), st.integers(-50, 50))
    def test_idempotent(self, a, x, y):
        lo, hi = min(x, y), max(x, y)
        once = clip(a, lo, hi)
        assert clip(once, lo, hi) == once


class TestChop:
    def test_infs_outside_band(self):
        a = WeightMatrix([[-4, -4, -4], [-4, -4, -2], [-4, -2, -4]])
        assert chop(a, -3, 4) == WeightMatrix(
            [[INF, INF, INF], [INF, INF, -2], [INF, -2, INF]]
        )

    def test_identity_when_in_range(self):
        a = WeightMatrix([[1, 2], [3, 4]])
        assert chop(a, 1, 4) == a

    def test_entrywise(self):
        a = WeightMatrix([[0, 5], [-1, 3]])
        assert chop(a, 0, 4) == WeightMatrix([[0, INF], [INF, 3]])

    def test_rejects_inverted_bounds(self):
        with pytest.raises(ValueError):
            chop(WeightMatrix([[0]]), 1, 0)

    @given(weight_matrices(), st.integers(-50, 50), st.integers(-50, 50))
    def test_differs_from_clip_only_below_lo(self, a, x, y):
        lo, hi = min(x, y), max(x, y)
        clipped, chopped = clip(a, lo, hi), chop(a, lo, hi)
        for i in range(a.n):
            for j in range(a.n):
                v = a[i, j]
                if v != INF and v < lo:
                    assert chopped[i, j] == INF and clipped[i, j] == lo
                else:
                    assert chopped[i, j] == clipped[i, j]


class TestSelectors:
    def test_wedge_keeps_where_negative(self):
        a = WeightMatrix([[-4, -4], [-4, -2]])
        b = WeightMatrix([[-4, -4], [-4, -4]])
        assert wedge(a, b) == a

    def test_wedge_all_inf_selector(self):
        a = WeightMatrix([[1, 2], [3, 4]])
        assert wedge(a, constant_matrix(2, INF)) == constant_matrix(2, INF)

    def test_wedge_entrywise(self):
        a = WeightMatrix([[7, 7], [7, 7]])
        b = WeightMatrix([[-1, 0], [INF, -5]])
        assert wedge(a, b) == WeightMatrix([[7, INF], [INF, 7]])

    def test_bar_wedge_inf_counts_as_nonnegative(self):
        a = WeightMatrix([[INF, INF], [-2, 0]])
        b = WeightMatrix([[-4, -4], [-4, -4]])
        assert bar_wedge(a, b) == constant_matrix(2, INF)

    def test_bar_wedge_zero_selector_keeps_all(self):
        a = WeightMatrix([[1, 2], [3, 4]])
        assert bar_wedge(a, constant_matrix(2, 0)) == a

    def test_bar_wedge_entrywise(self):
        a = WeightMatrix([[1, 2], [3, 4]])
        b = WeightMatrix([[0, -1], [INF, -0]])
        assert bar_wedge(a, b) == WeightMatrix([[1, INF], [3, 4]])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            wedge(WeightMatrix([[1]]), constant_matrix(2, 0))
        with pytest.raises(ValueError):
            bar_wedge(WeightMatrix([[1]]), constant_matrix(2, 0))
        with pytest.raises(ValueError):
            vee(WeightMatrix([[1]]), constant_matrix(2, 0))

    @given(matrix_pairs())
    def test_wedge_bar_wedge_partition(self, pair):
        # b < 0 and b >= 0 partition every entry, INF landing on the >= side.
        a, b = pair
        w, bw = wedge(a, b), bar_wedge(a, b)
        for i in range(a.n):
            for j in range(a.n):
                if b[i, j] != INF and b[i, j] < 0:
                    assert w[i, j] == a[i, j] and bw[i, j] == INF
                else:
                    assert bw[i, j] == a[i, j] and w[i, j] == INF


class TestVee:
    def test_prefers_left(self):
        a = WeightMatrix([[0, 2], [2, 0]])
        b = WeightMatrix([[INF, INF], [INF, -2]])
        assert vee(a, b) == a

    def test_all_inf_left_is_identity(self):
        b = WeightMatrix([[1, INF], [0, 4]])
        assert vee(constant_matrix(2, INF), b) == b

    def test_entrywise(self):
        a = WeightMatrix([[1, INF], [INF, INF]])
        b = WeightMatrix([[9, INF], [3, INF]])
        assert vee(a, b) == WeightMatrix([[1, INF], [3, INF]])

    @given(matrix_pairs())
    def test_left_wins_when_finite(self, pair):
        a, b = pair
        if all(a[i, j] != INF for i in range(a.n) for j in range(a.n)):
            assert vee(a, b) == a

    @given(st.data())
    def test_associative_with_inf_identity(self, data):
        n = data.draw(st.integers(1, 4))
        mats = [
            WeightMatrix(
                data.draw(
                    st.lists(
                        st.lists(entries, min_size=n, max_size=n),
                        min_size=n,
                        max_size=n,
                    )
                )
            )
            for _ in range(3)
        ]
        a, b, c = mats
        assert vee(vee(a, b), c) == vee(a, vee(b, c))
        top = constant_matrix(n, INF)
        assert vee(a, top) == a
        assert vee(top, a) == a


class TestScalarAdd:
    def test_shifts_finite(self):
        a = WeightMatrix([[0, 2, 4], [2, 0, 6], [4, 6, 0]])
        assert scalar_add(a, -4) == WeightMatrix(
            [[-4, -2, 0], [-2, -4, 2], [0, 2, -4]]
        )

    def test_zero_is_identity(self):
        a = WeightMatrix([[3, INF], [-1, 0]])
        assert scalar_add(a, 0) == a

    def test_inf_absorbs(self):
        a = WeightMatrix([[INF, 1], [1, INF]])
        assert scalar_add(a, 5) == WeightMatrix([[INF, 6], [6, INF]])

    @given(weight_matrices(), st.integers(-1000, 1000))
    def test_round_trip(self, a, c):
        assert scalar_add(scalar_add(a, c), -c) == a


class TestThresholds:
    def test_ge_zero_all_negative(self):
        a = WeightMatrix([[-4, -4, -4], [-4, -4, -2], [-4, -2, -4]])
        assert ge_zero(a) == BitMatrix([[0] * 3] * 3)

    def test_ge_zero_boundary(self):
        assert ge_zero(constant_matrix(2, 0)) == BitMatrix([[1, 1], [1, 1]])

    def test_ge_zero_inf_counts(self):
        a = WeightMatrix([[INF, -1], [3, INF]])
        assert ge_zero(a) == BitMatrix([[1, 0], [1, 1]])

    def test_band_strict_strict(self):
        a = WeightMatrix([[0, 2, 4], [2, 0, -2], [4, -2, 0]])
        got = band(a, -4, 0, lo_strict=True, hi_strict=True)
        assert got == BitMatrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]])

    def test_band_inf_never_in_band(self):
        assert band(constant_matrix(3, INF), -100, 100) == BitMatrix([[0] * 3] * 3)

    def test_band_half_open(self):
        a = WeightMatrix([[0, 4], [-4, 3]])
        assert band(a, 0, 4, hi_strict=True) == BitMatrix([[1, 0], [0, 1]])

    def test_band_rejects_inverted_bounds(self):
        with pytest.raises(ValueError):
            band(WeightMatrix([[0]]), 1, 0)

    def test_ge_zero_agrees_with_band_on_finite_cells(self):
        # 10**4 random matrices: on finite entries the two must agree; on INF
        # cells ge_zero reports 1 while a finite band cannot contain INF.
        rng = random.Random(11)
        for _ in range(10_000):
            rows = [
                [
                    INF if rng.random() < 0.2 else rng.randint(-9, 9)
                    for _ in range(3)
                ]
                for _ in range(3)
            ]
            a = WeightMatrix(rows)
            gz = ge_zero(a)
            bd = band(a, 0, 10)
            for i in range(3):
                for j in range(3):
                    if a[i, j] == INF:
                        assert gz[i, j] == 1 and bd[i, j] == 0
                    else:
                        assert gz[i, j] == bd[i, j] == (1 if a[i, j] >= 0 else 0)


class TestConstant:
    def test_constant_finite(self):
        assert constant_matrix(3, -4) == WeightMatrix([[-4] * 3] * 3)

    def test_constant_single(self):
        assert constant_matrix(1, 0) == WeightMatrix([[0]])

    def test_constant_inf(self):
        assert constant_matrix(2, INF) == WeightMatrix([[INF, INF], [INF, INF]])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            constant_matrix(0, 1)


def test_matrices_are_immutable():
    a = WeightMatrix([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        a._vals[0, 0] = 9
