import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_points
from oracles import forest_cut_topdown, minimax_exhaustive
from transclust.distance import build_distance_matrix
from transclust.errors import InvalidSpecError
from transclust.mst import build_mst
from transclust.transitive import (
    TransitiveMatrix,
    check_ultrametric,
    floyd_minimax,
    forest_cut,
    order_k_distance,
    path_max,
)


def _E(seed, n, dim=2):
    return build_distance_matrix(random_points(seed, n, dim))


# ---------- frozen hand example ----------

def test_collinear_hand_example():
    # Points 0, 1, 2, 10 on a line: within {0,1,2} every gap is bridged by
    # steps of length <= 1; reaching 10 always costs its 8-long last hop.
    E = build_distance_matrix(np.array([[0.0], [1.0], [2.0], [10.0]]))
    expected = np.array(
        [[0, 1, 1, 8], [1, 0, 1, 8], [1, 1, 0, 8], [8, 8, 8, 0]], dtype=np.float64
    )
    for route in (forest_cut, path_max, floyd_minimax):
        assert np.array_equal(route(E).values, expected)
    assert np.array_equal(order_k_distance(E, 4).values, expected)


def test_collinear_order_bounds():
    E = build_distance_matrix(np.array([[0.0], [1.0], [2.0], [10.0]]))
    # Two vertices: the direct edge only.
    assert order_k_distance(E, 2).values[0, 2] == 2.0
    # Three vertices: one messenger allowed, 0-1-2 costs max(1,1) = 1.
    assert order_k_distance(E, 3).values[0, 2] == 1.0


# ---------- route equality ----------

@given(seed=st.integers(min_value=0, max_value=10_000), n=st.integers(min_value=1, max_value=80))
def test_all_full_routes_bitwise_equal(seed, n):
    E = _E(seed, n)
    a = forest_cut(E).values
    assert np.array_equal(a, path_max(E).values)
    assert np.array_equal(a, floyd_minimax(E).values)
    assert np.array_equal(a, order_k_distance(E, max(n, 2)).values)


def test_forest_cut_accepts_prebuilt_tree():
    E = _E(5, 30)
    tree = build_mst(E)
    assert np.array_equal(forest_cut(E, tree).values, forest_cut(E).values)
    with pytest.raises(InvalidSpecError, match="size"):
        forest_cut(E, build_mst(_E(5, 29)))


def test_topdown_cutting_oracle_agrees():
    for seed in range(5):
        E = _E(seed, 24)
        tree = build_mst(E)
        oracle = forest_cut_topdown(E.values, tree.edges, tree.weights)
        assert np.array_equal(forest_cut(E, tree).values, oracle)


def test_exhaustive_path_oracle_agrees():
    for seed in range(6):
        E = _E(seed, 7)
        assert np.array_equal(forest_cut(E).values, minimax_exhaustive(E.values))


def test_exhaustive_bounded_order_oracle_agrees():
    for seed in range(4):
        E = _E(seed, 6)
        for k in range(2, 7):
            assert np.array_equal(
                order_k_distance(E, k).values, minimax_exhaustive(E.values, max_vertices=k)
            )


# ---------- order-k structure ----------

@given(seed=st.integers(min_value=0, max_value=1000), n=st.integers(min_value=2, max_value=30))
def test_order_2_is_base_matrix(seed, n):
    E = _E(seed, n)
    assert np.array_equal(order_k_distance(E, 2).values, E.values)


def test_orders_are_monotone_nonincreasing():
    E = _E(9, 40)
    prev = order_k_distance(E, 2).values
    for k in range(3, 12):
        cur = order_k_distance(E, k).values
        assert np.all(cur <= prev)
        prev = cur


def test_order_caps_at_n():
    E = _E(2, 12)
    full = order_k_distance(E, 12)
    over = order_k_distance(E, 500)
    assert over.order == full.order == 12
    assert np.array_equal(over.values, full.values)


def test_order_below_2_rejected():
    with pytest.raises(InvalidSpecError, match="order"):
        order_k_distance(_E(0, 5), 1)


# ---------- ultrametric checking ----------

@given(seed=st.integers(min_value=0, max_value=10_000), n=st.integers(min_value=1, max_value=60))
def test_full_closure_is_ultrametric_at_zero_tolerance(seed, n):
    assert check_ultrametric(forest_cut(_E(seed, n))) is None


def test_check_ultrametric_finds_planted_violation():
    # 0 and 1 are close, 2 bridges them even closer: M[0,1] > max(M[0,2], M[2,1]).
    M = np.array([[0.0, 5.0, 1.0], [5.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
    assert check_ultrametric(M) == (0, 1, 2)
    # A big enough tolerance accepts the same matrix.
    assert check_ultrametric(M, tol=4.0) is None


def test_check_ultrametric_witness_is_lexicographically_first():
    M = np.array(
        [
            [0.0, 5.0, 1.0, 1.0],
            [5.0, 0.0, 1.0, 1.0],
            [1.0, 1.0, 0.0, 9.0],
            [1.0, 1.0, 9.0, 0.0],
        ]
    )
    assert check_ultrametric(M) == (0, 1, 2)


def test_check_ultrametric_rejects_negative_tolerance():
    with pytest.raises(InvalidSpecError, match="tolerance"):
        check_ultrametric(np.zeros((2, 2)), tol=-1e-9)


def test_raw_distances_are_usually_not_ultrametric():
    E = _E(3, 30)
    assert check_ultrametric(E.values) is not None


# ---------- TransitiveMatrix validation ----------

class TestTransitiveMatrixValidation:
    def test_rejects_bad_source(self):
        with pytest.raises(InvalidSpecError, match="source"):
            TransitiveMatrix(np.zeros((2, 2)), order=2, source_method="magic")

    def test_rejects_order_below_2(self):
        with pytest.raises(InvalidSpecError, match="order"):
            TransitiveMatrix(np.zeros((2, 2)), order=1, source_method="forest_cut")

    def test_rejects_asymmetry(self):
        with pytest.raises(InvalidSpecError, match="symmetric"):
            TransitiveMatrix(
                np.array([[0.0, 1.0], [2.0, 0.0]]), order=2, source_method="forest_cut"
            )

    def test_builder_output_passes_external_validation(self):
        T = forest_cut(_E(11, 40))
        TransitiveMatrix(T.values.copy(), order=T.order, source_method=T.source_method)

    def test_result_is_write_protected(self):
        T = forest_cut(_E(0, 5))
        with pytest.raises(ValueError):
            T.values[0, 1] = -1.0
