"""Tests for the linalg module."""

import numpy as np
import pytest

from mdsipm.errors import (
    ConfigError,
    DimensionError,
    EmptyInputError,
    MalformedMatrixError,
    NotInteriorError,
)
from mdsipm.linalg import (
    INF_BOUND,
    BackendSelector,
    DenseMatrix,
    DiagonalMatrix,
    Execution,
    MemorySpace,
    ReduceKind,
    SequentialLinearAlgebra,
    ThreadedLinearAlgebra,
    TripletMatrix,
    backend_from_name,
    format_matrix_dump,
    make_linear_algebra,
    parse_triplet_dump,
    read_triplet_dump,
    write_matrix_dump,
)

from .conftest import (
    AXPY_ALPHA,
    DOT_ONES_LEN,
    DOT_RESULT,
    EXACT_TOL,
    GEMV_BETA,
    MDS_RESULT,
    MIN_VALUE,
    NORM_345,
    PARALLEL_TOL,
    STEP_BOX,
    STEP_TAU_90,
    STEP_TAU_99,
)

# Large enough for the threaded suite to split the work
PARALLEL_LEN = 50_000
PARALLEL_WORKERS = 4


class TestVecAxpy:
    """Tests for vec_axpy."""

    def test_zero_alpha_returns_y(self, linalg):
        """Should return y unchanged when alpha is zero."""
        out = linalg.vec_axpy(0.0, np.array([1.0, 2.0]), np.array([3.0, 4.0]))
        np.testing.assert_array_equal(out, [3.0, 4.0])

    def test_unit_alpha(self, linalg):
        """Should add x to a zero y."""
        out = linalg.vec_axpy(1.0, np.ones(2), np.zeros(2))
        np.testing.assert_array_equal(out, [1.0, 1.0])

    def test_elementwise(self, linalg):
        """Should compute y + alpha * x componentwise."""
        out = linalg.vec_axpy(
            AXPY_ALPHA, np.array([1.0, -2.0, 4.0]), np.full(3, 0.5)
        )
        np.testing.assert_allclose(out, [3.0, -4.5, 10.5])

    def test_does_not_modify_inputs(self, linalg):
        """Should return a fresh vector."""
        y = np.zeros(2)
        linalg.vec_axpy(1.0, np.ones(2), y)
        np.testing.assert_array_equal(y, [0.0, 0.0])

    def test_length_mismatch(self, linalg):
        """Should raise DimensionError on different lengths."""
        with pytest.raises(DimensionError):
            linalg.vec_axpy(1.0, np.ones(2), np.ones(3))


class TestVecDot:
    """Tests for vec_dot."""

    def test_orthogonal(self, linalg):
        """Should return 0 for orthogonal vectors."""
        assert linalg.vec_dot(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 0.0

    def test_ones(self, linalg):
        """Should return the length for two all-ones vectors."""
        ones = np.ones(DOT_ONES_LEN)
        assert linalg.vec_dot(ones, ones) == DOT_ONES_LEN

    def test_values(self, linalg):
        """Should compute the inner product."""
        x, y = np.array([1.0, 2.0, 3.0]), np.array([4.0, 5.0, 6.0])
        assert linalg.vec_dot(x, y) == DOT_RESULT

    def test_length_mismatch(self, linalg):
        """Should raise DimensionError on different lengths."""
        with pytest.raises(DimensionError):
            linalg.vec_dot(np.ones(2), np.ones(1))


class TestVecReduce:
    """Tests for vec_reduce."""

    def test_inf_norm_of_zeros(self, linalg):
        """Should return 0 for the zero vector."""
        assert linalg.vec_reduce(np.zeros(3), ReduceKind.INF_NORM) == 0.0

    def test_two_norm(self, linalg):
        """Should compute the Euclidean norm."""
        assert linalg.vec_reduce(np.array([3.0, -4.0]), ReduceKind.TWO_NORM) == (
            NORM_345
        )

    def test_min(self, linalg):
        """Should return the smallest entry."""
        x = np.array([-7.0, 2.0, 5.0])
        assert linalg.vec_reduce(x, ReduceKind.MIN) == MIN_VALUE

    def test_one_norm(self, linalg):
        """Should sum absolute values."""
        x = np.array([3.0, -4.0])
        assert linalg.vec_reduce(x, ReduceKind.ONE_NORM) == NORM_345 + 2.0

    def test_empty_norm_is_zero(self, linalg):
        """Should return 0 for norms of an empty vector."""
        empty = np.empty(0)
        for kind in (ReduceKind.INF_NORM, ReduceKind.ONE_NORM, ReduceKind.TWO_NORM):
            assert linalg.vec_reduce(empty, kind) == 0.0

    @pytest.mark.parametrize("kind", [ReduceKind.MIN, ReduceKind.MAX])
    def test_empty_extreme_raises(self, linalg, kind):
        """Should raise EmptyInputError for MIN/MAX of an empty vector."""
        with pytest.raises(EmptyInputError):
            linalg.vec_reduce(np.empty(0), kind)


class TestMaxStepToBound:
    """Tests for max_step_to_bound."""

    def test_no_movement(self, linalg):
        """Should return 1 when the direction is zero."""
        x = np.array([0.5, 0.5])
        alpha = linalg.max_step_to_bound(
            x, np.zeros(2), np.zeros(2), np.ones(2), STEP_TAU_99
        )
        assert alpha == 1.0

    def test_single_lower_bound(self, linalg):
        """Should stop at tau times the unit distance to the lower bound."""
        alpha = linalg.max_step_to_bound(
            np.array([0.0]),
            np.array([-1.0]),
            np.array([-1.0]),
            np.array([INF_BOUND]),
            STEP_TAU_99,
        )
        assert alpha == pytest.approx(STEP_TAU_99)

    def test_componentwise_minimum(self, linalg):
        """Should take the most restrictive component."""
        alpha = linalg.max_step_to_bound(
            np.array([0.5, 0.5]),
            np.array([1.0, -2.0]),
            np.zeros(2),
            np.ones(2),
            STEP_TAU_90,
        )
        assert alpha == pytest.approx(STEP_BOX)

    def test_step_stays_feasible(self, linalg):
        """The returned step should keep the point strictly inside."""
        x, dx = np.array([0.5, 0.5]), np.array([1.0, -2.0])
        lo, up = np.zeros(2), np.ones(2)
        alpha = linalg.max_step_to_bound(x, dx, lo, up, STEP_TAU_90)
        moved = x + alpha * dx
        assert np.all(moved > lo)
        assert np.all(moved < up)

    def test_infinite_bounds_ignored(self, linalg):
        """Should not restrict along directions with infinite bounds."""
        alpha = linalg.max_step_to_bound(
            np.zeros(1),
            np.array([-1e6]),
            np.array([-INF_BOUND]),
            np.array([INF_BOUND]),
            STEP_TAU_99,
        )
        assert alpha == 1.0

    def test_boundary_point_raises(self, linalg):
        """Should raise NotInteriorError for a point on a finite bound."""
        with pytest.raises(NotInteriorError):
            linalg.max_step_to_bound(
                np.zeros(1), np.ones(1), np.zeros(1), np.ones(1), STEP_TAU_99
            )

    def test_bad_tau_raises(self, linalg):
        """Should raise ConfigError for tau outside (0, 1)."""
        with pytest.raises(ConfigError):
            linalg.max_step_to_bound(
                np.full(1, 0.5), np.ones(1), np.zeros(1), np.ones(1), 1.0
            )


class TestDenseGemv:
    """Tests for dense_gemv."""

    def test_identity(self, linalg):
        """Should return x for the identity with alpha=1, beta=0."""
        out = linalg.dense_gemv(
            0.0, np.zeros(2), 1.0, DenseMatrix.identity(2), np.array([5.0, 7.0])
        )
        np.testing.assert_array_equal(out, [5.0, 7.0])

    def test_zero_alpha_scales_y(self, linalg):
        """Should return beta * y when alpha is zero."""
        out = linalg.dense_gemv(
            GEMV_BETA, np.ones(2), 0.0, DenseMatrix.identity(2), np.ones(2)
        )
        np.testing.assert_array_equal(out, [2.0, 2.0])

    def test_product(self, linalg):
        """Should multiply a general matrix."""
        A = DenseMatrix.from_array([[1.0, 2.0], [3.0, 4.0]])
        out = linalg.dense_gemv(0.0, np.zeros(2), 1.0, A, np.ones(2))
        np.testing.assert_array_equal(out, [3.0, 7.0])

    def test_transpose(self, linalg):
        """Should apply the transpose when asked."""
        A = DenseMatrix.from_array([[1.0, 2.0], [3.0, 4.0]])
        out = linalg.dense_gemv(0.0, np.zeros(2), 1.0, A, np.ones(2), transpose=True)
        np.testing.assert_array_equal(out, [4.0, 6.0])

    def test_beta_zero_ignores_nan_y(self, linalg):
        """Should not read y when beta is zero."""
        out = linalg.dense_gemv(
            0.0, np.full(2, np.nan), 1.0, DenseMatrix.identity(2), np.ones(2)
        )
        np.testing.assert_array_equal(out, [1.0, 1.0])

    def test_dimension_mismatch(self, linalg):
        """Should raise DimensionError when x does not conform."""
        with pytest.raises(DimensionError):
            linalg.dense_gemv(
                0.0, np.zeros(2), 1.0, DenseMatrix.identity(2), np.ones(3)
            )


class TestDenseGemm:
    """Tests for dense_gemm."""

    def test_identity(self, linalg, rng):
        """Should return X for A = I."""
        X = DenseMatrix.from_array(rng.standard_normal((3, 2)))
        out = linalg.dense_gemm(
            0.0, DenseMatrix.zeros(3, 2), 1.0, DenseMatrix.identity(3), X
        )
        np.testing.assert_array_equal(out.array, X.array)

    def test_zero_alpha_keeps_y(self, linalg, rng):
        """Should leave Y unchanged with alpha=0, beta=1."""
        Y = DenseMatrix.from_array(rng.standard_normal((2, 2)))
        out = linalg.dense_gemm(
            1.0, Y, 0.0, DenseMatrix.identity(2), DenseMatrix.identity(2)
        )
        np.testing.assert_array_equal(out.array, Y.array)

    def test_product(self, linalg):
        """Should multiply two small matrices."""
        A = DenseMatrix.from_array([[1.0, 2.0], [0.0, 1.0]])
        X = DenseMatrix.from_array([[1.0, 0.0], [1.0, 1.0]])
        out = linalg.dense_gemm(0.0, DenseMatrix.zeros(2, 2), 1.0, A, X)
        np.testing.assert_array_equal(out.array, [[3.0, 2.0], [1.0, 1.0]])

    def test_shape_mismatch(self, linalg):
        """Should raise DimensionError for nonconforming shapes."""
        with pytest.raises(DimensionError):
            linalg.dense_gemm(
                0.0,
                DenseMatrix.zeros(2, 2),
                1.0,
                DenseMatrix.identity(2),
                DenseMatrix.identity(3),
            )


class TestTripletTimesVec:
    """Tests for triplet_times_vec."""

    def test_empty_matrix_scales_y(self, linalg):
        """Should return beta * y when there are no entries."""
        out = linalg.triplet_times_vec(
            GEMV_BETA, np.ones(2), 1.0, TripletMatrix.empty(2, 2), np.ones(2)
        )
        np.testing.assert_array_equal(out, [2.0, 2.0])

    def test_identity(self, linalg):
        """Should act as the identity."""
        A = TripletMatrix.from_entries(2, 2, [(0, 0, 1.0), (1, 1, 1.0)])
        out = linalg.triplet_times_vec(0.0, np.zeros(2), 1.0, A, np.array([4.0, 9.0]))
        np.testing.assert_array_equal(out, [4.0, 9.0])

    def test_duplicates_are_summed(self, linalg):
        """Should add duplicate (i, j) entries."""
        A = TripletMatrix.from_entries(2, 2, [(0, 1, 2.0), (0, 1, 3.0), (1, 0, 1.0)])
        out = linalg.triplet_times_vec(0.0, np.zeros(2), 1.0, A, np.ones(2))
        np.testing.assert_array_equal(out, [5.0, 1.0])

    def test_transpose_matches_dense(self, linalg, rng):
        """Should agree with the densified transpose product."""
        A = TripletMatrix.from_entries(3, 2, [(0, 1, 2.0), (2, 0, -1.0), (2, 0, 4.0)])
        x = rng.standard_normal(3)
        out = linalg.triplet_times_vec(0.0, np.zeros(2), 1.0, A, x, transpose=True)
        np.testing.assert_allclose(out, A.to_dense().array.T @ x, atol=EXACT_TOL)

    def test_out_of_range_index(self, linalg):
        """Should raise MalformedMatrixError for an index beyond the shape."""
        A = TripletMatrix.from_entries(2, 2, [(2, 0, 1.0)])
        with pytest.raises(MalformedMatrixError):
            linalg.triplet_times_vec(0.0, np.zeros(2), 1.0, A, np.ones(2))


class TestMdsTimesVec:
    """Tests for mds_times_vec."""

    def test_zero_blocks(self, linalg):
        """Should return beta * y for zero blocks."""
        out = linalg.mds_times_vec(
            GEMV_BETA,
            np.ones(1),
            1.0,
            TripletMatrix.empty(1, 1),
            DenseMatrix.zeros(1, 1),
            np.ones(2),
        )
        np.testing.assert_array_equal(out, [2.0])

    def test_mixed_blocks(self, linalg):
        """Should add the sparse and dense contributions."""
        out = linalg.mds_times_vec(
            0.0,
            np.zeros(1),
            1.0,
            TripletMatrix.from_entries(1, 1, [(0, 0, 1.0)]),
            DenseMatrix.from_array([[2.0]]),
            np.array([3.0, 4.0]),
        )
        np.testing.assert_array_equal(out, [MDS_RESULT])

    def test_zero_alpha_keeps_y(self, linalg):
        """Should leave y unchanged with alpha=0, beta=1."""
        y = np.array([MDS_RESULT])
        out = linalg.mds_times_vec(
            1.0,
            y,
            0.0,
            TripletMatrix.from_entries(1, 1, [(0, 0, 1.0)]),
            DenseMatrix.from_array([[2.0]]),
            np.ones(2),
        )
        np.testing.assert_array_equal(out, y)

    def test_wrong_x_length(self, linalg):
        """Should raise DimensionError when x is not n_s + n_d long."""
        with pytest.raises(DimensionError):
            linalg.mds_times_vec(
                0.0,
                np.zeros(1),
                1.0,
                TripletMatrix.empty(1, 1),
                DenseMatrix.zeros(1, 1),
                np.ones(3),
            )


class TestFusedAddSdst:
    """Tests for fused_add_sdst."""

    def test_identity_sandwich(self, linalg):
        """Should produce diag(d) for A = B = I."""
        eye = TripletMatrix.from_entries(2, 2, [(0, 0, 1.0), (1, 1, 1.0)])
        M = linalg.fused_add_sdst(
            DenseMatrix.zeros(2, 2), eye, DiagonalMatrix(np.array([3.0, 4.0])), eye, 1.0
        )
        np.testing.assert_array_equal(M.array, np.diag([3.0, 4.0]))

    def test_zero_diagonal_leaves_m(self, linalg, rng):
        """Should not change M when d is all zeros."""
        base = rng.standard_normal((2, 2))
        M = DenseMatrix.from_array(base)
        eye = TripletMatrix.from_entries(2, 2, [(0, 0, 1.0), (1, 1, 1.0)])
        linalg.fused_add_sdst(M, eye, DiagonalMatrix(np.zeros(2)), eye, 1.0)
        np.testing.assert_array_equal(M.array, base)

    def test_negative_sign(self, linalg):
        """Should subtract A diag(d) B^T."""
        A = TripletMatrix.from_entries(2, 1, [(0, 0, 1.0), (1, 0, 2.0)])
        B = TripletMatrix.from_entries(1, 1, [(0, 0, 3.0)])
        M = linalg.fused_add_sdst(
            DenseMatrix.zeros(2, 1), A, DiagonalMatrix(np.array([2.0])), B, -1.0
        )
        np.testing.assert_array_equal(M.array, [[-6.0], [-12.0]])

    def test_matches_dense_product(self, linalg, rng):
        """Should match the materialized product with duplicates present."""
        A = TripletMatrix.from_entries(
            3, 4, [(0, 1, 1.5), (2, 1, -2.0), (1, 3, 0.5), (1, 3, 0.25)]
        )
        B = TripletMatrix.from_entries(2, 4, [(0, 1, 2.0), (1, 3, 1.0), (1, 0, 4.0)])
        d = rng.uniform(0.5, 2.0, 4)
        M = linalg.fused_add_sdst(DenseMatrix.zeros(3, 2), A, DiagonalMatrix(d), B, 1.0)
        oracle = A.to_dense().array @ np.diag(d) @ B.to_dense().array.T
        np.testing.assert_allclose(M.array, oracle, atol=EXACT_TOL)

    def test_offsets_write_into_block(self, linalg):
        """Should accumulate into the block at the given offsets only."""
        eye = TripletMatrix.from_entries(1, 1, [(0, 0, 1.0)])
        M = linalg.fused_add_sdst(
            DenseMatrix.zeros(3, 3),
            eye,
            DiagonalMatrix(np.array([5.0])),
            eye,
            1.0,
            row_offset=2,
            col_offset=1,
        )
        expected = np.zeros((3, 3))
        expected[2, 1] = 5.0
        np.testing.assert_array_equal(M.array, expected)

    def test_upper_only(self, linalg):
        """Should drop contributions below the diagonal."""
        ones = TripletMatrix.from_entries(2, 1, [(0, 0, 1.0), (1, 0, 1.0)])
        M = linalg.fused_add_sdst(
            DenseMatrix.zeros(2, 2),
            ones,
            DiagonalMatrix(np.ones(1)),
            ones,
            1.0,
            upper_only=True,
        )
        np.testing.assert_array_equal(M.array, [[1.0, 1.0], [0.0, 1.0]])

    def test_block_does_not_fit(self, linalg):
        """Should raise DimensionError when the block overflows M."""
        eye = TripletMatrix.from_entries(2, 2, [(0, 0, 1.0), (1, 1, 1.0)])
        with pytest.raises(DimensionError):
            linalg.fused_add_sdst(
                DenseMatrix.zeros(2, 2),
                eye,
                DiagonalMatrix(np.ones(2)),
                eye,
                1.0,
                row_offset=1,
            )

    def test_inner_size_mismatch(self, linalg):
        """Should raise DimensionError when d does not match the inner size."""
        eye = TripletMatrix.from_entries(2, 2, [(0, 0, 1.0), (1, 1, 1.0)])
        with pytest.raises(DimensionError):
            linalg.fused_add_sdst(
                DenseMatrix.zeros(2, 2), eye, DiagonalMatrix(np.ones(3)), eye, 1.0
            )


class TestMakeLinearAlgebra:
    """Tests for make_linear_algebra and backend_from_name."""

    def test_default_is_sequential(self):
        """Should build the sequential suite for DEFAULT."""
        suite = make_linear_algebra(BackendSelector())
        assert type(suite) is SequentialLinearAlgebra
        assert suite.selector == BackendSelector()

    def test_host_sequential_is_bit_identical(self, rng):
        """Should agree exactly with DEFAULT."""
        x, y = rng.standard_normal(1000), rng.standard_normal(1000)
        default = make_linear_algebra(backend_from_name("default"))
        host = make_linear_algebra(backend_from_name("host-seq"))
        assert default.vec_dot(x, y) == host.vec_dot(x, y)
        for kind in ReduceKind:
            assert default.vec_reduce(x, kind) == host.vec_reduce(x, kind)

    def test_host_parallel_matches_default(self, rng):
        """Should match DEFAULT reductions within rounding."""
        x, y = rng.standard_normal(PARALLEL_LEN), rng.standard_normal(PARALLEL_LEN)
        default = make_linear_algebra()
        parallel = make_linear_algebra(
            backend_from_name("host-par"), workers=PARALLEL_WORKERS
        )
        assert isinstance(parallel, ThreadedLinearAlgebra)
        assert parallel.vec_dot(x, y) == pytest.approx(
            default.vec_dot(x, y), rel=PARALLEL_TOL
        )
        for kind in ReduceKind:
            assert parallel.vec_reduce(x, kind) == pytest.approx(
                default.vec_reduce(x, kind), rel=PARALLEL_TOL
            )

    def test_host_parallel_products(self, rng):
        """Should match DEFAULT matrix-vector and fused kernels."""
        default = make_linear_algebra()
        parallel = make_linear_algebra(
            backend_from_name("host-par"), workers=PARALLEL_WORKERS
        )
        A = DenseMatrix.from_array(rng.standard_normal((300, 200)))
        x = rng.standard_normal(200)
        np.testing.assert_allclose(
            parallel.dense_gemv(0.0, np.zeros(300), 1.0, A, x),
            default.dense_gemv(0.0, np.zeros(300), 1.0, A, x),
            rtol=PARALLEL_TOL,
            atol=PARALLEL_TOL,
        )
        T = TripletMatrix.from_dense(np.where(A.array > 1.0, A.array, 0.0))
        d = DiagonalMatrix(rng.uniform(0.5, 2.0, 200))
        M_par = parallel.fused_add_sdst(DenseMatrix.zeros(300, 300), T, d, T, -1.0)
        M_ref = default.fused_add_sdst(DenseMatrix.zeros(300, 300), T, d, T, -1.0)
        np.testing.assert_allclose(M_par.array, M_ref.array, atol=PARALLEL_TOL)

    @pytest.mark.parametrize(
        "selector",
        [
            BackendSelector(MemorySpace.DEVICE, Execution.SEQUENTIAL),
            BackendSelector(MemorySpace.UNIFIED, Execution.PARALLEL),
            BackendSelector(MemorySpace.DEFAULT, Execution.PARALLEL),
        ],
    )
    def test_unsupported_selector(self, selector):
        """Should raise ConfigError when no backend exists."""
        with pytest.raises(ConfigError):
            make_linear_algebra(selector)

    def test_unknown_backend_name(self):
        """Should raise ConfigError for an unknown CLI name."""
        with pytest.raises(ConfigError, match="unknown backend"):
            backend_from_name("gpu")

    def test_bad_worker_count(self):
        """Should refuse a worker count below one."""
        with pytest.raises(ConfigError):
            ThreadedLinearAlgebra(backend_from_name("host-par"), 0)


class TestContainers:
    """Tests for DenseMatrix and TripletMatrix."""

    def test_dense_row_major(self):
        """Should store element (i, j) at i * cols + j."""
        M = DenseMatrix.from_array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
        assert M.get(1, 0) == M.data[3]
        M.set(0, 2, -1.0)
        assert M.array[0, 2] == -1.0

    def test_dense_bad_storage(self):
        """Should reject storage that does not match the shape."""
        with pytest.raises(DimensionError):
            DenseMatrix(2, 2, np.zeros(3))

    def test_triplet_length_mismatch(self):
        """Should reject index and value arrays of different length."""
        with pytest.raises(DimensionError):
            TripletMatrix(2, 2, [0, 1], [0], [1.0, 2.0])

    def test_triplet_transpose(self):
        """Should swap rows and columns."""
        A = TripletMatrix.from_entries(2, 3, [(0, 2, 4.0)])
        np.testing.assert_array_equal(
            A.transpose().to_dense().array, A.to_dense().array.T
        )

    def test_triplet_nnz_counts_duplicates(self):
        """Should count duplicate entries separately."""
        A = TripletMatrix.from_entries(1, 1, [(0, 0, 1.0), (0, 0, 2.0)])
        assert A.nnz == len(A.v)
        assert A.to_dense().get(0, 0) == A.v.sum()


class TestMatrixDump:
    """Tests for the plain-text dump format."""

    def test_triplet_round_trip(self, tmp_path):
        """Should read back exactly what was written."""
        A = TripletMatrix.from_entries(3, 2, [(0, 1, 1.0 / 3.0), (2, 0, -1e-300)])
        path = write_matrix_dump(tmp_path / "sub" / "a.txt", A)
        back = read_triplet_dump(path)
        assert back.shape == A.shape
        np.testing.assert_array_equal(back.to_dense().array, A.to_dense().array)

    def test_dense_written_in_full(self):
        """Should list every entry of a dense matrix, zeros included."""
        text = format_matrix_dump(DenseMatrix.identity(2))
        lines = text.splitlines()
        assert lines[0] == "2 2 4"
        assert len(lines) == 1 + DenseMatrix.identity(2).data.size

    def test_count_mismatch(self):
        """Should reject a header that announces more entries."""
        with pytest.raises(MalformedMatrixError, match="announces"):
            parse_triplet_dump("2 2 2\n0 0 1.0\n")

    def test_bad_token(self):
        """Should reject non-numeric entries."""
        with pytest.raises(MalformedMatrixError):
            parse_triplet_dump("1 1 1\n0 x 1.0\n")

    def test_index_out_of_range(self):
        """Should reject indices beyond the declared shape."""
        with pytest.raises(MalformedMatrixError):
            parse_triplet_dump("1 1 1\n3 0 1.0\n")

    def test_empty_text(self):
        """Should reject an empty dump."""
        with pytest.raises(MalformedMatrixError):
            parse_triplet_dump("")
