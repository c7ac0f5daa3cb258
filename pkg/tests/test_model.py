"""Tests for the model module."""

from dataclasses import replace

import numpy as np
import pytest

from mdsipm.errors import ConfigError, DimensionError, EvalError
from mdsipm.linalg import (
    INF_BOUND,
    BackendSelector,
    DenseMatrix,
    SequentialLinearAlgebra,
    backend_from_name,
    make_linear_algebra,
)
from mdsipm.model import (
    DoubleWellProblem,
    MdsNlpProblem,
    QuadraticMdsProblem,
    check_derivatives,
    eval_all,
    nonconvex_problem,
    parse_problem_spec,
    random_problem,
    synthetic_problem,
    validate_problem,
)

from .conftest import (
    FD_TOL,
    K_MEDIUM,
    K_SMALL,
    NONCONVEX_K,
    RANDOM_DIMS,
    RANDOM_SEED,
    SYNTHETIC_K1_DIM,
    SYNTHETIC_K1_M,
    SYNTHETIC_K1_N,
    SYNTHETIC_K10_DIM,
)


class _DoubledTriplets(SequentialLinearAlgebra):
    """Kernel suite whose sparse products come out twice too large."""

    def triplet_times_vec(self, beta, y, alpha, A, x, **kwargs):
        return super().triplet_times_vec(beta, y, 2.0 * alpha, A, x, **kwargs)


class _NanObjective(DoubleWellProblem):
    def objective(self, x_d, x_s):
        return float("nan")


class _WrongHessian(DoubleWellProblem):
    def hessian(self, x_d, x_s, y_g, y_h):
        return DenseMatrix.zeros(self.k, self.k), np.ones(self.k)


class _ShortGradient(DoubleWellProblem):
    def gradient(self, x_d, x_s):
        grad_d, grad_s = super().gradient(x_d, x_s)
        return grad_d[:-1], grad_s


def _zero_duals(p: MdsNlpProblem):
    return np.zeros(p.m_E), np.zeros(p.m_I)


class TestSyntheticProblem:
    """Tests for synthetic_problem."""

    def test_smallest_instance(self):
        """Should have n = 2, m = 4 and a condensed dimension of 5 at k = 1."""
        p = synthetic_problem(1)
        assert p.dims.n == SYNTHETIC_K1_N
        assert p.dims.m == SYNTHETIC_K1_M
        assert p.dims.compressed_dim == SYNTHETIC_K1_DIM

    def test_condensed_dimension(self):
        """Should give a condensed dimension of 2k + 3."""
        p = synthetic_problem(K_MEDIUM)
        assert p.dims.compressed_dim == SYNTHETIC_K10_DIM
        assert p.dims.full_dim == p.dims.compressed_dim + p.n_s

    def test_is_valid(self):
        """Should pass structural validation."""
        assert validate_problem(synthetic_problem(K_MEDIUM)) == []

    def test_name(self):
        """Should be named after its selector."""
        assert synthetic_problem(K_SMALL).name == f"synthetic:{K_SMALL}"

    def test_derivatives(self):
        """Should have analytic derivatives matching finite differences."""
        assert check_derivatives(synthetic_problem(K_SMALL), seed=0).passed(FD_TOL)

    @pytest.mark.parametrize("k", [0, -1])
    def test_rejects_small_k(self, k):
        """Should raise ConfigError for k < 1."""
        with pytest.raises(ConfigError):
            synthetic_problem(k)


class TestRandomProblem:
    """Tests for random_problem."""

    def test_dimensions(self):
        """Should build the requested block sizes."""
        n_d, n_s, m_E, m_I = RANDOM_DIMS
        p = random_problem(RANDOM_SEED, *RANDOM_DIMS)
        assert (p.n_d, p.n_s, p.m_E, p.m_I) == (n_d, n_s, m_E, m_I)

    def test_deterministic(self):
        """Should build the same instance for the same seed."""
        a = random_problem(RANDOM_SEED, *RANDOM_DIMS)
        b = random_problem(RANDOM_SEED, *RANDOM_DIMS)
        np.testing.assert_array_equal(a.H_d.data, b.H_d.data)
        np.testing.assert_array_equal(a.Asg.v, b.Asg.v)
        np.testing.assert_array_equal(a.bounds.h_lo, b.bounds.h_lo)

    def test_seeds_differ(self):
        """Should build different instances for different seeds."""
        a = random_problem(RANDOM_SEED, *RANDOM_DIMS)
        b = random_problem(RANDOM_SEED + 1, *RANDOM_DIMS)
        assert not np.array_equal(a.c_d, b.c_d)

    def test_dense_hessian_is_positive_definite(self):
        """Should draw an SPD dense Hessian."""
        p = random_problem(RANDOM_SEED, *RANDOM_DIMS)
        assert np.all(np.linalg.eigvalsh(p.H_d.array) > 0)
        assert np.all(p.q_s > 0)

    @pytest.mark.parametrize("seed", range(5))
    def test_is_valid(self, seed):
        """Should pass validation for every seed."""
        assert validate_problem(random_problem(seed, *RANDOM_DIMS)) == []

    def test_derivatives(self):
        """Should have analytic derivatives matching finite differences."""
        p = random_problem(RANDOM_SEED, *RANDOM_DIMS)
        assert check_derivatives(p, seed=RANDOM_SEED).passed(FD_TOL)

    @pytest.mark.parametrize("dims", [(-1, 1, 1, 1), (1, 1, 0, 0)])
    def test_rejects_bad_dimensions(self, dims):
        """Should raise ConfigError for negative counts or no constraints."""
        with pytest.raises(ConfigError):
            random_problem(RANDOM_SEED, *dims)


class TestNonconvexProblem:
    """Tests for nonconvex_problem."""

    def test_dense_hessian_indefinite_at_start(self):
        """Should have a negative curvature dense Hessian at the start."""
        p = nonconvex_problem(NONCONVEX_K)
        x_d, x_s = p.starting_point()
        Qdd, _ = p.hessian(x_d, x_s, *_zero_duals(p))
        assert np.all(np.linalg.eigvalsh(Qdd.array) < 0)

    def test_is_valid(self):
        """Should pass structural validation."""
        assert validate_problem(nonconvex_problem(NONCONVEX_K)) == []

    def test_derivatives(self):
        """Should have analytic derivatives matching finite differences."""
        assert check_derivatives(nonconvex_problem(NONCONVEX_K)).passed(FD_TOL)

    def test_rejects_small_k(self):
        """Should raise ConfigError for k < 1."""
        with pytest.raises(ConfigError):
            nonconvex_problem(0)


class TestValidateProblem:
    """Tests for validate_problem."""

    def test_unordered_inequality(self):
        """Should report an inequality whose bounds are not strictly ordered."""
        p = synthetic_problem(1)
        h_lo = p.bounds.h_lo.copy()
        h_lo[1] = p.bounds.h_up[1]
        p.bounds = replace(p.bounds, h_lo=h_lo)
        assert validate_problem(p) == [
            "h bounds not strictly ordered at inequality 1"
        ]

    def test_free_inequality(self):
        """Should report an inequality with no finite bound."""
        p = synthetic_problem(1)
        h_up = p.bounds.h_up.copy()
        h_up[0] = INF_BOUND
        p.bounds = replace(p.bounds, h_up=h_up)
        assert validate_problem(p) == ["no finite bound on inequality 0"]

    def test_free_variable(self):
        """Should report a variable with no finite bound."""
        p = synthetic_problem(1)
        p.bounds = replace(
            p.bounds, xs_lo=np.full(1, -INF_BOUND), xs_up=np.full(1, INF_BOUND)
        )
        assert validate_problem(p) == ["no finite bound on sparse variable 0"]

    def test_wrong_bound_shape(self):
        """Should report a bound vector of the wrong length."""
        p = synthetic_problem(K_SMALL)
        p.bounds = replace(p.bounds, g_E=np.zeros(1))
        report = validate_problem(p)
        assert len(report) == 1
        assert report[0].startswith("g_E has shape")

    def test_non_finite_equality_target(self):
        """Should report a non-finite g_E."""
        p = synthetic_problem(1)
        p.bounds = replace(p.bounds, g_E=np.array([np.nan, 0.0]))
        assert validate_problem(p) == ["g_E has non-finite entries"]

    def test_negative_sparse_hessian(self):
        """Should report a negative sparse Hessian diagonal."""
        p = synthetic_problem(1)
        p.q_s = -np.ones(1)
        assert validate_problem(p) == ["sparse Hessian diagonal has negative entries"]


class TestCheckDerivatives:
    """Tests for check_derivatives."""

    def test_detects_wrong_hessian(self):
        """Should flag a Hessian that ignores curvature."""
        report = check_derivatives(_WrongHessian(NONCONVEX_K))
        assert report.hessian > FD_TOL
        assert not report.passed(FD_TOL)
        assert report.gradient <= FD_TOL

    def test_worst(self):
        """Should report the largest error as worst."""
        report = check_derivatives(_WrongHessian(NONCONVEX_K))
        assert report.worst == report.hessian

    def test_point_count(self):
        """Should record how many points were sampled."""
        report = check_derivatives(synthetic_problem(1), points=K_SMALL)
        assert report.points == K_SMALL

    def test_uses_kernel_suite(self):
        """Should form Jacobian products with the given kernel suite."""
        p = synthetic_problem(K_SMALL)
        report = check_derivatives(p, linalg=_DoubledTriplets(BackendSelector()))
        assert report.jacobian_g > FD_TOL
        assert report.jacobian_h > FD_TOL

    def test_parallel_kernels(self):
        """Should pass with the thread-parallel kernel suite."""
        linalg = make_linear_algebra(backend_from_name("host-par"))
        assert check_derivatives(synthetic_problem(K_SMALL), linalg=linalg).passed(
            FD_TOL
        )


class TestEvalAll:
    """Tests for eval_all."""

    def test_synthetic_at_origin(self):
        """Should evaluate the synthetic problem at the origin."""
        p = synthetic_problem(K_SMALL)
        zeros = np.zeros(K_SMALL)
        bundle = eval_all(p, zeros, zeros, *_zero_duals(p))
        assert bundle.f == pytest.approx(0.5 * K_SMALL)
        np.testing.assert_array_equal(bundle.grad_d, -np.ones(K_SMALL))
        np.testing.assert_array_equal(bundle.g_val, np.zeros(p.m_E))
        assert bundle.Jsh.shape == (p.m_I, p.n_s)

    def test_non_finite_objective(self):
        """Should raise EvalError naming the objective."""
        p = _NanObjective(NONCONVEX_K)
        x_d, x_s = p.starting_point()
        with pytest.raises(EvalError) as excinfo:
            eval_all(p, x_d, x_s, *_zero_duals(p))
        assert excinfo.value.component == "f"

    def test_wrong_point_size(self):
        """Should raise DimensionError for a point of the wrong size."""
        p = synthetic_problem(K_SMALL)
        with pytest.raises(DimensionError):
            eval_all(p, np.zeros(1), np.zeros(K_SMALL), *_zero_duals(p))

    def test_wrong_evaluator_shape(self):
        """Should raise DimensionError when an evaluator returns a short block."""
        p = _ShortGradient(NONCONVEX_K)
        x_d, x_s = p.starting_point()
        with pytest.raises(DimensionError, match="grad_d"):
            eval_all(p, x_d, x_s, *_zero_duals(p))


class TestParseProblemSpec:
    """Tests for parse_problem_spec."""

    def test_synthetic(self):
        """Should build a synthetic problem."""
        p = parse_problem_spec(f"synthetic:{K_SMALL}")
        assert isinstance(p, QuadraticMdsProblem)
        assert p.n_d == K_SMALL

    def test_nonconvex(self):
        """Should build a double-well problem."""
        assert isinstance(
            parse_problem_spec(f"nonconvex:{NONCONVEX_K}"), DoubleWellProblem
        )

    def test_random(self):
        """Should build a random problem with the given dimensions."""
        text = "random:" + ":".join(map(str, (RANDOM_SEED, *RANDOM_DIMS)))
        p = parse_problem_spec(text)
        assert p.name == text

    def test_surrounding_whitespace(self):
        """Should ignore surrounding whitespace."""
        assert parse_problem_spec(" synthetic:1 ").name == "synthetic:1"

    @pytest.mark.parametrize(
        "text",
        ["bogus:1", "synthetic", "synthetic:x", "synthetic:0", "random:1:2", ""],
    )
    def test_rejects(self, text):
        """Should raise ConfigError for malformed or out-of-range specs."""
        with pytest.raises(ConfigError):
            parse_problem_spec(text)
