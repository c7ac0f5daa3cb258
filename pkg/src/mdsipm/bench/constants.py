"""Constants for the benchmark and verification drivers."""

# Problem sizes k swept by default (synthetic problem, condensed dim 2k + 3)
DEFAULT_SIZES = (10, 50, 100, 200, 500)

# Large sweep for machines with plenty of memory and time
FULL_SCALE_SIZES = tuple(range(2000, 22001, 4000))

# Repetitions per factorization when comparing condensed and full systems
FACTOR_REPEATS = 3

BYTES_PER_GB = 1024**3

# Verification defaults
VERIFY_SEEDS = 20
VERIFY_MAX_BLOCK = 20  # n_s, n_d drawn from 1..20
VERIFY_MAX_EQ = 3
VERIFY_MAX_INEQ = 10
VERIFY_MAX_LDL_N = 200  # Largest random matrix in the factorization suite
VERIFY_DENSITY = 0.3  # Fraction of nonzeros in random sparse Jacobian blocks
VERIFY_SOLVE_PROBLEMS = ("synthetic:2", "synthetic:10", "nonconvex:4")

# Pass thresholds
COMPRESSION_TOL = 1e-8  # Relative inf-norm, condensed vs full direction
FUSED_TOL = 1e-13  # Relative, fused kernel vs dense product
FD_TOL = 1e-5  # Finite-difference derivative error
RECONSTRUCTION_FACTOR = 100.0  # ||P L D L^T P^T - A|| <= factor * n * eps * ||A||
EIGEN_GAP = 1e-8  # Eigenvalues below this (times ||A||) make sign counts unreliable
