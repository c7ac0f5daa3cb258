"""Constants for the built-in problems."""

# Synthetic convex problem
SYNTHETIC_BOX = 10.0  # -10 <= x <= 10 for both blocks
SYNTHETIC_ROW_CAP = 2.0  # x_s,i + mean(x_d) <= 2
SYNTHETIC_MEAN_LO = 0.5  # 0.5 <= mean(x_d) <= 3
SYNTHETIC_MEAN_UP = 3.0

# Random convex generator
RANDOM_NNZ_PER_ROW = 3  # Sparse Jacobian rows hold this many entries (density 3/n_s)
RANDOM_BOX = 5.0
RANDOM_REF_SPREAD = 1.0  # Feasible reference point drawn from (-1, 1)
RANDOM_SLACK_MIN = 0.5  # Inequality bounds sit this far (or more) from the reference
RANDOM_SLACK_MAX = 2.0
RANDOM_Q_S_MIN = 0.5
RANDOM_Q_S_MAX = 2.0

# Double-well nonconvex problem
WELL_TILT = 0.1
WELL_XD_BOX = 2.0
WELL_XS_BOX = 5.0
WELL_XS_TARGET = 0.5
WELL_ROW_CAP = 1.0  # x_s,i - x_d,i <= 1

# Finite-difference checks
FD_STEP = 1e-6  # Scaled by 1 + max|x|
FD_POINTS = 20
