"""Constants for the interior-point driver."""

# Step-length reduction per rejected trial point
BACKTRACK_FACTOR = 0.5

# File names of per-iteration KKT dumps (iteration number substituted)
KKT4_DUMP_NAME = "kkt4_{:04d}.txt"
KKT3_DUMP_NAME = "kkt3_{:04d}.txt"
