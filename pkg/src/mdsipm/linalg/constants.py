"""Constants for the linear-algebra layer."""

# Bound magnitudes at or beyond this are treated as infinite
INF_BOUND = 1e20

# Significant digits for values in matrix dump files
DUMP_DIGITS = 17

# Smallest number of elements per worker before the parallel backend splits work
PARALLEL_MIN_CHUNK = 4096
