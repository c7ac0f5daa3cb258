"""Constants for the symmetric indefinite factorizations."""

import math

# Bunch-Kaufman pivot threshold, minimizes the element growth bound
BK_ALPHA = (1.0 + math.sqrt(17.0)) / 8.0

# Factorization method names accepted by `factorize`
METHOD_REFERENCE = "reference"
METHOD_LAPACK = "lapack"
METHODS = (METHOD_LAPACK, METHOD_REFERENCE)

# Pivot block sizes
PIVOT_1X1 = 1
PIVOT_2X2 = 2
