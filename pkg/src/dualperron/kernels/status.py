# Integer status codes returned by the iterative kernels (numba cannot raise
# our exception classes, so the Python layer maps these).
OK = 0
MAX_ITER = 1
NON_APPRECIABLE = 2
BRACKET_INVERSION = 3
DEGENERATE = 4
OVERFLOW = 5
