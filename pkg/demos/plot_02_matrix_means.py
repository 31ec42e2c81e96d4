"""
Cesaro, Norlund and Riesz means
===============================

The same function averaged by three lower-triangular matrices.
"""

import numpy as np

from summlab import (
    PeriodicFunction,
    WeightSequence,
    cesaro_matrix,
    kernel,
    norlund_matrix,
    riesz_matrix,
    sup_error,
)
from summlab.experiments import exemplar

N = 256
p = WeightSequence.linear(N)
mats = [cesaro_matrix(N), norlund_matrix(p, N), riesz_matrix(p, N)]

############################################################
# cos x: the Cesaro error is exactly 1/(n+1)

f, s, _ = exemplar("cos", N)
for A in mats:
    errs = [sup_error(A, f, s, n) for n in (16, 64, 256)]
    print(f"{A.label:16s}", " ".join(f"{e:.3e}" for e in errs))

############################################################
# A rougher function, Lip(1/2)

f, s, _ = exemplar("weierstrass-0.5")
for A in mats:
    errs = [sup_error(A, f, s, n) for n in (16, 64, 256)]
    print(f"{A.label:16s}", " ".join(f"{e:.3e}" for e in errs))

############################################################
# The summability kernels at a few points

t = np.array([0.01, 0.1, 1.0, np.pi])
for A in mats:
    print(f"{A.label:16s}", np.round(kernel(A, N, t), 5))
