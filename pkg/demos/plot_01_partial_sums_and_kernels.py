"""
Partial sums and the Dirichlet kernel
=====================================

Fourier coefficients of the triangle wave, its partial sums, and the two
evaluation routes of the Dirichlet kernel.
"""

import numpy as np

from summlab import PeriodicFunction, dirichlet_kernel, fourier_coefficients, partial_sum
from summlab.experiments import triangle_series

############################################################
# Coefficients from samples against the exact series

tri = PeriodicFunction(lambda x: np.abs(np.mod(x + np.pi, 2 * np.pi) - np.pi), "triangle")
s = fourier_coefficients(tri, 15, 1 << 14)
exact = triangle_series(15)
print("a0", s.a0, "exact", exact.a0)
print("max coefficient error", np.max(np.abs(s.cosines - exact.cosines)))

############################################################
# Partial sums converge at the rate 1/k on the corners

x = np.linspace(0, 2 * np.pi, 2001)
for k in (1, 3, 7, 15):
    err = np.max(np.abs(partial_sum(exact, k, x) - tri(x)))
    print(f"k={k:3d}  sup error {err:.5f}  k*err {k * err:.4f}")

############################################################
# Near t = 0 the kernel switches from the sine quotient to a cosine sum

t = np.array([1e-9, 1e-4, 0.999e-3, 1e-3, 0.5])
print(dirichlet_kernel(40, t))
