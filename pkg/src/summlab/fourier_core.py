"""Periodic functions, Fourier coefficients, partial sums and the Dirichlet kernel.

Coefficient convention throughout the package::

    f(x) ~ a0/2 + sum_{j=1}^{N} (a_j cos jx + b_j sin jx)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import OutOfRangeError, PreconditionError

TWO_PI = 2.0 * np.pi

# Below this |t| the Dirichlet kernel is summed as cosines instead of
# formed as a sine quotient.
DIRICHLET_SWITCH = 1e-3


@dataclass(frozen=True)
class PeriodicFunction:
    """A real 2*pi-periodic function.

    ``evaluator`` must accept numpy arrays and be total on the real line.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    label: str = "f"

    def __call__(self, x):
        return self.evaluator(np.asarray(x, dtype=float))

    def periodicity_defect(self, num: int = 1024) -> float:
        """Max |f(x + 2pi) - f(x)| over a uniform sample of [0, 2pi)."""
        x = np.linspace(0.0, TWO_PI, num, endpoint=False)
        return float(np.max(np.abs(self(x + TWO_PI) - self(x))))


@dataclass(frozen=True)
class TrigSeries:
    """Finite Fourier coefficient table of degree ``N``."""

    a0: float
    cosines: np.ndarray = field(repr=False)
    sines: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.cosines, dtype=float)
        s = np.asarray(self.sines, dtype=float)
        if c.ndim != 1 or c.shape != s.shape:
            raise PreconditionError("cosines and sines must be 1-d arrays of equal length")
        c.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "cosines", c)
        object.__setattr__(self, "sines", s)

    @property
    def N(self) -> int:
        return len(self.cosines)

    @classmethod
    def from_dict(cls, N: int, a0: float = 0.0, cos: dict | None = None,
                  sin: dict | None = None) -> "TrigSeries":
        """Build a sparse series from ``{frequency: coefficient}`` maps."""
        c = np.zeros(N)
        s = np.zeros(N)
        for j, v in (cos or {}).items():
            c[j - 1] = v
        for j, v in (sin or {}).items():
            s[j - 1] = v
        return cls(a0, c, s)

    def __call__(self, x):
        return partial_sum(self, self.N, x)


def fourier_coefficients(f: PeriodicFunction, N: int, M: int | None = None) -> TrigSeries:
    """Coefficients of ``f`` up to degree ``N`` from ``M`` uniform samples.

    Exact (up to rounding) for trigonometric polynomials of degree < M/2.
    ``M`` defaults to the smallest power of two satisfying ``M >= 4N + 4``.
    """
    if N < 1:
        raise PreconditionError(f"degree must be positive, got {N}")
    if M is None:
        M = 1 << int(np.ceil(np.log2(4 * N + 4)))
    if M < 4 * N + 4:
        raise PreconditionError(f"need M >= 4N+4 = {4 * N + 4} samples, got {M}")
    x = np.arange(M) * (TWO_PI / M)
    F = np.fft.rfft(f(x)) * (2.0 / M)
    return TrigSeries(F[0].real, F[1:N + 1].real, -F[1:N + 1].imag)


def _check_degree(s: TrigSeries, k: int) -> None:
    if k < 0 or k > s.N:
        raise OutOfRangeError(f"partial sum index {k} outside 0..{s.N}")


def partial_sum(s: TrigSeries, k: int, x):
    """S_k at ``x`` (scalar or array)."""
    _check_degree(s, k)
    return trig_eval(0.5 * s.a0, s.cosines[:k], s.sines[:k], x)


def trig_eval(c0: float, c: np.ndarray, d: np.ndarray, x):
    """Evaluate ``c0 + sum_j (c_j cos jx + d_j sin jx)``, j starting at 1."""
    x = np.asarray(x, dtype=float)
    out = np.full(x.shape, c0, dtype=float)
    if len(c) == 0:
        return out if out.ndim else float(out)
    j = np.arange(1, len(c) + 1)
    flat = x.reshape(-1)
    # chunk over x to bound the (n, len(x)) temporary
    res = out.reshape(-1)
    step = max(1, 2_000_000 // len(c))
    for lo in range(0, flat.size, step):
        jx = np.outer(flat[lo:lo + step], j)
        res[lo:lo + step] += np.cos(jx) @ c + np.sin(jx) @ d
    return out if out.ndim else float(out)


def trig_eval_uniform(c0: float, c: np.ndarray, d: np.ndarray, M: int) -> np.ndarray:
    """``trig_eval`` on the grid ``2 pi m / M``, m = 0..M-1, via one FFT.

    Frequencies above M are folded, so the result is exact for any degree.
    """
    z = np.zeros(M, dtype=complex)
    j = np.arange(1, len(c) + 1)
    np.add.at(z, j % M, np.asarray(c) - 1j * np.asarray(d))
    return c0 + M * np.fft.ifft(z).real


def dirichlet_kernel(k: int, t):
    """D_k(t) = sin((k + 1/2) t) / (2 sin(t/2)), continuous at t = 0."""
    t = np.asarray(t, dtype=float)
    tt = np.atleast_1d(t)
    out = np.empty(tt.shape)
    small = np.abs(tt) < DIRICHLET_SWITCH
    if np.any(small):
        j = np.arange(1, k + 1)
        out[small] = 0.5 + np.cos(np.outer(tt[small], j)).sum(axis=1)
    big = ~small
    out[big] = np.sin((k + 0.5) * tt[big]) / (2.0 * np.sin(0.5 * tt[big]))
    return out.reshape(t.shape) if t.ndim else float(out[0])


def psi(f: PeriodicFunction, x, t):
    """Symmetric second difference (f(x+t) + f(x-t) - 2 f(x)) / 2."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    return 0.5 * (f(x + t) + f(x - t) - 2.0 * f(x))
