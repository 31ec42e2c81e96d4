"""Lower-triangular summability matrices and the means they define.

Row ``n`` of a :class:`SummabilityMatrix` holds ``a_{n,0}, ..., a_{n,n}``;
entries right of the diagonal are zero and never stored.  The mean of a
Fourier series is

    T_n(x) = sum_k a_{n,k} S_k(x)
           = (a0/2) lam_0 + sum_{j>=1} lam_j (a_j cos jx + b_j sin jx)

with ``lam_j = sum_{k>=j} a_{n,k}``.  The second (coefficient-space) form is
the default; the first is kept as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, OutOfRangeError, PreconditionError
from .fourier_core import (
    DIRICHLET_SWITCH,
    PeriodicFunction,
    TWO_PI,
    TrigSeries,
    psi,
    trig_eval,
    trig_eval_uniform,
)


class SummabilityMatrix:
    """Finitely many rows of a lower-triangular matrix ``A = (a_{n,k})``."""

    def __init__(self, rows: Sequence[Sequence[float]], label: str = "A"):
        stored = []
        for n, row in enumerate(rows):
            r = np.array(row, dtype=float)
            if r.shape != (n + 1,):
                raise PreconditionError(f"row {n} must have {n + 1} entries, got {r.size}")
            r.setflags(write=False)
            stored.append(r)
        if not stored:
            raise PreconditionError("matrix needs at least one row")
        self._rows = tuple(stored)
        self.label = label

    @property
    def rows(self) -> tuple[np.ndarray, ...]:
        return self._rows

    @property
    def max_row(self) -> int:
        return len(self._rows) - 1

    def row(self, n: int) -> np.ndarray:
        if n < 0 or n > self.max_row:
            raise OutOfRangeError(f"row {n} outside 0..{self.max_row}")
        return self._rows[n]

    def diagonal(self) -> np.ndarray:
        return np.array([r[-1] for r in self._rows])

    def __len__(self):
        return len(self._rows)

    def __repr__(self):
        return f"SummabilityMatrix({self.label!r}, rows=0..{self.max_row})"

    @classmethod
    def from_last_row(cls, row: Sequence[float], label: str = "row") -> "SummabilityMatrix":
        """Embed a single row of length n+1 as row n; earlier rows are ``[1], [0, 1], ...``.

        Convenient for condition checks phrased on one row.
        """
        n = len(row) - 1
        rows = [np.eye(1, k + 1, k)[0] for k in range(n)] + [row]
        return cls(rows, label)


@dataclass(frozen=True)
class WeightSequence:
    """Nonnegative weights ``p_0, p_1, ...`` with partial sums ``P_n``."""

    p: np.ndarray
    label: str = "p"

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise PreconditionError("weights must be a non-empty 1-d sequence")
        if np.any(p < 0):
            raise PreconditionError("weights must be nonnegative")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    @property
    def cumulative(self) -> np.ndarray:
        return np.cumsum(self.p)

    def __len__(self):
        return self.p.size

    @classmethod
    def ones(cls, N: int) -> "WeightSequence":
        return cls(np.ones(N + 1), "ones")

    @classmethod
    def linear(cls, N: int) -> "WeightSequence":
        return cls(np.arange(1.0, N + 2.0), "linear")

    @classmethod
    def geometric(cls, r: float, N: int) -> "WeightSequence":
        return cls(float(r) ** np.arange(N + 1), f"geometric:{r:g}")


def _prefix(p: WeightSequence, N: int) -> tuple[np.ndarray, np.ndarray]:
    if N < 0:
        raise PreconditionError("N must be >= 0")
    if len(p) < N + 1:
        raise PreconditionError(f"need {N + 1} weights, got {len(p)}")
    w = p.p[:N + 1]
    P = np.cumsum(w)
    bad = np.flatnonzero(P == 0)
    if bad.size:
        raise DomainError(f"P_n = 0 at n = {bad[0]}")
    return w, P


def cesaro_matrix(N: int) -> SummabilityMatrix:
    if N < 0:
        raise PreconditionError("N must be >= 0")
    return SummabilityMatrix([np.full(n + 1, 1.0 / (n + 1)) for n in range(N + 1)], "cesaro")


def norlund_matrix(p: WeightSequence, N: int) -> SummabilityMatrix:
    """a_{n,k} = p_{n-k} / P_n."""
    w, P = _prefix(p, N)
    return SummabilityMatrix([w[n::-1] / P[n] for n in range(N + 1)], f"norlund:{p.label}")


def riesz_matrix(p: WeightSequence, N: int) -> SummabilityMatrix:
    """a_{n,k} = p_k / P_n."""
    w, P = _prefix(p, N)
    return SummabilityMatrix([w[:n + 1] / P[n] for n in range(N + 1)], f"riesz:{p.label}")


@dataclass(frozen=True)
class CumulativeWeights:
    """Tail sums ``lam_j = sum_{k=j}^n a_{n,k}`` of one row, with head sums."""

    lam: np.ndarray
    heads: np.ndarray

    @property
    def n(self) -> int:
        return self.lam.size - 1

    def head_sum(self, m: int) -> float:
        """sum_{r=0}^{m} a_{n,r}; saturates at the full row sum for m >= n."""
        if m < 0:
            return 0.0
        return float(self.heads[min(m, self.n)])


def cumulative_weights(A: SummabilityMatrix, n: int) -> CumulativeWeights:
    row = A.row(n)
    lam = np.cumsum(row[::-1])[::-1]
    return CumulativeWeights(lam, np.cumsum(row))


def _check_dims(A: SummabilityMatrix, s: TrigSeries, n: int) -> None:
    if n < 0 or n > A.max_row:
        raise OutOfRangeError(f"row {n} outside 0..{A.max_row}")
    if n > s.N:
        raise OutOfRangeError(f"row {n} needs degree {n}, series has degree {s.N}")


def _multipliers(A: SummabilityMatrix, s: TrigSeries, n: int):
    lam = cumulative_weights(A, n).lam
    return 0.5 * s.a0 * lam[0], lam[1:] * s.cosines[:n], lam[1:] * s.sines[:n]


def transform(A: SummabilityMatrix, s: TrigSeries, n: int, x, method: str = "coefficient"):
    """T_{n,A} at ``x``; ``method`` is ``"coefficient"`` or ``"direct"``."""
    _check_dims(A, s, n)
    if method == "coefficient":
        return trig_eval(*_multipliers(A, s, n), x)
    if method == "direct":
        return _transform_direct(A.row(n), s, x)
    raise ValueError(f"unknown method {method!r}")


def _transform_direct(row: np.ndarray, s: TrigSeries, x):
    x = np.asarray(x, dtype=float)
    flat = np.atleast_1d(x).reshape(-1)
    n = row.size - 1
    j = np.arange(1, n + 1)
    jx = np.outer(j, flat)
    terms = s.cosines[:n, None] * np.cos(jx) + s.sines[:n, None] * np.sin(jx)
    S = np.vstack([np.full((1, flat.size), 0.5 * s.a0), 0.5 * s.a0 + np.cumsum(terms, axis=0)])
    out = row @ S
    return out.reshape(x.shape) if x.ndim else float(out[0])


def transform_on_grid(A: SummabilityMatrix, s: TrigSeries, n: int, M: int) -> np.ndarray:
    """T_{n,A} on the uniform grid ``2 pi m / M``."""
    _check_dims(A, s, n)
    return trig_eval_uniform(*_multipliers(A, s, n), M)


def kernel(A: SummabilityMatrix, n: int, t):
    """K_n(t) = sum_k a_{n,k} D_k(t) (signed)."""
    row = A.row(n)
    t = np.asarray(t, dtype=float)
    tt = np.atleast_1d(t).reshape(-1)
    out = np.empty(tt.shape)
    small = np.abs(tt) < DIRICHLET_SWITCH
    k = np.arange(n + 1)
    if np.any(small):
        lam = np.cumsum(row[::-1])[::-1]
        out[small] = 0.5 * lam[0] + np.cos(np.outer(tt[small], k[1:])) @ lam[1:]
    big = np.flatnonzero(~small)
    step = max(1, 2_000_000 // (n + 1))
    for lo in range(0, big.size, step):
        idx = big[lo:lo + step]
        num = np.sin(np.outer(tt[idx], k + 0.5)) @ row
        out[idx] = num / (2.0 * np.sin(0.5 * tt[idx]))
    return out.reshape(t.shape) if t.ndim else float(out[0])


def kernel_table(A: SummabilityMatrix, n_list: Sequence[int], t) -> np.ndarray:
    """Stack of ``kernel(A, n, t)`` over ``n_list``, shape (len(n_list), len(t))."""
    return np.vstack([np.atleast_1d(kernel(A, n, t)) for n in n_list])


def _golden_max(g, a: float, b: float, iters: int = 60) -> tuple[float, float]:
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(iters):
        if gc > gd:
            b, d, gd = d, c, gc
            c = b - invphi * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + invphi * (b - a)
            gd = g(d)
    return (c, gc) if gc > gd else (d, gd)


def sup_error(A: SummabilityMatrix, f: PeriodicFunction, s: TrigSeries, n: int,
              grid_size: int = 4096) -> float:
    """Estimate of ||T_{n,A} f - f||_inf: grid maximum plus golden-section polish."""
    if grid_size < 256:
        raise PreconditionError("grid_size must be >= 256")
    x = np.arange(grid_size) * (TWO_PI / grid_size)
    err = np.abs(transform_on_grid(A, s, n, grid_size) - f(x))
    i = int(np.argmax(err))
    best = float(err[i])
    h = TWO_PI / grid_size
    c0, c, d = _multipliers(A, s, n)

    def g(y):
        return abs(trig_eval(c0, c, d, y) - float(f(y)))

    _, refined = _golden_max(g, x[i] - h, x[i] + h)
    return max(best, refined)


def _gauss_panels(breaks: np.ndarray, order: int = 16) -> tuple[np.ndarray, np.ndarray]:
    xg, wg = np.polynomial.legendre.leggauss(order)
    a, b = breaks[:-1, None], breaks[1:, None]
    nodes = 0.5 * (b - a) * xg + 0.5 * (a + b)
    weights = 0.5 * (b - a) * wg
    return nodes.ravel(), weights.ravel()


def kernel_integral_error(A: SummabilityMatrix, f: PeriodicFunction, n: int, x: float,
                          subdivide: int = 4, order: int = 16) -> float:
    """(2/pi) * integral_0^pi psi_x(t) K_n(t) dt, the error T_{n,A} f(x) - f(x).

    Panels break at pi/v, v = 1..n+1, each split into ``subdivide`` pieces.
    """
    v = np.arange(1, n + 2)
    breaks = np.concatenate([[0.0], (np.pi / v)[::-1]])
    fine = np.concatenate([np.linspace(lo, hi, subdivide, endpoint=False)
                           for lo, hi in zip(breaks[:-1], breaks[1:])] + [[np.pi]])
    t, w = _gauss_panels(fine, order)
    return float((2.0 / np.pi) * np.sum(w * psi(f, x, t) * kernel(A, n, t)))
