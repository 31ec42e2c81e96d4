"""Numerical checks of the kernel bounds and the sup-norm approximation theorems.

Bounds are evaluated with every implicit O-constant set to 1, so what is
tested is the boundedness of ``sup_error / bound`` as n grows.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import stats

from .conditions import (
    beta_head_constant,
    beta_rest_constant,
    check_row_stochastic,
    doubling_ok,
)
from .errors import DegenerateError, DomainError, PreconditionError
from .fourier_core import PeriodicFunction, TrigSeries, dirichlet_kernel
from .moduli import (
    MediateFunction,
    ModulusProfile,
    check_condition_13,
    check_condition_14,
    modulus_of_continuity,
)
from .summability import (
    SummabilityMatrix,
    WeightSequence,
    cumulative_weights,
    kernel,
    riesz_matrix,
    sup_error,
)

THEOREMS = ("T10", "T11a", "T11b", "T12", "T13")

# hypotheses per theorem: which weighted condition, and whether the mediate
# domination and integrability conditions are required
_HYPOTHESES = {
    "T10": ("head", True, True),
    "T11a": ("head", True, False),
    "T11b": ("head", True, True),
    "T12": ("rest", False, False),
    "T13": ("rest", True, True),
}

# t-grid near zero on which the mediate conditions are audited
_MEDIATE_GRID = np.geomspace(1e-4, 1.0, 25)


@dataclass
class ExperimentRow:
    n: int
    sup_error: float
    bound: float
    ratio: float


@dataclass
class ExperimentReport:
    experiment_id: str
    rows: list[ExperimentRow]
    fitted_slope: float
    slope_stderr: float
    metadata: dict = field(default_factory=dict)

    @property
    def ratios(self) -> np.ndarray:
        return np.array([r.ratio for r in self.rows])

    @property
    def errors(self) -> np.ndarray:
        return np.array([r.sup_error for r in self.rows])

    @property
    def n_values(self) -> np.ndarray:
        return np.array([r.n for r in self.rows])


@dataclass
class KernelBoundReport:
    beta: float
    max_normalized: float
    worst_case: tuple[int, float]
    # max over t, per tested index (m for lemma8_check, n for lemma9_*)
    per_index: dict[int, float] = field(default_factory=dict)
    hypothesis_ok: bool = True
    label: str = ""

    def doubling_ok(self) -> bool:
        """Doubling test over the index pairs (n, 2n) present, n >= 8."""
        return doubling_ok(self.per_index)


def default_t_grid(size: int = 2048) -> np.ndarray:
    """``size`` equally spaced points in (0, pi], right endpoint included."""
    return np.pi * np.arange(1, size + 1) / size


# -- kernel bounds ------------------------------------------------------------------

def lemma8_check(beta: float, m_list: Sequence[int], t_grid=None) -> KernelBoundReport:
    """max over (m, t) of |sum_{j<=m} (j+1)^beta D_j(t)| t^2 / (pi^2 (m+1)^beta)."""
    if beta < 0:
        raise PreconditionError("beta must be >= 0")
    t = default_t_grid() if t_grid is None else np.asarray(t_grid, dtype=float)
    m_list = sorted(set(int(m) for m in m_list))
    M = m_list[-1]
    per, worst, best = {}, (m_list[0], float(t[0])), -1.0
    acc = np.zeros_like(t)
    want = set(m_list)
    for j in range(M + 1):
        acc += (j + 1.0) ** beta * dirichlet_kernel(j, t)
        if j in want:
            norm = np.abs(acc) * t ** 2 / (np.pi ** 2 * (j + 1.0) ** beta)
            i = int(np.argmax(norm))
            per[j] = float(norm[i])
            if norm[i] > best:
                best, worst = float(norm[i]), (j, float(t[i]))
    return KernelBoundReport(float(beta), best, worst, per, True, "lemma8")


def _kernel_report(A, beta, n_list, t_grid, normalizer, hypothesis_ok, label):
    t = default_t_grid() if t_grid is None else np.asarray(t_grid, dtype=float)
    per, worst, best = {}, None, -1.0
    for n in n_list:
        den = normalizer(n, t)
        if np.any(den <= 0):
            raise DegenerateError(f"zero normalizer in row {n} of {A.label}")
        q = np.abs(kernel(A, n, t)) / den
        i = int(np.argmax(q))
        per[int(n)] = float(q[i])
        if q[i] > best:
            best, worst = float(q[i]), (int(n), float(t[i]))
    return KernelBoundReport(float(beta), best, worst, per, hypothesis_ok, label)


def lemma9_rest_check(A: SummabilityMatrix, beta: float, n_list, t_grid=None) -> KernelBoundReport:
    """max over (n, t) of |K_n(t)| t / A_{n,tau}, tau = floor(pi/t)."""
    ok = beta_rest_constant(A, beta).holds_uniformly

    def normalizer(n, t):
        heads = cumulative_weights(A, n).heads
        tau = np.minimum(np.floor(np.pi / t).astype(int), n)
        return heads[tau] / t

    return _kernel_report(A, beta, n_list, t_grid, normalizer, ok, f"lemma9-rest:{A.label}")


def lemma9_head_check(A: SummabilityMatrix, beta: float, n_list, t_grid=None) -> KernelBoundReport:
    """max over (n, t) of |K_n(t)| t^2 / a_{n,n}."""
    ok = beta_head_constant(A, beta).holds_uniformly

    def normalizer(n, t):
        return np.full(t.shape, A.row(n)[-1]) / t ** 2

    return _kernel_report(A, beta, n_list, t_grid, normalizer, ok, f"lemma9-head:{A.label}")


# -- theorem bounds -----------------------------------------------------------------

def _mediate_at(H: MediateFunction, u: float) -> float:
    if not 0 < u <= np.pi:
        raise DomainError(f"mediate function evaluated at {u}, outside (0, pi]")
    return float(H(u))


def theorem_bound(theorem: str, A: SummabilityMatrix, w: ModulusProfile, H: MediateFunction,
                  n: int) -> float:
    """The right-hand side of the chosen estimate with implicit constant 1."""
    row = A.row(n)
    ann = float(row[-1])
    if theorem == "T10":
        if ann <= 0:
            raise DegenerateError(f"a_(n,n) = 0 at n = {n}")
        return ann * _mediate_at(H, ann)
    if theorem == "T11a":
        u = np.pi / (n + 1)
        return float(w(u)) + ann * _mediate_at(H, u)
    if theorem == "T11b":
        if ann <= 0:
            raise DegenerateError(f"a_(n,n) = 0 at n = {n}")
        return ann * _mediate_at(H, np.pi / (n + 1))
    if theorem == "T12":
        v = np.arange(1, n + 1)
        heads = np.cumsum(row)[v]
        return float(w(np.pi / (n + 1)) + np.sum(w(np.pi / v) / v * heads))
    if theorem == "T13":
        a0 = float(row[0])
        if a0 <= 0:
            raise DegenerateError(f"a_(n,0) = 0 at n = {n}")
        return a0 * _mediate_at(H, a0)
    raise ValueError(f"unknown theorem {theorem!r}; expected one of {THEOREMS}")


def check_hypotheses(theorem: str, A: SummabilityMatrix, beta: float,
                     w: ModulusProfile | None = None, H: MediateFunction | None = None) -> dict:
    """Verdicts for each hypothesis of ``theorem``; key ``all`` combines them."""
    kind, need13, need14 = _HYPOTHESES[theorem]
    out = {"row_stochastic": check_row_stochastic(A, 1e-12).holds_uniformly}
    rep = beta_head_constant(A, beta) if kind == "head" else beta_rest_constant(A, beta)
    out[f"beta_{kind}"] = rep.holds_uniformly
    if need13 and w is not None and H is not None:
        c13 = check_condition_13(w, H, _MEDIATE_GRID)
        out["condition13"] = c13.ok and c13.trend == "bounded"
    if need14 and H is not None:
        c14 = check_condition_14(H, _MEDIATE_GRID)
        out["condition14"] = c14.ok and c14.trend == "bounded"
    out["all"] = all(out.values())
    return out


def fit_rate(n_values, errors, skip: int = 2) -> tuple[float, float]:
    """OLS slope of log(error) on log(n), dropping the ``skip`` smallest n."""
    n = np.asarray(n_values, dtype=float)[skip:]
    e = np.asarray(errors, dtype=float)[skip:]
    keep = e > 0
    if keep.sum() < 3:
        return math.nan, math.nan
    res = stats.linregress(np.log(n[keep]), np.log(e[keep]))
    return float(res.slope), float(res.stderr)


def run_experiment(theorem: str, A: SummabilityMatrix, f: PeriodicFunction, s: TrigSeries,
                   w: ModulusProfile, H: MediateFunction, n_list: Sequence[int],
                   grid_size: int = 4096, beta: float = 0.0,
                   experiment_id: str | None = None) -> ExperimentReport:
    n_list = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise PreconditionError("n_list must be strictly increasing")
    hyp = check_hypotheses(theorem, A, beta, w, H)
    if not hyp["all"]:
        failed = sorted(k for k, v in hyp.items() if k != "all" and not v)
        warnings.warn(f"{theorem} hypotheses unverified for {A.label}: {failed}", stacklevel=2)
    rows = []
    for n in n_list:
        err = sup_error(A, f, s, n, grid_size)
        bound = theorem_bound(theorem, A, w, H, n)
        if not bound > 0:
            raise DegenerateError(f"{theorem} bound vanishes at n = {n}")
        rows.append(ExperimentRow(n, err, bound, err / bound))
    exact = all(r.sup_error <= 1e-12 for r in rows)
    slope, stderr = fit_rate(n_list, [r.sup_error for r in rows])
    meta = {
        "theorem": theorem,
        "matrix": A.label,
        "function": f.label,
        "omega": w.label,
        "mediate": H.label,
        "beta": float(beta),
        "grid_size": int(grid_size),
        "hypotheses": {k: bool(v) for k, v in hyp.items()},
        "status": "exact" if exact else ("ok" if hyp["all"] else "hypotheses-unverified"),
    }
    return ExperimentReport(experiment_id or f"{theorem}:{A.label}:{f.label}", rows,
                            slope, stderr, meta)


def corollary43_table(p: WeightSequence, alpha: float, f: PeriodicFunction, s: TrigSeries,
                      n_list: Sequence[int], beta: float = 0.0,
                      grid_size: int = 4096) -> ExperimentReport:
    """Riesz means against (p_n/P_n)^alpha, or (p_n/P_n) log(pi P_n/p_n) when alpha = 1."""
    n_list = [int(n) for n in n_list]
    A = riesz_matrix(p, max(n_list))
    hyp = {"row_stochastic": check_row_stochastic(A).holds_uniformly,
           "beta_head": beta_head_constant(A, beta).holds_uniformly}
    if not all(hyp.values()):
        warnings.warn(f"Riesz matrix {A.label} fails the weighted head condition", stacklevel=2)
    P = p.cumulative
    rows = []
    for n in n_list:
        q = p.p[n] / P[n]
        if q <= 0:
            raise DegenerateError(f"p_n = 0 at n = {n}")
        bound = q ** alpha if alpha < 1 else q * math.log(math.pi / q)
        err = sup_error(A, f, s, n, grid_size)
        rows.append(ExperimentRow(n, err, bound, err / bound))
    slope, stderr = fit_rate(n_list, [r.sup_error for r in rows])
    meta = {"table": "riesz-rate", "matrix": A.label, "function": f.label, "alpha": float(alpha),
            "beta": float(beta), "grid_size": int(grid_size),
            "hypotheses": hyp, "status": "ok" if all(hyp.values()) else "hypotheses-unverified"}
    return ExperimentReport(f"rate:{A.label}:{f.label}", rows, slope, stderr, meta)


# -- exemplar corpus ----------------------------------------------------------------

@dataclass(frozen=True)
class Exemplar:
    name: str
    function: PeriodicFunction
    series: TrigSeries
    profile: ModulusProfile
    alpha: float | None = None

    def __iter__(self):
        yield self.function
        yield self.series
        yield self.profile


def _triangle(x):
    y = np.mod(x + np.pi, 2 * np.pi) - np.pi
    return np.abs(y)


def triangle_series(N: int) -> TrigSeries:
    """Exact coefficients of |x| on [-pi, pi]: pi/2 - (4/pi) sum cos((2k+1)x)/(2k+1)^2."""
    j = np.arange(1, N + 1)
    c = np.where(j % 2 == 1, -4.0 / (np.pi * j.astype(float) ** 2), 0.0)
    return TrigSeries(np.pi, c, np.zeros(N))


def weierstrass(alpha: float, octaves: int = 12) -> tuple[PeriodicFunction, TrigSeries]:
    """sum_{k=0}^{octaves} 2^(-k alpha) cos(2^k x), a trigonometric polynomial."""
    k = np.arange(octaves + 1)
    freq, amp = 2 ** k, 2.0 ** (-k * alpha)

    def f(x):
        x = np.asarray(x, dtype=float)
        return np.tensordot(amp, np.cos(np.multiply.outer(freq, x)), axes=1)

    series = TrigSeries.from_dict(int(freq[-1]), cos=dict(zip(freq.tolist(), amp)))
    return PeriodicFunction(f, f"weierstrass-{alpha:g}"), series


def lipschitz_audit(f: PeriodicFunction, alpha: float, deltas=None,
                    grid_size: int = 1 << 14) -> tuple[float, float]:
    """(min, max) of omega(delta)/delta^alpha over ``deltas``, default [1e-3, 1]."""
    d = np.geomspace(1e-3, 1.0, 13) if deltas is None else np.asarray(deltas, dtype=float)
    q = np.array([modulus_of_continuity(f, x, grid_size) for x in d]) / d ** alpha
    return float(q.min()), float(q.max())


def exemplar_functions(degree: int = 4096) -> list[Exemplar]:
    """Test corpus: constant, cos x, triangle wave (Lip 1), Weierstrass-type (Lip alpha).

    ``degree`` bounds the stored coefficients of the non-polynomial triangle
    wave; means of order n only read coefficients up to n.
    """
    d = np.geomspace(1e-4, np.pi, 257)
    out = [
        Exemplar("constant", PeriodicFunction(lambda x: np.ones_like(x), "constant"),
                 TrigSeries(2.0, np.zeros(degree), np.zeros(degree)),
                 ModulusProfile.tabulated(d, np.zeros_like(d), "zero")),
        Exemplar("cos", PeriodicFunction(np.cos, "cos"),
                 TrigSeries.from_dict(degree, cos={1: 1.0}),
                 ModulusProfile.tabulated(d, 2 * np.sin(d / 2), "2 sin(delta/2)")),
        Exemplar("triangle", PeriodicFunction(_triangle, "triangle"), triangle_series(degree),
                 ModulusProfile.power(1.0), 1.0),
    ]
    for a in (0.25, 0.5, 0.75):
        f, s = weierstrass(a)
        out.append(Exemplar(f.label, f, s, ModulusProfile.power(a), a))
    return out


def exemplar(name: str, degree: int = 4096) -> Exemplar:
    for e in exemplar_functions(degree):
        if e.name == name:
            return e
    names = [e.name for e in exemplar_functions(8)]
    raise KeyError(f"unknown exemplar {name!r}; known: {names}")

