"""Moduli of continuity, mediate functions and the integral-ratio checks built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, PreconditionError
from .fourier_core import TWO_PI, PeriodicFunction

EPS = 1e-8


# -- quadrature ----------------------------------------------------------------

_GL = np.polynomial.legendre.leggauss(10)


def geometric_integral(g: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                       rtol: float = 1e-8, knots: Sequence[float] = (),
                       max_level: int = 8) -> float:
    """Integral of ``g`` over [a, b], 0 < a < b, on geometrically graded panels.

    Panel ratio starts at 2 and is refined (each panel halved in log scale)
    until two successive estimates agree to ``rtol``.  ``knots`` inside
    (a, b) are always panel breaks, which keeps piecewise-smooth
    integrands (tabulated profiles) exact up to the Gauss order.
    """
    if not 0 < a <= b:
        raise DomainError(f"need 0 < a <= b, got a={a}, b={b}")
    if a == b:
        return 0.0
    la, lb = np.log(a), np.log(b)
    base = max(1, int(np.ceil((lb - la) / np.log(2.0))))
    inner = np.asarray([k for k in knots if a < k < b], dtype=float)
    xg, wg = _GL
    prev = None
    for level in range(max_level):
        grid = np.exp(np.linspace(la, lb, base * 2 ** level + 1))
        breaks = np.unique(np.concatenate([grid, inner]))
        lo, hi = breaks[:-1, None], breaks[1:, None]
        nodes = 0.5 * (hi - lo) * xg + 0.5 * (hi + lo)
        val = float(np.sum(0.5 * (hi - lo) * wg * g(nodes)))
        if prev is not None and abs(val - prev) <= rtol * abs(val) + 1e-300:
            return val
        prev = val
    return val


def _power_tail(g: Callable, eps: float) -> float:
    """Integral of ``g`` over (0, eps] assuming g(u) ~ c u^gamma near zero."""
    g1, g2 = float(g(np.array(eps))), float(g(np.array(0.5 * eps)))
    if g1 == 0.0:
        return 0.0
    if g1 * g2 <= 0:
        return eps * g1
    gamma = np.log(g1 / g2) / np.log(2.0)
    if gamma <= -1:
        return float("inf")
    return eps * g1 / (gamma + 1.0)


def integral_from_zero(g: Callable, b: float, eps: float = EPS, knots=()) -> float:
    """Integral of ``g`` over (0, b]: quadrature on [eps, b] plus a tail estimate.

    The tail is quadrature on [eps^2, eps] plus a power-law remainder, which
    keeps logarithmic singularities accurate as well.
    """
    if b <= eps:
        return _power_tail(g, b)
    tail = geometric_integral(g, eps * eps, eps) + _power_tail(g, eps * eps)
    return geometric_integral(g, eps, b, knots=knots) + tail


# -- modulus of continuity --------------------------------------------------------

def modulus_of_continuity(f: PeriodicFunction, delta: float, grid_size: int = 1024,
                          n_shifts: int = 33) -> float:
    """Grid estimate of sup_{|h| <= delta} |f(x + h) - f(x)|; a lower bound.

    The shift set is ``n_shifts`` equispaced values in [-delta, delta] together
    with every multiple of the x-grid spacing inside that range. Lattice shifts
    are exact rolls of the sampled values, and they make the estimate exactly
    monotone in delta whenever delta itself sits on the lattice.
    """
    if grid_size < 1024:
        raise PreconditionError("grid_size must be >= 1024")
    if delta <= 0:
        return 0.0
    step = TWO_PI / grid_size
    x = np.arange(grid_size) * step
    fx = f(x)
    best = max(np.max(np.abs(f(x + hh) - fx)) for hh in np.linspace(-delta, delta, n_shifts))
    # |f(x + h) - f(x)| over the grid is symmetric in h, so k >= 1 suffices
    kmax = min(int(np.floor(delta / step * (1 + 1e-12))), grid_size // 2)
    for k in range(1, kmax + 1):
        best = max(best, np.max(np.abs(np.roll(fx, -k) - fx)))
    return float(best)


@dataclass(frozen=True)
class ModulusProfile:
    """A modulus of continuity, either ``delta**alpha`` or a monotone table.

    Tables are interpolated linearly in log-log coordinates (exact for power
    laws) and extended below ``delta_min`` with the slope of the first
    table interval.
    """

    kind: str
    alpha: float | None = None
    deltas: np.ndarray | None = field(default=None, repr=False)
    values: np.ndarray | None = field(default=None, repr=False)
    label: str = ""

    @classmethod
    def power(cls, alpha: float) -> "ModulusProfile":
        if not 0 < alpha <= 1:
            raise PreconditionError("alpha must lie in (0, 1]")
        return cls("closed_form_alpha", alpha=float(alpha), label=f"delta^{alpha:g}")

    @classmethod
    def tabulated(cls, deltas, values, label: str = "tabulated") -> "ModulusProfile":
        d = np.asarray(deltas, dtype=float)
        order = np.argsort(d)
        d = d[order]
        if d.size < 2 or d[0] <= 0 or not np.all(np.diff(d) > 0):
            raise PreconditionError("need at least two positive, distinct deltas")
        # running max restores the monotonicity grid estimates can lose
        v = np.maximum.accumulate(np.asarray(values, dtype=float)[order].clip(0))
        return cls("tabulated", deltas=d, values=v, label=label)

    @classmethod
    def from_function(cls, f: PeriodicFunction, delta_min: float = 1e-4, num: int = 65,
                      grid_size: int = 4096) -> "ModulusProfile":
        d = np.geomspace(delta_min, np.pi, num)
        return cls.tabulated(d, [modulus_of_continuity(f, x, grid_size) for x in d],
                             label=f"omega({f.label})")

    @property
    def delta_min(self) -> float:
        return float(self.deltas[0]) if self.kind == "tabulated" else 0.0

    @property
    def knots(self) -> np.ndarray:
        return self.deltas if self.kind == "tabulated" else np.empty(0)

    def __call__(self, delta):
        d = np.asarray(delta, dtype=float)
        if self.kind == "closed_form_alpha":
            return d ** self.alpha
        dt, vt = self.deltas, self.values
        if np.all(vt > 0):
            ld = np.log(np.clip(d, 1e-300, None))
            out = np.exp(np.interp(ld, np.log(dt), np.log(vt)))
            slope = np.log(vt[1] / vt[0]) / np.log(dt[1] / dt[0]) if dt.size > 1 else 1.0
            below = d < dt[0]
            out = np.where(below, vt[0] * (np.clip(d, 0, None) / dt[0]) ** slope, out)
        else:
            out = np.interp(d, np.concatenate([[0.0], dt]), np.concatenate([[0.0], vt]))
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class MediateFunction:
    """Nonnegative H on (0, pi] together with, when known, its integral from 0."""

    kind: str
    evaluator: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    integral: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)
    label: str = "H"

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(u <= 0) or np.any(u > np.pi * (1 + 1e-15)):
            raise DomainError("H is defined on (0, pi] only")
        out = self.evaluator(u)
        return out if np.ndim(out) else float(out)

    def scaled(self, c: float) -> "MediateFunction":
        integ = None if self.integral is None else (lambda t, I=self.integral: c * I(t))
        return MediateFunction(self.kind, lambda u, e=self.evaluator: c * e(u), integ,
                               f"{c:g}*{self.label}")

    @classmethod
    def power(cls, alpha: float) -> "MediateFunction":
        """u^(alpha-1) for alpha < 1, log(pi/u) for alpha = 1 (the Lip(alpha) choice)."""
        if alpha == 1:
            return cls("closed_form_alpha", lambda u: np.log(np.pi / u),
                       lambda t: t * np.log(np.pi / t) + t, "log(pi/u)")
        return cls("closed_form_alpha", lambda u: u ** (alpha - 1.0),
                   lambda t: t ** alpha / alpha, f"u^{alpha - 1:g}")

    @classmethod
    def constant(cls, c: float) -> "MediateFunction":
        return cls("constant", lambda u: np.full(np.shape(u), float(c)), lambda t: c * t,
                   f"{c:g}")


def _omega_over_t2(w: ModulusProfile):
    return lambda t: w(t) / t ** 2


def canonical_mediate(w: ModulusProfile) -> MediateFunction:
    """H(u) = integral_u^pi t^-2 omega(t) dt."""
    if w.kind == "closed_form_alpha":
        a = w.alpha
        if a == 1:
            return MediateFunction("closed_form_alpha", lambda u: np.log(np.pi / u),
                                   lambda t: t * np.log(np.pi / t) + t, "log(pi/u)")
        c = np.pi ** (a - 1.0)
        return MediateFunction(
            "closed_form_alpha",
            lambda u: (u ** (a - 1.0) - c) / (1.0 - a),
            lambda t: (t ** a / a - c * t) / (1.0 - a),
            f"canonical(delta^{a:g})",
        )
    g = _omega_over_t2(w)

    def H(u):
        u = np.asarray(u, dtype=float)
        vals = [geometric_integral(g, x, np.pi, knots=w.knots) for x in np.atleast_1d(u).ravel()]
        return np.asarray(vals).reshape(u.shape)

    return MediateFunction("quadrature_backed", H, None, f"canonical({w.label})")


# -- ratio checks ---------------------------------------------------------------

@dataclass
class RatioCheck:
    """Ratios numerator/denominator on a grid; ``failures`` lists points with x/0."""

    name: str
    grid: np.ndarray
    ratios: np.ndarray
    failures: list[float]
    # the asymptotic limit sits at grid -> 0 (False: grid -> infinity)
    limit_at_zero: bool = True

    @property
    def max_ratio(self) -> float:
        finite = self.ratios[np.isfinite(self.ratios)]
        return float(finite.max()) if finite.size else float("nan")

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def trend(self) -> str:
        """``bounded`` or ``increasing`` as the grid point tends to zero."""
        order = np.argsort(self.grid)
        r = self.ratios[order[::-1] if self.limit_at_zero else order]
        r = r[np.isfinite(r)]
        if r.size < 4:
            return "bounded"
        half = r.size // 2
        return "bounded" if r[half:].max() <= 1.1 * r[:half].max() + 1e-12 else "increasing"

    def __float__(self):
        return self.max_ratio


def _ratio_check(name, grid, num, den, limit_at_zero=True) -> RatioCheck:
    num, den = np.asarray(num, float), np.asarray(den, float)
    ratios = np.full(num.shape, np.nan)
    pos = den > 0
    ratios[pos] = num[pos] / den[pos]
    ratios[~pos & (num == 0)] = 0.0
    failures = [float(x) for x in np.asarray(grid)[~pos & (num != 0)]]
    return RatioCheck(name, np.asarray(grid, float), ratios, failures, limit_at_zero)


def _check_grid(grid, upper=np.pi):
    g = np.asarray(grid, dtype=float)
    if np.any(g <= 0) or np.any(g > upper * (1 + 1e-15)):
        raise DomainError("grid points must lie in (0, pi]")
    return g


def check_condition_13(w: ModulusProfile, H: MediateFunction, u_grid) -> RatioCheck:
    """max_u integral_u^pi t^-2 omega(t) dt / H(u); the numerator is always quadrature."""
    u = _check_grid(u_grid)
    g = _omega_over_t2(w)
    num = [geometric_integral(g, x, np.pi, knots=w.knots) for x in u]
    return _ratio_check("condition13", u, num, H(u))


def _integral_of_H(H: MediateFunction, t: np.ndarray) -> np.ndarray:
    if H.integral is not None:
        return np.asarray(H.integral(t), dtype=float)
    return np.array([integral_from_zero(H.evaluator, x) for x in t])


def check_condition_14(H: MediateFunction, t_grid, closed_form: bool = True) -> RatioCheck:
    """max_t integral_0^t H(u) du / (t H(t)).

    With ``closed_form=False`` (or when H has no known integral) the integral
    is quadrature from 1e-8 plus a power-law estimate of the piece below it.
    """
    t = _check_grid(t_grid)
    if closed_form:
        num = _integral_of_H(H, t)
    else:
        num = np.array([integral_from_zero(H.evaluator, x) for x in t])
    return _ratio_check("condition14", t, num, t * H(t))


def _integral_omega_over_t(w: ModulusProfile, v: np.ndarray) -> np.ndarray:
    if w.kind == "closed_form_alpha":
        return v ** w.alpha / w.alpha
    g = lambda t: w(t) / t
    return np.array([integral_from_zero(g, x, knots=w.knots) for x in v])


def _integral_omega(w: ModulusProfile, v: np.ndarray) -> np.ndarray:
    if w.kind == "closed_form_alpha":
        return v ** (w.alpha + 1.0) / (w.alpha + 1.0)
    return np.array([integral_from_zero(w, x, knots=w.knots) for x in v])


def lemma7_ratio(w: ModulusProfile, H: MediateFunction, v_grid) -> RatioCheck:
    """max_v integral_0^v omega(t)/t dt / (v H(v))."""
    v = _check_grid(v_grid)
    return _ratio_check("lemma7", v, _integral_omega_over_t(w, v), v * H(v))


def lemma6_ratio(w: ModulusProfile, H: MediateFunction, m_list) -> RatioCheck:
    """max_m integral_0^{pi/m} omega(t) dt / (m^-2 H(pi/m))."""
    m = np.asarray(m_list, dtype=float)
    if np.any(m < 1):
        raise DomainError("m must be >= 1")
    v = np.pi / m
    return _ratio_check("lemma6", m, _integral_omega(w, v), H(v) / m ** 2,
                        limit_at_zero=False)
