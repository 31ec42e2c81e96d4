"""Row-sequence conditions on summability matrices and their measured constants.

Every O(a_{n,m}) condition is reported as a best constant: for each row the
supremum over m of LHS(m) / a_{n,m}, then the maximum over rows.  Whether a
condition "holds" for a finite matrix is a convention (see
:func:`uniform_verdict`); the constants themselves are exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateError
from .summability import SummabilityMatrix

DEFAULT_THRESHOLD = 100.0


class ConditionId(str, enum.Enum):
    ROW_STOCHASTIC = "RowStochastic"
    NON_DECREASING = "NonDecreasing"
    NON_INCREASING = "NonIncreasing"
    HBVS = "HBVS"
    RBVS = "RBVS"
    BETA_HEAD = "BetaHead"
    BETA_REST = "BetaRest"


@dataclass
class ConditionReport:
    condition_id: ConditionId
    beta: float
    per_row_constant: list[float]
    witness: tuple[int, int] | None
    overall_constant: float
    holds_uniformly: bool
    # (n, m) pairs with a_{n,m} = 0 but a nonzero left-hand side
    degenerate: list[tuple[int, int]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.holds_uniformly


# smallest n entering the doubling comparison; earlier rows are transient
DOUBLING_START = 8


def doubling_ok(values, slack: float = 1.1, offset: float = 0.1,
                start: int = DOUBLING_START) -> bool:
    """True if ``values[2n] <= slack * values[n] + offset`` for all n >= start.

    ``values`` is either a sequence indexed by n or a mapping n -> value; in
    the latter case only pairs present in the mapping are compared.
    """
    if not isinstance(values, dict):
        values = dict(enumerate(np.asarray(values, dtype=float).tolist()))
    return all(values[2 * n] <= slack * v + offset
               for n, v in values.items() if n >= start and 2 * n in values)


def uniform_verdict(per_row, threshold: float = DEFAULT_THRESHOLD) -> bool:
    """Constant below ``threshold`` and no growth over the last three doublings.

    Divergence shows at the largest scales; restricting the doubling test to
    n >= N/8 keeps slowly converging sequences from being flagged.
    """
    per_row = np.asarray(per_row, dtype=float)
    start = max(DOUBLING_START, (per_row.size - 1) // 8)
    return bool(per_row.max(initial=0.0) <= threshold and doubling_ok(per_row, start=start))


# -- row-level kernels ------------------------------------------------------

def variation_terms(row, beta: float = 0.0) -> np.ndarray:
    """Terms (k+1)^beta |a_k/(k+1)^beta - a_{k+1}/(k+2)^beta|, k = 0..n, a_{n+1} = 0."""
    a = np.asarray(row, dtype=float)
    nxt = np.append(a[1:], 0.0)
    k1 = np.arange(1, a.size + 1, dtype=float)
    w = k1 ** beta
    return w * np.abs(a / w - nxt / (k1 + 1.0) ** beta)


def plain_differences(row) -> np.ndarray:
    """|a_k - a_{k+1}|, k = 0..n, with a_{n+1} = 0."""
    a = np.asarray(row, dtype=float)
    return np.abs(np.diff(a, append=0.0))


def _ratios(lhs: np.ndarray, den: np.ndarray):
    """LHS/den with 0/0 -> 0; returns ratios and indices of x/0, x > 0."""
    ratio = np.zeros_like(lhs)
    pos = den > 0
    with np.errstate(over="ignore"):  # tiny a_m: an infinite ratio is the honest answer
        ratio[pos] = lhs[pos] / den[pos]
    bad = np.flatnonzero(~pos & (lhs > 0))
    return ratio, bad


def head_ratios(row, terms: np.ndarray):
    """Ratios sum_{k<m} terms_k / a_m for m = 1..n (index 0 is the vacuous m = 0)."""
    a = np.asarray(row, dtype=float)
    lhs = np.concatenate([[0.0], np.cumsum(terms[:-1])])
    return _ratios(lhs, a)


def rest_ratios(row, terms: np.ndarray):
    """Ratios sum_{k>=m} terms_k / a_m for m = 0..n."""
    a = np.asarray(row, dtype=float)
    lhs = np.cumsum(terms[::-1])[::-1]
    return _ratios(lhs, a)


# -- matrix-level checks ------------------------------------------------------

def _assemble(cid, beta, A, per_row_fn, threshold) -> ConditionReport:
    per_row, degenerate = [], []
    best, witness = -1.0, None
    for n, row in enumerate(A.rows):
        if not np.any(row):
            raise DegenerateError(f"row {n} of {A.label} is identically zero")
        ratio, bad = per_row_fn(row)
        degenerate.extend((n, int(m)) for m in bad)
        m = int(np.argmax(ratio))
        per_row.append(float(ratio[m]))
        if ratio[m] > best:
            best, witness = float(ratio[m]), (n, m)
    holds = not degenerate and uniform_verdict(per_row, threshold)
    if degenerate:
        witness = degenerate[0]
    return ConditionReport(cid, float(beta), per_row, witness, max(best, 0.0), holds, degenerate)


def hbvs_constant(A: SummabilityMatrix, threshold: float = DEFAULT_THRESHOLD) -> ConditionReport:
    """sum_{k<m} |a_{n,k} - a_{n,k+1}| <= K a_{n,m}; m = 0 is vacuous."""
    return _assemble(ConditionId.HBVS, 0.0, A,
                     lambda r: head_ratios(r, plain_differences(r)), threshold)


def rbvs_constant(A: SummabilityMatrix, threshold: float = DEFAULT_THRESHOLD) -> ConditionReport:
    """sum_{k>=m} |a_{n,k} - a_{n,k+1}| <= K a_{n,m}, truncated exactly at k = n."""
    return _assemble(ConditionId.RBVS, 0.0, A,
                     lambda r: rest_ratios(r, plain_differences(r)), threshold)


def beta_head_constant(A: SummabilityMatrix, beta: float,
                       threshold: float = DEFAULT_THRESHOLD) -> ConditionReport:
    if beta < 0:
        raise ValueError("beta must be >= 0")
    return _assemble(ConditionId.BETA_HEAD, beta, A,
                     lambda r: head_ratios(r, variation_terms(r, beta)), threshold)


def beta_rest_constant(A: SummabilityMatrix, beta: float,
                       threshold: float = DEFAULT_THRESHOLD) -> ConditionReport:
    if beta < 0:
        raise ValueError("beta must be >= 0")
    return _assemble(ConditionId.BETA_REST, beta, A,
                     lambda r: rest_ratios(r, variation_terms(r, beta)), threshold)


def check_row_stochastic(A: SummabilityMatrix, tol: float = 1e-12) -> ConditionReport:
    """Nonnegative entries summing to one in every row.

    Per-row value is the deviation ``max(|sum - 1|, -min entry)``.
    """
    dev = [max(abs(float(r.sum()) - 1.0), float(-r.min()), 0.0) for r in A.rows]
    n = int(np.argmax(dev))
    return ConditionReport(ConditionId.ROW_STOCHASTIC, 0.0, dev, (n, int(np.argmin(A.row(n)))),
                           dev[n], dev[n] <= tol)


def check_monotone(A: SummabilityMatrix, direction: str) -> ConditionReport:
    """Rows nondecreasing or nonincreasing in k; the witness is the first violation."""
    if direction not in ("nondecreasing", "nonincreasing"):
        raise ValueError(f"unknown direction {direction!r}")
    sign = 1.0 if direction == "nondecreasing" else -1.0
    cid = ConditionId.NON_DECREASING if sign > 0 else ConditionId.NON_INCREASING
    per_row, witness = [], None
    for n, r in enumerate(A.rows):
        drop = -sign * np.diff(r)
        per_row.append(float(drop.max(initial=0.0)))
        if witness is None and np.any(drop > 0):
            witness = (n, int(np.argmax(drop > 0)))
    return ConditionReport(cid, 0.0, per_row, witness, max(per_row), witness is None)


def derived_matrix(A: SummabilityMatrix, beta: float) -> SummabilityMatrix:
    """Rows ``(k+1)^(-beta) a_{n,k}``."""
    return SummabilityMatrix([r / np.arange(1, r.size + 1) ** beta for r in A.rows],
                             f"{A.label}/(k+1)^{beta:g}")


@dataclass
class ImplicationClaim:
    claim: str
    verified: bool
    antecedent: ConditionReport
    consequent: ConditionReport
    # observed max over rows of consequent/antecedent row constants
    factor: float

    def __iter__(self):
        yield self.claim
        yield self.verified


def _row_factor(num: ConditionReport, den: ConditionReport) -> float:
    a = np.asarray(num.per_row_constant)
    b = np.asarray(den.per_row_constant)
    both_zero = (a == 0) & (b == 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.where(both_zero, 0.0, a / b)
    return float(np.nanmax(q, initial=0.0))


def implication_audit(A: SummabilityMatrix, beta: float) -> list[ImplicationClaim]:
    """Audit the two implications linking the weighted conditions to HBVS/RBVS.

    1. {(k+1)^-beta a_{n,k}} in HBVS  =>  head condition with weight beta.
    2. rest condition with weight beta  =>  {(k+1)^-beta a_{n,k}} in RBVS.

    Both hold row by row with constant 1, which is what ``verified`` checks
    whenever the antecedent holds; a failing antecedent verifies vacuously.
    """
    D = derived_matrix(A, beta)
    out = []
    for claim, ante, cons in (
        ("derived HBVS => weighted head", hbvs_constant(D), beta_head_constant(A, beta)),
        ("weighted rest => derived RBVS", beta_rest_constant(A, beta), rbvs_constant(D)),
    ):
        factor = _row_factor(cons, ante)
        if ante.holds_uniformly:
            ok = cons.overall_constant <= ante.overall_constant * (1 + 1e-12) + 1e-15
        else:
            ok = True
        out.append(ImplicationClaim(claim, ok, ante, cons, factor))
    return out
