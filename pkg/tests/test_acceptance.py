"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the collected verdicts are
repeated in the "acceptance criteria" section of the terminal summary.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from summlab import (
    MediateFunction,
    ModulusProfile,
    SummabilityMatrix,
    TrigSeries,
    WeightSequence,
    beta_head_constant,
    beta_rest_constant,
    canonical_mediate,
    cesaro_matrix,
    check_condition_14,
    check_monotone,
    hbvs_constant,
    norlund_matrix,
    rbvs_constant,
    riesz_matrix,
    sup_error,
    transform,
)
from summlab.experiments import (
    exemplar,
    lemma8_check,
    lemma9_head_check,
    lemma9_rest_check,
    lipschitz_audit,
    run_experiment,
)

N_LIST = [16, 32, 64, 128, 256, 512, 1024]


@pytest.mark.criterion(1)
def test_lemma8_inequality(verdict):
    t = np.pi * np.arange(1, 2049) / 2048
    start = time.perf_counter()
    worst = {b: lemma8_check(b, range(513), t).max_normalized for b in (0.0, 0.5, 1.0, 2.0)}
    elapsed = time.perf_counter() - start
    ok = max(worst.values()) <= 1 + 1e-9 and elapsed < 30
    verdict(ok, f"max normalized {max(worst.values()):.6f} (per beta {worst}), {elapsed:.1f}s")


@pytest.mark.criterion(2)
def test_beta_zero_coincidence(verdict):
    rng = np.random.default_rng(20240601)
    worst = 0.0
    for _ in range(200):
        row = rng.random(int(rng.integers(1, 129)))
        row[rng.random(row.size) < 0.1] = 0.0
        if not row.any():
            row[0] = 1.0
        A = SummabilityMatrix.from_last_row(row)
        for weighted, plain in ((beta_head_constant(A, 0.0), hbvs_constant(A)),
                                (beta_rest_constant(A, 0.0), rbvs_constant(A))):
            a, b = np.array(weighted.per_row_constant), np.array(plain.per_row_constant)
            same_flags = weighted.degenerate == plain.degenerate
            worst = max(worst, float(np.max(np.abs(a - b))) if same_flags else np.inf)
    verdict(worst <= 1e-14, f"max |weighted - plain| = {worst:.3g} over 200 rows")


@pytest.mark.criterion(3)
def test_telescoping_bounds(verdict):
    N = 512
    mats = [cesaro_matrix(N)]
    for p in (WeightSequence.linear(N), WeightSequence.geometric(0.5, N),
              WeightSequence.geometric(2.0, N)):
        mats += [norlund_matrix(p, N), riesz_matrix(p, N)]
    worst, checked = 0.0, 0
    for A in mats:
        if check_monotone(A, "nondecreasing").holds_uniformly:
            worst = max(worst, hbvs_constant(A).overall_constant)
            checked += 1
        if check_monotone(A, "nonincreasing").holds_uniformly:
            worst = max(worst, rbvs_constant(A).overall_constant)
            checked += 1
    verdict(worst <= 1 + 1e-12 and checked >= len(mats),
            f"{checked} monotone cases, largest telescoped constant {worst:.15f}")


@pytest.mark.criterion(4)
def test_head_weight_lower_bounds(verdict):
    N = 512
    candidates = [cesaro_matrix(N), riesz_matrix(WeightSequence.linear(N), N),
                  riesz_matrix(WeightSequence.geometric(1.5, N), N),
                  riesz_matrix(WeightSequence.ones(N), N)]
    excess, used = -np.inf, []
    for beta in (0.0, 0.5):
        for A in candidates:
            rep = beta_head_constant(A, beta)
            if not rep.holds_uniformly:
                continue
            used.append(f"{A.label}@{beta:g}")
            K = rep.overall_constant
            for n, row in enumerate(A.rows):
                rhs = (1 + K) * row[-1] + 1e-12
                excess = max(excess, row.max() - rhs, 1 / (n + 1) - rhs)
    verdict(excess <= 0 and len(used) >= 4,
            f"max violation {excess:.3g} over {', '.join(used)}")


@pytest.mark.criterion(5)
def test_closed_form_transform_oracle(verdict):
    f, s, _ = exemplar("cos", 1000)
    C = cesaro_matrix(999)
    errs = {n: abs(sup_error(C, f, s, n) - 1 / (n + 1)) for n in (9, 99, 999)}
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        d = int(rng.integers(1, 65))
        rows = [r / r.sum() for r in (rng.random(k + 1) for k in range(d + 1))]
        A = SummabilityMatrix(rows)
        ser = TrigSeries(rng.normal(), rng.normal(size=d), rng.normal(size=d))
        x = rng.uniform(-10, 10, 64)
        n = int(rng.integers(0, d + 1))
        diff = transform(A, ser, n, x) - transform(A, ser, n, x, method="direct")
        worst = max(worst, float(np.max(np.abs(diff))))
    ok = max(errs.values()) <= 1e-6 and worst <= 1e-10
    verdict(ok, f"|sup_error - 1/(n+1)| max {max(errs.values()):.3g}; forms differ by {worst:.3g}")


@pytest.mark.criterion(6)
def test_mediate_closed_forms(verdict):
    u = np.geomspace(1e-3, np.pi, 200)[:-1]
    d = np.geomspace(1e-4, np.pi, 64)
    rel, c14 = 0.0, 0.0
    for a in (0.25, 0.5, 0.75, 1.0):
        H = canonical_mediate(ModulusProfile.tabulated(d, d ** a))
        assert H.kind == "quadrature_backed"
        exact = np.log(np.pi / u) if a == 1 else (u ** (a - 1) - np.pi ** (a - 1)) / (1 - a)
        rel = max(rel, float(np.max(np.abs(H(u) / exact - 1))))
        if a < 1:
            r = check_condition_14(MediateFunction.power(a), np.geomspace(1e-5, 1.0, 30),
                                   closed_form=False)
            c14 = max(c14, float(np.max(np.abs(r.ratios * a - 1))))
    verdict(rel <= 1e-6 and c14 <= 1e-6,
            f"H relative error {rel:.3g}; condition-14 ratio relative error {c14:.3g}")


@pytest.mark.criterion(7)
def test_rate_reproduction(verdict):
    start = time.perf_counter()
    C = cesaro_matrix(1024)
    f, s, w = exemplar("weierstrass-0.5")
    c1, c2 = lipschitz_audit(f, 0.5)
    rep = run_experiment("T10", C, f, s, w, canonical_mediate(w), N_LIST)
    tf, ts, tw = exemplar("triangle", 1024)
    tri = run_experiment("T10", C, tf, ts, tw, canonical_mediate(tw), N_LIST)
    n = tri.n_values
    scaled = (tri.errors * (n + 1) / np.log(np.pi * (n + 1)))[n >= 64]
    spread = scaled.max() / scaled.min()
    elapsed = time.perf_counter() - start
    ok = -0.65 <= rep.fitted_slope <= -0.35 and spread < 5 and elapsed < 120
    verdict(ok, f"Lip(1/2) slope {rep.fitted_slope:.3f} (audit c1={c1:.2f}, c2={c2:.2f}); "
                f"triangle spread {spread:.3f}; {elapsed:.1f}s")


@pytest.mark.criterion(8)
def test_theorem_ratio_boundedness(verdict):
    N = 1024
    p = WeightSequence.linear(N)
    f, s, w = exemplar("weierstrass-0.5")
    H = canonical_mediate(w)
    cases = {"T10/riesz:linear": ("T10", riesz_matrix(p, N)),
             "T12/norlund:linear": ("T12", norlund_matrix(p, N)),
             "T13/norlund:linear": ("T13", norlund_matrix(p, N))}
    worst, parts = 0.0, []
    for name, (thm, A) in cases.items():
        r = run_experiment(thm, A, f, s, w, H, N_LIST).ratios
        q = r.max() / r[:4].max()
        worst = max(worst, q)
        parts.append(f"{name} {q:.3f}")
    verdict(worst <= 2, "max ratio / max(first four): " + ", ".join(parts))


@pytest.mark.criterion(9)
def test_kernel_bound_constants(verdict):
    n_list = [2 ** k for k in range(11)]
    N = n_list[-1]
    parts, ok = [], True
    for A in (cesaro_matrix(N), riesz_matrix(WeightSequence.linear(N), N)):
        for check in (lemma9_head_check, lemma9_rest_check):
            rep = check(A, 0.0, n_list)
            good = rep.doubling_ok()
            ok &= good
            parts.append(f"{rep.label} {'ok' if good else 'grows'} "
                         f"(n={N}: {rep.per_index[N]:.3g})")
    verdict(ok, "; ".join(parts))


@pytest.mark.criterion(10)
def test_cli_determinism(verdict, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"run{i}.csv"
        cmd = [sys.executable, "-m", "summlab", "theorem", "--id", "T10", "--matrix", "cesaro",
               "--alpha", "0.5", "--n", "16..256x2", "--format", "csv", "--output", str(path)]
        proc = subprocess.run(cmd, capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        outs.append(path.read_bytes())
    lines = outs[0].decode().split("\n")
    schema = lines[0] == "n,sup_error,bound,ratio" and lines[-1] == "" and len(lines) == 7
    ok = outs[0] == outs[1] and schema and b"\r" not in outs[0]
    verdict(ok, f"identical={outs[0] == outs[1]}, header={lines[0]!r}, {len(lines) - 2} rows")
