import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from summlab import (
    ConditionId,
    DegenerateError,
    SummabilityMatrix,
    WeightSequence,
    beta_head_constant,
    beta_rest_constant,
    cesaro_matrix,
    check_monotone,
    check_row_stochastic,
    hbvs_constant,
    implication_audit,
    norlund_matrix,
    rbvs_constant,
    riesz_matrix,
)
from summlab.conditions import (
    doubling_ok,
    head_ratios,
    plain_differences,
    rest_ratios,
    variation_terms,
)


def brute_head(row, m, beta=0.0):
    a = list(row) + [0.0]
    return sum((k + 1) ** beta * abs(a[k] / (k + 1) ** beta - a[k + 1] / (k + 2) ** beta)
               for k in range(m))


def brute_rest(row, m, beta=0.0):
    a = list(row) + [0.0]
    return sum((k + 1) ** beta * abs(a[k] / (k + 1) ** beta - a[k + 1] / (k + 2) ** beta)
               for k in range(m, len(row)))


def test_row_stochastic():
    assert check_row_stochastic(cesaro_matrix(30)).holds_uniformly
    assert check_row_stochastic(cesaro_matrix(30)).overall_constant == pytest.approx(0, abs=1e-15)
    bad = SummabilityMatrix([[1.0], [0.5, 0.6]])
    rep = check_row_stochastic(bad)
    assert not rep.holds_uniformly
    assert rep.overall_constant == pytest.approx(0.1)
    assert rep.witness[0] == 1
    assert check_row_stochastic(norlund_matrix(WeightSequence.geometric(0.3, 60), 60)).holds


def test_monotone():
    C = cesaro_matrix(10)
    assert check_monotone(C, "nondecreasing").holds_uniformly
    assert check_monotone(C, "nonincreasing").holds_uniformly
    p = WeightSequence.linear(10)
    assert check_monotone(riesz_matrix(p, 10), "nondecreasing").holds_uniformly
    rep = check_monotone(riesz_matrix(p, 10), "nonincreasing")
    assert not rep.holds_uniformly and rep.witness == (1, 0)
    assert check_monotone(norlund_matrix(p, 10), "nonincreasing").holds_uniformly


def test_hbvs_examples():
    assert hbvs_constant(cesaro_matrix(20)).overall_constant == 0
    row = [1 / 6, 2 / 6, 3 / 6]
    ratio, bad = head_ratios(row, plain_differences(row))
    assert ratio[1:].max() == pytest.approx(2 / 3)
    assert bad.size == 0
    assert hbvs_constant(riesz_matrix(WeightSequence.linear(60), 60)).overall_constant <= 1


def test_rbvs_examples():
    rep = rbvs_constant(cesaro_matrix(20))
    np.testing.assert_allclose(rep.per_row_constant, 1.0)
    row = [3 / 6, 2 / 6, 1 / 6]
    ratio, _ = rest_ratios(row, plain_differences(row))
    assert ratio[0] == pytest.approx(1)


def test_constants_match_brute_force():
    rng = np.random.default_rng(5)
    for _ in range(30):
        n = int(rng.integers(0, 12))
        row = rng.random(n + 1) + 0.05
        beta = float(rng.choice([0.0, 0.5, 1.0, 2.3]))
        terms = variation_terms(row, beta)
        hr, _ = head_ratios(row, terms)
        rr, _ = rest_ratios(row, terms)
        for m in range(n + 1):
            assert hr[m] == pytest.approx(brute_head(row, m, beta) / row[m], rel=1e-12)
            assert rr[m] == pytest.approx(brute_rest(row, m, beta) / row[m], rel=1e-12)


def test_beta_head_cesaro_logarithmic_growth():
    C = cesaro_matrix(256)
    rep = beta_head_constant(C, 1.0)
    # ratio at (n, m) is sum_{k<m} 1/(k+2); sup at m = n
    for n in (1, 5, 100, 256):
        expect = sum(1 / (k + 2) for k in range(n))
        assert rep.per_row_constant[n] == pytest.approx(expect, rel=1e-12)
    assert not rep.holds_uniformly


def test_single_entry_row():
    one = SummabilityMatrix([[1.0]])
    assert beta_head_constant(one, 1.5).overall_constant == 0


def test_beta_rest_last_ratio_is_one():
    rng = np.random.default_rng(6)
    for _ in range(20):
        row = rng.random(int(rng.integers(1, 30))) + 0.01
        rr, _ = rest_ratios(row, variation_terms(row, float(rng.uniform(0, 3))))
        assert rr[-1] == pytest.approx(1, abs=1e-15)


def test_identity_rows_flagged_degenerate():
    A = SummabilityMatrix([np.eye(1, n + 1, n)[0] for n in range(6)])
    rep = beta_rest_constant(A, 0.7)
    assert not rep.holds_uniformly
    assert rep.degenerate
    assert rep.witness == rep.degenerate[0]
    assert all(m < n for n, m in rep.degenerate)


def test_all_zero_row_is_error():
    A = SummabilityMatrix([[1.0], [0.0, 0.0]])
    with pytest.raises(DegenerateError):
        hbvs_constant(A)


def test_report_ids():
    C = cesaro_matrix(3)
    assert beta_head_constant(C, 0).condition_id is ConditionId.BETA_HEAD
    assert rbvs_constant(C).condition_id is ConditionId.RBVS


def test_doubling_rule():
    assert doubling_ok([1.0] * 40)
    assert not doubling_ok(np.arange(40.0))
    # the start index skips small-n transients
    assert doubling_ok({1: 0.5, 2: 3.0, 8: 1.0, 16: 1.05})
    assert not doubling_ok({8: 1.0, 16: 1.3})


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0.0, 1e3, allow_subnormal=False), min_size=1, max_size=128))
def test_beta_zero_coincidence(row):
    row = np.asarray(row)
    for head_or_rest in (head_ratios, rest_ratios):
        a, bad_a = head_or_rest(row, plain_differences(row))
        b, bad_b = head_or_rest(row, variation_terms(row, 0.0))
        assert np.array_equal(a, b)
        assert np.array_equal(bad_a, bad_b)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0.01, 10.0), min_size=1, max_size=60), st.floats(0.0, 3.0))
def test_truncation_is_exact(row, beta):
    row = np.asarray(row)
    padded = np.concatenate([row, np.zeros(50)])
    a, _ = rest_ratios(row, variation_terms(row, beta))
    b, _ = rest_ratios(padded, variation_terms(padded, beta))
    assert np.max(np.abs(a - b[:row.size])) <= 1e-14


@pytest.mark.parametrize("N", [64, 512])
def test_monotone_rows_telescope(N):
    mats = [cesaro_matrix(N)]
    for p in (WeightSequence.linear(N), WeightSequence.geometric(0.5, N),
              WeightSequence.geometric(1.5, N)):
        mats += [norlund_matrix(p, N), riesz_matrix(p, N)]
    for A in mats:
        if check_monotone(A, "nondecreasing").holds_uniformly:
            assert hbvs_constant(A).overall_constant <= 1 + 1e-12
        if check_monotone(A, "nonincreasing").holds_uniformly:
            assert rbvs_constant(A).overall_constant <= 1 + 1e-12


def test_implication_audit_beta_zero():
    for A in (cesaro_matrix(30), riesz_matrix(WeightSequence.linear(30), 30)):
        claims = implication_audit(A, 0.0)
        assert all(c.verified for c in claims)
        for c in claims:
            assert c.antecedent.per_row_constant == c.consequent.per_row_constant
            assert c.factor in (0.0, 1.0)


def test_implication_audit_cesaro_beta_one_is_vacuous():
    head_claim, _ = implication_audit(cesaro_matrix(128), 1.0)
    claim, verified = head_claim
    assert verified
    assert not head_claim.antecedent.holds_uniformly
    # derived sequence 1/((k+1)(n+1)) has head ratio m at index m
    assert head_claim.antecedent.per_row_constant[50] == pytest.approx(50)


def test_implication_audit_geometric_norlund():
    A = norlund_matrix(WeightSequence.geometric(0.5, 64), 64)
    head, rest = implication_audit(A, 0.0)
    assert head.verified and rest.verified
    # rows a_{n,k} = 2^-(n-k)/P_n increase in k: head constant <= 1, rest grows like 2^n
    assert head.consequent.overall_constant <= 1
    assert rest.antecedent.per_row_constant[10] == pytest.approx(2 ** 11 - 1, rel=1e-9)


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0])
def test_implications_hold_rowwise(beta):
    rng = np.random.default_rng(int(beta * 10))
    rows = [rng.random(n + 1) + 0.05 for n in range(40)]
    for c in implication_audit(SummabilityMatrix(rows), beta):
        assert c.factor <= 1 + 1e-12


def test_uniform_verdict_ignores_early_transients():
    # per-row constants rise from 0.54 at n = 8 to a limit near 0.995
    A = riesz_matrix(WeightSequence.geometric(1.5, 512), 512)
    rep = beta_head_constant(A, 1.0)
    assert rep.per_row_constant[8] < 0.6 < rep.per_row_constant[16]
    assert rep.holds_uniformly
    # harmonic growth is still caught at the largest scales
    assert not beta_head_constant(cesaro_matrix(512), 1.0).holds_uniformly
