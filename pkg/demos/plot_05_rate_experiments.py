"""
Error against bound
===================

Run a theorem experiment, fit the convergence rate and reproduce the
Riesz-mean rate table for Lip(alpha) exemplars.
"""

import numpy as np

from summlab import WeightSequence, canonical_mediate, norlund_matrix, riesz_matrix
from summlab.experiments import corollary43_table, exemplar, lemma8_check, run_experiment

n_list = [16, 32, 64, 128, 256, 512, 1024]
f, s, w = exemplar("weierstrass-0.5")
H = canonical_mediate(w)
p = WeightSequence.linear(1024)

############################################################
# Bounded ratios are the numerical form of an O(.) estimate

for thm, A in (("T10", riesz_matrix(p, 1024)), ("T13", norlund_matrix(p, 1024))):
    rep = run_experiment(thm, A, f, s, w, H, n_list)
    print(thm, A.label, rep.metadata["status"], "slope", round(rep.fitted_slope, 3))
    for r in rep.rows:
        print(f"  n={r.n:5d} err={r.sup_error:.3e} bound={r.bound:.3e} ratio={r.ratio:.4f}")

############################################################
# Rates for the three Lip(alpha) exemplars under Cesaro means

for a in (0.25, 0.5, 0.75):
    fa, sa, _ = exemplar(f"weierstrass-{a:g}")
    rep = corollary43_table(WeightSequence.ones(1024), a, fa, sa, n_list)
    print(f"alpha={a}: slope {rep.fitted_slope:.3f} +- {rep.slope_stderr:.3f}, "
          f"ratios {np.round(rep.ratios, 3)}")

############################################################
# The kernel-sum inequality with beta weights

print(lemma8_check(1.0, range(257)).max_normalized)
