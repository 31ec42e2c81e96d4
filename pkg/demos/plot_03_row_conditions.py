"""
Head and rest bounded variation of matrix rows
==============================================

Measured constants for the plain and weighted conditions, and what a
growing constant looks like.
"""

from summlab import (
    WeightSequence,
    beta_head_constant,
    beta_rest_constant,
    cesaro_matrix,
    hbvs_constant,
    implication_audit,
    norlund_matrix,
    rbvs_constant,
    riesz_matrix,
)

N = 512
p = WeightSequence.linear(N)
mats = [cesaro_matrix(N), norlund_matrix(p, N), riesz_matrix(p, N)]

############################################################
# Plain conditions: monotone rows telescope to constants at most 1

for A in mats:
    h, r = hbvs_constant(A), rbvs_constant(A)
    print(f"{A.label:16s} head {h.overall_constant:9.3f} {h.holds}   "
          f"rest {r.overall_constant:9.3f} {r.holds}")

############################################################
# Weighted versions. Cesaro rows fail the beta = 1 head condition slowly
# (harmonic growth); the doubling test catches it.

for beta in (0.0, 0.5, 1.0):
    for A in mats:
        h = beta_head_constant(A, beta)
        r = beta_rest_constant(A, beta)
        print(f"beta={beta:3.1f} {A.label:16s} head {h.overall_constant:9.3f} "
              f"rest {r.overall_constant:9.3f}")

############################################################
# The weighted conditions imply the plain ones, row by row

for claim in implication_audit(riesz_matrix(p, 64), 1.0):
    print(claim.claim, claim.verified, round(claim.factor, 4))
