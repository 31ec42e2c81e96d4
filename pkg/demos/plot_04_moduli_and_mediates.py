"""
Moduli of continuity and mediate functions
==========================================

Estimate omega for an exemplar, build H(u) = int_u^pi omega(t)/t^2 dt and
audit the two integral conditions placed on H.
"""

import numpy as np

from summlab import (
    MediateFunction,
    ModulusProfile,
    canonical_mediate,
    check_condition_13,
    check_condition_14,
    lemma6_ratio,
    lemma7_ratio,
)
from summlab.experiments import exemplar, lipschitz_audit

############################################################
# omega(delta)/delta^alpha stays between two constants

for a in (0.25, 0.5, 0.75):
    f = exemplar(f"weierstrass-{a:g}").function
    print(a, lipschitz_audit(f, a))

############################################################
# A tabulated profile gives a quadrature-backed H

d = np.geomspace(1e-4, np.pi, 40)
H_tab = canonical_mediate(ModulusProfile.tabulated(d, d ** 0.5))
H_exact = canonical_mediate(ModulusProfile.power(0.5))
u = np.geomspace(1e-3, 3.0, 5)
print(H_tab.kind, H_tab(u))
print(H_exact.kind, H_exact(u))

############################################################
# Condition ratios on a grid shrinking to zero

t = np.geomspace(1e-5, 1.0, 8)
w = ModulusProfile.power(0.5)
print("13:", check_condition_13(w, H_exact, t).ratios)
print("14:", check_condition_14(MediateFunction.power(0.5), t).ratios)
print("log H, 14:", check_condition_14(MediateFunction.power(1.0), t).trend)
print("lemma7_ratio:", lemma7_ratio(w, H_exact, t).max_ratio)
print("lemma6_ratio:", lemma6_ratio(w, H_exact, [2, 16, 128, 1024]).ratios)
