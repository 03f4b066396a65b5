"""Two pairs with the same transform on the upper half-plane.

M1 = iI with B1 = -iI and M2 = 3iI with B2 = iI give (B - M(z))^-1 = (i/2) I on
C+ for both, yet on C- the first pair degenerates completely.  The uniqueness
pipeline refuses the pair under (a1) because the measures are multiples of
Lebesgue measure.
"""
import numpy as np

from weylkit.equivalence import PipelineSide, momentum_golden, momentum_pair, uniqueness_pipeline
from weylkit.equivalence import upper_grid
from weylkit.herglotz import characteristic_function, weyl_transform

(m1, s1), (m2, s2) = momentum_pair(2)
z = 0.7 + 0.2j
print("transform 1 at z:", np.round(weyl_transform(m1, s1, z), 15).tolist())
print("transform 2 at z:", np.round(weyl_transform(m2, s2, z), 15).tolist())
print("W2(z):", characteristic_function(m2, s2.B, np.eye(2), np.eye(2), z).real.tolist())
print("B1 - M1 at conj(z):", (s1.B - m1(np.conj(z))).tolist())

rep = momentum_golden()
print("\ngolden report verdict:", "pass" if rep.verdict else "fail")
for c in rep.checks:
    print("  %-22s %.1e" % (c.label, c.residual))

rep = uniqueness_pipeline(PipelineSide(m1, s1), PipelineSide(m2, s2), upper_grid(20), "a1")
print("\nuniqueness under (a1):", rep.notes)
