"""Equal transforms, different hat Weyl functions.

Starting from M1(z) = -1/z and B1 = 0, the construction adds B = (1 + i) to
both the function and the boundary parameter.  The transforms coincide on C+
while the hat functions M - Re B differ by Re B.
"""
import numpy as np

from weylkit.equivalence import construct_counterexample, counterexample_report
from weylkit.herglotz import HerglotzMatrixFunction
from weylkit.measures import MatrixMeasure

m1 = HerglotzMatrixFunction(1, sigma=MatrixMeasure(1, atoms=[(0.0, [[1.0]])]))
ce = construct_counterexample(m1, [[0.0]])
print("B =", ce.B[0, 0], " B2 =", ce.B2[0, 0])
for z in (1j, 2 + 0.5j, -1 + 3j):
    t1 = 1 / (ce.B1 - ce.M1(z))[0, 0]
    t2 = 1 / (ce.B2 - ce.M2(z))[0, 0]
    print("z = %-10s  (B1-M1)^-1 = %-22s (B2-M2)^-1 = %s" % (z, np.round(t1, 14),
                                                             np.round(t2, 14)))
rep = counterexample_report(ce)
print("\nreport verdict:", "pass" if rep.verdict else "fail")
print("hat gap |M1^(i) - M2^(i)| =", rep.data["hat_gap"], " |Re B| =", rep.data["re_B_norm"])
print(rep.notes)
