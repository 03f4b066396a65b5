"""Deciding unitary similarity of two systems from their Markov parameters.

A random simple system is conjugated by a random unitary V; the decision
procedure recovers V.  Shifting F by 1e-3 makes the systems inequivalent.
"""
import numpy as np

from weylkit.realization import (PqsSystem, conjugate_system, decide_unitary_similarity,
                                 random_system, random_unitary, verify_similarity)

s1 = random_system(6, 2, seed=11)
v = random_unitary(6, seed=12)
s2 = conjugate_system(s1, v)
u = decide_unitary_similarity(s1, s2)
print("unitary found:", u is not None)
print("residuals:", verify_similarity(s1, s2, u))
print("|U - V| = %.1e" % np.linalg.norm(u - v, 2))

s3 = PqsSystem(s2.A, s2.K, s2.F + 1e-3 * np.eye(2))
print("after shifting F by 1e-3:", decide_unitary_similarity(s1, s3))
