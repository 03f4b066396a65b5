"""The ordinary model triplet of a nondensely defined symmetric operator.

H = C^2 with domain span(e1) and A e1 = e2.  The Weyl function of the model
triplet is z - 1/z; the three ways of computing it agree.  Eigenvalues of the
extension A_theta are the zeros of theta - M(lambda).
"""
import numpy as np

from weylkit.triplets import NondenseSymmetric, extension_from_boundary, ordinary_model

model = ordinary_model(NondenseSymmetric([[0.0]], [[1.0]]))
z = 0.5 + 1.5j
for method in ("closed", "relation", "defect"):
    print("%-8s M(z) = %s" % (method, model.weyl_function(z, method)[0, 0]))
print("z - 1/z   =", z - 1 / z)
print("Green identity residual: %.1e" % model.green_residual())

theta = np.array([[1.5]])
eig = np.linalg.eigvals(extension_from_boundary(model, theta).as_matrix())
print("\neigenvalues of A_theta:", np.sort(eig.real))
print("theta - M(lambda) there:", [float(abs(theta[0, 0] - (lam - 1 / lam))) for lam in eig])
