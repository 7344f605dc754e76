"""
Mutual-information matrices that are not PSD
=============================================

Two fair bits, their xor and the pair itself give a 4x4 MI matrix with a
negative eigenvalue.  Replacing xor by the integer sum keeps the matrix
indefinite, and appending independent bits never repairs it.
"""

import math

import numpy as np

from infomat import embed_with_independent, example_xor4, is_psd, mi_matrix, min_eigenvalue, sum_example

np.set_printoptions(precision=6, suppress=True)

###############################################################################
# The xor construction
d = example_xor4()
for outcome, p in d:
    print(outcome, p)

m = mi_matrix(d)
print(m)

lam, v = min_eigenvalue(m)
print("smallest eigenvalue", lam, "closed form", (3 - math.sqrt(13)) / 2)
# rescale so the first three components are 1
print("eigenvector", v / v[0])

###############################################################################
# ``is_psd`` returns the violating eigenpair and the quadratic form v^T M v,
# which anyone can recheck by hand.
verdict = is_psd(m)
print(verdict.psd, verdict.quadratic_form)

###############################################################################
# Integer sum instead of xor
m4 = mi_matrix(sum_example())
print(m4)
print("smallest eigenvalue", min_eigenvalue(m4)[0])

###############################################################################
# Appending independent fair bits adds ones on the diagonal only
for extra in range(4):
    print(extra, min_eigenvalue(mi_matrix(embed_with_independent(example_xor4(), extra)))[0])
