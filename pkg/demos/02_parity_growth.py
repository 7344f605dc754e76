"""
Parity family: eigenvalues that grow like 2^(n/2)
=================================================

The parities of every nonempty subset of n fair bits are pairwise
independent, but each shares one bit with the tuple of all bits.  The MI
matrix is an identity bordered by ones, and its smallest eigenvalue has a
closed form.
"""

import numpy as np

from infomat import (
    mi_matrix,
    min_eigenvalue,
    parity_family,
    parity_mi_matrix_closed_form,
    parity_min_eigen_closed_form,
)

###############################################################################
# Numerical MI matrix against the closed form, for small n
for n in range(2, 6):
    numeric = mi_matrix(parity_family(n))
    closed = parity_mi_matrix_closed_form(n)
    print(n, numeric.shape, np.max(np.abs(numeric - closed)))

###############################################################################
# Jacobi eigenvalue against the closed-form eigenvalue
for n in range(2, 7):
    lam, _ = parity_min_eigen_closed_form(n)
    print(n, min_eigenvalue(parity_mi_matrix_closed_form(n))[0], lam)

###############################################################################
# Growth: |lambda| / 2^(n/2) creeps towards 1.  The matrices get large, so the
# residual check uses the sparse form.
for n in range(6, 21, 2):
    lam, v = parity_min_eigen_closed_form(n)
    a = parity_mi_matrix_closed_form(n, sparse=True)
    residual = np.linalg.norm(a @ v - lam * v)
    print(f"n={n:2d}  lambda={lam:12.4f}  ratio={abs(lam) / 2 ** (n / 2):.4f}  residual={residual:.1e}")
