"""
Three variables: a PSD certificate from the information diagram
================================================================

For three variables the seven atoms of the information diagram can be
shifted into eight nonnegative coefficients, writing the MI matrix as a
nonnegative combination of PSD 0/1 block matrices.
"""

import numpy as np

from infomat import i_measure_atoms, mi_matrix, psd_certificate_3, xor_triple
from infomat.search import random_three_var, verify_three_var_conjecture

np.set_printoptions(precision=6, suppress=True)

###############################################################################
# The xor triple has a negative centre atom, absorbed by ``a``
table = i_measure_atoms(xor_triple())
print(table.values)
cert = psd_certificate_3(xor_triple())
print(cert.decomposition.coefficients())
print(cert.reconstruction)

###############################################################################
# A random instance
rng = np.random.default_rng(3)
d = random_three_var(rng, max_alphabet=4)
print(d.shape, d.support_size)
cert = psd_certificate_3(d)
print(mi_matrix(d))
print(cert.decomposition.coefficients())
print("reconstruction error", cert.error)

###############################################################################
# Many random instances at once
print(verify_three_var_conjecture(500, max_alphabet=4, seed=1))
