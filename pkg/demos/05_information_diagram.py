"""
I-measure atoms for more than three variables
=============================================

The atoms of the information diagram are recovered from the subset
entropies by inclusion-exclusion.  Unions of atoms give back the joint
entropies.
"""

from infomat import example_xor4, i_measure_atoms
from infomat.info import all_subset_entropies
from infomat.io import atoms_to_dict

d = example_xor4()
table = i_measure_atoms(d)
for key, value in atoms_to_dict(table)["atoms"].items():
    if value:
        print(f"{{{key}}}: {value:+.3f}")

h = all_subset_entropies(d)
print("worst reconstruction error", table.max_reconstruction_error(h))
