"""Mutual-information matrices of discrete random variables and their definiteness."""

from .distribution import (
    DerivedVariableMap,
    JointDistribution,
    extend_with_derived,
    marginal,
    new_joint,
    permute,
    product,
)
from . import errors
from .errors import InfomatError, NoConvergence
from .examples import (
    embed_with_independent,
    example_xor4,
    independent_uniform,
    parity_family,
    parity_min_eigen_closed_form,
    parity_mi_matrix_closed_form,
    sum_example,
    xor_triple,
)
from .info import (
    AtomTable,
    ThreeVarDecomposition,
    conditional_mi,
    i_measure_atoms,
    mi_matrix,
    mutual_information,
    psd_certificate_3,
    subset_entropy,
    three_var_decomposition,
    triple_information,
)
from .linalg import EigenResult, PSDVerdict, eigen_sym, is_psd, min_eigenvalue, sym_matrix
from .search import SearchConfig, SearchResult, objective, search_min_eigen, verify_three_var_conjecture

__version__ = "0.1.0"
