"""
Searching for low eigenvalues
=============================

Simulated annealing over softmax logits.  Starting near the xor
construction the search stays at its eigenvalue; from random starts it
finds other indefinite distributions on the same alphabets.  With three
variables it never goes below zero.
"""

from infomat import SearchConfig, example_xor4, search_min_eigen
from infomat.search import logits_from_pmf

###############################################################################
# Near the known counterexample
init = tuple(logits_from_pmf(example_xor4().to_dense()))
result = search_min_eigen(SearchConfig((2, 2, 2, 4), seed=7, iterations=2000, init_logits=init, init_sigma=0.05))
print(result.best_lambda_min, result.trace)

###############################################################################
# Random starts
result = search_min_eigen(SearchConfig((2, 2, 2, 4), seed=1, iterations=3000, restarts=3, decay=0.999))
print([round(r.best_lambda_min, 4) for r in result.restarts])
for outcome, p in result.best_distribution:
    if p > 1e-3:
        print(outcome, round(p, 4))

###############################################################################
# Three variables
result = search_min_eigen(SearchConfig((2, 2, 3), seed=2, iterations=2000))
print(result.best_lambda_min)
