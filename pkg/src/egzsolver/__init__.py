"""Constructive solvers for zero-sum subsequences and subset-sum targets over Z_n.

Two problems, solved with explicit witnesses:

* any 2n-1 integers contain n whose sum is divisible by n
  (:func:`egzsolver.egz.solve_general`);
* p-1 nonzero residues mod a prime p represent every target as a subset sum
  (:func:`egzsolver.solver.solve_lemma2`).

The fast pipelines rewrite the input multiset of arithmetic progressions
(trim / enrichment / growth), pack the covered set a whole progression at a
time, and replay the journal backwards to recover concrete input indices.
"""

from .egz import solve_general, solve_prime
from .errors import Infeasible, InputError, InvariantViolation, RecoveryError
from .oracle import brute_sumset, dp_subset_solve, egz_brute
from .solver import ConstructionResult, solve_lemma2

__version__ = "0.1.0"

__all__ = [
    "ConstructionResult",
    "Infeasible",
    "InputError",
    "InvariantViolation",
    "RecoveryError",
    "brute_sumset",
    "dp_subset_solve",
    "egz_brute",
    "solve_general",
    "solve_lemma2",
    "solve_prime",
    "__version__",
]
