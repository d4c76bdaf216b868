"""Solver toolkit for systems of Boolean quadratic equations.

Modules:

* :mod:`mqsolve.anf` -- ANF representation, parsing, evaluation, specialization,
  brute-force solving, random instance generation
* :mod:`mqsolve.macaulay` -- Boolean Macaulay matrices, Hilbert-series witness
  degrees, consistency certificates
* :mod:`mqsolve.gf2e` -- GF(2^e) arithmetic with fixed moduli
* :mod:`mqsolve.sparse_linalg` -- Berlekamp-Massey, Wiedemann, RandomSol, and
  the certifying sparse solver in the black-box model
* :mod:`mqsolve.solver` -- the hybrid exact solver and its simulated
  amplitude-amplified variant
* :mod:`mqsolve.circuits` -- reversible circuits, statevector simulation,
  Grover search, gate-cost accounting
* :mod:`mqsolve.estimator` -- complexity exponents, security parameters,
  baseline attack costs
* :mod:`mqsolve.cli` -- the ``mqsolve`` command-line front end
"""

from .anf import (
    BooleanPolynomial,
    ParseError,
    PolynomialSystem,
    brute_force_solve,
    evaluate,
    parse_system,
    random_system,
    serialize_system,
    specialize,
)
from .estimator import ComplexityProfile, minimize_exponent, security_parameters
from .macaulay import MacaulayMatrix, build_macaulay, consistency_certificate, witness_degree
from .solver import SolveConfig, classical_boolean_solve, f_cons, quantum_boolean_solve_sim

__version__ = "0.1.0"
