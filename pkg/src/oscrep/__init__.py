"""Unitary irreducible representations of deformed oscillator algebras.

Exact exp-polynomial structure functions, a generic unirrep classifier,
closed-form families for the named algebras, and explicit matrix builders.
"""

from .algebra import (
    AlgebraSpec,
    DeformationChain,
    brute_force_structure,
    chain_extend,
    commutator_transform,
    solve_structure,
)
from .catalog import classify_catalog, get_algebra, reference_chain
from .classifier import Seed, UnirrepDescriptor, classify, fd_search, lambda_n, mu_n
from .errors import (
    DimensionMismatchError,
    DomainError,
    NonUnitarizableError,
    OscrepError,
    ParseError,
    PreconditionError,
    RegimeError,
    UnknownAlgebraError,
)
from .exppoly import ExpPolynomial, format_exppoly, parse_exppoly, q_number
from .golden import check_table, table_rows
from .repbuilder import K_element, MatrixRep, build, casimir_matrix, verify

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec",
    "DeformationChain",
    "DimensionMismatchError",
    "DomainError",
    "ExpPolynomial",
    "K_element",
    "MatrixRep",
    "NonUnitarizableError",
    "OscrepError",
    "ParseError",
    "PreconditionError",
    "RegimeError",
    "Seed",
    "UnirrepDescriptor",
    "UnknownAlgebraError",
    "brute_force_structure",
    "build",
    "casimir_matrix",
    "chain_extend",
    "check_table",
    "classify",
    "classify_catalog",
    "commutator_transform",
    "fd_search",
    "format_exppoly",
    "get_algebra",
    "lambda_n",
    "mu_n",
    "parse_exppoly",
    "q_number",
    "reference_chain",
    "solve_structure",
    "table_rows",
    "verify",
]
