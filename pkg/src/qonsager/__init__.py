"""Exact computer algebra for the q-Onsager algebra's higher-order relations.

Coefficient tables by three independent routes (generating polynomial,
closed-form sum, inductive recursion), noncommutative reduction modulo the
defining relation, and exact-rational matrix realizations as a soundness
oracle.
"""

from .exactring import (
    ExactDivisionError,
    LaurentPoly,
    Rational,
    RHO0,
    RHO1,
    RingElement,
    parse_laurent,
)
from .qnumbers import (
    EigenvalueData,
    TridiagonalParams,
    beta_s,
    qbinomial,
    qfactorial,
    qint,
    reduced_tridiagonal_params,
    tridiagonal_parameters,
)
from .freealg import A, ASTAR, NcPoly, ParseError, Word, parse_expression, word_string
from .rewrite import (
    ETA,
    EtaTable,
    ReductionTrace,
    measure,
    normal_form,
    normal_form_with_stats,
    power_astar_expansion,
    reduce_once,
    trace_reduction,
)
from .coefficients import (
    ROUTES,
    CoeffTable,
    GeneralCoeffTable,
    RecursionTables,
    closedform_coeff,
    closedform_table,
    coeff_table,
    genfun_coeffs,
    lusztig_coeffs,
    qbinomial_theorem_check,
    recursion_coeffs,
    reduced_genfun_coeffs,
)
from .verify import (
    CrossCheckReport,
    VerificationReport,
    build_relation_lhs,
    cross_check_routes,
    verify_relation,
)
from .matrixrep import (
    CoidealParams,
    CoidealRealization,
    ExactMatrix,
    check_qdg,
    check_realization,
    coideal_generators,
    eval_ncpoly,
    evaluation_rep,
    tensor_rep,
)

__version__ = "0.1.0"

__all__ = [
    "A",
    "ASTAR",
    "CoeffTable",
    "CoidealParams",
    "CoidealRealization",
    "CrossCheckReport",
    "ETA",
    "EigenvalueData",
    "EtaTable",
    "ExactDivisionError",
    "ExactMatrix",
    "GeneralCoeffTable",
    "LaurentPoly",
    "NcPoly",
    "ParseError",
    "RHO0",
    "RHO1",
    "ROUTES",
    "Rational",
    "RecursionTables",
    "ReductionTrace",
    "RingElement",
    "TridiagonalParams",
    "VerificationReport",
    "Word",
    "beta_s",
    "build_relation_lhs",
    "check_qdg",
    "check_realization",
    "closedform_coeff",
    "closedform_table",
    "coeff_table",
    "coideal_generators",
    "cross_check_routes",
    "eval_ncpoly",
    "evaluation_rep",
    "genfun_coeffs",
    "lusztig_coeffs",
    "measure",
    "normal_form",
    "normal_form_with_stats",
    "parse_expression",
    "parse_laurent",
    "power_astar_expansion",
    "qbinomial",
    "qbinomial_theorem_check",
    "qfactorial",
    "qint",
    "recursion_coeffs",
    "reduce_once",
    "reduced_genfun_coeffs",
    "reduced_tridiagonal_params",
    "tensor_rep",
    "trace_reduction",
    "tridiagonal_parameters",
    "verify_relation",
    "word_string",
]
