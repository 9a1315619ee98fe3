"""Exact Mellin symbol calculus and Green's formulas for Fuchs-type operators.

All arithmetic runs over the Gaussian rationals Q(i).  The hot kernels come
from a compiled extension when it is built and from a pure-Python twin
otherwise; ``BACKEND`` names the one in use.
"""

from ._backend import BACKEND
from .asymptotic import (
    SpecialVector,
    StripBasis,
    adjoint_strip_basis,
    conjugate_complete_basis,
    principal_part_residuals,
    generalized_keldysh_check,
    membership_violations,
    properness_check,
    strip_basis,
    theta,
)
from .chains import ChainVector
from .errors import (
    ConeGreenError,
    DegenerateBasis,
    NotFuchsType,
    ParseError,
    PreconditionViolation,
    SingularSymbol,
    UnboundParameter,
    UnsupportedExponentField,
    VerificationFailure,
)
from .field import ONE, ZERO, GaussianRational, gr
from .fuchs import FuchsOperator, Operator, conormal_symbol, to_fuchs_form
from .green import (
    DomainQuotient,
    GreenReport,
    boundary_pairing,
    conjugate_jordan_basis,
    domain_quotient,
    render_expansion,
    render_green_formula,
    verify_theorem_main,
)
from .local import (
    LocalType,
    conjugate_local_basis,
    jordan_chains,
    keldysh_check,
    local_pairing,
)
from .dsl import parse_fuchs, parse_operator, unparse
from .symbols import (
    CompleteMellinSymbol,
    WeightContext,
    adjoint_symbol,
    complete_symbol,
    ellipticity_check,
    invert_complete_symbol,
    mtp,
    residue_table,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ChainVector",
    "CompleteMellinSymbol",
    "ConeGreenError",
    "DegenerateBasis",
    "DomainQuotient",
    "FuchsOperator",
    "GaussianRational",
    "GreenReport",
    "LocalType",
    "NotFuchsType",
    "ONE",
    "Operator",
    "ParseError",
    "PreconditionViolation",
    "SingularSymbol",
    "SpecialVector",
    "StripBasis",
    "UnboundParameter",
    "UnsupportedExponentField",
    "VerificationFailure",
    "WeightContext",
    "ZERO",
    "adjoint_strip_basis",
    "adjoint_symbol",
    "boundary_pairing",
    "complete_symbol",
    "conjugate_complete_basis",
    "conjugate_jordan_basis",
    "conjugate_local_basis",
    "conormal_symbol",
    "domain_quotient",
    "ellipticity_check",
    "principal_part_residuals",
    "generalized_keldysh_check",
    "gr",
    "invert_complete_symbol",
    "jordan_chains",
    "keldysh_check",
    "local_pairing",
    "membership_violations",
    "mtp",
    "parse_fuchs",
    "parse_operator",
    "properness_check",
    "render_expansion",
    "render_green_formula",
    "residue_table",
    "strip_basis",
    "theta",
    "to_fuchs_form",
    "unparse",
    "verify_theorem_main",
]
