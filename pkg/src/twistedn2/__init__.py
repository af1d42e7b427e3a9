"""Exact computations in the twisted N=2 superconformal algebra and its Γ-graded variant."""

from .algebra import AlgebraInstance, BasisVector, Element, rank2, twisted
from .automorphisms import (
    AutoSpec,
    AutoTable,
    ClassificationError,
    ConstraintViolation,
    GeneralizedAutoSpec,
    auto_from_spec,
    classify,
    epsilon_auto,
    generalized_auto,
    homomorphism_residuals,
    identity_auto,
    inner_auto,
    varpi,
)
from .bialgebra import (
    ParityError,
    Tensor,
    coboundary_delta,
    cocycle_residual,
    cybe,
    diag_action,
    graded_cocycle_residual,
    skew_check,
    skew_residual,
    tau,
    tensor,
    xi,
)
from .derivations import (
    DerivationReport,
    DerivationTable,
    GammaHom,
    Residual,
    WindowError,
    delta_phi,
    derivation_residuals,
    inner_oracle,
    solve_derivation_space,
    valid_pairs,
)
from .linalg import ExactMatrix, kernel_basis, rank, rref, solve_in_span
from .parser import EvalError, ParseError, parse, parse_eval, render
from .scalars import I, ONE, THETA, ZERO, Scalar, as_scalar

__version__ = "0.1.0"
