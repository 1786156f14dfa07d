"""symfact: constructive V V^T factorization of complex symmetric matrices
and the antilinear-operator machinery built on top of it."""

from .matcore import (
    ToleranceConfig,
    ValidationError,
    SingularMatrixError,
    bilinear,
    sesquilinear,
    complement_basis,
    complement_basis_within,
    solve_linear,
    determinant,
    principal_sqrt,
    frobenius,
)
from .eigen import (
    ConvergenceError,
    DefectiveOperatorError,
    EigenPair,
    EigenLevel,
    BiorthonormalSystem,
    hessenberg_reduce,
    eigenvalues,
    eigenpair,
    biorthonormal_system,
)
from .factor import (
    ALL_BRANCHES,
    AllZeroSignal,
    FactorizationResult,
    NotSymmetricError,
    RecursionTrace,
    factor_symmetric,
    verify_factorization,
    orthogonal_gauge,
)
from .antisym import (
    AntilinearOp,
    CoefficientSet,
    SpectrumPairing,
    Unpairable,
    apply,
    is_hermitian,
    build_T,
    check_pseudo_hermitian,
    transform_basis,
    transform_coeffs,
    canonicalize,
    spectrum_pairing,
    build_antilinear_symmetry,
    check_commutes,
    check_involution,
    canonical_T_selfadjoint,
)
from .oracle import (
    Breakdown,
    GeneratorSpec,
    ldlt_symmetric,
    factor_via_ldlt,
    gen,
    gen_complex_orthogonal,
)

__version__ = "0.1.0"

__all__ = [
    "ToleranceConfig",
    "ValidationError",
    "SingularMatrixError",
    "bilinear",
    "sesquilinear",
    "complement_basis",
    "complement_basis_within",
    "solve_linear",
    "determinant",
    "principal_sqrt",
    "frobenius",
    "ConvergenceError",
    "DefectiveOperatorError",
    "EigenPair",
    "EigenLevel",
    "BiorthonormalSystem",
    "hessenberg_reduce",
    "eigenvalues",
    "eigenpair",
    "biorthonormal_system",
    "ALL_BRANCHES",
    "AllZeroSignal",
    "FactorizationResult",
    "NotSymmetricError",
    "RecursionTrace",
    "factor_symmetric",
    "verify_factorization",
    "orthogonal_gauge",
    "AntilinearOp",
    "CoefficientSet",
    "SpectrumPairing",
    "Unpairable",
    "apply",
    "is_hermitian",
    "build_T",
    "check_pseudo_hermitian",
    "transform_basis",
    "transform_coeffs",
    "canonicalize",
    "spectrum_pairing",
    "build_antilinear_symmetry",
    "check_commutes",
    "check_involution",
    "canonical_T_selfadjoint",
    "Breakdown",
    "GeneratorSpec",
    "ldlt_symmetric",
    "factor_via_ldlt",
    "gen",
    "gen_complex_orthogonal",
    "__version__",
]
