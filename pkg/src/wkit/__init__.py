"""wkit: numerical verification toolkit for Z_N elliptic R-matrices and
the deformed-W generator algebras built on them."""

from .errors import (
    BranchDomainViolation,
    ConfigError,
    DimensionGuardExceeded,
    LabelMismatch,
    ModulusOutOfRange,
    NonconvergentTau,
    NoSolution,
    OutsideConvergenceAnnulus,
    PoleHit,
    SingularLax,
    TruncationBudgetExceeded,
    WkitError,
    ZeroArgument,
)
from .params import DEFAULT_POLICY, EllipticParams, TruncationPolicy, xi_of, z_of
from .qseries import (
    F_a,
    I_series,
    U,
    Y_FF,
    Y_kkprime_cr,
    Y_mn,
    Y_mn_forms,
    abelianity_check,
    f_cr_modes,
    f_cr_series,
    kappa_inv,
    pochhammer,
    resolve_abelian_branch,
    tau_N,
    theta_big,
    theta_char_product,
    theta_char_series,
)
from .reports import CheckReport, sort_reports
from .rmatrix import RMatrixFactory, RMatrixValue, ZnMatrices
from .tensor import Antisymmetrizer, LabeledTensor, antisymmetrizer, fused_R
from .wgen import (
    EvalRep,
    SurfaceSpec,
    WGenerator,
    build_t,
    exchange_residual_tL,
    exchange_residual_tt,
    qdet_extract,
    resolve_surface,
)

__version__ = "0.1.0"

__all__ = [
    "EllipticParams", "TruncationPolicy", "DEFAULT_POLICY", "xi_of", "z_of",
    "pochhammer", "theta_big", "theta_char_series", "theta_char_product",
    "tau_N", "U", "kappa_inv", "F_a", "Y_mn", "Y_mn_forms", "Y_FF",
    "Y_kkprime_cr", "I_series", "f_cr_series", "f_cr_modes",
    "resolve_abelian_branch", "abelianity_check",
    "CheckReport", "sort_reports",
    "ZnMatrices", "RMatrixFactory", "RMatrixValue",
    "LabeledTensor", "Antisymmetrizer", "antisymmetrizer", "fused_R",
    "SurfaceSpec", "resolve_surface", "EvalRep", "WGenerator", "build_t",
    "exchange_residual_tL", "exchange_residual_tt", "qdet_extract",
    "WkitError", "ModulusOutOfRange", "TruncationBudgetExceeded",
    "ZeroArgument", "NonconvergentTau", "PoleHit",
    "OutsideConvergenceAnnulus", "BranchDomainViolation", "NoSolution",
    "SingularLax", "LabelMismatch", "DimensionGuardExceeded", "ConfigError",
]
