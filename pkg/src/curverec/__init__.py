"""curverec: reconstruct space curves from curvature and torsion.

Two independent routes rebuild a curve from its intrinsic data: direct
Runge-Kutta integration of the moving orthonormal frame, and a
stereographic route that linearizes the associated complex Riccati
equation into a 2x2 unitary flow, recovers the tangent by
determinant-normalized quadratic forms, and integrates it. Closed-form
circular-helix machinery provides exact oracles, and a diagnostics
module cross-checks everything (sphere constraint, fourth-order
tangent ODE, Wronskian conservation, rigid alignment, convergence
order). A CLI exposes reconstruction, route comparison, and a
config-driven verification suite.
"""

from .errors import (
    CoincidentSolutionsError,
    CurveRecError,
    DegenerateInputError,
    GridError,
    GridMismatchError,
    InputError,
    IntegrationDriftError,
    NonOrthonormalFrameError,
    NumericalError,
    PoleError,
    ProfileRangeError,
    SingularMatrixError,
)
from .expr import (
    EvalDomainError,
    Expression,
    ExprSyntaxError,
    UnknownIdentifierError,
    eval_expression,
    eval_expression_array,
    parse_expression,
    to_text,
)
from .frenet import (
    CurveSamples,
    FrameSample,
    FrameSamples,
    frame_residual,
    fs_rhs,
    identity_frame,
    integrate_fs,
    integrate_tangent,
)
from .helix import (
    HelixDerived,
    closed_form_curve,
    closed_form_tangent,
    fundamental_closed_form,
    fundamental_closed_form_samples,
    helix_derived,
    helix_w_solution,
    real_helix_oracle,
    scaled_cos,
    scaled_sin,
    separable_fundamental,
)
from .intrinsic import (
    ArcLengthGrid,
    ConstantProfile,
    ExpressionPair,
    HelixSpec,
    TabulatedProfile,
    accumulated_torsion,
    eval_profile,
    profile_arrays,
)
from .kernels import BACKEND, available_backends
from .riccati import (
    INFINITY,
    FundamentalMatrix,
    FundamentalSamples,
    MobiusPair,
    SignVariant,
    frame_from_wz,
    generator,
    integrate_fundamental,
    linear_rhs,
    mobius_eval,
    reconstruct_curve,
    riccati_from_linear_u,
    riccati_rhs,
    scheffers_tangent,
    tangent_components,
    wz_from_frame,
)
from .verify import (
    AlignmentResult,
    ResidualReport,
    align_curves,
    align_to_axis,
    convergence_order,
    fourth_order_residual,
    linear_companion_residual,
    make_report,
    sphere_residual,
    wronskian_residual,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "CurveRecError",
    "InputError",
    "NumericalError",
    "GridError",
    "GridMismatchError",
    "NonOrthonormalFrameError",
    "ProfileRangeError",
    "PoleError",
    "CoincidentSolutionsError",
    "SingularMatrixError",
    "DegenerateInputError",
    "IntegrationDriftError",
    "ExprSyntaxError",
    "UnknownIdentifierError",
    "EvalDomainError",
    # expressions
    "Expression",
    "parse_expression",
    "eval_expression",
    "eval_expression_array",
    "to_text",
    # intrinsic data
    "ConstantProfile",
    "HelixSpec",
    "ExpressionPair",
    "TabulatedProfile",
    "ArcLengthGrid",
    "eval_profile",
    "profile_arrays",
    "accumulated_torsion",
    # direct frame route
    "FrameSample",
    "FrameSamples",
    "CurveSamples",
    "identity_frame",
    "frame_residual",
    "fs_rhs",
    "integrate_fs",
    "integrate_tangent",
    # stereographic route
    "SignVariant",
    "MobiusPair",
    "FundamentalMatrix",
    "FundamentalSamples",
    "INFINITY",
    "wz_from_frame",
    "frame_from_wz",
    "riccati_rhs",
    "generator",
    "linear_rhs",
    "integrate_fundamental",
    "mobius_eval",
    "scheffers_tangent",
    "tangent_components",
    "reconstruct_curve",
    "riccati_from_linear_u",
    # helix closed forms
    "HelixDerived",
    "helix_derived",
    "scaled_sin",
    "scaled_cos",
    "helix_w_solution",
    "closed_form_tangent",
    "closed_form_curve",
    "fundamental_closed_form",
    "fundamental_closed_form_samples",
    "separable_fundamental",
    "real_helix_oracle",
    # diagnostics
    "ResidualReport",
    "AlignmentResult",
    "make_report",
    "sphere_residual",
    "fourth_order_residual",
    "linear_companion_residual",
    "wronskian_residual",
    "align_curves",
    "align_to_axis",
    "convergence_order",
    # kernels
    "BACKEND",
    "available_backends",
]
