"""Curvature, Cotton tensors, solitons, and Cotton flow on homogeneous 3-geometries."""

from .errors import (
    AssertionFailure,
    Cotton3Error,
    DegenerateMetric,
    InconsistentStructure,
    JacobiViolation,
    NoStructure,
    SingularMetric,
)
from .frame_algebra import (
    DEFAULT_TOL,
    FrameVector,
    MetricLieAlgebra3,
    SymBilinear,
    Tensor3,
    ValidityReport,
    Violation,
    bracket,
    from_kenmotsu_params,
    from_nonunimodular,
    jacobi_residual,
    validate,
)
from .connection_curvature import (
    CONSTANT_CURVATURE,
    NOT_SYMMETRIC,
    PRODUCT_H2XR,
    SYMMETRIC_OTHER,
    ConnectionTable,
    CurvaturePack,
    GeometryClass,
    ParallelCheck,
    classify_geometry,
    cov_deriv_sym2,
    curvature,
    levi_civita,
    ricci_parallel_check,
    ricci_spectrum,
    sym3_eigenvalues,
)
from .almost_kenmotsu import (
    AKStructure,
    HParallelCheck,
    XiEigenReport,
    adapted_connection_table,
    check_h_parallel,
    detect_structure,
    geodesic_grid,
    ricci_closed_form,
    structure_residuals,
    xi_eigenvector_analysis,
)
from .cotton import (
    CottonPack,
    cotton2_closed_form,
    cotton2_from_cotton3,
    cotton3_oracle,
    cotton_pack,
)
from .soliton import (
    EXPANDING,
    INFEASIBLE,
    SHRINKING,
    STEADY,
    TRIVIAL_ONLY,
    SolitonProblem,
    SolitonSolution,
    TheoremCheck,
    TheoremReport,
    assemble_system,
    lie_derivative_metric,
    reproduce_theorems,
    solve,
    soliton_existence_survey,
    soliton_residual,
)
from .cotton_flow import (
    FlowResult,
    FlowState,
    export_trajectory,
    flow_run,
    flow_step,
    make_state,
)

__version__ = "0.1.0"

__all__ = [
    "AKStructure",
    "AssertionFailure",
    "CONSTANT_CURVATURE",
    "ConnectionTable",
    "Cotton3Error",
    "CottonPack",
    "CurvaturePack",
    "DEFAULT_TOL",
    "DegenerateMetric",
    "EXPANDING",
    "FlowResult",
    "FlowState",
    "FrameVector",
    "GeometryClass",
    "HParallelCheck",
    "INFEASIBLE",
    "InconsistentStructure",
    "JacobiViolation",
    "MetricLieAlgebra3",
    "NOT_SYMMETRIC",
    "NoStructure",
    "PRODUCT_H2XR",
    "ParallelCheck",
    "SHRINKING",
    "STEADY",
    "SYMMETRIC_OTHER",
    "SingularMetric",
    "SolitonProblem",
    "SolitonSolution",
    "SymBilinear",
    "TRIVIAL_ONLY",
    "Tensor3",
    "TheoremCheck",
    "TheoremReport",
    "ValidityReport",
    "Violation",
    "XiEigenReport",
    "adapted_connection_table",
    "assemble_system",
    "bracket",
    "check_h_parallel",
    "classify_geometry",
    "cotton2_closed_form",
    "cotton2_from_cotton3",
    "cotton3_oracle",
    "cotton_pack",
    "cov_deriv_sym2",
    "curvature",
    "detect_structure",
    "export_trajectory",
    "flow_run",
    "flow_step",
    "from_kenmotsu_params",
    "from_nonunimodular",
    "geodesic_grid",
    "jacobi_residual",
    "levi_civita",
    "lie_derivative_metric",
    "make_state",
    "reproduce_theorems",
    "ricci_closed_form",
    "ricci_parallel_check",
    "ricci_spectrum",
    "solve",
    "soliton_existence_survey",
    "soliton_residual",
    "structure_residuals",
    "sym3_eigenvalues",
    "validate",
    "xi_eigenvector_analysis",
]
