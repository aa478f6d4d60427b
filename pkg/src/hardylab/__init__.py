"""Numerical laboratory for quantum scattering off piecewise-constant
potentials: Jost functions, the S-matrix and its resonance poles, Gamow
states, delta-normalized eigenfunction transforms, and growth diagnostics
that test whether transformed wave functions are Hardy class.
"""

from .analysis import (
    DEFAULT_ARC_RADII,
    ArcScanReport,
    BoundCheck,
    BoundSpec,
    GrowthFit,
    HardyVerdict,
    TimeSignal,
    arc_scan,
    bound_rhs,
    fit_growth,
    hardy_verdict,
    isometry_ratio,
    residue_oracle,
    spectral_evolution,
    time_signal,
    verify_bound,
)
from .errors import (
    ConfigError,
    ConvergenceFailure,
    DivergentIntegrand,
    ExperimentError,
    HardyLabError,
    IllConditionedFit,
    IoError,
    MissingRadius,
    NonIntegerWinding,
    PoleAtRequestedPoint,
    PoleInLowerHalfPlane,
    PoleOnRealAxis,
    SingularMatching,
    TailNotControlled,
    ZeroEnergyOnSheetII,
    ZeroOnContour,
)
from .quadrature import QuadratureConfig, integrate, refine_edges
from .resonances import Resonance, count_zeros, find_resonances, gamow_state
from .scattering import (
    BarrierPotential,
    Eigenfunction,
    JostData,
    ShellPotential,
    SurfacePoint,
    barrier_eigenfunction,
    barrier_reflection_transmission,
    free_eigenfunction,
    jost_coefficients,
    jost_minus,
    jost_plus,
    jost_plus_prime,
    ls_eigenfunction,
    regular_solution,
)
from .svgplot import emit_plot
from .testfuncs import (
    TestFunction,
    conjugate_exponent,
    make_bump,
    make_gaussian,
    make_gs,
    make_hardy_rational,
)
from .transforms import (
    TransformResult,
    fourier_line,
    transform_free,
    transform_ls,
    wavefun_E_to_k,
    wavefun_k_to_E,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # scattering
    "SurfacePoint",
    "ShellPotential",
    "BarrierPotential",
    "JostData",
    "Eigenfunction",
    "jost_plus",
    "jost_minus",
    "jost_plus_prime",
    "jost_coefficients",
    "regular_solution",
    "ls_eigenfunction",
    "free_eigenfunction",
    "barrier_eigenfunction",
    "barrier_reflection_transmission",
    # resonances
    "Resonance",
    "count_zeros",
    "find_resonances",
    "gamow_state",
    # test functions
    "TestFunction",
    "make_bump",
    "make_gs",
    "make_gaussian",
    "make_hardy_rational",
    "conjugate_exponent",
    # quadrature and transforms
    "QuadratureConfig",
    "integrate",
    "refine_edges",
    "TransformResult",
    "transform_free",
    "transform_ls",
    "fourier_line",
    "wavefun_k_to_E",
    "wavefun_E_to_k",
    # analysis
    "BoundSpec",
    "BoundCheck",
    "bound_rhs",
    "verify_bound",
    "ArcScanReport",
    "arc_scan",
    "GrowthFit",
    "fit_growth",
    "HardyVerdict",
    "hardy_verdict",
    "DEFAULT_ARC_RADII",
    "TimeSignal",
    "time_signal",
    "spectral_evolution",
    "residue_oracle",
    "isometry_ratio",
    "emit_plot",
    # errors
    "HardyLabError",
    "ConfigError",
    "ZeroEnergyOnSheetII",
    "SingularMatching",
    "PoleAtRequestedPoint",
    "ZeroOnContour",
    "NonIntegerWinding",
    "ConvergenceFailure",
    "PoleInLowerHalfPlane",
    "DivergentIntegrand",
    "MissingRadius",
    "IllConditionedFit",
    "TailNotControlled",
    "PoleOnRealAxis",
    "ExperimentError",
    "IoError",
]
