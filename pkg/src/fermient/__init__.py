"""Entanglement, counting statistics, and accessible entropy of free fermions.

The package verifies, numerically and by brute force, that for any state
with a fixed total particle number the entanglement entropy accessible
under local number conservation is S_res = S_A - S_m, where S_m is the
Shannon entropy of the region's charge distribution, and that S_m is capped
by the discrete Gaussian bound 0.5 ln[2 pi e (C_2 + 1/12)].
"""

from ._accel import USING_NUMBA
from .analytic import (
    QpcSwitchParams,
    WidomSpec,
    binomial_report,
    counting_function,
    luttinger_report,
    qpc_switch_chi,
    qpc_switch_report,
    widom_U,
    widom_coefficients,
)
from .errors import (
    ConfigError,
    FermientError,
    InvalidCorrelationError,
    NumberConservationError,
    NumericalFailureError,
)
from .fcs import (
    AccessibleEntropyWarning,
    ChargeDistribution,
    accessible_entropy,
    charge_distribution,
    gaussian_bound,
    generating_function,
    measurement_entropy,
    multi_charge_bound,
)
from .kernel import (
    CorrelationMatrix,
    FermiSeaSpec,
    FiniteRing,
    RegionSpec,
    SineKernel1D,
    SquareSea2D,
    build_correlation,
    finite_ring,
    sine_kernel_1d,
    square_sea_2d,
)
from .oracle import (
    FockState,
    SectorDecomposition,
    accessible_entropy_direct,
    correlation_from_state,
    identity_check,
    random_fixed_number_state,
    random_slater_state,
    reduced_density_matrix,
    sector_decomposition,
    slater_state,
    von_neumann_entropy,
)
from .spectrum import (
    EntropyReport,
    OccupationSpectrum,
    cumulants,
    entropy_from_spectrum,
    occupation_spectrum,
    report,
)
from .sweep import (
    FitResult,
    ScalingModel,
    SweepConfig,
    fit_scaling,
    run_sweep,
    write_csv,
    write_json,
    write_svg,
)

__version__ = "0.1.0"

__all__ = [
    "AccessibleEntropyWarning",
    "ChargeDistribution",
    "ConfigError",
    "CorrelationMatrix",
    "EntropyReport",
    "FermiSeaSpec",
    "FermientError",
    "FiniteRing",
    "FitResult",
    "FockState",
    "InvalidCorrelationError",
    "NumberConservationError",
    "NumericalFailureError",
    "OccupationSpectrum",
    "QpcSwitchParams",
    "RegionSpec",
    "ScalingModel",
    "SectorDecomposition",
    "SineKernel1D",
    "SquareSea2D",
    "SweepConfig",
    "USING_NUMBA",
    "WidomSpec",
    "accessible_entropy",
    "accessible_entropy_direct",
    "binomial_report",
    "build_correlation",
    "charge_distribution",
    "correlation_from_state",
    "counting_function",
    "cumulants",
    "entropy_from_spectrum",
    "finite_ring",
    "fit_scaling",
    "gaussian_bound",
    "generating_function",
    "identity_check",
    "luttinger_report",
    "measurement_entropy",
    "multi_charge_bound",
    "occupation_spectrum",
    "qpc_switch_chi",
    "qpc_switch_report",
    "random_fixed_number_state",
    "random_slater_state",
    "reduced_density_matrix",
    "report",
    "run_sweep",
    "sector_decomposition",
    "sine_kernel_1d",
    "slater_state",
    "square_sea_2d",
    "von_neumann_entropy",
    "widom_U",
    "widom_coefficients",
    "write_csv",
    "write_json",
    "write_svg",
]
