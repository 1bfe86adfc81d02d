"""Occupation spectra, entanglement entropy, and charge cumulants.

Eigenvalues nu_j of a region's correlation matrix act as independent
Bernoulli modes: the entanglement entropy is the sum of binary entropies
-[nu ln nu + (1-nu) ln(1-nu)] and the particle-number mean and variance are
sum(nu) and sum(nu(1-nu)). All entropies are in nats.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.special import xlogy

from .errors import InvalidCorrelationError
from .kernel import CorrelationMatrix

#: tolerated eigenvalue excursion outside [0, 1] before clipping
EIGENVALUE_TOL = 1e-10
#: slack used when setting the report's inequality flags
BOUND_FLAG_TOL = 1e-12
#: coefficient of the variance lower bound S_A >= 4 ln(2) C_2
VARIANCE_BOUND_COEFF = 4.0 * math.log(2.0)


@dataclass(frozen=True, eq=False)
class OccupationSpectrum:
    """Mode occupations nu_j in [0, 1], stored in descending order."""

    values: np.ndarray

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=float))[::-1].copy()
        if v.size == 0:
            raise ValueError("spectrum must not be empty")
        if v[-1] < 0.0 or v[0] > 1.0:
            raise ValueError("occupations must lie in [0, 1]")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class EntropyReport:
    """Entropy and charge-statistics bundle for one instance (nats).

    ``S_res`` always equals ``S_A - S_m``; ``delta_S`` is the discrete
    maximum-entropy bound on ``S_m`` at the instance's variance.
    ``S_m_asymptotic`` carries the Gaussian reference 0.5 ln(2 pi e C_2)
    when an analytic model attaches one.
    """

    S_A: float
    C_1: float
    C_2: float
    S_m: float
    S_res: float
    delta_S: float
    bound_gaussian_ok: bool
    bound_variance_ok: bool
    S_m_asymptotic: Optional[float] = None


def occupation_spectrum(corr: CorrelationMatrix) -> OccupationSpectrum:
    """Eigenvalues of a correlation matrix, validated and clipped to [0, 1].

    Excursions up to EIGENVALUE_TOL outside [0, 1] are round-off and are
    clipped exactly onto the boundary; anything larger raises
    InvalidCorrelationError.
    """
    vals = np.linalg.eigvalsh(corr.matrix)
    low, high = float(vals.min()), float(vals.max())
    if low < -EIGENVALUE_TOL or high > 1.0 + EIGENVALUE_TOL:
        raise InvalidCorrelationError(
            f"eigenvalues outside [0, 1] beyond tolerance: min {low:.3e}, max {high:.3e}"
        )
    return OccupationSpectrum(np.clip(vals, 0.0, 1.0))


def entropy_from_spectrum(spectrum: OccupationSpectrum) -> float:
    """Entanglement entropy -sum[nu ln nu + (1-nu) ln(1-nu)] in nats.

    Occupations exactly 0 or 1 contribute exactly zero (xlogy branches,
    no epsilon regularization).
    """
    v = spectrum.values
    return float(-(xlogy(v, v) + xlogy(1.0 - v, 1.0 - v)).sum()) + 0.0


def cumulants(spectrum: OccupationSpectrum) -> Tuple[float, float]:
    """Mean C_1 = sum(nu) and variance C_2 = sum(nu(1-nu)) of the region charge."""
    v = spectrum.values
    return float(v.sum()), float((v * (1.0 - v)).sum())


def assemble_report(
    s_a: float,
    c_1: float,
    c_2: float,
    s_m: float,
    s_res: Optional[float] = None,
    s_m_asymptotic: Optional[float] = None,
) -> EntropyReport:
    """Fill an EntropyReport from its independent fields and set bound flags."""
    from . import fcs  # deferred: fcs builds on this module's types

    if s_res is None:
        s_res = s_a - s_m
    delta_s = fcs.gaussian_bound(c_2)
    return EntropyReport(
        S_A=s_a,
        C_1=c_1,
        C_2=c_2,
        S_m=s_m,
        S_res=s_res,
        delta_S=delta_s,
        bound_gaussian_ok=bool(s_m <= delta_s + BOUND_FLAG_TOL),
        bound_variance_ok=bool(s_a + BOUND_FLAG_TOL >= VARIANCE_BOUND_COEFF * c_2),
        S_m_asymptotic=s_m_asymptotic,
    )


def report(corr: CorrelationMatrix) -> EntropyReport:
    """Full entropy report of a correlation matrix.

    Combines the spectral entropy/cumulants with the exact charge
    distribution from the counting-statistics module, then checks both
    inequalities: S_m <= delta_S and S_A >= 4 ln(2) C_2 (the latter is a
    theorem for free fermions and must come out true).
    """
    from . import fcs  # deferred: fcs builds on this module's types

    spec = occupation_spectrum(corr)
    s_a = entropy_from_spectrum(spec)
    c_1, c_2 = cumulants(spec)
    dist = fcs.charge_distribution(spec)
    s_m = fcs.measurement_entropy(dist)
    s_res = fcs.accessible_entropy(s_a, s_m)
    return assemble_report(s_a, c_1, c_2, s_m, s_res=s_res)
