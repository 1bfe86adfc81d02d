"""Closed-form reference models for entropy and charge statistics.

Four settings admit analytic generating functions or distributions and are
used to check the numerical machinery at scales the exact oracle cannot
reach: a quantum point contact switched open for a finite time window, a
dc-biased contact (binomial transfer statistics), a chiral Luttinger liquid,
and the asymptotic trace formula for d-dimensional Fermi seas with its
boundary-overlap coefficients.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.special import gammaln, xlogy

from . import fcs
from .errors import NumericalFailureError
from .spectrum import EntropyReport, assemble_report

_TWO_PI_E = 2.0 * math.pi * math.e

#: quadrature defaults for the Fourier inversion of non-polynomial chi
FOURIER_GRID_START = 4096
FOURIER_TAIL_CUTOFF = 1e-16
FOURIER_RTOL = 1e-6
FOURIER_MAX_TERMS = 100_000
FOURIER_MAX_GRID = 1 << 22


@dataclass(frozen=True)
class QpcSwitchParams:
    """Point contact opened at transmission D for a time window.

    ``ratio`` is the window length over the switching-time cutoff and must
    exceed 1; the generated charge variance grows with its logarithm.
    """

    transmission: float
    ratio: float

    def __post_init__(self):
        if not 0.0 <= self.transmission <= 1.0:
            raise ValueError(f"transmission must lie in [0, 1], got {self.transmission}")
        if not self.ratio > 1.0:
            raise ValueError(f"time ratio must exceed 1, got {self.ratio}")


@dataclass(frozen=True)
class WidomSpec:
    """Leading and log-correction coefficients of the asymptotic trace formula.

    For Tr f(P_Gamma P_LA P_Gamma) = c1 f(1) L^d + c2 U(f) L^{d-1} ln L + o(.),
    with U the fixed boundary functional; ``u_of_lambda`` evaluates the
    closed-form value -lambda^2/2 that U takes on the counting function.
    """

    d: int
    c1: float
    c2: float
    u_of_lambda: Callable[[float], float]


def qpc_switch_chi(params: QpcSwitchParams, lam) -> Union[complex, np.ndarray]:
    """Generating function of the charge passed through a switched contact.

    chi(lambda) = exp(-lambda_*^2 ln(ratio) / (2 pi^2)) with the transmission
    entering through sin(lambda_*/2) = sqrt(D) sin(lambda/2); the principal
    branch keeps lambda_* in [-pi, pi], making chi real, even, and 2pi
    periodic. At D = 1 it is exactly Gaussian in lambda on [-pi, pi].
    """
    lam_arr = np.asarray(lam, dtype=float)
    lam_star = 2.0 * np.arcsin(np.sqrt(params.transmission) * np.sin(lam_arr / 2.0))
    chi = np.exp(-(lam_star**2) * math.log(params.ratio) / (2.0 * np.pi**2))
    if lam_arr.ndim == 0:
        return complex(chi)
    return chi


def _symmetric_charge_probabilities(
    chi_fn: Callable[[np.ndarray], np.ndarray],
    n_grid: int = FOURIER_GRID_START,
    tail: float = FOURIER_TAIL_CUTOFF,
    rtol: float = FOURIER_RTOL,
) -> Tuple[float, np.ndarray]:
    """Invert a real, even, 2pi-periodic chi to (S_m, probabilities n >= 0).

    p_n = (1/2pi) integral chi(lambda) cos(n lambda) d lambda on [-pi, pi],
    evaluated by the periodic trapezoid rule. Terms are accumulated outward
    from n = 0 and truncated at the first p_n below ``tail`` (the asymptotic
    chi is not an exact characteristic function, so beyond the truncation
    point coefficients may turn negative). The grid is doubled until S_m is
    stable to ``rtol``.
    """
    prev_s_m = None
    while True:
        lam = -np.pi + 2.0 * np.pi * np.arange(n_grid) / n_grid
        chi_vals = np.real(chi_fn(lam))
        probs = []
        n = 0
        while True:
            p_n = float(np.mean(chi_vals * np.cos(n * lam)))
            if p_n < tail:
                break
            probs.append(p_n)
            n += 1
            if n > FOURIER_MAX_TERMS:
                raise NumericalFailureError(
                    "charge distribution tail did not fall below the cutoff"
                )
        if not probs:
            raise NumericalFailureError("no charge weight above the tail cutoff")
        p = np.array(probs)
        s_m = float(-(xlogy(p[0], p[0]) + 2.0 * xlogy(p[1:], p[1:]).sum()))
        if prev_s_m is not None and abs(s_m - prev_s_m) < rtol:
            return s_m, p
        prev_s_m = s_m
        n_grid *= 2
        if n_grid > FOURIER_MAX_GRID:
            raise NumericalFailureError("Fourier inversion did not converge under grid doubling")


def _gaussian_entropy(c_2: float) -> Optional[float]:
    """Differential-entropy reference 0.5 ln(2 pi e C_2); None at zero variance."""
    if c_2 <= 0.0:
        return None
    return 0.5 * math.log(_TWO_PI_E * c_2)


def qpc_switch_report(params: QpcSwitchParams) -> EntropyReport:
    """Entropy report for the switched point contact.

    C_2 = D ln(ratio)/pi^2 and the full generated entropy is S = (pi^2/3) C_2;
    S_m comes from numerical Fourier inversion of :func:`qpc_switch_chi` and
    approaches the attached Gaussian reference 0.5 ln(2 pi e C_2) as the
    ratio grows.
    """
    c_2 = params.transmission * math.log(params.ratio) / np.pi**2
    s_a = (np.pi**2 / 3.0) * c_2
    if params.transmission == 0.0:
        s_m = 0.0
    else:
        s_m, _ = _symmetric_charge_probabilities(lambda lam: qpc_switch_chi(params, lam))
    return assemble_report(s_a, 0.0, c_2, s_m, s_m_asymptotic=_gaussian_entropy(c_2))


def binomial_report(n_attempts: int, transmission: float) -> EntropyReport:
    """Entropy report for N independent transmission attempts at probability D.

    The transferred charge is binomial, S_m is its exact Shannon entropy,
    and the generated entanglement entropy is N times the binary entropy of
    D. The large-N Gaussian value 0.5 ln(2 pi e D(1-D) N) is attached for
    comparison.
    """
    if n_attempts < 1:
        raise ValueError("n_attempts must be at least 1")
    if not 0.0 <= transmission <= 1.0:
        raise ValueError(f"transmission must lie in [0, 1], got {transmission}")
    n = np.arange(n_attempts + 1)
    log_pmf = (
        gammaln(n_attempts + 1.0)
        - gammaln(n + 1.0)
        - gammaln(n_attempts - n + 1.0)
        + xlogy(n, transmission)
        + xlogy(n_attempts - n, 1.0 - transmission)
    )
    p = np.exp(log_pmf)
    s_m = float(-xlogy(p, p).sum()) + 0.0
    binary_entropy = float(-(xlogy(transmission, transmission) + xlogy(1.0 - transmission, 1.0 - transmission)))
    s_a = n_attempts * binary_entropy
    c_1 = n_attempts * transmission
    c_2 = n_attempts * transmission * (1.0 - transmission)
    return assemble_report(s_a, c_1, c_2, s_m, s_m_asymptotic=_gaussian_entropy(c_2))


def luttinger_report(interaction: float, kf_length: float) -> EntropyReport:
    """Entropy report for a region of a chiral Luttinger liquid.

    The bosonized generating function is Gaussian with mean C_1 = k_F L/pi
    and variance C_2 = (g/(2 pi)) ln(k_F L), so S_m is taken as the Gaussian
    entropy 0.5 ln(2 pi e C_2); the entanglement entropy reference is the
    unit-central-charge form (1/3) ln(k_F L).

    Notes
    -----
    At g = 1 the variance prefactor 1/(2 pi) does not match the
    free-fermion value 1/pi^2 measured on the lattice sine kernel; the
    formula is implemented as stated and the convention mismatch is
    documented rather than rescaled away. At k_F L = 1 the variance
    vanishes and S_m falls back to the discrete floor
    0.5 ln(2 pi e / 12) instead of the divergent Gaussian form.
    """
    if interaction <= 0:
        raise ValueError(f"interaction parameter must be positive, got {interaction}")
    if kf_length < 1.0:
        raise ValueError(f"k_F L must be at least 1, got {kf_length}")
    c_1 = kf_length / math.pi
    c_2 = interaction * math.log(kf_length) / (2.0 * math.pi)
    s_a = math.log(kf_length) / 3.0
    gaussian = _gaussian_entropy(c_2)
    s_m = gaussian if gaussian is not None else fcs.gaussian_bound(0.0)
    return assemble_report(s_a, c_1, c_2, s_m)


def widom_coefficients(region_extent, sea_extent, d: int) -> WidomSpec:
    """Coefficients c1, c2 for intervals (d=1) or axis-aligned rectangles (d=2).

    c1 is the phase-space volume |A||Gamma|/(2 pi)^d. c2 is the boundary
    overlap integral (2 pi)^-(d+1) times the integral of |n_x . n_p| over
    both boundaries: for intervals this is the constant 1/pi^2, for
    rectangles 4 (a1 g1 + a2 g2)/(2 pi)^3 since only parallel side pairs
    contribute. Degenerate (zero-measure) sets get c2 = 0.

    Parameters
    ----------
    region_extent, sea_extent : float or pair of floats
        Side lengths of A and Gamma (scalars in d=1).
    d : int
        Spatial dimension, 1 or 2.
    """
    if d == 1:
        a = float(region_extent)
        g = float(sea_extent)
        if a < 0 or g < 0:
            raise ValueError("extents must be nonnegative")
        c1 = a * g / (2.0 * math.pi)
        c2 = 1.0 / math.pi**2 if a > 0 and g > 0 else 0.0
    elif d == 2:
        a1, a2 = (float(v) for v in region_extent)
        g1, g2 = (float(v) for v in sea_extent)
        if min(a1, a2, g1, g2) < 0:
            raise ValueError("extents must be nonnegative")
        c1 = a1 * a2 * g1 * g2 / (2.0 * math.pi) ** 2
        if min(a1, a2, g1, g2) > 0:
            c2 = 4.0 * (a1 * g1 + a2 * g2) / (2.0 * math.pi) ** 3
        else:
            c2 = 0.0
    else:
        raise ValueError(f"only d = 1 and 2 are supported, got {d}")
    return WidomSpec(d=d, c1=c1, c2=c2, u_of_lambda=lambda lam: -0.5 * lam * lam)


def counting_function(lam: float) -> Callable[[np.ndarray], np.ndarray]:
    """The function f(t) = ln(1 + t (e^{i lambda} - 1)) fed to the trace formula.

    Requires |lambda| < pi: at the closed form's endpoints the chord from 1
    to e^{i lambda} passes through zero and the logarithm branches.
    """
    if not abs(lam) < math.pi:
        raise ValueError(f"|lambda| must be below pi, got {lam}")
    factor = np.exp(1j * lam) - 1.0

    def f(t: np.ndarray) -> np.ndarray:
        return np.log(1.0 + np.asarray(t, dtype=complex) * factor)

    return f


def widom_U(f: Callable[[np.ndarray], np.ndarray], n_nodes: int = 400) -> float:
    """Boundary functional U(f) = integral_0^1 (f(t) - t f(1)) / (t(1-t)) dt.

    Gauss-Legendre quadrature of the real part with at least 200 nodes; the
    integrand has removable endpoint singularities and open quadrature never
    evaluates them. Requires f(0) = 0. For the counting function the value
    is -lambda^2/2.
    """
    if n_nodes < 200:
        raise ValueError("at least 200 quadrature nodes are required")
    f0 = complex(np.asarray(f(np.array([0.0])))[0])
    if abs(f0) > 1e-12:
        raise ValueError(f"f(0) must vanish, got {f0!r}")
    f1 = complex(np.asarray(f(np.array([1.0])))[0])
    nodes, weights = np.polynomial.legendre.leggauss(int(n_nodes))
    t = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    integrand = np.real((np.asarray(f(t)) - t * f1) / (t * (1.0 - t)))
    return float(integrand @ w)
