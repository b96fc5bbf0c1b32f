"""
    Computer generated hologram

    Leith-Upatnieks off-axis recording of a field a exp(i phi) with a tilted
    reference of amplitude a_max, displayed on a phase-only SLM whose
    retardance decreases with the recorded intensity: t = exp(-i sigma I/I_max).
"""

# ==============================================================================
# Imports
# ==============================================================================

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from errors import GeometryError, OutOfRangeError, ZeroNormError
from field import ComplexField, GridGeometry
from support import SIGMA_PRIME_MAX, bessel_j, check_sigma_prime, invert_j1

# ==============================================================================
# Constants
# ==============================================================================

ANALYTIC = "analytic-4amax2"
GRID_MAX = "grid-max"
I_MAX_MODES = (ANALYTIC, GRID_MAX)

TILT_WAVES = 100  # Waves of reference tilt across the aperture
SIGMA_PRIME = 1.72  # Preconditioned demonstration value
SIGMA_DEMO = 3.44  # Phase range displayed on the SLM
WFE_PV = 2.15  # Peak-to-valley SLM surface error [waves]
SIGMA_LIMIT = 2 * SIGMA_PRIME_MAX  # Largest sigma on the monotonic branch (analytic I_max)

logger = logging.getLogger(__name__)

# ==============================================================================
# Classes
# ==============================================================================


@dataclass(frozen=True)
class ReferenceWave:
    """
        Tilted plane reference R = b exp(-i carrier)

        The carrier 2 pi N_t x / D runs along the column axis.
    """

    tilt_waves: float = TILT_WAVES
    amplitude: float = 1.0

    def __post_init__(self) -> None:
        if self.tilt_waves < 0:
            raise OutOfRangeError(f"tilt_waves={self.tilt_waves} must be >= 0")
        if self.amplitude <= 0:
            raise OutOfRangeError(f"reference amplitude {self.amplitude} must be > 0")

    def carrier(self, geometry: GridGeometry) -> np.ndarray:
        """Carrier phase 2 pi N_t x / D on the grid [rad]"""
        return 2 * np.pi * self.tilt_waves * geometry.x / geometry.aperture_diameter

    def matched(self, a_max: float) -> "ReferenceWave":
        """Same tilt with b = a_max"""
        return ReferenceWave(self.tilt_waves, a_max)


@dataclass(frozen=True)
class HologramParams:
    """
        Hologram scaling

        sigma is the largest SLM phase excursion, sigma' = 2 sigma a_max^2 / I_max
        the largest Bessel argument. With the analytic I_max = 4 a_max^2,
        sigma' = sigma / 2.
    """

    sigma: float
    i_max_mode: str = ANALYTIC
    precondition: bool = False

    def __post_init__(self) -> None:
        if self.sigma < 0:
            raise OutOfRangeError(f"sigma={self.sigma} must be >= 0")
        if self.i_max_mode not in I_MAX_MODES:
            raise OutOfRangeError(f"i_max_mode must be one of {I_MAX_MODES}")
        if self.precondition and self.i_max_mode == ANALYTIC:
            check_sigma_prime(self.sigma / 2)

    @classmethod
    def from_sigma_prime(cls, sigma_prime: float, i_max_ratio: float = 4.0, **kwargs):
        """Params reaching sigma' given I_max / a_max^2"""
        return cls(sigma=sigma_prime * i_max_ratio / 2, **kwargs)

    @property
    def sigma_prime(self) -> float:
        """sigma' for the analytic I_max"""
        return self.sigma / 2


@dataclass
class HologramFunction:
    """
        CGH map f in [0, sigma], zero outside the aperture

        ratio and fringe_phase keep a/a_max and phi - carrier so the order
        series can be rebuilt from the hologram alone.
    """

    f: np.ndarray
    params: HologramParams
    geometry: GridGeometry
    sigma_prime: float
    i_max: float
    ratio: np.ndarray
    fringe_phase: np.ndarray

    @property
    def sigma(self) -> float:
        """Phase excursion"""
        return self.params.sigma

    @property
    def efficiency(self) -> np.ndarray:
        """Local m = -1 diffraction efficiency J1^2(sigma' a/a_max)"""
        return np.where(self.geometry.mask, bessel_j(1, self.sigma_prime * self.ratio) ** 2, 0)

    @property
    def max_phase_aberration(self) -> float:
        """Largest sigma'/2 (a/a_max)^2 term [rad]"""
        return float(self.sigma_prime / 2 * np.max(self.ratio) ** 2)

    def to_gray(self) -> np.ndarray:
        """8-bit levels round(255 f / sigma)"""
        if self.sigma == 0:
            return np.zeros(self.f.shape, dtype=np.uint8)
        return np.round(255 * self.f / self.sigma).astype(np.uint8)


# ==============================================================================
# Functions
# ==============================================================================


def recording_intensity(a, phi, ref: ReferenceWave, carrier, a_max: float = None):
    """
        I = a^2 + a_max^2 + 2 a a_max cos(phi - carrier)

        The reference amplitude b stands in for a_max unless a_max is given.
    """
    b = ref.amplitude if a_max is None else a_max
    return a ** 2 + b ** 2 + 2 * a * b * np.cos(phi - carrier)


def build_hologram(
    amplitude_grid: np.ndarray,
    phase_grid: np.ndarray,
    ref: ReferenceWave,
    params: HologramParams,
    geometry: GridGeometry,
) -> HologramFunction:
    """f = sigma I / I_max with b = a_max"""
    amplitude_grid = np.asarray(amplitude_grid, dtype=float)
    phase_grid = np.asarray(phase_grid, dtype=float)
    if amplitude_grid.shape != geometry.shape or phase_grid.shape != geometry.shape:
        raise GeometryError("amplitude and phase grids must share the geometry")
    mask = geometry.mask
    a = np.where(mask, amplitude_grid, 0.0)
    a_max = float(np.max(a))
    if a_max <= 0:
        raise ZeroNormError("amplitude grid is zero everywhere")

    carrier = ref.carrier(geometry)
    ref = ref.matched(a_max)
    intensity = recording_intensity(a, phase_grid, ref, carrier)
    if params.i_max_mode == ANALYTIC:
        i_max = 4 * a_max ** 2
    else:
        i_max = float(np.max(intensity[mask]))

    f = np.where(mask, params.sigma * intensity / i_max, 0.0)
    sigma_prime = 2 * params.sigma * a_max ** 2 / i_max
    logger.debug(
        "Hologram: N_t=%.1f sigma=%.4f sigma'=%.4f I_max=%.4g (%s)",
        ref.tilt_waves,
        params.sigma,
        sigma_prime,
        i_max,
        params.i_max_mode,
    )
    return HologramFunction(
        f=f,
        params=params,
        geometry=geometry,
        sigma_prime=sigma_prime,
        i_max=i_max,
        ratio=a / a_max,
        fringe_phase=np.where(mask, phase_grid - carrier, 0.0),
    )


def peak_intensity_ratio(amplitude_grid, phase_grid, ref: ReferenceWave, geometry) -> float:
    """Grid maximum of I / a_max^2, used to solve sigma in grid-max mode"""
    a = np.where(geometry.mask, amplitude_grid, 0.0)
    a_max = float(np.max(a))
    if a_max <= 0:
        raise ZeroNormError("amplitude grid is zero everywhere")
    intensity = recording_intensity(a, phase_grid, ref.matched(a_max), ref.carrier(geometry))
    return float(np.max(intensity[geometry.mask])) / a_max ** 2


def slm_transmittance(hologram: HologramFunction, wfe_map: np.ndarray = None) -> ComplexField:
    """
        t = exp(-i f) inside the aperture

        An SLM surface error W [waves] adds exp(-i 2 pi W).
    """
    phase = hologram.f
    if wfe_map is not None:
        phase = phase + 2 * np.pi * np.asarray(wfe_map, dtype=float)
    values = np.where(hologram.geometry.mask, np.exp(-1j * phase), 0)
    return ComplexField(values, hologram.geometry, label="transmittance")


def precondition(
    amplitude_grid: np.ndarray,
    phase_grid: np.ndarray,
    sigma_prime: float,
    wfe_map: np.ndarray = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
        Preconditioned CGH amplitude and phase

        a / a_max = J1^-1(c A) / sigma' with c = J1(sigma') / A_max, and
        phi = Phi - sigma'/2 (a / a_max)^2 - 2 pi W.

        Returns (a, phi) with a_max = 1
    """
    check_sigma_prime(sigma_prime)
    amplitude_grid = np.asarray(amplitude_grid, dtype=float)
    if np.any(amplitude_grid < 0):
        raise OutOfRangeError("target amplitude must be non-negative")
    a_max = float(np.max(amplitude_grid))
    if a_max <= 0:
        raise ZeroNormError("target amplitude is zero everywhere")

    scale = preconditioning_scale(amplitude_grid, sigma_prime)
    ratio = invert_j1(np.minimum(scale * amplitude_grid, bessel_j(1, sigma_prime)), sigma_prime)
    phase = np.asarray(phase_grid, dtype=float) - sigma_prime / 2 * ratio ** 2
    if wfe_map is not None:
        phase = phase - 2 * np.pi * np.asarray(wfe_map, dtype=float)
    return ratio, phase


def preconditioning_scale(amplitude_grid: np.ndarray, sigma_prime: float) -> float:
    """Scaling c matching the peaks of J1 and A"""
    return bessel_j(1, sigma_prime) / float(np.max(amplitude_grid))


def smooth_wavefront_error(
    geometry: GridGeometry, pv_waves: float = WFE_PV, seed: int = 0
) -> np.ndarray:
    """
        Low-order surface error over the aperture with a given peak-to-valley

        Random mix of tilt, defocus, astigmatism and coma terms.
    """
    rng = np.random.default_rng(seed)
    u = geometry.x / geometry.radius
    v = geometry.y / geometry.radius
    r2 = u ** 2 + v ** 2
    terms = (u, v, 2 * r2 - 1, u ** 2 - v ** 2, 2 * u * v, (3 * r2 - 2) * u, (3 * r2 - 2) * v)
    weights = rng.normal(size=len(terms))
    w = sum(c * t for c, t in zip(weights, terms))
    inside = w[geometry.mask]
    w = (w - inside.min()) / (inside.max() - inside.min()) * pv_waves
    return np.where(geometry.mask, w, 0.0)
