"""
    Thin phase hologram diffraction

    Analytic description of the diffracted orders (Bessel series, modulo 2 pi
    sinc series) and the numerical far-field model: centred unitary FFT,
    hard-edged order window, recentring and interferogram synthesis.
"""

# ==============================================================================
# Imports
# ==============================================================================

import logging
from dataclasses import dataclass
from typing import Iterable, List

import numpy as np
from numpy import fft

from errors import GeometryError, OrderWindowError
from field import FAR_FIELD, PUPIL, ComplexField, GridGeometry
from hologram import HologramFunction
from support import bessel_jm, wrap_phase

# ==============================================================================
# Constants
# ==============================================================================

DESIRED_ORDER = -1
HORIZONTAL = "horizontal"  # Reference tilt along the columns
VERTICAL = "vertical"  # Reference tilt along the rows
AXES = (HORIZONTAL, VERTICAL)

RING_SAMPLES = 8192  # Azimuthal samples for the sinc series check

logger = logging.getLogger(__name__)

# ==============================================================================
# Classes
# ==============================================================================


@dataclass(frozen=True)
class OrderSpec:
    """
        Far-field window around one diffracted order

        offset_bins is the integer column offset of the window centre from
        the zero-frequency bin, residual_bins the sub-bin remainder of the
        exact order position.
    """

    m: int
    offset_bins: int
    window_width_bins: int
    residual_bins: float = 0.0

    @classmethod
    def for_order(cls, m: int, tilt_waves: float, geometry: GridGeometry) -> "OrderSpec":
        """Window one order spacing N_t cols / D wide at the order's carrier bin"""
        spacing = tilt_waves * geometry.cols / geometry.aperture_diameter
        exact = -m * spacing
        offset = int(round(exact))
        return cls(m, offset, max(int(round(spacing)), 1), exact - offset)

    def columns(self, geometry: GridGeometry) -> slice:
        """Window columns in the centred far field"""
        start = geometry.center[1] + self.offset_bins - self.window_width_bins // 2
        stop = start + self.window_width_bins
        if start < 0 or stop > geometry.cols:
            raise OrderWindowError(
                f"order {self.m} window [{start}, {stop}) outside {geometry.cols} columns"
            )
        return slice(start, stop)


# ==============================================================================
# Analytic order model
# ==============================================================================


def analytic_order_amplitude(m: int, a_over_amax, sigma_prime: float):
    """(-1)^m J_m(sigma' a/a_max); equals J1(sigma' a/a_max) for m = -1"""
    return (-1) ** abs(m) * bessel_jm(m, sigma_prime * np.asarray(a_over_amax, dtype=float))


def analytic_order_phase(m: int, phi, a_over_amax, sigma_prime: float, carrier=0.0):
    """phi_m = -m phi + (m + 1) carrier + sigma'/2 (a/a_max)^2"""
    a_over_amax = np.asarray(a_over_amax, dtype=float)
    return -m * np.asarray(phi) + (m + 1) * np.asarray(carrier) + sigma_prime / 2 * a_over_amax ** 2


def analytic_order_field(m: int, a_over_amax, phi, sigma_prime: float, carrier=0.0):
    """Order field a_m exp(-i phi_m), spatially uniform prefactor dropped"""
    amplitude = analytic_order_amplitude(m, a_over_amax, sigma_prime)
    return amplitude * np.exp(-1j * analytic_order_phase(m, phi, a_over_amax, sigma_prime, carrier))


def modulo2pi_order_weights(m_range: Iterable[int], depth: float = 1.0) -> List[float]:
    """
        Amplitude efficiency |sinc(depth - m)| of each order of a modulo 2 pi
        phase ramp reaching depth * 2 pi
    """
    return [float(abs(np.sinc(depth - m))) for m in m_range]


def azimuthal_order_weights(
    l: int, m_range: Iterable[int], depth: float = 1.0, n_samples: int = RING_SAMPLES
) -> List[float]:
    """
        Numerical |c_m| of exp(i depth wrap(l theta)) over exp(i m l theta)
    """
    theta = 2 * np.pi * (np.arange(n_samples) + 0.5) / n_samples
    t = np.exp(1j * depth * wrap_phase(l * theta))
    return [float(abs(np.mean(t * np.exp(-1j * m * l * theta)))) for m in m_range]


def jacobi_anger_series(hologram: HologramFunction, truncation_m: int) -> np.ndarray:
    """
        Truncated order expansion of exp(-i f)

        exp(-i f) = exp(-i sigma'/2 (1 + r^2)) sum_m (-i)^m J_m(sigma' r) exp(i m psi)
        with r = a/a_max and psi = phi - carrier.
    """
    sigma_prime = hologram.sigma_prime
    r = hologram.ratio
    psi = hologram.fringe_phase
    series = np.zeros(r.shape, dtype=complex)
    for m in range(-truncation_m, truncation_m + 1):
        series += (-1j) ** m * bessel_jm(m, sigma_prime * r) * np.exp(1j * m * psi)
    return np.exp(-1j * sigma_prime / 2 * (1 + r ** 2)) * series


def jacobi_anger_check(hologram: HologramFunction, truncation_m: int) -> float:
    """Largest |series - exp(-i f)| inside the aperture"""
    if truncation_m < 0:
        raise ValueError("truncation must be >= 0")
    mask = hologram.geometry.mask
    error = np.abs(jacobi_anger_series(hologram, truncation_m) - np.exp(-1j * hologram.f))
    return float(np.max(error[mask]))


# ==============================================================================
# Numerical propagation
# ==============================================================================


def far_field(field: ComplexField) -> ComplexField:
    """Centred unitary 2-D DFT of a pupil field"""
    field.require_plane(PUPIL)
    values = fft.fftshift(fft.fft2(fft.ifftshift(field.values), norm="ortho"))
    return field.with_values(values, plane_tag=FAR_FIELD)


def back_propagate(farfield: ComplexField) -> ComplexField:
    """Inverse of far_field"""
    farfield.require_plane(FAR_FIELD)
    values = fft.fftshift(fft.ifft2(fft.ifftshift(farfield.values), norm="ortho"))
    return farfield.with_values(values, plane_tag=PUPIL)


def isolate_order(farfield: ComplexField, spec: OrderSpec) -> ComplexField:
    """Keep a full-height window around the order and move it to zero frequency"""
    farfield.require_plane(FAR_FIELD)
    columns = spec.columns(farfield.geometry)
    windowed = np.zeros_like(farfield.values)
    windowed[:, columns] = farfield.values[:, columns]
    recentred = np.roll(windowed, -spec.offset_bins, axis=1)
    logger.debug("Isolated order %d at %+d bins (width %d)", spec.m, spec.offset_bins,
                 spec.window_width_bins)
    return farfield.with_values(recentred, label=f"order {spec.m}")


def remove_residual_tilt(field: ComplexField, residual_bins: float) -> ComplexField:
    """Cancel a sub-bin far-field offset by a pupil phase ramp along the columns"""
    field.require_plane(PUPIL)
    geometry = field.geometry
    ramp = np.exp(-2j * np.pi * residual_bins * geometry.x / geometry.cols)
    return field.with_values(field.values * ramp)


def demodulate(field: ComplexField, spec: OrderSpec) -> ComplexField:
    """Isolate an order, return to the pupil and remove the carrier remainder"""
    pupil = back_propagate(isolate_order(far_field(field), spec))
    return remove_residual_tilt(pupil, spec.residual_bins)


def apply_aperture(field: ComplexField) -> ComplexField:
    """Zero a pupil field outside the aperture"""
    field.require_plane(PUPIL)
    return field.with_values(np.where(field.geometry.mask, field.values, 0))


def synth_interferogram(field: ComplexField, ref_tilt_waves: float, axis: str = VERTICAL):
    """
        Normalised |field + exp(i 2 pi N u / D)|^2 with a unit planar reference

        u is x for a horizontal tilt and y for a vertical one.
    """
    field.require_plane(PUPIL)
    if axis not in AXES:
        raise GeometryError(f"axis must be one of {AXES}, got {axis!r}")
    geometry = field.geometry
    u = geometry.x if axis == HORIZONTAL else geometry.y
    reference = np.exp(2j * np.pi * ref_tilt_waves * u / geometry.aperture_diameter)
    pattern = np.abs(field.values + reference) ** 2
    return pattern / np.max(pattern)
