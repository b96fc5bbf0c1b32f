"""
    Simulation control

    Numerical generation of a state: sampling, optional preconditioning,
    hologram synthesis, plane-wave illumination, far-field isolation of the
    m = -1 order, return to the pupil and comparison with theory.
"""

# ==============================================================================
# Imports
# ==============================================================================

import logging
from dataclasses import dataclass

import numpy as np

from diffraction import DESIRED_ORDER, OrderSpec, apply_aperture, demodulate, far_field
from fidelity import FidelityReport, probability
from field import ComplexField, GridGeometry
from hologram import (
    ANALYTIC,
    HologramFunction,
    HologramParams,
    ReferenceWave,
    build_hologram,
    peak_intensity_ratio,
    precondition as precondition_cgh,
    slm_transmittance,
)
from states import SuperpositionState, sample_state_on_grid
from support import check_sigma_prime

# ==============================================================================
# Constants
# ==============================================================================

logger = logging.getLogger(__name__)

# ==============================================================================
# Classes
# ==============================================================================


@dataclass
class PipelineResult:
    """Every intermediate of one simulated generation"""

    theory: ComplexField
    hologram: HologramFunction
    transmittance: ComplexField
    farfield: ComplexField
    order: OrderSpec
    generated: ComplexField
    report: FidelityReport


# ==============================================================================
# Functions
# ==============================================================================


def hologram_inputs(theory: ComplexField, sigma_prime: float, precondition: bool, wfe_map=None):
    """
        CGH amplitude and phase that put the theoretical field in the m = -1 order

        The m = -1 order carries exp(-i phi), so the recorded phase is the
        negated field phase.
    """
    amplitude = theory.amplitude
    phase = -theory.phase
    if precondition:
        return precondition_cgh(amplitude, phase, sigma_prime, wfe_map)
    return amplitude, phase


def resolve_params(amplitude, phase, ref, geometry, sigma_prime, i_max_mode, precondition):
    """HologramParams reaching sigma' under the chosen I_max convention"""
    if i_max_mode == ANALYTIC:
        ratio = 4.0
    else:
        ratio = peak_intensity_ratio(amplitude, phase, ref, geometry)
    return HologramParams.from_sigma_prime(
        sigma_prime, ratio, i_max_mode=i_max_mode, precondition=precondition
    )


def synthesize_hologram(
    state: SuperpositionState,
    sigma_prime: float,
    tilt_waves: float,
    precondition: bool,
    grid: GridGeometry,
    i_max_mode: str = ANALYTIC,
    wfe_map: np.ndarray = None,
):
    """
        Theoretical field of a state and the hologram that generates it

        Returns (theory, hologram)
    """
    if precondition:
        check_sigma_prime(sigma_prime)
    theory = sample_state_on_grid(state, grid)
    amplitude, phase = hologram_inputs(theory, sigma_prime, precondition, wfe_map)
    ref = ReferenceWave(tilt_waves)
    params = resolve_params(amplitude, phase, ref, grid, sigma_prime, i_max_mode, precondition)
    return theory, build_hologram(amplitude, phase, ref, params, grid)


def simulate_pipeline(
    state: SuperpositionState,
    sigma_prime: float,
    tilt_waves: float,
    precondition: bool,
    grid: GridGeometry,
    i_max_mode: str = ANALYTIC,
    wfe_map: np.ndarray = None,
) -> PipelineResult:
    """
        Generate a state numerically and score it against theory

        wfe_map [waves] is both applied to the SLM and, when preconditioning,
        compensated in the hologram phase.
    """
    theory, hologram = synthesize_hologram(
        state, sigma_prime, tilt_waves, precondition, grid, i_max_mode, wfe_map
    )
    transmittance = slm_transmittance(hologram, wfe_map)

    farfield = far_field(transmittance)
    order = OrderSpec.for_order(DESIRED_ORDER, tilt_waves, grid)
    generated = apply_aperture(demodulate(transmittance, order))
    generated = generated.with_values(generated.values, label=f"generated {state.label}")

    report = probability(
        theory,
        generated,
        label=state.label,
        sigma_prime=sigma_prime,
        tilt_waves=tilt_waves,
        precondition=precondition,
    )
    logger.info(
        "%s: sigma'=%.3f N_t=%g precondition=%s -> P=%.4f",
        state.label,
        sigma_prime,
        tilt_waves,
        precondition,
        report.probability,
    )
    return PipelineResult(theory, hologram, transmittance, farfield, order, generated, report)
