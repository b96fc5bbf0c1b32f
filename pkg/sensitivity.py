"""
    Run sensitivity sweeps

    Fidelity against the phase scaling parameter sigma' (analytic m = -1
    order) and against the reference tilt (full numerical pipeline).
"""

# ==============================================================================
# Imports
# ==============================================================================

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from diffraction import DESIRED_ORDER, analytic_order_field
from errors import OamCghError
from fidelity import overlap, report_from_overlap
from field import GridGeometry
from hologram import ANALYTIC, SIGMA_PRIME, TILT_WAVES
from pipeline import PipelineResult, simulate_pipeline
from states import SuperpositionState, azimuthal_profile, sample_state_on_grid

# ==============================================================================
# Constants
# ==============================================================================

SIGMA_SWEEP = np.round(np.arange(0, 3.83 + 1e-9, 0.01), 2)
TILTS = (10, 30, 50, 75, 100)
RING_SAMPLES = 3600  # Multiple of 3: rotations by 2 pi / 3 map samples onto samples

SIGMA_AXIS = "sigma_prime"
TILT_AXIS = "tilt_waves"

logger = logging.getLogger(__name__)

# ==============================================================================
# Classes
# ==============================================================================


@dataclass(frozen=True)
class SweepRecord:
    """
        Probabilities at one axis value

        probabilities holds (basis_id, member_id, P) per state.
    """

    axis: str
    axis_value: float
    probabilities: Tuple[Tuple[int, str, float], ...]
    precondition: bool = False
    tilt_waves: float = TILT_WAVES
    grid_rows: int = 0
    grid_cols: int = 0

    def probability(self, label: str) -> float:
        """P of a state given its label (c3, a, b1...)"""
        for basis_id, member_id, p in self.probabilities:
            if (member_id if basis_id == 0 else f"{member_id}{basis_id}") == label:
                return p
        raise KeyError(label)

    def basis_probabilities(self, basis_id: int) -> List[float]:
        """P of every member of one basis"""
        return [p for b, _, p in self.probabilities if b == basis_id]

    def rows(self) -> List[dict]:
        """One flat row per state"""
        return [
            {
                "axis_value": self.axis_value,
                "basis_id": basis_id,
                "member_id": member_id,
                "P": p,
                "precondition_flag": int(self.precondition),
                "grid_rows": self.grid_rows,
                "grid_cols": self.grid_cols,
                "tilt_waves": self.tilt_waves,
            }
            for basis_id, member_id, p in self.probabilities
        ]


# ==============================================================================
# Functions
# ==============================================================================


def check_axis(values: Sequence[float], name: str) -> np.ndarray:
    """Sweep axes must be strictly increasing"""
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise ValueError(f"{name} sweep needs at least one value")
    if np.any(np.diff(values) <= 0):
        raise ValueError(f"{name} sweep must be strictly increasing")
    return values


def analytic_generated(amplitude, phase, sigma_prime: float) -> np.ndarray:
    """
        m = -1 field of an unpreconditioned hologram of A exp(i Phi)

        The hologram records -Phi; vanishing sigma' takes the J1(x) ~ x/2 limit.
    """
    ratio = amplitude / np.max(amplitude)
    if sigma_prime == 0:
        return ratio * np.exp(1j * phase)
    return analytic_order_field(DESIRED_ORDER, ratio, -phase, sigma_prime)


def analytic_probability(state: SuperpositionState, sigma_prime: float, grid=None, **metadata):
    """P of the analytic m = -1 field, on a ring or on a grid"""
    if grid is None:
        profile = azimuthal_profile(state, RING_SAMPLES)
        amplitude, phase = profile.amplitude, profile.phase
        theory = profile.values()
    else:
        sampled = sample_state_on_grid(state, grid)
        mask = grid.mask
        amplitude, phase = sampled.amplitude[mask], sampled.phase[mask]
        theory = sampled.values[mask]
    generated = analytic_generated(amplitude, phase, sigma_prime)
    return report_from_overlap(
        *overlap(theory, generated), label=state.label, sigma_prime=sigma_prime, **metadata
    )


def sweep_sigma(
    states: Sequence[SuperpositionState],
    sigma_primes: Sequence[float] = SIGMA_SWEEP,
    grid: Optional[GridGeometry] = None,
    tilt_waves: float = TILT_WAVES,
) -> List[SweepRecord]:
    """
        P(sigma') of every state for the analytic m = -1 order

        I_max is taken as 4 a_max^2, the large-tilt limit.
    """
    sigma_primes = check_axis(sigma_primes, SIGMA_AXIS)
    rows, cols = (0, 0) if grid is None else grid.shape
    records = []
    for sigma_prime in sigma_primes:
        probabilities = tuple(
            (
                state.basis_id,
                state.member_id,
                analytic_probability(state, float(sigma_prime), grid).probability,
            )
            for state in states
        )
        records.append(
            SweepRecord(SIGMA_AXIS, float(sigma_prime), probabilities, False, tilt_waves, rows, cols)
        )
    logger.info("sigma' sweep: %d states x %d values", len(states), len(sigma_primes))
    return records


def sweep_tilt(
    state: SuperpositionState,
    tilts: Sequence[float] = TILTS,
    grid: GridGeometry = None,
    sigma_prime: float = SIGMA_PRIME,
    precondition_flags: Sequence[bool] = (True, False),
    i_max_mode: str = ANALYTIC,
    workers: int = 1,
    on_result: Callable[[PipelineResult], None] = None,
    wfe_map: np.ndarray = None,
) -> List[SweepRecord]:
    """
        P(N_t) of one state through the numerical pipeline, one series per
        precondition flag

        on_result sees every PipelineResult in axis order, in the calling thread.
        A point that raises OamCghError is logged and left out of the records.
    """
    tilts = check_axis(tilts, TILT_AXIS)
    grid = GridGeometry() if grid is None else grid
    points = list(product(precondition_flags, tilts))

    def run(point):
        flag, tilt = point
        try:
            return simulate_pipeline(
                state, sigma_prime, float(tilt), flag, grid, i_max_mode, wfe_map
            )
        except OamCghError as error:
            logger.error("N_t=%g precondition=%s failed: %s", tilt, flag, error)
            return None

    records = []
    for (flag, tilt), result in zip(points, run_points(run, points, workers)):
        if result is None:
            continue
        if on_result is not None:
            on_result(result)
        p = result.report.probability
        records.append(
            SweepRecord(
                TILT_AXIS,
                float(tilt),
                ((state.basis_id, state.member_id, p),),
                flag,
                float(tilt),
                grid.rows,
                grid.cols,
            )
        )
    return records


def run_points(function, points, workers: int = 1) -> Iterator:
    """Results in point order; several workers share a thread pool"""
    if workers <= 1:
        yield from map(function, points)
        return
    with ThreadPoolExecutor(max_workers=workers) as executor:
        yield from executor.map(function, points)


def series(records: Sequence[SweepRecord], label: str, precondition: bool = None):
    """(axis values, P) of one state, optionally for one precondition flag"""
    chosen = [r for r in records if precondition is None or r.precondition == precondition]
    return (
        np.array([r.axis_value for r in chosen]),
        np.array([r.probability(label) for r in chosen]),
    )
