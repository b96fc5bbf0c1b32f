"""
    CSV records

    States, sweeps, complex grids, hologram maps and wavefront error maps
    to and from CSV through pandas.
"""

# ==============================================================================
# Imports
# ==============================================================================

import logging
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import pandas as pd

from errors import ConfigError
from field import ComplexField
from hologram import HologramFunction
from states import SuperpositionState

# ==============================================================================
# Constants
# ==============================================================================

FLOAT_FORMAT = "%.12g"
COEFFICIENT_FORMAT = "%.17g"  # Round-trips a double exactly

STATE_COLUMNS = ["basis_id", "member_id", "re_c1", "im_c1", "re_c0", "im_c0", "re_cm1", "im_cm1"]
SWEEP_COLUMNS = [
    "axis_value",
    "basis_id",
    "member_id",
    "P",
    "precondition_flag",
    "grid_rows",
    "grid_cols",
    "tilt_waves",
]

logger = logging.getLogger(__name__)

# ==============================================================================
# Functions
# ==============================================================================


def _write(data_frame: pd.DataFrame, path, float_format: str = FLOAT_FORMAT, **kwargs) -> Path:
    """Deterministic CSV output"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data_frame.to_csv(path, float_format=float_format, lineterminator="\n", **kwargs)
    logger.info("File: %s has been saved", path)
    return path


def states_frame(states: Iterable[SuperpositionState]) -> pd.DataFrame:
    """One row per state with real and imaginary coefficient parts"""
    rows = []
    for state in states:
        row = [state.basis_id, state.member_id]
        for c in state.coefficients:
            row.extend([c.real, c.imag])
        rows.append(row)
    return pd.DataFrame(rows, columns=STATE_COLUMNS)

def write_states(states: Iterable[SuperpositionState], path) -> Path:
    """States CSV, coefficients at full double precision"""
    return _write(states_frame(states), path, COEFFICIENT_FORMAT, index=False)


def sweep_frame(records: Sequence) -> pd.DataFrame:
    """Long table of SweepRecord rows ordered by flag, axis, basis and member"""
    rows = [row for record in records for row in record.rows()]
    data_frame = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    return data_frame.sort_values(
        ["precondition_flag", "axis_value", "basis_id", "member_id"],
        ascending=[False, True, True, True],
        kind="mergesort",
    ).reset_index(drop=True)


def write_sweep(records: Sequence, path) -> Path:
    """Sweep CSV"""
    return _write(sweep_frame(records), path, index=False)


def write_complex_grid(field: ComplexField, path, aperture_only: bool = True) -> Path:
    """Long table row, col, re, im"""
    rows, cols = np.indices(field.geometry.shape)
    keep = field.geometry.mask if aperture_only else np.ones(field.geometry.shape, bool)
    data_frame = pd.DataFrame(
        {
            "row": rows[keep],
            "col": cols[keep],
            "re": field.values.real[keep],
            "im": field.values.imag[keep],
        }
    )
    return _write(data_frame, path, index=False)


def write_real_grid(grid: np.ndarray, path) -> Path:
    """Plain matrix without header"""
    return _write(pd.DataFrame(np.asarray(grid, dtype=float)), path, index=False, header=False)


def write_hologram(hologram: HologramFunction, path) -> Path:
    """CGH map f [rad]"""
    return write_real_grid(hologram.f, path)


def read_wfe_map(path, geometry=None) -> np.ndarray:
    """Wavefront error grid [waves], rejected under the wfe_map key"""
    try:
        grid = pd.read_csv(path, header=None).to_numpy(dtype=float)
    except ValueError as error:
        raise ConfigError("wfe_map", f"numeric CSV matrix ({error})", str(path)) from error
    if geometry is not None and grid.shape != geometry.shape:
        raise ConfigError("wfe_map", f"shape {geometry.shape}, got {grid.shape}", str(path))
    return grid
