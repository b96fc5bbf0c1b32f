"""
    Gray scale images

    8-bit binary PGM exports of amplitudes, phases, far fields, holograms
    and interferograms.
"""

# ==============================================================================
# Imports
# ==============================================================================

import logging
from pathlib import Path

import numpy as np
from PIL import Image

from field import ComplexField
from hologram import HologramFunction

# ==============================================================================
# Constants
# ==============================================================================

GAMMA = 0.3  # Far-field display exponent
LEVELS = 255

logger = logging.getLogger(__name__)

# ==============================================================================
# Functions
# ==============================================================================


def to_gray(data: np.ndarray, low: float = None, high: float = None) -> np.ndarray:
    """Linear map of [low, high] onto 0..255"""
    data = np.asarray(data, dtype=float)
    low = float(np.min(data)) if low is None else low
    high = float(np.max(data)) if high is None else high
    if high <= low:
        return np.zeros(data.shape, dtype=np.uint8)
    scaled = np.clip((data - low) / (high - low), 0, 1)
    return np.round(LEVELS * scaled).astype(np.uint8)


def amplitude_gray(field: ComplexField) -> np.ndarray:
    """Amplitude normalised to its maximum"""
    return to_gray(field.amplitude, 0.0)


def phase_gray(field: ComplexField) -> np.ndarray:
    """Phase with [-pi, pi] onto 0..255"""
    return to_gray(field.phase, -np.pi, np.pi)


def farfield_gray(field: ComplexField, gamma: float = GAMMA) -> np.ndarray:
    """Nonlinear display amplitude^gamma"""
    return to_gray(field.amplitude ** gamma, 0.0)


def hologram_gray(hologram: HologramFunction) -> np.ndarray:
    """round(255 f / sigma)"""
    return hologram.to_gray()


def write_pgm(gray: np.ndarray, path) -> Path:
    """Binary (P5) PGM"""
    path = Path(path)
    if path.suffix != ".pgm":
        path = path.with_name(path.name + ".pgm")
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(np.ascontiguousarray(gray, dtype=np.uint8)).save(path, format="PPM")
    logger.info("File: %s has been saved", path)
    return path


def write_field_pair(field: ComplexField, stem) -> tuple:
    """Amplitude and phase images stem_amp.pgm, stem_phase.pgm"""
    stem = Path(stem)
    amp = write_pgm(amplitude_gray(field), stem.with_name(stem.name + "_amp"))
    phase = write_pgm(phase_gray(field), stem.with_name(stem.name + "_phase"))
    return amp, phase
