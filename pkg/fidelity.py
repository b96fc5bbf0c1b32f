"""
    Fidelity of generated fields

    Normalised inner product over the aperture and the probability
    P = |<psi_t|psi_h>|^2 that a generated field is detected in the
    theoretical state.
"""

# ==============================================================================
# Imports
# ==============================================================================

import logging
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from errors import ZeroNormError
from field import PUPIL, ComplexField

# ==============================================================================
# Constants
# ==============================================================================

P_TOL = 1e-9  # Slack above 1 accepted from rounding

logger = logging.getLogger(__name__)

# ==============================================================================
# Classes
# ==============================================================================


@dataclass(frozen=True)
class FidelityReport:
    """Normalised overlap and the detection probability it implies"""

    inner: complex
    norm_t: float
    norm_h: float
    probability: float
    label: str = ""
    sigma_prime: Optional[float] = None
    tilt_waves: Optional[float] = None
    precondition: Optional[bool] = None

    def __post_init__(self) -> None:
        if not 0 <= self.probability <= 1 + P_TOL:
            raise ValueError(f"probability {self.probability} outside [0, 1]")

    def to_dict(self) -> dict:
        """Flat record"""
        record = asdict(self)
        inner = record.pop("inner")
        record["inner_re"] = inner.real
        record["inner_im"] = inner.imag
        return record


# ==============================================================================
# Functions
# ==============================================================================


def norm(values: np.ndarray) -> float:
    """Root of the summed intensity"""
    return float(np.sqrt(np.sum(np.abs(values) ** 2)))


def overlap(theory: np.ndarray, generated: np.ndarray):
    """
        Normalised sum of conj(psi_t) psi_h over samples in row-major order

        Returns (inner, norm_t, norm_h)
    """
    theory = np.ravel(theory)
    generated = np.ravel(generated)
    norm_t, norm_h = norm(theory), norm(generated)
    if norm_t == 0 or norm_h == 0:
        raise ZeroNormError("cannot normalise a field without power")
    return complex(np.vdot(theory, generated)) / (norm_t * norm_h), norm_t, norm_h


def inner_product(psi_t: ComplexField, psi_h: ComplexField) -> complex:
    """<psi_t|psi_h> over the aperture, divided by both norms"""
    return _aperture_overlap(psi_t, psi_h)[0]


def _aperture_overlap(psi_t: ComplexField, psi_h: ComplexField):
    psi_t.geometry.check_same(psi_h.geometry)
    psi_t.require_plane(PUPIL)
    psi_h.require_plane(PUPIL)
    mask = psi_t.geometry.mask
    return overlap(psi_t.values[mask], psi_h.values[mask])


def probability(psi_t: ComplexField, psi_h: ComplexField, **metadata) -> FidelityReport:
    """P = |<psi_t|psi_h>|^2 packaged with the run metadata"""
    inner, norm_t, norm_h = _aperture_overlap(psi_t, psi_h)
    return report_from_overlap(inner, norm_t, norm_h, **metadata)


def report_from_overlap(inner: complex, norm_t: float, norm_h: float, **metadata):
    """FidelityReport from a normalised overlap"""
    p = min(abs(inner) ** 2, 1.0 + P_TOL)
    report = FidelityReport(inner, norm_t, norm_h, p, **metadata)
    logger.debug("P=%.6f for %s", p, metadata)
    return report
