"""
    Sampled complex fields

    GridGeometry maps array samples to pupil coordinates: x along the
    columns (right), y against the rows (up), theta = atan2(y, x) measured
    counter-clockwise from +x, origin at sample (rows // 2, cols // 2).
"""

# ==============================================================================
# Imports
# ==============================================================================

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Tuple

import numpy as np

from errors import GeometryError

# ==============================================================================
# Constants
# ==============================================================================

ROWS = 768
COLS = 1024
APERTURE_FRACTION = 0.9  # Fraction of the short side used by the aperture
MIN_APERTURE = 64

PUPIL = "pupil"
FAR_FIELD = "far-field"
PLANES = (PUPIL, FAR_FIELD)

# ==============================================================================
# Classes
# ==============================================================================


@dataclass(frozen=True)
class GridGeometry:
    """
        Sample grid with a centred circular aperture

        GridGeometry(rows, cols, aperture_diameter)
    """

    rows: int = ROWS
    cols: int = COLS
    aperture_diameter: float = round(APERTURE_FRACTION * ROWS)

    def __post_init__(self) -> None:
        if self.rows <= 0 or self.cols <= 0:
            raise GeometryError(f"grid {self.rows}x{self.cols} must be positive")
        if self.aperture_diameter < MIN_APERTURE:
            raise GeometryError(
                f"aperture of {self.aperture_diameter} samples below {MIN_APERTURE}"
            )
        if self.aperture_diameter > min(self.rows, self.cols):
            raise GeometryError(
                f"aperture of {self.aperture_diameter} samples exceeds grid "
                f"{self.rows}x{self.cols}"
            )

    @classmethod
    def from_fraction(cls, rows: int = ROWS, cols: int = COLS, fraction=APERTURE_FRACTION):
        """Aperture diameter as a fraction of the short side"""
        if not 0 < fraction <= 1:
            raise GeometryError(f"aperture fraction {fraction} outside (0, 1]")
        return cls(rows, cols, round(fraction * min(rows, cols)))

    @property
    def shape(self) -> Tuple[int, int]:
        """Array shape"""
        return (self.rows, self.cols)

    @property
    def center(self) -> Tuple[int, int]:
        """Sample holding the origin"""
        return (self.rows // 2, self.cols // 2)

    @property
    def radius(self) -> float:
        """Aperture radius in samples"""
        return self.aperture_diameter / 2

    @cached_property
    def x(self) -> np.ndarray:
        """Horizontal coordinate [samples]"""
        cols = np.arange(self.cols) - self.center[1]
        return np.broadcast_to(cols[np.newaxis, :], self.shape).astype(float)

    @cached_property
    def y(self) -> np.ndarray:
        """Vertical coordinate [samples], increasing upwards"""
        rows = self.center[0] - np.arange(self.rows)
        return np.broadcast_to(rows[:, np.newaxis], self.shape).astype(float)

    @cached_property
    def rho(self) -> np.ndarray:
        """Radial coordinate [samples]"""
        return np.hypot(self.x, self.y)

    @cached_property
    def theta(self) -> np.ndarray:
        """Azimuth [rad] in (-pi, pi]"""
        return np.arctan2(self.y, self.x)

    @cached_property
    def mask(self) -> np.ndarray:
        """Aperture support"""
        return self.rho <= self.radius

    def check_same(self, other: "GridGeometry") -> None:
        """Raise when two grids differ"""
        if self != other:
            raise GeometryError(f"grid mismatch: {self} vs {other}")


@dataclass
class ComplexField:
    """
        Complex samples on a grid, tagged with the plane they live in
    """

    values: np.ndarray
    geometry: GridGeometry
    plane_tag: str = PUPIL
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != self.geometry.shape:
            raise GeometryError(
                f"values {self.values.shape} do not match grid {self.geometry.shape}"
            )
        if self.plane_tag not in PLANES:
            raise GeometryError(f"unknown plane {self.plane_tag!r}")
        if not np.all(np.isfinite(self.values)):
            raise GeometryError("field holds non-finite samples")

    @classmethod
    def from_amplitude_phase(cls, amplitude, phase, geometry: GridGeometry, label=""):
        """Pupil field a exp(i phi), zero outside the aperture"""
        values = np.where(geometry.mask, amplitude * np.exp(1j * phase), 0)
        return cls(values, geometry, PUPIL, label)

    @property
    def amplitude(self) -> np.ndarray:
        """Modulus"""
        return np.abs(self.values)

    @property
    def phase(self) -> np.ndarray:
        """Argument in (-pi, pi]"""
        return np.angle(self.values)

    @property
    def intensity(self) -> np.ndarray:
        """Squared modulus"""
        return np.abs(self.values) ** 2

    @property
    def power(self) -> float:
        """Total power"""
        return float(np.sum(self.intensity))

    def require_plane(self, plane_tag: str) -> None:
        """Raise unless the field lives in the given plane"""
        if self.plane_tag != plane_tag:
            raise GeometryError(f"expected a {plane_tag} field, got {self.plane_tag}")

    def with_values(self, values, plane_tag: str = None, label: str = None) -> "ComplexField":
        """Copy sharing the geometry"""
        return replace(
            self,
            values=values,
            plane_tag=self.plane_tag if plane_tag is None else plane_tag,
            label=self.label if label is None else label,
        )

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}({self.geometry.rows}x{self.geometry.cols}, "
            f"{self.plane_tag}, {self.label!r})"
        )
