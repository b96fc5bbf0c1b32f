"""
    Exceptions raised by the holography simulation
"""

# ==============================================================================
# Classes
# ==============================================================================


class OamCghError(Exception):
    """Base class for every failure raised by this package"""


class BesselDomainError(OamCghError, ValueError):
    """Argument outside the validated Bessel domain"""


class OutOfRangeError(OamCghError, ValueError):
    """Value outside the monotonic J1 branch or another admissible range"""


class GeometryError(OamCghError, ValueError):
    """Invalid grid, mismatched grids or wrong plane"""


class ZeroNormError(OamCghError, ZeroDivisionError):
    """Field without power where a normalization is needed"""


class OrderWindowError(OamCghError, IndexError):
    """Diffraction order window does not fit inside the far-field grid"""


class ConfigError(OamCghError, ValueError):
    """Rejected experiment configuration"""

    def __init__(self, key: str, condition: str, value=None) -> None:
        self.key = key
        self.condition = condition
        self.value = value
        super().__init__(f"{key}={value!r} violates: {condition}")
