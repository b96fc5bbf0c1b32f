"""
    Define an experiment

    ExperimentConfig gathers every parameter of the figure commands. Values
    come from embedded defaults, then a flat YAML file, then the
    OAM_CGH_OUT environment variable and finally command-line overrides.
"""

# ==============================================================================
# Imports
# ==============================================================================

import logging
import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
import yaml

from diffraction import DESIRED_ORDER, OrderSpec
from errors import ConfigError, GeometryError, OrderWindowError
from field import APERTURE_FRACTION, COLS, MIN_APERTURE, ROWS, GridGeometry
from hologram import ANALYTIC, I_MAX_MODES, SIGMA_PRIME
from imaging import GAMMA
from records import read_wfe_map
from sensitivity import TILTS
from states import build_mub_tables, select_states
from support import J1_FIRST_HALF_MAX, J1_FIRST_ZERO, J1_SECOND_HALF_MAX, SIGMA_PRIME_MAX

# ==============================================================================
# Constants
# ==============================================================================

OUT_ENV = "OAM_CGH_OUT"

FIG1_SIGMA_PRIMES = (J1_FIRST_HALF_MAX, 1.84, J1_SECOND_HALF_MAX, 3.83)
SWEEP_START = 0.0
SWEEP_STOP = 3.83
SWEEP_STEP = 0.01
INTERFEROGRAM_TILT = 10

logger = logging.getLogger(__name__)

# ==============================================================================
# Classes
# ==============================================================================


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters shared by the figure commands"""

    rows: int = ROWS
    cols: int = COLS
    aperture_fraction: float = APERTURE_FRACTION
    fig1_sigma_primes: Tuple[float, ...] = FIG1_SIGMA_PRIMES
    sweep_start: float = SWEEP_START
    sweep_stop: float = SWEEP_STOP
    sweep_step: float = SWEEP_STEP
    sigma_prime: float = SIGMA_PRIME
    tilts: Tuple[float, ...] = TILTS
    precondition_flags: Tuple[bool, ...] = (True, False)
    state: str = "c3"
    out: str = "results"
    gamma: float = GAMMA
    i_max_mode: str = ANALYTIC
    interferogram_tilt: float = INTERFEROGRAM_TILT
    workers: int = 1
    wfe_map: Optional[str] = None
    source: str = field(default="defaults", compare=False)

    # ==========================================================================
    # Construction
    # ==========================================================================

    @classmethod
    def keys(cls) -> Tuple[str, ...]:
        """Names accepted in a config file"""
        return tuple(f.name for f in fields(cls) if f.name != "source")

    @classmethod
    def from_mapping(cls, mapping: dict, source: str = "mapping") -> "ExperimentConfig":
        """Defaults updated by a flat key-value mapping"""
        return cls(source=source).updated(**(mapping or {}))

    @classmethod
    def from_yaml(cls, path) -> "ExperimentConfig":
        """Flat YAML file on top of the defaults"""
        path = Path(path)
        try:
            with path.open() as handle:
                mapping = yaml.safe_load(handle)
        except OSError as error:
            raise ConfigError("config", "file must be readable", str(path)) from error
        except yaml.YAMLError as error:
            raise ConfigError("config", f"file must be valid YAML ({error})", str(path)) from error
        if mapping is not None and not isinstance(mapping, dict):
            raise ConfigError("config", "file must hold a flat mapping", str(path))
        logger.info("Configuration read from %s", path)
        return cls.from_mapping(mapping, source=str(path))

    @classmethod
    def load(cls, path=None, environ=None, **overrides) -> "ExperimentConfig":
        """defaults < YAML file < environment < overrides (None values ignored)"""
        config = cls() if path is None else cls.from_yaml(path)
        environ = os.environ if environ is None else environ
        if environ.get(OUT_ENV):
            config = config.updated(out=environ[OUT_ENV])
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return config.updated(**overrides)

    def updated(self, **values) -> "ExperimentConfig":
        """Copy with coerced values"""
        unknown = sorted(set(values) - set(self.keys()))
        if unknown:
            raise ConfigError(unknown[0], f"key must be one of {', '.join(self.keys())}")
        coerced = {key: _coerce(key, value, getattr(self, key)) for key, value in values.items()}
        return replace(self, **coerced)

    # ==========================================================================
    # Derived values
    # ==========================================================================

    @property
    def grid(self) -> GridGeometry:
        """Sampling grid with the configured aperture fraction"""
        return GridGeometry.from_fraction(self.rows, self.cols, self.aperture_fraction)

    @property
    def sweep_sigma_primes(self) -> np.ndarray:
        """Closed range sweep_start..sweep_stop"""
        count = int(np.floor((self.sweep_stop - self.sweep_start) / self.sweep_step + 1e-9)) + 1
        return np.round(self.sweep_start + self.sweep_step * np.arange(count), 10)

    @property
    def out_dir(self) -> Path:
        return Path(self.out)

    def states(self):
        """States picked by the selector"""
        return select_states(build_mub_tables(), self.state)

    def to_dict(self) -> dict:
        record = asdict(self)
        record.pop("source")
        return record

    # ==========================================================================
    # Validation
    # ==========================================================================

    def validate(self) -> "ExperimentConfig":
        """Check every module precondition; raises ConfigError"""
        if self.rows < MIN_APERTURE or self.cols < MIN_APERTURE:
            raise ConfigError("grid", f"rows and cols must be >= {MIN_APERTURE}", (self.rows, self.cols))
        if not 0 < self.aperture_fraction <= 1:
            raise ConfigError("aperture_fraction", "0 < fraction <= 1", self.aperture_fraction)
        try:
            self.grid
        except GeometryError as error:
            raise ConfigError("aperture_fraction", str(error), self.aperture_fraction) from error

        if not self.fig1_sigma_primes or any(s <= 0 for s in self.fig1_sigma_primes):
            raise ConfigError("fig1_sigma_primes", "each sigma' > 0", self.fig1_sigma_primes)
        if any(s > J1_FIRST_ZERO for s in self.fig1_sigma_primes):
            raise ConfigError(
                "fig1_sigma_primes", f"sigma' <= {J1_FIRST_ZERO:.4f}", self.fig1_sigma_primes
            )
        if self.sweep_step <= 0:
            raise ConfigError("sweep_step", "step > 0", self.sweep_step)
        if not 0 <= self.sweep_start <= self.sweep_stop:
            raise ConfigError("sweep_start", "0 <= start <= stop", self.sweep_start)
        if self.sweep_stop > J1_FIRST_ZERO:
            raise ConfigError("sweep_stop", f"stop <= {J1_FIRST_ZERO:.4f}", self.sweep_stop)

        if not 0 < self.sigma_prime <= SIGMA_PRIME_MAX and any(self.precondition_flags):
            raise ConfigError(
                "sigma_prime",
                f"preconditioning needs 0 < sigma' <= {SIGMA_PRIME_MAX}",
                self.sigma_prime,
            )
        if not 0 < self.sigma_prime <= J1_FIRST_ZERO:
            raise ConfigError("sigma_prime", f"0 < sigma' <= {J1_FIRST_ZERO:.4f}", self.sigma_prime)
        if not self.precondition_flags:
            raise ConfigError("precondition_flags", "at least one flag", self.precondition_flags)

        if not self.tilts or any(t <= 0 for t in self.tilts):
            raise ConfigError("tilts", "each tilt > 0 waves", self.tilts)
        if any(np.diff(self.tilts) <= 0):
            raise ConfigError("tilts", "strictly increasing", self.tilts)
        grid = self.grid
        try:
            OrderSpec.for_order(DESIRED_ORDER, max(self.tilts), grid).columns(grid)
        except OrderWindowError as error:
            raise ConfigError("tilts", f"order window inside the grid ({error})", self.tilts) from error
        if not 0 < self.interferogram_tilt <= grid.aperture_diameter / 2:
            raise ConfigError("interferogram_tilt", "0 < tilt <= D/2", self.interferogram_tilt)

        if self.gamma <= 0:
            raise ConfigError("gamma", "gamma > 0", self.gamma)
        if self.i_max_mode not in I_MAX_MODES:
            raise ConfigError("i_max_mode", f"one of {I_MAX_MODES}", self.i_max_mode)
        if self.workers < 1:
            raise ConfigError("workers", "workers >= 1", self.workers)
        try:
            self.states()
        except (KeyError, ValueError) as error:
            raise ConfigError("state", "a state label, mubN or all", self.state) from error
        if self.wfe_map is not None:
            if not Path(self.wfe_map).is_file():
                raise ConfigError("wfe_map", "existing CSV file", self.wfe_map)
            read_wfe_map(self.wfe_map, grid)

        out = self.out_dir
        if out.exists() and not out.is_dir():
            raise ConfigError("out", "writable directory", self.out)
        logger.debug("Configuration %s accepted: %s", self.source, self.to_dict())
        return self


# ==============================================================================
# Functions
# ==============================================================================


def _coerce(key: str, value, default):
    """Cast a raw value to the type of the default"""
    try:
        if isinstance(default, tuple):
            items = value if isinstance(value, (list, tuple)) else str(value).split(",")
            cast = bool if key == "precondition_flags" else float
            return tuple(_as_bool(v) if cast is bool else float(v) for v in items)
        if isinstance(default, bool):
            return _as_bool(value)
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
        return None if value is None else str(value)
    except (TypeError, ValueError) as error:
        raise ConfigError(key, f"value must convert to {type(default).__name__}", value) from error


def _as_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def parse_grid(text: str) -> Tuple[int, int]:
    """'768x1024' -> (768, 1024)"""
    try:
        rows, cols = (int(v) for v in text.lower().split("x"))
    except ValueError as error:
        raise ConfigError("grid", "format ROWSxCOLS", text) from error
    return rows, cols
