"""
    Support functionalities

    Bessel functions of the first kind and the inversion of J1 on its
    monotonic branch.
"""

# ==============================================================================
# Imports
# ==============================================================================

import logging
from typing import Union

import numpy as np
from scipy import special
from scipy.optimize import brentq

from errors import BesselDomainError, OutOfRangeError

# ==============================================================================
# Constants
# ==============================================================================

X_MAX = 20.0  # Validated domain |x| <= X_MAX

J1_PEAK_ARG = 1.8411837813406593  # First maximum of J1
J1_PEAK = 0.5818652242815963
SIGMA_PRIME_MAX = 1.8412  # Largest sigma' accepted on the monotonic branch

J1_FIRST_HALF_MAX = 0.610
J1_SECOND_HALF_MAX = 3.13
J1_FIRST_ZERO = 3.8317059702075125

BISECTION_WIDTH = 1e-12  # Bracket width for the grid inversion
TARGET_TOL = 1e-12  # Slack accepted above J1(sigma') (rounding)

ArrayLike = Union[float, np.ndarray]

logger = logging.getLogger(__name__)

# ==============================================================================
# Functions
# ==============================================================================


def bessel_j(order: int, x: ArrayLike) -> ArrayLike:
    """Bessel function of the first kind J0 or J1 on |x| <= 20"""
    if order not in (0, 1):
        raise BesselDomainError(f"order must be 0 or 1, got {order}")
    x_arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x_arr)) or np.any(np.abs(x_arr) > X_MAX):
        raise BesselDomainError(f"|x| must be <= {X_MAX}")
    value = special.j0(x_arr) if order == 0 else special.j1(x_arr)
    return float(value) if np.ndim(value) == 0 else value


def bessel_jm(order: int, x: ArrayLike) -> ArrayLike:
    """Bessel function of integer order J_m, with J_-m = (-1)^m J_m"""
    value = special.jv(order, np.asarray(x, dtype=float))
    return float(value) if np.ndim(value) == 0 else value


def check_sigma_prime(sigma_prime: float) -> float:
    """Ensure sigma' keeps J1 on its monotonic branch"""
    if not 0 < sigma_prime <= SIGMA_PRIME_MAX:
        raise OutOfRangeError(
            f"sigma'={sigma_prime} outside (0, {SIGMA_PRIME_MAX}], J1 not monotonic"
        )
    return sigma_prime


def _check_targets(target: np.ndarray, sigma_prime: float) -> float:
    """Validate targets against J1(sigma') and return the upper bound"""
    check_sigma_prime(sigma_prime)
    top = special.j1(sigma_prime)
    if np.any(target < -TARGET_TOL) or np.any(target > top + TARGET_TOL):
        raise OutOfRangeError(f"target outside [0, J1({sigma_prime})={top:.12f}]")
    return top


def invert_j1(target: ArrayLike, sigma_prime: float) -> ArrayLike:
    """
        Solve J1(sigma' r) = target for r in [0, 1]

        Scalars use Brent's method, arrays a vectorised bisection down to a
        bracket of BISECTION_WIDTH.
    """
    target_arr = np.asarray(target, dtype=float)
    top = _check_targets(target_arr, sigma_prime)

    if target_arr.ndim == 0:
        value = float(np.clip(target_arr, 0.0, top))
        if value == 0.0:
            return 0.0
        if value >= top:
            return 1.0
        return brentq(
            lambda r: special.j1(sigma_prime * r) - value, 0.0, 1.0, xtol=1e-15
        )

    value = np.clip(target_arr, 0.0, top)
    low = np.zeros_like(value)
    high = np.ones_like(value)
    n_iter = int(np.ceil(np.log2(1.0 / BISECTION_WIDTH)))
    for _ in range(n_iter):
        mid = 0.5 * (low + high)
        below = special.j1(sigma_prime * mid) < value
        low = np.where(below, mid, low)
        high = np.where(below, high, mid)
    root = 0.5 * (low + high)
    root[value == 0.0] = 0.0
    root[value >= top] = 1.0
    logger.debug("Inverted J1 on %d samples (sigma'=%.4f)", root.size, sigma_prime)
    return root


def wrap_phase(phase: ArrayLike) -> ArrayLike:
    """Wrap a phase into [-pi, pi)"""
    return np.mod(np.asarray(phase) + np.pi, 2 * np.pi) - np.pi
