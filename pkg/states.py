"""
    OAM states

    The four mutually unbiased bases of the 3-dimensional OAM space spanned
    by |1>, |0>, |-1>, and their azimuthal wavefunctions.
"""

# ==============================================================================
# Imports
# ==============================================================================

import logging
from dataclasses import dataclass
from itertools import product
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from field import ComplexField, GridGeometry

# ==============================================================================
# Constants
# ==============================================================================

OAM_INDICES = (1, 0, -1)  # Quantum numbers of |a>, |b>, |c>
MEMBERS = ("a", "b", "c")
N_BASES = 4

Z = np.exp(2j * np.pi / 3)  # Root of unity

# Powers of z per superposition state (Table of MUB_1..MUB_3, rows a, b, c)
MUB_POWERS = {
    1: ((0, 0, 0), (0, 1, 2), (0, 2, 1)),
    2: ((0, 0, 1), (0, 1, 0), (0, 2, 2)),
    3: ((0, 0, 2), (0, 1, 1), (0, 2, 0)),
}

NORM_TOL = 1e-12
SINGULAR_AMPLITUDE = 1e-12  # Below this the phase is undefined

logger = logging.getLogger(__name__)

# ==============================================================================
# Classes
# ==============================================================================


@dataclass(frozen=True)
class OamIndex:
    """Orbital angular momentum quantum number l (photon OAM is l hbar)"""

    l: int

    def __post_init__(self) -> None:
        if not isinstance(self.l, (int, np.integer)):
            raise TypeError(f"OAM index must be an integer, got {self.l!r}")

    def __int__(self) -> int:
        return int(self.l)


@dataclass(frozen=True)
class SuperpositionState:
    """
        State sum_k c_k |l_k> with unit norm

        SuperpositionState(coefficients, basis_id, member_id)
    """

    coefficients: Tuple[complex, ...]
    basis_id: int = 0
    member_id: str = "a"
    indices: Tuple[int, ...] = OAM_INDICES

    def __post_init__(self) -> None:
        coefficients = tuple(complex(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coefficients)
        indices = tuple(int(OamIndex(l)) for l in self.indices)
        object.__setattr__(self, "indices", indices)
        if len(coefficients) != len(indices):
            raise ValueError("one coefficient per OAM index is required")
        norm = sum(abs(c) ** 2 for c in coefficients)
        if abs(norm - 1) > NORM_TOL:
            raise ValueError(f"state norm {norm} differs from 1")

    @property
    def label(self) -> str:
        """Basis member label, e.g. c3 (MUB_0 members carry no suffix)"""
        return self.member_id if self.basis_id == 0 else f"{self.member_id}{self.basis_id}"

    @property
    def vector(self) -> np.ndarray:
        """Coefficients as an array"""
        return np.array(self.coefficients, dtype=complex)

    @property
    def is_pure(self) -> bool:
        """Single unit-modulus coefficient"""
        moduli = np.abs(self.vector)
        return int(np.sum(moduli > NORM_TOL)) == 1

    def overlap(self, other: "SuperpositionState") -> complex:
        """Analytic inner product <self|other>"""
        if self.indices != other.indices:
            raise ValueError("states live on different OAM indices")
        return complex(np.vdot(self.vector, other.vector))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.label})"


@dataclass(frozen=True)
class MubTable:
    """Four bases of three states each"""

    bases: Tuple[Tuple[SuperpositionState, ...], ...]
    root_of_unity: complex = complex(Z)

    def __iter__(self) -> Iterator[SuperpositionState]:
        for basis in self.bases:
            yield from basis

    def __len__(self) -> int:
        return sum(len(basis) for basis in self.bases)

    def __getitem__(self, label: str) -> SuperpositionState:
        for state in self:
            if state.label == label:
                return state
        raise KeyError(label)

    def basis(self, basis_id: int) -> Tuple[SuperpositionState, ...]:
        """States of one basis"""
        return self.bases[basis_id]

    def gram(self) -> np.ndarray:
        """Matrix of |<i|j>|^2 over all ordered pairs"""
        vectors = np.array([state.vector for state in self])
        return np.abs(vectors.conj() @ vectors.T) ** 2


@dataclass(frozen=True)
class AzimuthalProfile:
    """Amplitude A(theta) >= 0 and phase Phi(theta) sampled on theta"""

    theta: np.ndarray
    amplitude: np.ndarray
    phase: np.ndarray
    singular: np.ndarray

    def values(self) -> np.ndarray:
        """A exp(i Phi)"""
        return self.amplitude * np.exp(1j * self.phase)


# ==============================================================================
# Functions
# ==============================================================================


def build_mub_tables() -> MubTable:
    """All twelve states, superpositions normalised by 1/sqrt(3)"""
    pure = tuple(
        SuperpositionState(tuple(np.eye(3)[k]), 0, member)
        for k, member in enumerate(MEMBERS)
    )
    bases = [pure]
    for basis_id in range(1, N_BASES):
        members = []
        for member, powers in zip(MEMBERS, MUB_POWERS[basis_id]):
            coefficients = tuple(Z ** p / np.sqrt(3) for p in powers)
            members.append(SuperpositionState(coefficients, basis_id, member))
        bases.append(tuple(members))
    return MubTable(tuple(bases))


def eval_wavefunction(state: SuperpositionState, theta) -> complex:
    """<theta|state> = sum_k c_k exp(i l_k theta)"""
    theta = np.asarray(theta, dtype=float)
    value = np.zeros(theta.shape, dtype=complex)
    for c, l in zip(state.coefficients, state.indices):
        value = value + c * np.exp(1j * l * theta)
    return complex(value) if value.ndim == 0 else value


def amplitude_phase(state: SuperpositionState, theta):
    """
        Amplitude and phase of the wavefunction

        Phase is the full-quadrant argument of the field value; where the
        amplitude falls below SINGULAR_AMPLITUDE the phase is 0 and flagged.

        Returns (A, Phi, singular)
    """
    value = np.asarray(eval_wavefunction(state, theta))
    amplitude = np.abs(value)
    singular = amplitude < SINGULAR_AMPLITUDE
    phase = np.where(singular, 0.0, np.arctan2(value.imag, value.real))
    if value.ndim == 0:
        return float(amplitude), float(phase), bool(singular)
    return amplitude, phase, singular


def azimuthal_profile(state: SuperpositionState, n_samples: int = 3600) -> AzimuthalProfile:
    """Profile on a uniform ring of theta samples"""
    theta = 2 * np.pi * np.arange(n_samples) / n_samples
    amplitude, phase, singular = amplitude_phase(state, theta)
    return AzimuthalProfile(theta, amplitude, phase, singular)


def sample_state_on_grid(state: SuperpositionState, grid: GridGeometry) -> ComplexField:
    """Wavefunction at each aperture sample, zero outside"""
    values = np.where(grid.mask, eval_wavefunction(state, grid.theta), 0)
    logger.debug("Sampled %s on %dx%d", state.label, grid.rows, grid.cols)
    return ComplexField(values, grid, label=state.label)


def gram_classes(table: MubTable, tol: float = NORM_TOL) -> List[Tuple[str, str, float]]:
    """Pairs whose overlap probability is not 1, 0 or 1/3 as expected"""
    violations = []
    states = list(table)
    for s_i, s_j in product(states, states):
        p = abs(s_i.overlap(s_j)) ** 2
        if s_i is s_j:
            expected = 1.0
        elif s_i.basis_id == s_j.basis_id:
            expected = 0.0
        else:
            expected = 1 / 3
        if abs(p - expected) > tol:
            violations.append((s_i.label, s_j.label, p))
    return violations


def select_states(table: MubTable, selector: str) -> Sequence[SuperpositionState]:
    """
        Resolve a selector: a state label (c3), a basis (mub2) or all
    """
    key = selector.strip().lower()
    if key == "all":
        return tuple(table)
    if key.startswith("mub"):
        basis_id = int(key[3:])
        if not 0 <= basis_id < N_BASES:
            raise KeyError(f"no basis {selector!r}, expected mub0 to mub{N_BASES - 1}")
        return table.basis(basis_id)
    return (table[key],)
