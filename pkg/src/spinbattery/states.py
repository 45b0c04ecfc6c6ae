"""Initial-state preparation: ground and canonical thermal states."""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .linalg import PAULI_X, kron_embed, lowest_eigenpairs
from .model import NormalizedHamiltonian

GROUND_DEGENERACY_ATOL = 1e-10
DEFAULT_BIAS_EPS = 1e-4  # 1e-4 |h| under the h = 1 convention


class StateKind(enum.Enum):
    PURE = "pure"
    MIXED = "mixed"


class BiasKind(enum.Enum):
    UNIFORM = "uniform"
    STAGGERED = "staggered"


@dataclass(frozen=True)
class SymmetryBias:
    """Small x-field added before diagonalization to break Z2 symmetry.

    UNIFORM adds eps * sum_j sigma_j^x, STAGGERED adds
    eps * sum_j (-1)^j sigma_j^x (j counted from 1).
    """

    kind: BiasKind
    eps: float = DEFAULT_BIAS_EPS


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Pure state vector or density matrix on the 2^N Hilbert space.

    ``degenerate_ground`` records whether the producing diagonalization
    found the lowest eigenvalue degenerate (within 1e-10). For MIXED
    states built spectrally, ``spectral_weights``/``spectral_vectors``
    cache the decomposition so dynamics need not re-diagonalize.
    """

    kind: StateKind
    vector: np.ndarray = None
    density: np.ndarray = None
    degenerate_ground: bool = False
    spectral_weights: np.ndarray = None
    spectral_vectors: np.ndarray = None

    def __post_init__(self):
        if self.kind is StateKind.PURE:
            if self.vector is None or self.vector.ndim != 1:
                raise ValidationError("PURE state requires a 1-d vector")
            norm = np.linalg.norm(self.vector)
            if abs(norm - 1.0) > 1e-12:
                raise ValidationError(f"pure state norm {norm} != 1")
        else:
            if self.density is None or self.density.ndim != 2:
                raise ValidationError("MIXED state requires a density matrix")
            tr = np.trace(self.density).real
            if abs(tr - 1.0) > 1e-10:
                raise ValidationError(f"density matrix trace {tr} != 1")

    @property
    def dim(self) -> int:
        return self.vector.shape[0] if self.kind is StateKind.PURE else self.density.shape[0]

    def density_matrix(self) -> np.ndarray:
        if self.kind is StateKind.PURE:
            return np.outer(self.vector, self.vector.conj())
        return self.density


@dataclass(frozen=True)
class ThermalParams:
    """Inverse temperature in units of 1/|h|; beta = 0 is infinite T."""

    beta: float

    def __post_init__(self):
        if self.beta < 0.0:
            raise ValidationError(f"beta must be >= 0, got {self.beta}")


def staggered_signs(n_sites: int) -> np.ndarray:
    """(-1)^j for j = 1..N; the sublattice signs used by bias and M_x^AFM."""
    return np.array([(-1.0) ** j for j in range(1, n_sites + 1)])


@functools.lru_cache(maxsize=32)
def _bias_matrix(n_sites: int, kind: BiasKind) -> np.ndarray:
    signs = staggered_signs(n_sites) if kind is BiasKind.STAGGERED else np.ones(n_sites)
    op = np.zeros((2**n_sites, 2**n_sites), dtype=complex)
    for site in range(1, n_sites + 1):
        op += signs[site - 1] * kron_embed(PAULI_X, site, n_sites)
    op.flags.writeable = False
    return op


def bias_operator(n_sites: int, bias: SymmetryBias) -> np.ndarray:
    """The full bias term eps * sum_j s_j sigma_j^x as a dense operator."""
    return bias.eps * _bias_matrix(n_sites, bias.kind)


def ground_state(h_norm: NormalizedHamiltonian, bias: SymmetryBias | None = None) -> QuantumState:
    """Ground state of the normalized Hamiltonian, optionally biased.

    Without a bias the cached eigendecomposition is reused; a degenerate
    lowest eigenvalue (within 1e-10) is flagged and the eigensolver's
    first lowest eigenvector is returned deterministically. With a bias
    the matrix plus bias term is re-diagonalized.
    """
    if bias is None:
        w = h_norm.eigenvalues
        degenerate = w.size > 1 and (w[1] - w[0]) < GROUND_DEGENERACY_ATOL
        vec = h_norm.eigenvectors[:, 0].copy()
    else:
        n_sites = int(round(np.log2(h_norm.dim)))
        biased = h_norm.matrix + bias_operator(n_sites, bias)
        dec = lowest_eigenpairs(biased, k=min(2, h_norm.dim))
        w = dec.eigenvalues
        degenerate = w.size > 1 and (w[1] - w[0]) < GROUND_DEGENERACY_ATOL
        vec = dec.eigenvectors[:, 0].copy()
    vec /= np.linalg.norm(vec)
    return QuantumState(kind=StateKind.PURE, vector=vec, degenerate_ground=degenerate)


def thermal_state(h_norm: NormalizedHamiltonian, beta: float) -> QuantumState:
    """Canonical state exp(-beta H_norm)/Z of the normalized Hamiltonian."""
    if beta < 0.0:
        raise ValidationError(f"beta must be >= 0, got {beta}")
    dim = h_norm.dim
    if beta == 0.0:
        weights = np.full(dim, 1.0 / dim)
        rho = np.eye(dim, dtype=complex) / dim
        return QuantumState(
            kind=StateKind.MIXED,
            density=rho,
            spectral_weights=weights,
            spectral_vectors=h_norm.eigenvectors,
        )
    # Shift by the lowest eigenvalue before exponentiating to avoid overflow.
    w = h_norm.eigenvalues
    weights = np.exp(-beta * (w - w[0]))
    weights /= weights.sum()
    v = h_norm.eigenvectors
    rho = (v * weights) @ v.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return QuantumState(
        kind=StateKind.MIXED,
        density=rho,
        spectral_weights=weights,
        spectral_vectors=v,
    )
