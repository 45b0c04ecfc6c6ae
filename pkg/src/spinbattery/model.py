"""Battery Hamiltonian construction, normalization, and disorder sampling.

The battery is a finite XYZ spin-1/2 chain with open boundary conditions,

    H0 = (h/2) sum_j sigma_j^z
       + (1/4) sum_j J_j [(1+gamma) sigma_j^x sigma_{j+1}^x
                          + (1-gamma) sigma_j^y sigma_{j+1}^y]
       + (1/4) sum_j Delta_j sigma_j^z sigma_{j+1}^z,

charged by the uniform local field H_charging = (omega/2) sum_j sigma_j^x.
All energies are expressed in multiples of |h|; with the default h = 1
every parameter reads as a dimensionless ratio (J/|h|, Delta/|h|, ...).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DegenerateSpectrumError, ResourceLimitError, ValidationError
from .linalg import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    eig_hermitian,
    embed_two_site,
    kron_embed,
)

MAX_SITES_DEFAULT = 14
DEGENERACY_ATOL = 1e-12


def _as_coupling_array(values, n_sites: int, name: str) -> np.ndarray:
    if values is None:
        values = np.zeros(max(n_sites - 1, 0))
    arr = np.atleast_1d(np.asarray(values, dtype=float))
    if arr.ndim != 1 or arr.size != n_sites - 1:
        raise ValidationError(
            f"{name} must have length n_sites-1 = {n_sites - 1}, got {arr.size}"
        )
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class ModelParams:
    """Full chain specification.

    ``xy_couplings`` and ``zz_couplings`` hold per-bond J_j and Delta_j
    (length N-1, empty for N=1). ``charging_omega`` defaults to 2|h|.
    """

    n_sites: int
    field_h: float = 1.0
    anisotropy_gamma: float = 0.0
    xy_couplings: np.ndarray = None
    zz_couplings: np.ndarray = None
    charging_omega: float = None

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValidationError(f"n_sites must be >= 1, got {self.n_sites}")
        if not 0.0 <= self.anisotropy_gamma <= 1.0:
            raise ValidationError(
                f"anisotropy_gamma must lie in [0, 1], got {self.anisotropy_gamma}"
            )
        object.__setattr__(
            self, "xy_couplings",
            _as_coupling_array(self.xy_couplings, self.n_sites, "xy_couplings"),
        )
        object.__setattr__(
            self, "zz_couplings",
            _as_coupling_array(self.zz_couplings, self.n_sites, "zz_couplings"),
        )
        omega = self.charging_omega
        if omega is None:
            omega = 2.0 * abs(self.field_h)
        if omega <= 0.0:
            raise ValidationError(f"charging_omega must be > 0, got {omega}")
        object.__setattr__(self, "charging_omega", float(omega))

    @property
    def dim(self) -> int:
        return 2**self.n_sites


def uniform_chain(
    n_sites: int,
    j: float = 0.0,
    delta: float = 0.0,
    gamma: float = 0.0,
    h: float = 1.0,
    omega: float = None,
) -> ModelParams:
    """ModelParams with site-independent couplings J_j = j, Delta_j = delta."""
    bonds = max(n_sites - 1, 0)
    return ModelParams(
        n_sites=n_sites,
        field_h=h,
        anisotropy_gamma=gamma,
        xy_couplings=np.full(bonds, float(j)),
        zz_couplings=np.full(bonds, float(delta)),
        charging_omega=omega,
    )


class DisorderTarget(enum.Enum):
    XY_COUPLINGS = "xy"
    ZZ_COUPLINGS = "zz"


@dataclass(frozen=True)
class DisorderSpec:
    """Gaussian quenched disorder on one coupling array.

    Realization k is a pure function of (master_seed, k); evaluation order
    and worker layout never change the draws.
    """

    target: DisorderTarget
    mean: float
    sigma: float
    n_realizations: int = 5000
    master_seed: int = 0

    def __post_init__(self):
        if self.sigma < 0.0:
            raise ValidationError(f"sigma must be >= 0, got {self.sigma}")
        if self.n_realizations < 1:
            raise ValidationError(
                f"n_realizations must be >= 1, got {self.n_realizations}"
            )
        if not 0 <= int(self.master_seed) < 2**64:
            raise ValidationError("master_seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True, eq=False)
class NormalizedHamiltonian:
    """Spectrally normalized battery Hamiltonian.

    ``matrix`` has spectrum exactly spanning [-1, 1]; ``e_min``/``e_max``
    record the pre-normalization extremes. The eigendecomposition computed
    during normalization is kept (``eigenvalues`` ascending, ``eigenvectors``
    columns) so state preparation does not re-diagonalize.
    """

    matrix: np.ndarray
    e_min: float
    e_max: float
    eigenvalues: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _check_sites(n_sites: int, max_sites: int) -> None:
    if n_sites > max_sites:
        raise ResourceLimitError(
            f"n_sites={n_sites} exceeds the dense-matrix limit ({max_sites})"
        )


def build_h0(params: ModelParams, max_sites: int = MAX_SITES_DEFAULT) -> np.ndarray:
    """Dense H0 for the given chain; Hermitian, dimension 2^N."""
    n = params.n_sites
    _check_sites(n, max_sites)
    dim = params.dim
    h0 = np.zeros((dim, dim), dtype=complex)
    for site in range(1, n + 1):
        h0 += (params.field_h / 2.0) * kron_embed(PAULI_Z, site, n)
    if n >= 2:
        gamma = params.anisotropy_gamma
        xx = np.kron(PAULI_X, PAULI_X)
        yy = np.kron(PAULI_Y, PAULI_Y)
        zz = np.kron(PAULI_Z, PAULI_Z)
        for bond in range(1, n):
            j = params.xy_couplings[bond - 1]
            delta = params.zz_couplings[bond - 1]
            pair_op = 0.25 * j * ((1.0 + gamma) * xx + (1.0 - gamma) * yy)
            pair_op += 0.25 * delta * zz
            h0 += embed_two_site(pair_op, bond, n)
    return h0


def build_charging(params: ModelParams, max_sites: int = MAX_SITES_DEFAULT) -> np.ndarray:
    """Dense H_charging = (omega/2) sum_j sigma_j^x."""
    n = params.n_sites
    _check_sites(n, max_sites)
    dim = params.dim
    hc = np.zeros((dim, dim), dtype=complex)
    for site in range(1, n + 1):
        hc += (params.charging_omega / 2.0) * kron_embed(PAULI_X, site, n)
    return hc


def charging_site_factor(params: ModelParams) -> np.ndarray:
    """Per-site 2x2 factor (omega/2) sigma^x of the charging field."""
    return (params.charging_omega / 2.0) * PAULI_X


def normalize(h0: np.ndarray) -> NormalizedHamiltonian:
    """Map H0 affinely so its spectrum spans exactly [-1, 1].

    Returns [2 H0 - (E_max + E_min) I] / (E_max - E_min) together with the
    recorded extremes. Raises ``DegenerateSpectrumError`` when the spectral
    width falls below 1e-12 (e.g. a zero Hamiltonian).
    """
    dec = eig_hermitian(h0)
    e_min = float(dec.eigenvalues[0])
    e_max = float(dec.eigenvalues[-1])
    width = e_max - e_min
    if width < DEGENERACY_ATOL:
        raise DegenerateSpectrumError(
            f"spectral width {width:.3e} below tolerance; normalization undefined"
        )
    shift = e_max + e_min
    matrix = (2.0 * h0 - shift * np.eye(h0.shape[0])) / width
    eigenvalues = (2.0 * dec.eigenvalues - shift) / width
    return NormalizedHamiltonian(
        matrix=matrix,
        e_min=e_min,
        e_max=e_max,
        eigenvalues=eigenvalues,
        eigenvectors=dec.eigenvectors,
    )


def sample_realization(base: ModelParams, spec: DisorderSpec, index: int) -> ModelParams:
    """Realization ``index`` of the disordered chain.

    The targeted coupling array is replaced by N-1 Gaussian draws with the
    requested mean and sigma; draws come from a counter-based generator
    keyed on (master_seed, index) and are taken in bond order, so the same
    (seed, index) always yields the same chain.
    """
    if not 0 <= index < spec.n_realizations:
        raise ValidationError(
            f"realization index {index} out of range [0, {spec.n_realizations})"
        )
    rng = np.random.Generator(np.random.Philox(key=[int(spec.master_seed), int(index)]))
    draws = rng.normal(loc=spec.mean, scale=spec.sigma, size=base.n_sites - 1)
    if spec.target is DisorderTarget.XY_COUPLINGS:
        return replace(base, xy_couplings=draws)
    return replace(base, zz_couplings=draws)
