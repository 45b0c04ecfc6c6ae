"""Dense complex-matrix substrate for spin-1/2 chains.

Conventions used throughout the package: sigma^z = diag(1, -1), the
computational basis is ordered lexicographically, and site 1 is the most
significant qubit. Operators are plain complex numpy arrays of dimension
2^N ("dense operators"); no sparse or iterative paths are provided.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ValidationError

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

HERMITIAN_ATOL = 1e-12
PSD_ATOL = 1e-10


def _require_hermitian(op: np.ndarray, atol: float = HERMITIAN_ATOL) -> None:
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {op.shape}")
    if not np.allclose(op, op.conj().T, rtol=0.0, atol=atol):
        dev = np.abs(op - op.conj().T).max()
        raise ValidationError(f"matrix is not Hermitian (max deviation {dev:.3e})")


def kron_embed(local: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Embed a 2x2 operator at ``site`` of an ``n_sites`` chain.

    Returns I^(site-1) (x) local (x) I^(n_sites-site) with 1-indexed
    ``site``; site 1 is the most significant qubit.
    """
    if local.shape != (2, 2):
        raise ValidationError(f"local operator must be 2x2, got {local.shape}")
    if not 1 <= site <= n_sites:
        raise ValidationError(f"site {site} out of range [1, {n_sites}]")
    left = np.eye(2 ** (site - 1), dtype=complex)
    right = np.eye(2 ** (n_sites - site), dtype=complex)
    return np.kron(np.kron(left, local.astype(complex)), right)


def embed_two_site(op4: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Embed a 4x4 operator on the adjacent pair (site, site+1), 1-indexed."""
    if op4.shape != (4, 4):
        raise ValidationError(f"pair operator must be 4x4, got {op4.shape}")
    if not 1 <= site <= n_sites - 1:
        raise ValidationError(f"bond {site} out of range [1, {n_sites - 1}]")
    left = np.eye(2 ** (site - 1), dtype=complex)
    right = np.eye(2 ** (n_sites - site - 1), dtype=complex)
    return np.kron(np.kron(left, op4.astype(complex)), right)


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Full Hermitian eigendecomposition, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column k pairs with eigenvalues[k]


def eig_hermitian(op: np.ndarray) -> EigenDecomposition:
    """Diagonalize a Hermitian operator; eigenvalues ascending."""
    _require_hermitian(op)
    w, v = np.linalg.eigh(op)
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def lowest_eigenpairs(op: np.ndarray, k: int = 1) -> EigenDecomposition:
    """Lowest ``k`` eigenpairs via the dense LAPACK subset driver.

    Same contract as :func:`eig_hermitian` restricted to the bottom of the
    spectrum; used by ground-state-only scans where a full decomposition
    would dominate the runtime.
    """
    _require_hermitian(op)
    if not 1 <= k <= op.shape[0]:
        raise ValidationError(f"k={k} out of range [1, {op.shape[0]}]")
    w, v = scipy.linalg.eigh(op, subset_by_index=[0, k - 1])
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def unitary_exp(op: np.ndarray, t: float) -> np.ndarray:
    """exp(-i * op * t) for Hermitian ``op`` via spectral decomposition."""
    dec = eig_hermitian(op)
    phases = np.exp(-1.0j * dec.eigenvalues * t)
    return (dec.eigenvectors * phases) @ dec.eigenvectors.conj().T


def validate_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Check Hermiticity, unit trace, and positivity; clip PSD rounding.

    Eigenvalues in [-1e-10, 0) are clipped to zero and the state is
    renormalized; anything more negative is rejected.
    """
    _require_hermitian(rho)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > 1e-10:
        raise ValidationError(f"density matrix trace {tr} != 1")
    w, v = np.linalg.eigh(rho)
    if w.min() < -PSD_ATOL:
        raise ValidationError(f"density matrix has negative eigenvalue {w.min():.3e}")
    if w.min() < 0.0:
        w = np.clip(w, 0.0, None)
        rho = (v * w) @ v.conj().T
        rho = rho / np.trace(rho).real
    return rho


def _site_count(dim: int) -> int:
    n = int(round(np.log2(dim)))
    if 2**n != dim:
        raise ValidationError(f"dimension {dim} is not a power of two")
    return n


def partial_trace(rho: np.ndarray, keep_sites: tuple[int, ...] | list[int], n_sites: int) -> np.ndarray:
    """Reduced density matrix on ``keep_sites`` (1-indexed, ascending order).

    Accepts any density matrix of dimension 2^n_sites and traces out every
    site not listed; the kept sites appear in ascending site order.
    """
    keep = sorted(set(int(s) for s in keep_sites))
    if not keep:
        raise ValidationError("keep_sites must be non-empty")
    if keep[0] < 1 or keep[-1] > n_sites:
        raise ValidationError(f"keep_sites {keep} out of range [1, {n_sites}]")
    if rho.shape != (2**n_sites, 2**n_sites):
        raise ValidationError(
            f"density matrix shape {rho.shape} does not match n_sites={n_sites}"
        )
    if len(keep) == n_sites:
        return rho.copy()
    letters = string.ascii_letters
    if 2 * n_sites > len(letters):
        raise ValidationError(f"n_sites={n_sites} exceeds index alphabet")
    # Row/column axis labels; traced sites share a letter, kept sites keep two.
    row = list(letters[:n_sites])
    col = list(letters[n_sites : 2 * n_sites])
    for site in range(1, n_sites + 1):
        if site not in keep:
            col[site - 1] = row[site - 1]
    out = "".join(row[s - 1] for s in keep) + "".join(
        letters[n_sites + s - 1] for s in keep
    )
    tensor = rho.reshape((2,) * (2 * n_sites))
    reduced = np.einsum("".join(row + col) + "->" + out, tensor)
    m = 2 ** len(keep)
    return reduced.reshape(m, m)


def partial_transpose(rho: np.ndarray, subsystem: int) -> np.ndarray:
    """Partial transpose of a two-qubit density matrix.

    ``subsystem`` is 1 or 2, naming the tensor factor to transpose.
    """
    if rho.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 two-qubit matrix, got {rho.shape}")
    if subsystem not in (1, 2):
        raise ValidationError(f"subsystem must be 1 or 2, got {subsystem}")
    t = rho.reshape(2, 2, 2, 2)
    if subsystem == 1:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return t.reshape(4, 4)
