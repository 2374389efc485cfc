"""Spin operators and dense Hermitian matrix kernels for the 2x3 composite.

All matrices are plain complex128 ndarrays; every function is pure, so the
module is safe to use from any number of threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian, NotPSD

# Relative tolerance for the Hermitian symmetry precondition checks.
HERMITICITY_RTOL = 1e-10
# Eigenvalues in [PSD_FLOOR, 0) are treated as roundoff and clamped to zero;
# anything below is a real error.  Gibbs states are strictly positive, so
# this floor only ever absorbs noise.
PSD_FLOOR = -1e-10

_SQRT2 = np.sqrt(2.0)

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

_SPIN1 = {
    "x": np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.complex128) / _SQRT2,
    "y": np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=np.complex128) / _SQRT2,
    "z": np.array([[1, 0, 0], [0, 0, 0], [0, 0, -1]], dtype=np.complex128),
}

I2 = np.eye(2, dtype=np.complex128)
I3 = np.eye(3, dtype=np.complex128)
I6 = np.eye(6, dtype=np.complex128)


def pauli(axis: str) -> np.ndarray:
    """Pauli matrix sigma_axis for axis in {'x', 'y', 'z'} (fresh copy)."""
    return _PAULI[axis].copy()


def spin1(axis: str) -> np.ndarray:
    """Spin-1 operator S_axis in the m = 1, 0, -1 basis (fresh copy)."""
    return _SPIN1[axis].copy()


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, first factor major."""
    return np.kron(a, b)


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def hermiticity_defect(m: np.ndarray) -> float:
    """max |M - M^dag|, absolute deviation from Hermitian symmetry."""
    return float(np.max(np.abs(m - m.conj().T)))


def _require_hermitian(m: np.ndarray, what: str = "matrix") -> None:
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    if hermiticity_defect(m) > HERMITICITY_RTOL * scale:
        raise NotHermitian(f"{what} deviates from Hermitian symmetry beyond "
                           f"{HERMITICITY_RTOL:g} (relative)")


def hermitize(m: np.ndarray) -> np.ndarray:
    """Symmetrize away the roundoff part of a nominally Hermitian matrix."""
    return 0.5 * (m + m.conj().T)


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral data of a Hermitian matrix.

    eigenvalues are real and ascending; column k of eigenvectors belongs to
    eigenvalues[k]; eigenvectors is unitary.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def herm_eig(m: np.ndarray) -> EigenDecomposition:
    """Full eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises NotHermitian if the symmetry check fails.
    """
    _require_hermitian(m)
    vals, vecs = np.linalg.eigh(m)
    return EigenDecomposition(vals, vecs)


def sqrt_psd(m: np.ndarray) -> np.ndarray:
    """Hermitian PSD square root S with S @ S = M.

    Eigenvalues in [PSD_FLOOR, 0) are clamped to zero; anything below raises
    NotPSD.
    """
    _require_hermitian(m)
    vals, vecs = np.linalg.eigh(m)
    if vals[0] < PSD_FLOOR:
        raise NotPSD(f"eigenvalue {vals[0]:.3e} below PSD floor {PSD_FLOOR:g}")
    vals = np.clip(vals, 0.0, None)
    return hermitize((vecs * np.sqrt(vals)) @ vecs.conj().T)


def trace_norm(m: np.ndarray) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    _require_hermitian(m)
    return float(np.sum(np.abs(np.linalg.eigvalsh(m))))


def expm_hermitian(m: np.ndarray) -> np.ndarray:
    """exp(M) for Hermitian M via the eigendecomposition."""
    _require_hermitian(m)
    vals, vecs = np.linalg.eigh(m)
    return hermitize((vecs * np.exp(vals)) @ vecs.conj().T)


def eigvalsh3(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of Hermitian 3x3 matrices, ascending, batched over leading axes.

    Closed-form trigonometric solution of the characteristic cubic; fast path
    for hot loops.  Agrees with np.linalg.eigvalsh to ~1e-13 on generic input
    (verified by tests); near-degenerate eigenvalue pairs carry the usual
    O(sqrt(eps)) absolute error of the analytic cubic, so callers needing
    certified digits re-evaluate through the LAPACK path.
    """
    m = np.asarray(m, dtype=np.complex128)
    mean = np.einsum("...ii->...", m).real / 3.0
    k = m - mean[..., None, None] * np.eye(3)
    # p^2 = tr(K^2)/6 >= 0; tr(K^2) = sum |K_ij|^2 for Hermitian K
    q = np.einsum("...ij,...ij->...", k, k.conj()).real / 6.0
    p = np.sqrt(np.maximum(q, 0.0))
    det = (
        k[..., 0, 0] * (k[..., 1, 1] * k[..., 2, 2] - k[..., 1, 2] * k[..., 2, 1])
        - k[..., 0, 1] * (k[..., 1, 0] * k[..., 2, 2] - k[..., 1, 2] * k[..., 2, 0])
        + k[..., 0, 2] * (k[..., 1, 0] * k[..., 2, 1] - k[..., 1, 1] * k[..., 2, 0])
    ).real
    denom = np.where(p > 0.0, 2.0 * p**3, 1.0)
    r = np.clip(det / denom, -1.0, 1.0)
    phi = np.arccos(r) / 3.0
    # cos(phi) is the largest and cos(phi + 2pi/3) the smallest for phi in [0, pi/3]
    lam_hi = mean + 2.0 * p * np.cos(phi)
    lam_lo = mean + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    lam_mid = 3.0 * mean - lam_hi - lam_lo
    return np.stack([lam_lo, lam_mid, lam_hi], axis=-1)
