"""Correlation measures of a qubit-qutrit state: Negativity, measurement-induced
nonlocality (MIN), uncertainty-induced nonlocality (UIN) and Wigner-Yanase skew
information.

Conventions: the qubit is the first factor (basis ordering qubit-major); Bloch
components use bare Pauli matrices, x_i = Tr[rho (sigma_i x I3)]; the qutrit
correlation data uses the spin-1 triple, t_ij = Tr[rho (sigma_i x S_j)].

MIN is the maximal Hilbert-Schmidt disturbance under qubit projective
measurements that preserve the qubit marginal.  Its closed form is evaluated
through the Gram matrix of the operator-Schmidt components over a complete
orthonormal qutrit basis, which via completeness reduces to

    M_ij = (Tr[beta_i beta_j] - x_i x_j / 3) / 2,

so quadrupole-sector correlations are included and the value agrees with the
direct disturbance maximization (the tests enforce this equivalence).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import I3, kron, pauli, spin1, sqrt_psd
from .errors import NotHermitian
from . import linalg

# Qubit Bloch-vector magnitudes below this are treated as a degenerate marginal.
DEGENERATE_X_TOL = 1e-9
# Values in [-CLAMP_TOL, 0) are roundoff and reported as exact zero.
CLAMP_TOL = 1e-12

_SIGMA = [pauli(a) for a in "xyz"]
_SPIN = [spin1(a) for a in "xyz"]
_SIGMA6 = [kron(s, I3) for s in _SIGMA]


@dataclass(frozen=True)
class BlochFano:
    """Local vectors, spin-sector correlation matrix and qutrit-side beta matrices.

    x, y are the qubit/qutrit local vectors, tcorr the 3x3 matrix
    t_ij = Tr[rho (sigma_i x S_j)], and beta_i = Tr_A[rho (sigma_i x I3)]
    with beta0 the qutrit marginal (sigma_0 = I2).
    """

    x: np.ndarray
    y: np.ndarray
    tcorr: np.ndarray
    beta0: np.ndarray
    beta1: np.ndarray
    beta2: np.ndarray
    beta3: np.ndarray

    def betas(self) -> np.ndarray:
        """The traceful beta triple stacked as a (3, 3, 3) array (beta1..beta3)."""
        return np.stack([self.beta1, self.beta2, self.beta3])


@dataclass(frozen=True)
class CorrelationReport:
    """All requested measure values for one state, plus CHSH optimizer diagnostics."""

    negativity: Optional[float] = None
    min_value: Optional[float] = None
    uin_value: Optional[float] = None
    chsh_max: Optional[float] = None
    chsh_rotation: Optional[np.ndarray] = None
    chsh_restarts_agreeing: Optional[int] = None


def bloch_fano(rho: np.ndarray) -> BlochFano:
    """Operator-Schmidt data of a valid 6x6 density matrix."""
    r4 = rho.reshape(2, 3, 2, 3)
    betas = [np.einsum("ajck,ca->jk", r4, s) for s in [np.eye(2)] + _SIGMA]
    x = np.array([np.trace(b).real for b in betas[1:]])
    y = np.array([np.trace(betas[0] @ s).real for s in _SPIN])
    tcorr = np.array([[np.trace(b @ s).real for s in _SPIN] for b in betas[1:]])
    return BlochFano(x=x, y=y, tcorr=tcorr, beta0=betas[0],
                     beta1=betas[1], beta2=betas[2], beta3=betas[3])


def partial_transpose_qubit(rho: np.ndarray) -> np.ndarray:
    """Partial transpose over the qubit index: <ij|rho^Ta|kl> = <kj|rho|il>."""
    return rho.reshape(2, 3, 2, 3).transpose(2, 1, 0, 3).reshape(6, 6)


def negativity(rho: np.ndarray) -> float:
    """Sum of negative-eigenvalue magnitudes of the partially transposed state.

    Returns exactly 0.0 when every eigenvalue is >= -1e-12.
    """
    vals = np.linalg.eigvalsh(partial_transpose_qubit(rho))
    if vals[0] >= -CLAMP_TOL:
        return 0.0
    return float(np.sum(0.5 * (np.abs(vals) - vals)))


def _min_gram(bf: BlochFano) -> np.ndarray:
    """Gram matrix of the traceless operator-Schmidt components on the qubit axes."""
    betas = bf.betas()
    overlaps = np.einsum("ijk,ljk->il", betas, betas.conj()).real
    return 0.5 * (overlaps - np.outer(bf.x, bf.x) / 3.0)


def min_measure(rho: np.ndarray) -> float:
    """Measurement-induced nonlocality of rho under qubit-side measurements.

    For a nondegenerate qubit marginal the measurement basis is fixed by the
    marginal, giving Tr M - xhat.M.xhat; for the degenerate case the optimal
    direction drops the least eigenvalue of M.
    """
    bf = bloch_fano(rho)
    m = _min_gram(bf)
    xnorm = float(np.linalg.norm(bf.x))
    if xnorm > DEGENERATE_X_TOL:
        xhat = bf.x / xnorm
        val = float(np.trace(m) - xhat @ m @ xhat)
    else:
        val = float(np.trace(m) - np.linalg.eigvalsh(m)[0])
    return 0.0 if val < CLAMP_TOL else val


def skew_information(rho: np.ndarray, k: np.ndarray) -> float:
    """Wigner-Yanase skew information -Tr([sqrt(rho), K]^2)/2 for Hermitian K."""
    if linalg.hermiticity_defect(k) > linalg.HERMITICITY_RTOL * max(1.0, float(np.max(np.abs(k)))):
        raise NotHermitian("observable K must be Hermitian")
    s = sqrt_psd(rho)
    comm = s @ k - k @ s
    val = -0.5 * np.trace(comm @ comm).real
    return 0.0 if val < CLAMP_TOL else float(val)


def w_matrix(rho: np.ndarray) -> np.ndarray:
    """3x3 matrix W_ij = Tr[sqrt(rho) (sigma_i x I3) sqrt(rho) (sigma_j x I3)].

    Real symmetric PSD; the skew information of (n.sigma) x I3 is 1 - n.W.n.
    """
    s = sqrt_psd(rho)
    left = [s @ sig for sig in _SIGMA6]
    w = np.empty((3, 3))
    for i in range(3):
        for j in range(i, 3):
            w[i, j] = w[j, i] = np.trace(left[i] @ left[j]).real
    return w


def uin(rho: np.ndarray) -> float:
    """Uncertainty-induced nonlocality: maximal skew information over qubit
    observables n.sigma that commute with the qubit marginal.

    Nondegenerate marginal: the commutant pins n to the Bloch direction, giving
    1 - xhat.W.xhat.  Degenerate marginal: every direction is admissible and
    the maximum is 1 - lambda_min(W).
    """
    w = w_matrix(rho)
    x = np.array([np.trace(rho @ sig).real for sig in _SIGMA6])
    xnorm = float(np.linalg.norm(x))
    if xnorm > DEGENERATE_X_TOL:
        xhat = x / xnorm
        val = 1.0 - float(xhat @ w @ xhat)
    else:
        val = 1.0 - float(np.linalg.eigvalsh(w)[0])
    return 0.0 if val < CLAMP_TOL else val
