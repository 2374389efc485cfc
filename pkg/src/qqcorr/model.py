"""Axially symmetric qubit-qutrit Hamiltonian and its closed-form spectral data.

The model couples a spin-1/2 (operators s_i = sigma_i / 2) to a spin-1 through
longitudinal fields B1, B2, XXZ exchange (J, Jz), single-ion anisotropies
(K uniaxial, K1 planar), a biquadratic term K2, a z-axis DM coupling Dz and
two three-spin couplings Gamma, Lambda.  Every term commutes with the total
z spin, so the 6x6 matrix splits into two 1x1 corners and two 2x2 blocks and
the spectrum is available in closed form.

Basis ordering is qubit-major with the qutrit m descending:
|up,1>, |up,0>, |up,-1>, |down,1>, |down,0>, |down,-1>.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace

import numpy as np

from .linalg import I2, I3, kron, pauli, spin1

PARAM_NAMES = ("B1", "B2", "J", "Jz", "K", "K1", "K2", "Dz", "Gamma", "Lambda")

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ModelParams:
    """The ten real coupling constants of the model (energy units, k_B = 1)."""

    B1: float = 0.0
    B2: float = 0.0
    J: float = 0.0
    Jz: float = 0.0
    K: float = 0.0
    K1: float = 0.0
    K2: float = 0.0
    Dz: float = 0.0
    Gamma: float = 0.0
    Lambda: float = 0.0

    def __post_init__(self):
        for name in PARAM_NAMES:
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"coupling {name} must be finite, got {value!r}")

    def as_dict(self) -> dict:
        return asdict(self)

    def with_value(self, name: str, value: float) -> "ModelParams":
        """Copy with one coupling replaced."""
        return replace(self, **{name: float(value)})


@dataclass(frozen=True)
class BlockQuantities:
    """Diagonal entries h1..h4, couplings g1, g2, gaps R1, R2 and spectrum E1..E6."""

    h1: float
    h2: float
    h3: float
    h4: float
    g1: complex
    g2: complex
    R1: float
    R2: float
    E1: float
    E2: float
    E3: float
    E4: float
    E5: float
    E6: float

    def energies(self) -> np.ndarray:
        return np.array([self.E1, self.E2, self.E3, self.E4, self.E5, self.E6])


def block_quantities(p: ModelParams) -> BlockQuantities:
    """Closed-form spectral data of the Hamiltonian.

    E2 >= E3 and E4 >= E5 within each 2x2 block; the full set {E1..E6} equals
    the numerically diagonalized spectrum as a multiset.
    """
    h1 = p.B1 / 2 + 2 * p.K1
    h4 = -p.B1 / 2 + 2 * p.K1
    h2 = p.B1 / 2 - p.B2 - p.Jz / 2 + p.K + p.K1 + p.K2 / 2
    h3 = -p.B1 / 2 + p.B2 - p.Jz / 2 + p.K + p.K1 - p.K2 / 2
    g1 = (p.J + p.Gamma + 1j * (p.Dz + p.Lambda)) / _SQRT2
    g2 = (p.J - p.Gamma + 1j * (p.Dz - p.Lambda)) / _SQRT2
    r1 = math.sqrt((h1 - h3) ** 2 + 4 * abs(g1) ** 2)
    r2 = math.sqrt((h2 - h4) ** 2 + 4 * abs(g2) ** 2)
    corner = p.B1 / 2 + p.B2 + p.K2 / 2
    e1 = p.Jz / 2 + p.K + p.K1 + corner
    e6 = p.Jz / 2 + p.K + p.K1 - corner
    return BlockQuantities(
        h1=h1, h2=h2, h3=h3, h4=h4, g1=g1, g2=g2, R1=r1, R2=r2,
        E1=e1,
        E2=0.5 * (h1 + h3 + r1),
        E3=0.5 * (h1 + h3 - r1),
        E4=0.5 * (h2 + h4 + r2),
        E5=0.5 * (h2 + h4 - r2),
        E6=e6,
    )


def hamiltonian_from_operators(p: ModelParams) -> np.ndarray:
    """Build the 6x6 Hamiltonian term by term from tensor products of spin operators."""
    sx, sy, sz = (pauli(a) / 2 for a in "xyz")
    bx, by, bz = (spin1(a) for a in "xyz")
    ax = bx @ bz + bz @ bx
    ay = by @ bz + bz @ by
    h = (
        p.B1 * kron(sz, I3)
        + p.B2 * kron(I2, bz)
        + p.J * (kron(sx, bx) + kron(sy, by))
        + p.Jz * kron(sz, bz)
        + p.K * kron(I2, bz @ bz)
        + p.K1 * kron(I2, bx @ bx + by @ by)
        + p.K2 * kron(sz, bz @ bz)
        + p.Dz * (kron(sx, by) - kron(sy, bx))
        + p.Gamma * (kron(sx, ax) + kron(sy, ay))
        + p.Lambda * (kron(sx, ay) - kron(sy, ax))
    )
    return h


def hamiltonian_from_blocks(p: ModelParams) -> np.ndarray:
    """Assemble the same Hamiltonian from its sparse block pattern.

    Corners E1 (0,0) and E6 (5,5); inner diagonal (h1, h2, h3, h4) on rows
    1..4 with g1 at (1,3) and g2 at (2,4).
    """
    b = block_quantities(p)
    h = np.zeros((6, 6), dtype=np.complex128)
    h[0, 0] = b.E1
    h[5, 5] = b.E6
    h[1, 1], h[2, 2], h[3, 3], h[4, 4] = b.h1, b.h2, b.h3, b.h4
    h[1, 3] = b.g1
    h[3, 1] = np.conj(b.g1)
    h[2, 4] = b.g2
    h[4, 2] = np.conj(b.g2)
    return h


def total_sz() -> np.ndarray:
    """Total z spin s_z x I3 + I2 x S_z."""
    return kron(pauli("z") / 2, I3) + kron(I2, spin1("z"))


def check_axial_symmetry(h: np.ndarray) -> float:
    """max |[H, total Sz]|; zero (to roundoff) for every model Hamiltonian."""
    sz = total_sz()
    return float(np.max(np.abs(h @ sz - sz @ h)))
