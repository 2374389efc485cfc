"""Thermal Gibbs state of the model, by closed-form elements and by a matrix
exponential oracle.

Units: k_B = 1, so the temperature T carries energy units and the state is
exp(-H/T)/Z.  Both paths factor out the minimum energy before exponentiating,
so low temperatures stay representable; the closed-form elements use the
shifted weights w_i = exp(-(E_i - E_min)/T) throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidTemperature, OverflowGuard
from .linalg import I6, expm_hermitian, herm_eig
from .model import ModelParams, block_quantities, hamiltonian_from_operators

# Below this value of R/(2T) the ratio sinh(R/2T)/R switches to its Taylor
# series; the truncation error of the 3-term series is < 1e-19 there.
_SINHC_SERIES_CUTOFF = 1e-6


@dataclass(frozen=True)
class GibbsElements:
    """Nonzero entries of the thermal state in the model basis.

    p1 and p6 are the corner populations, (a, u, c) the upper 2x2 block,
    (b, v, d) the lower one.  Z is the partition function in the raw (unshifted)
    normalization; it can overflow to inf for extreme E/T even though the
    elements themselves stay exact.
    """

    p1: float
    p6: float
    a: float
    b: float
    c: float
    d: float
    u: complex
    v: complex
    Z: float


def _check_temperature(t: float) -> None:
    if not (isinstance(t, (int, float)) and math.isfinite(t) and t > 0):
        raise InvalidTemperature(f"temperature must be finite and positive, got {t!r}")


def _sinhc_over(r: float, t: float, log_weight: float) -> float:
    """sinh(r/2t)/r * exp(log_weight), stable through r -> 0.

    log_weight is a nonpositive shifted exponent, so the direct branch can be
    written with the shifted weights and never overflows.
    """
    x = r / (2.0 * t)
    if x < _SINHC_SERIES_CUTOFF:
        series = 1.0 + x * x / 6.0 + x**4 / 120.0
        return math.exp(log_weight) / (2.0 * t) * series
    # sinh(x) e^{log_weight} = (e^{log_weight + x} - e^{log_weight - x}) / 2
    return 0.5 * (math.exp(log_weight + x) - math.exp(log_weight - x)) / r


def gibbs_elements(p: ModelParams, t: float) -> GibbsElements:
    """Closed-form thermal state elements at temperature t > 0."""
    _check_temperature(t)
    b = block_quantities(p)
    energies = b.energies()
    e_min = float(energies.min())
    with np.errstate(over="ignore", invalid="ignore"):
        shifted = (energies - e_min) / t
    if not np.all(np.isfinite(shifted)):
        raise OverflowGuard("Boltzmann exponents not representable after rescaling")
    w = np.exp(-shifted)
    zs = float(w.sum())

    # Block (h1, h3): mean energy (E2 + E3)/2, gap R1.
    log1 = -((b.h1 + b.h3) / 2.0 - e_min) / t
    c1 = 0.5 * (w[1] + w[2])
    s1 = _sinhc_over(b.R1, t, log1)
    # Block (h2, h4): mean (E4 + E5)/2, gap R2.
    log2 = -((b.h2 + b.h4) / 2.0 - e_min) / t
    c2 = 0.5 * (w[3] + w[4])
    s2 = _sinhc_over(b.R2, t, log2)

    a = (c1 + (b.h3 - b.h1) * s1) / zs
    c = (c1 + (b.h1 - b.h3) * s1) / zs
    u = -2.0 * b.g1 * s1 / zs
    bb = (c2 + (b.h4 - b.h2) * s2) / zs
    d = (c2 + (b.h2 - b.h4) * s2) / zs
    v = -2.0 * b.g2 * s2 / zs
    z_raw = math.exp(-e_min / t) * zs if -e_min / t < 709.0 else math.inf
    return GibbsElements(p1=float(w[0] / zs), p6=float(w[5] / zs),
                         a=float(a), b=float(bb), c=float(c), d=float(d),
                         u=complex(u), v=complex(v), Z=z_raw)


def gibbs_analytic(p: ModelParams, t: float) -> np.ndarray:
    """Thermal state from the closed-form elements (6x6, Hermitian, unit trace)."""
    el = gibbs_elements(p, t)
    rho = np.zeros((6, 6), dtype=np.complex128)
    rho[0, 0] = el.p1
    rho[1, 1] = el.a
    rho[2, 2] = el.b
    rho[3, 3] = el.c
    rho[4, 4] = el.d
    rho[5, 5] = el.p6
    rho[1, 3] = el.u
    rho[3, 1] = np.conj(el.u)
    rho[2, 4] = el.v
    rho[4, 2] = np.conj(el.v)
    return rho


def gibbs_numeric(p: ModelParams, t: float) -> np.ndarray:
    """Oracle path: exponentiate -(H - E_min)/T and normalize by the trace.

    The Gibbs state is invariant under the energy shift, so this equals
    exp(-H/T)/Z up to roundoff even where exp(-H/T) itself would overflow.
    """
    _check_temperature(t)
    h = hamiltonian_from_operators(p)
    e_min = float(herm_eig(h).eigenvalues[0])
    with np.errstate(over="ignore", invalid="ignore"):
        shifted = -(h - e_min * I6) / t
    if not np.all(np.isfinite(shifted)):
        raise OverflowGuard("Boltzmann exponents not representable after rescaling")
    w = expm_hermitian(shifted)
    return w / np.trace(w).real


def ground_state_limit(p: ModelParams) -> np.ndarray:
    """T -> 0+ limit: equal-weight mixture over the (near-)degenerate ground space.

    Eigenvectors within 1e-9 of the minimum energy count as ground states.
    """
    h = hamiltonian_from_operators(p)
    dec = herm_eig(h)
    sel = dec.eigenvalues <= dec.eigenvalues[0] + 1e-9
    vecs = dec.eigenvectors[:, sel]
    return (vecs @ vecs.conj().T) / int(sel.sum())


def partition_function(p: ModelParams, t: float) -> float:
    """Partition function Z = Tr exp(-H/T) in the raw normalization."""
    return gibbs_elements(p, t).Z
