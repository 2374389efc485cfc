"""Thermal quantum correlations of an axially symmetric qubit-qutrit spin model.

Builds the 6x6 Hamiltonian, forms its Gibbs state analytically and through a
matrix-exponential oracle, and evaluates Negativity, MIN, UIN and the maximal
CHSH value, with sweep and threshold tooling on top.
"""

from .chsh import ChshResult, chsh_max, chsh_optimize, extract_chsh_observables
from .errors import (ConfigError, InvalidRotation, InvalidTemperature, NoBracket,
                     NotHermitian, NotPSD, OverflowGuard, QQCorrError,
                     SweepPointError, UnknownPreset)
from .gibbs import (GibbsElements, gibbs_analytic, gibbs_elements, gibbs_numeric,
                    ground_state_limit, partition_function)
from .linalg import (EigenDecomposition, expm_hermitian, herm_eig, kron, pauli,
                     spin1, sqrt_psd, trace_norm)
from .measures import (BlochFano, CorrelationReport, bloch_fano, min_measure,
                       negativity, partial_transpose_qubit, skew_information, uin,
                       w_matrix)
from .model import (PARAM_NAMES, BlockQuantities, ModelParams, block_quantities,
                    check_axial_symmetry, hamiltonian_from_blocks,
                    hamiltonian_from_operators, total_sz)
from .sweep import (MEASURE_NAMES, SweepRow, SweepSpec, ThresholdQuery,
                    figure_preset, find_threshold, format_csv, run_point, run_sweep)

__version__ = "0.1.0"
