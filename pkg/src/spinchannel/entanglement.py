"""Boundary-pair concurrence estimators.

For a state confined to the single-excitation sector, the reduced state of
the two boundary qubits is an X state whose only coherence is
z = sum_m p_m v_1^(m) v_N^(m); its Wootters concurrence is exactly 2|z|.
The 4-site XXX thermal estimator evaluates that quantity in closed form
from the analytic sector eigensystem; `wootters_oracle` provides the
definition-level check for any two-qubit density matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chains import ChainSpec, hamiltonian_single_excitation
from .errors import InvalidParams, InvalidState
from .tridiag import eigen_decompose

HERMITICITY_TOL = 1e-12
POSITIVITY_TOL = -1e-12
TRACE_TOL = 1e-12

# sigma_y (x) sigma_y in the computational basis; real and symmetric
_SPIN_FLIP = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """4x4 density matrix of the boundary pair, basis |q_1 q_N> with
    |1> = excited, ordered |00>, |01>, |10>, |11>."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        rho = np.asarray(self.matrix, dtype=complex)
        if rho.shape != (4, 4):
            raise InvalidState("expected a 4x4 matrix")
        if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOL:
            raise InvalidState("matrix is not Hermitian")
        if abs(np.trace(rho).real - 1.0) > TRACE_TOL or abs(np.trace(rho).imag) > TRACE_TOL:
            raise InvalidState("matrix does not have unit trace")
        if np.min(np.linalg.eigvalsh(rho)) < POSITIVITY_TOL:
            raise InvalidState("matrix is not positive semidefinite")
        rho.setflags(write=False)
        object.__setattr__(self, "matrix", rho)


def wootters_oracle(rho: TwoQubitState) -> float:
    """Concurrence C = max(0, l1 - l2 - l3 - l4) of a two-qubit state.

    The l_i (descending) are the square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy), computed here as the singular values of
    sqrt(rho) (sy x sy) sqrt(rho)* to stay accurate near pure states.
    """
    m = rho.matrix
    evals, evecs = np.linalg.eigh(m)
    root = (evecs * np.sqrt(np.clip(evals, 0.0, None))) @ evecs.conj().T
    lam = np.linalg.svd(root @ _SPIN_FLIP @ root.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def sector_gibbs_weights(energies: np.ndarray, temperature: float) -> np.ndarray:
    """Boltzmann weights e^{-E/T} over the sector states, normalized
    (computed relative to the ground energy so low T cannot overflow)."""
    if temperature <= 0.0:
        raise InvalidParams("temperature must be positive")
    e = np.asarray(energies, dtype=float)
    w = np.exp(-(e - np.min(e)) / temperature)
    return w / np.sum(w)


def boundary_pair_state(eigenvectors: np.ndarray, weights: np.ndarray) -> TwoQubitState:
    """Reduced boundary-pair density matrix of a sector mixture.

    ``eigenvectors`` holds sector states in columns; ``weights`` are their
    probabilities.  Tracing out the interior leaves an X state with no
    doubly-excited population.
    """
    v = np.asarray(eigenvectors, dtype=float)
    p = np.asarray(weights, dtype=float)
    first, last = v[0, :], v[-1, :]
    interior = 1.0 - first**2 - last**2
    rho = np.zeros((4, 4))
    rho[0, 0] = float(np.sum(p * np.clip(interior, 0.0, None)))
    rho[1, 1] = float(np.sum(p * last**2))
    rho[2, 2] = float(np.sum(p * first**2))
    coherence = float(np.sum(p * first * last))
    rho[1, 2] = rho[2, 1] = coherence
    rho /= np.trace(rho)
    return TwoQubitState(matrix=rho)


def concurrence_pure_boundary(spec: ChainSpec, eigenstate_index: int) -> float:
    """Boundary concurrence 2|v_1 v_N| of one sector eigenstate.

    ``eigenstate_index`` is 1-based into the ascending spectrum, so index 1
    is the sector ground state.
    """
    if not 1 <= eigenstate_index <= spec.n_sites:
        raise InvalidParams(
            f"eigenstate index must lie in [1, {spec.n_sites}]"
        )
    decomp = eigen_decompose(hamiltonian_single_excitation(spec))
    v = decomp.eigenvectors[:, eigenstate_index - 1]
    return float(2.0 * abs(v[0] * v[-1]))


def concurrence_thermal_xxx4(coupling: float, temperature: float) -> float:
    """Boundary concurrence of the 4-site XXX chain (bonds 1, J, 1) in the
    sector-restricted Gibbs state, from the analytic eigensystem.

    The four sector levels are J/2 +- 1 (boundary-weight sign +) and
    -J/2 +- sqrt(J^2+1) (sign -); the concurrence is twice the absolute
    signed thermal average of the squared boundary components.
    """
    if coupling <= 0.0:
        raise InvalidParams("coupling must be positive")
    if temperature <= 0.0:
        raise InvalidParams("temperature must be positive")
    j = float(coupling)
    u = math.hypot(j, 1.0)
    energies = np.array([j / 2 + 1, j / 2 - 1, -j / 2 + u, -j / 2 - u])
    # (u - j)^2 written as 1/(u + j)^2 to stay accurate for large j
    weights_sq = np.array(
        [0.25, 0.25, 1.0 / (2.0 + 2.0 / (u + j) ** 2), 1.0 / (2.0 + 2.0 * (u + j) ** 2)]
    )
    signs = np.array([1.0, 1.0, -1.0, -1.0])
    p = sector_gibbs_weights(energies, temperature)
    return float(abs(2.0 * np.sum(p * signs * weights_sq)))
