"""Spin chains and their single-excitation-sector Hamiltonians.

Two nearest-neighbour models on an open chain of N qubits:

* ``XX``   - hopping only; the sector Hamiltonian is tridiagonal with zero
  diagonal and off-diagonal J_1..J_{N-1}.
* ``XXX``  - isotropic Heisenberg; the ZZ part adds a diagonal.  With one
  excitation at site j each bond contributes +J_i/2 if it touches neither
  endpoint of the excitation and -J_i/2 if it touches one, giving
  diag_j = (sum_i J_i)/2 - (J_{j-1} + J_j)  with J_0 = J_N = 0.

Sites are 1-indexed in the public API.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .tridiag import JacobiMatrix


class Model(str, enum.Enum):
    XX = "xx"
    XXX = "xxx"


@dataclass(frozen=True)
class ChainSpec:
    """An open chain: site count, model, and coupling sequence J_1..J_{N-1}.

    Zero or negative couplings are rejected (a zero bond disconnects the
    chain and breaks eigenvalue simplicity).  Mirror symmetry J_i = J_{N-i}
    is not forced here; validate it on demand.
    """

    n_sites: int
    model: Model
    couplings: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        object.__setattr__(
            self, "couplings", tuple(float(j) for j in self.couplings)
        )
        if self.n_sites < 2:
            raise ValidationError("a chain needs at least 2 sites")
        if len(self.couplings) != self.n_sites - 1:
            raise ValidationError(
                f"expected {self.n_sites - 1} couplings, got {len(self.couplings)}"
            )
        if not all(np.isfinite(self.couplings)):
            raise ValidationError("couplings must be finite")
        if any(j <= 0.0 for j in self.couplings):
            raise ValidationError("couplings must be strictly positive")


@dataclass(frozen=True)
class BasisState:
    """Sector basis state |j>: the single excitation sits on site j."""

    excited_site: int
    n_sites: int

    def __post_init__(self):
        if not 1 <= self.excited_site <= self.n_sites:
            raise ValidationError(
                f"site {self.excited_site} outside chain of {self.n_sites}"
            )

    def vector(self) -> np.ndarray:
        v = np.zeros(self.n_sites)
        v[self.excited_site - 1] = 1.0
        return v


def validate_mirror_symmetry(spec: ChainSpec, tol: float = 1e-10) -> bool:
    """True iff |J_i - J_{N-i}| <= tol * max(1, J_i) for every bond."""
    j = np.asarray(spec.couplings)
    return bool(np.all(np.abs(j - j[::-1]) <= tol * np.maximum(1.0, j)))


def hamiltonian_single_excitation(spec: ChainSpec) -> JacobiMatrix:
    """Sector Hamiltonian of the chain as a Jacobi matrix."""
    j = np.asarray(spec.couplings)
    if spec.model is Model.XX:
        diag = np.zeros(spec.n_sites)
    else:
        padded = np.concatenate([[0.0], j, [0.0]])
        diag = 0.5 * np.sum(j) - (padded[:-1] + padded[1:])
    return JacobiMatrix(diag=tuple(diag), offdiag=tuple(j))
