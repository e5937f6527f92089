"""Coupling-sequence synthesis for perfect state transfer.

A mirror-symmetric XX chain transfers an excitation end to end with unit
fidelity at time t_p exactly when its sector eigenvalues, sorted, carry
alternating phases exp(-i E_m t_p) up to one global phase.  Spectra built
from interleaved odd and even integer multiples of pi/t_p do this, and a
zero-diagonal persymmetric Jacobi matrix is determined uniquely by its
spectrum, so designing a channel reduces to:

    integer family parameters -> target spectrum -> coupling reconstruction.

Closed-form families cover N = 3..8; the general path works for any N.
Reconstruction uses end-weight synthesis: the boundary weight of each
eigenvalue of a persymmetric zero-diagonal Jacobi matrix is proportional to
1 / prod_{l != m} |E_m - E_l|, and a Lanczos recursion on diag(E) seeded
with the square-root weight vector recovers the couplings directly.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .chains import ChainSpec, Model
from .errors import (
    AsymmetricInput,
    DuplicateEigenvalue,
    InvalidParams,
    NotAntisymmetric,
    ReconstructionFailure,
    ValidationError,
)
from .tridiag import JacobiMatrix, eigen_decompose

MIN_RELATIVE_GAP = 1e-6
MIRROR_TOL = 1e-10


class Parity(str, enum.Enum):
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"


@dataclass(frozen=True)
class DesignRequest:
    """Chain length, requested transfer time, and integer family parameters.

    Parameter conventions:

    * even N:  one integer n >= 1 selecting the spectral progression;
    * N = 4 (closed form): two integers (k_1, k_2), k_1 >= 0, k_2 <= -1,
      k_1 - k_2 even;
    * N = 3 (closed form): no parameters (uniform chain);
    * N = 5 (closed form): one integer k >= 1;
    * odd N (general): (N-1)/2 integers, the odd-multiple indices followed
      by the even-multiple indices (for N = 7 this is the closed form's
      (n_1, n_2, n_3) order).
    """

    n_sites: int
    t_p: float
    params: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "t_p", float(self.t_p))
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        if self.n_sites < 2:
            raise InvalidParams("n_sites must be at least 2")
        if not (np.isfinite(self.t_p) and self.t_p > 0.0):
            raise InvalidParams("t_p must be a positive finite time")


@dataclass(frozen=True)
class CouplingSolution:
    """Designed couplings with the target and achieved spectra.

    Invariants enforced at construction: mirror symmetry of the couplings
    and spectral residual within 1e-8 of the spectral radius.
    """

    couplings: tuple[float, ...]
    target_spectrum: tuple[float, ...]
    achieved_spectrum: tuple[float, ...]
    spectral_residual: float
    t_p: float

    def __post_init__(self):
        j = np.asarray(self.couplings)
        if np.any(np.abs(j - j[::-1]) > MIRROR_TOL * np.maximum(1.0, j)):
            raise ReconstructionFailure("designed couplings are not mirror symmetric")
        radius = max(abs(x) for x in self.target_spectrum)
        if self.spectral_residual > 1e-8 * radius:
            raise ReconstructionFailure(
                f"spectral residual {self.spectral_residual:.3e} exceeds "
                f"1e-8 * spectral radius {radius:.3e}"
            )

    def chain(self) -> ChainSpec:
        return ChainSpec(
            n_sites=len(self.couplings) + 1, model=Model.XX, couplings=self.couplings
        )


def _progression_even(n_sites: int, n: int, t_p: float) -> np.ndarray:
    """Half spectrum for even N per the arithmetic progressions; returns the
    full spectrum as the union with its negation."""
    unit = math.pi / (2.0 * t_p)
    if n_sites % 4 == 0:
        k = n_sites // 4
        half = [(-1 + 4 * i * n) * unit for i in range(-(k - 1), k + 1)]
    else:
        k = (n_sites + 2) // 4
        half = [(1 + 4 * i * n) * unit for i in range(-(k - 1), k)]
    full = np.concatenate([half, [-x for x in half]])
    return np.sort(full)


def _odd_class_counts(n_sites: int) -> tuple[int, int]:
    """(odd-multiple pair count, even-multiple pair count) for odd N."""
    k = (n_sites - 1) // 2
    return (k + 1) // 2, k // 2


def _progression_odd(n_sites: int, params: Sequence[int], t_p: float) -> np.ndarray:
    """Full spectrum for odd N: {+-(2n-1) pi/t_p} from the odd-multiple
    class, {0} U {+-2n pi/t_p} from the even-multiple class.

    The classes must interleave when sorted (odd, even, odd, ... going up
    from zero), otherwise the alternating-phase condition fails and no
    transfer time exists; non-interleaving parameters are rejected.
    """
    n_odd, n_even = _odd_class_counts(n_sites)
    odd_idx = sorted(params[:n_odd])
    even_idx = sorted(params[n_odd:])
    odd_mult = [2 * n - 1 for n in odd_idx]
    even_mult = [2 * n for n in even_idx]
    if len(set(odd_mult)) != len(odd_mult) or len(set(even_mult)) != len(even_mult):
        raise DuplicateEigenvalue("repeated parameter within a spectral class")
    for i, b in enumerate(even_mult):
        if not odd_mult[i] < b:
            raise InvalidParams(
                f"classes must interleave: odd multiple {odd_mult[i]} must lie "
                f"below even multiple {b}"
            )
        if i + 1 < len(odd_mult) and not b < odd_mult[i + 1]:
            raise InvalidParams(
                f"classes must interleave: even multiple {b} must lie below "
                f"odd multiple {odd_mult[i + 1]}"
            )
    unit = math.pi / t_p
    positives = [m * unit for m in sorted(odd_mult + even_mult)]
    return np.sort(np.concatenate([[-x for x in positives], [0.0], positives]))


def target_spectrum(req: DesignRequest) -> list[float]:
    """Perfect-transfer target spectrum for the request, sorted ascending.

    Even N takes a single parameter n; odd N takes (N-1)/2 parameters as
    described on DesignRequest.  For N = 5 the single-parameter form [k]
    is accepted as shorthand for (1, k).
    """
    n_sites, params, t_p = req.n_sites, req.params, req.t_p
    if any(p < 1 for p in params):
        raise InvalidParams("progression parameters must be >= 1")
    if n_sites % 2 == 0:
        if len(params) != 1:
            raise InvalidParams(f"even N={n_sites} takes exactly one parameter")
        return [float(x) for x in _progression_even(n_sites, params[0], t_p)]
    n_odd, n_even = _odd_class_counts(n_sites)
    if n_sites == 5 and len(params) == 1:
        params = (1, params[0])
    if len(params) != n_odd + n_even:
        raise InvalidParams(
            f"odd N={n_sites} takes {n_odd + n_even} parameters "
            f"({n_odd} odd-multiple + {n_even} even-multiple indices)"
        )
    return [float(x) for x in _progression_odd(n_sites, params, t_p)]


def reduce_half(
    couplings: Sequence[float], parity: Parity | str
) -> JacobiMatrix:
    """Half-chain block of a mirror-symmetric zero-diagonal chain.

    Even N = 2k: a k x k zero-diagonal tridiagonal with off-diagonal
    J_1..J_{k-1} and corner diagonal entry +J_k (symmetric parity) or
    -J_k (antisymmetric).  Odd N = 2k+1: the symmetric block is
    (k+1) x (k+1) with off-diagonal J_1..J_{k-1}, sqrt(2) J_k; the
    antisymmetric block is k x k with off-diagonal J_1..J_{k-1}.  The two
    block spectra together give the full chain spectrum.
    """
    parity = Parity(parity)
    j = np.asarray([float(x) for x in couplings])
    if j.size < 1:
        raise ValidationError("need at least one coupling")
    if np.any(np.abs(j - j[::-1]) > MIRROR_TOL * np.maximum(1.0, np.abs(j))):
        raise AsymmetricInput("couplings are not mirror symmetric")
    j = 0.5 * (j + j[::-1])
    n_sites = j.size + 1
    k = n_sites // 2
    if n_sites % 2 == 0:
        corner = j[k - 1] if parity is Parity.SYMMETRIC else -j[k - 1]
        diag = np.zeros(k)
        diag[-1] = corner
        return JacobiMatrix(diag=tuple(diag), offdiag=tuple(j[: k - 1]))
    if parity is Parity.SYMMETRIC:
        off = np.concatenate([j[: k - 1], [math.sqrt(2.0) * j[k - 1]]])
        return JacobiMatrix(diag=(0.0,) * (k + 1), offdiag=tuple(off))
    return JacobiMatrix(diag=(0.0,) * k, offdiag=tuple(j[: k - 1]))


def _end_weights(spectrum: np.ndarray) -> np.ndarray:
    """Boundary spectral weights of the persymmetric zero-diagonal chain:
    w_m proportional to 1 / prod_{l != m} |E_m - E_l|, normalized."""
    n = spectrum.size
    log_w = np.empty(n)
    for m in range(n):
        diffs = np.abs(spectrum[m] - np.delete(spectrum, m))
        log_w[m] = -np.sum(np.log(diffs))
    w = np.exp(log_w - np.max(log_w))
    return w / np.sum(w)


def _lanczos_couplings(spectrum: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Jacobi off-diagonal from (spectrum, end weights) via the orthogonal-
    polynomial recursion, with full reorthogonalization for stability."""
    n = spectrum.size
    basis = np.zeros((n, n))
    basis[:, 0] = np.sqrt(weights)
    beta = np.zeros(n - 1)
    for i in range(n - 1):
        u = spectrum * basis[:, i]
        u -= (basis[:, i] @ u) * basis[:, i]
        if i > 0:
            u -= beta[i - 1] * basis[:, i - 1]
        for _ in range(2):
            u -= basis[:, : i + 1] @ (basis[:, : i + 1].T @ u)
        norm = float(np.linalg.norm(u))
        if not np.isfinite(norm) or norm <= 0.0:
            raise ReconstructionFailure(
                f"coupling {i + 1} lost positivity during reconstruction"
            )
        beta[i] = norm
        basis[:, i + 1] = u / norm
    return beta


def reconstruct_from_spectrum(
    target: Sequence[float], t_p: float
) -> CouplingSolution:
    """Unique mirror-symmetric positive coupling sequence whose XX chain has
    exactly the given spectrum.

    The target must be antisymmetric (E and -E paired, a single zero iff N
    is odd) with distinct values; targets whose relative gap is below 1e-6
    are rejected as numerically inadmissible.
    """
    spectrum = np.sort(np.asarray([float(x) for x in target]))
    n = spectrum.size
    if n < 2:
        raise ValidationError("need at least 2 target eigenvalues")
    radius = float(np.max(np.abs(spectrum)))
    if radius == 0.0 or not np.all(np.isfinite(spectrum)):
        raise NotAntisymmetric("target spectrum must be finite and nonzero")
    if np.max(np.abs(spectrum + spectrum[::-1])) > 1e-8 * max(1.0, radius):
        raise NotAntisymmetric("target spectrum is not symmetric under negation")
    spectrum = 0.5 * (spectrum - spectrum[::-1])
    if np.min(np.diff(spectrum)) < MIN_RELATIVE_GAP * radius:
        raise ReconstructionFailure(
            "target eigenvalues are repeated or closer than the minimum "
            f"relative gap {MIN_RELATIVE_GAP:g}"
        )

    beta = _lanczos_couplings(spectrum, _end_weights(spectrum))
    couplings = 0.5 * (beta + beta[::-1])

    achieved = eigen_decompose(
        JacobiMatrix(diag=(0.0,) * n, offdiag=tuple(couplings))
    ).eigenvalues
    residual = float(np.max(np.abs(achieved - spectrum)))
    return CouplingSolution(
        couplings=tuple(float(j) for j in couplings),
        target_spectrum=tuple(float(x) for x in spectrum),
        achieved_spectrum=tuple(float(x) for x in achieved),
        spectral_residual=residual,
        t_p=float(t_p),
    )


def design_general(req: DesignRequest) -> CouplingSolution:
    """Target-spectrum design for any N: progression then reconstruction."""
    return reconstruct_from_spectrum(target_spectrum(req), req.t_p)


def _solution_from_couplings(couplings, target, t_p) -> CouplingSolution:
    target = np.sort(np.asarray(target))
    achieved = eigen_decompose(
        JacobiMatrix(diag=(0.0,) * (len(couplings) + 1), offdiag=tuple(couplings))
    ).eigenvalues
    return CouplingSolution(
        couplings=tuple(float(j) for j in couplings),
        target_spectrum=tuple(float(x) for x in target),
        achieved_spectrum=tuple(float(x) for x in achieved),
        spectral_residual=float(np.max(np.abs(achieved - target))),
        t_p=float(t_p),
    )


def _design_4(k_1: int, k_2: int, t_p: float) -> CouplingSolution:
    """Two-parameter 4-site family: boundary bonds 1, middle bond J, scaled
    to place the transfer at the requested time."""
    if k_1 < 0 or k_2 > -1:
        raise InvalidParams("need k_1 >= 0 and k_2 <= -1")
    if (k_1 - k_2) % 2 != 0:
        raise InvalidParams("k_1 - k_2 must be even")
    if (k_1 - k_2) ** 2 <= (k_1 + k_2 + 1) ** 2:
        raise InvalidParams("need (k_1 - k_2)^2 > (k_1 + k_2 + 1)^2")
    middle = math.sqrt(
        4.0 * (k_1 + k_2 + 1) ** 2 / ((k_1 - k_2) ** 2 - (k_1 + k_2 + 1) ** 2)
    )
    e_top = 0.5 * (middle + math.hypot(middle, 2.0))
    e_inner = 0.5 * (middle - math.hypot(middle, 2.0))
    t_natural = (2 * k_1 + 1) * math.pi / (2.0 * e_top)
    scale = t_natural / t_p
    couplings = (scale, scale * middle, scale)
    target = [scale * e for e in (-e_top, e_inner, -e_inner, e_top)]
    return _solution_from_couplings(couplings, target, t_p)


def _design_7(n_1: int, n_2: int, n_3: int, t_p: float) -> CouplingSolution:
    a = (2 * n_1 - 1) ** 2 + (2 * n_2 - 1) ** 2 - (2 * n_3) ** 2
    if n_1 == n_2:
        raise InvalidParams("n_1 and n_2 must differ")
    if a <= 0:
        raise InvalidParams(
            "need (2n_1-1)^2 + (2n_2-1)^2 > (2n_3)^2 to keep the center bond real"
        )
    if (2 * n_3) ** 2 * a <= (2 * n_1 - 1) ** 2 * (2 * n_2 - 1) ** 2:
        raise InvalidParams(
            "need (2n_3)^2 [(2n_1-1)^2 + (2n_2-1)^2 - (2n_3)^2] > "
            "(2n_1-1)^2 (2n_2-1)^2 to keep the second bond real"
        )
    u = math.pi / t_p
    j_1 = u * (2 * n_1 - 1) * (2 * n_2 - 1) / math.sqrt(a)
    j_2 = u * math.sqrt(
        ((2 * n_3) ** 2 * a - (2 * n_1 - 1) ** 2 * (2 * n_2 - 1) ** 2) / a
    )
    j_3 = u * math.sqrt(a / 2.0)
    target = [
        m * u
        for m in (
            -(2 * max(n_1, n_2) - 1),
            -2 * n_3,
            -(2 * min(n_1, n_2) - 1),
            0,
            2 * min(n_1, n_2) - 1,
            2 * n_3,
            2 * max(n_1, n_2) - 1,
        )
    ]
    return _solution_from_couplings((j_1, j_2, j_3, j_3, j_2, j_1), target, t_p)


def design_closed_form(req: DesignRequest) -> CouplingSolution:
    """Closed-form coupling families for N = 3..8.

    Every family places the transfer exactly at req.t_p; parameters select
    among the infinitely many admissible spectra (larger parameters mean
    stronger couplings for the same transfer time).
    """
    n_sites, params, t_p = req.n_sites, req.params, req.t_p
    if n_sites == 3:
        if params:
            raise InvalidParams("the 3-site family takes no parameters")
        j = math.pi / (math.sqrt(2.0) * t_p)
        target = [-math.sqrt(2.0) * j, 0.0, math.sqrt(2.0) * j]
        return _solution_from_couplings((j, j), target, t_p)
    if n_sites == 4:
        if len(params) != 2:
            raise InvalidParams("the 4-site family takes parameters (k_1, k_2)")
        return _design_4(params[0], params[1], t_p)
    if n_sites == 5:
        if len(params) != 1:
            raise InvalidParams("the 5-site family takes one parameter k")
        (k,) = params
        if k < 1:
            raise InvalidParams("need k >= 1")
        j_1 = math.pi / t_p
        j_2 = math.sqrt(((2 * k) ** 2 - 1) / 2.0) * math.pi / t_p
        target = target_spectrum(DesignRequest(n_sites=5, t_p=t_p, params=(1, k)))
        return _solution_from_couplings((j_1, j_2, j_2, j_1), target, t_p)
    if n_sites == 6:
        if len(params) != 1:
            raise InvalidParams("the 6-site family takes one parameter n")
        (n,) = params
        if n < 1:
            raise InvalidParams("need n >= 1")
        j_1 = math.sqrt((16 * n**2 - 1) * math.pi**2 / (12.0 * t_p**2))
        j_2 = math.sqrt((8 * n**2 - 2) * math.pi**2 / (3.0 * t_p**2))
        j_3 = 3.0 * math.pi / (2.0 * t_p)
        target = target_spectrum(req)
        return _solution_from_couplings((j_1, j_2, j_3, j_2, j_1), target, t_p)
    if n_sites == 7:
        if len(params) != 3:
            raise InvalidParams("the 7-site family takes parameters (n_1, n_2, n_3)")
        if any(p < 1 for p in params):
            raise InvalidParams("progression parameters must be >= 1")
        return _design_7(params[0], params[1], params[2], t_p)
    if n_sites == 8:
        if len(params) != 1:
            raise InvalidParams("the 8-site family takes one parameter n")
        (n,) = params
        if n < 1:
            raise InvalidParams("need n >= 1")
        u = math.pi / (2.0 * t_p)
        j_1 = u * math.sqrt((32 * n**2 + 4 * n - 1) / 5.0)
        j_2 = u * math.sqrt((48 * n**2 + 16 * n - 4) / 5.0)
        j_3 = u * math.sqrt(20.0 * n - 5.0)
        j_4 = (8 * n - 4) * u
        target = target_spectrum(req)
        return _solution_from_couplings(
            (j_1, j_2, j_3, j_4, j_3, j_2, j_1), target, t_p
        )
    raise InvalidParams(
        f"no closed-form family for N={n_sites}; use the general design"
    )
