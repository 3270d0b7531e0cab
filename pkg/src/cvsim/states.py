"""Gaussian states as mean vectors plus covariance matrices.

A state of N modes is described by the expectation values of the 2N quadrature
operators and their symmetrized covariance matrix sigma_kl =
(<{r_k, r_l}> - 2<r_k><r_l>)/2.  The canonical ordering throughout the package
is the interleaved one, r = (x1, p1, ..., xN, pN); the block ordering
(x1..xN, p1..pN) is supported only for interoperability (Strawberry Fields
prints it) and is tagged explicitly on the state.

With hbar = 2 (the default, matching the Strawberry Fields convention) the
vacuum covariance matrix is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from .errors import DegenerateInputError, MalformedInputError

INTERLEAVED = "interleaved"
XP_BLOCK = "xp_block"
Ordering = Literal["interleaved", "xp_block"]

#: tolerance for |cov - cov.T| at construction
SYMMETRY_TOL = 1e-10
#: default tolerance for the Robertson-Schrodinger physicality margin
PHYSICALITY_TOL = 1e-9
#: moduli of iO*cov eigenvalues must pair up to this tolerance
PAIRING_TOL = 1e-8


def symplectic_form(num_modes: int) -> np.ndarray:
    """Symplectic form Omega in interleaved ordering.

    Block diagonal of [[0, 1], [-1, 0]]; satisfies Omega.T = -Omega and
    Omega @ Omega = -I.
    """
    if num_modes < 1:
        raise ValueError("num_modes must be >= 1")
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    omega = np.zeros((2 * num_modes, 2 * num_modes))
    for k in range(num_modes):
        omega[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = block
    return omega


def xp_to_interleaved_permutation(num_modes: int) -> np.ndarray:
    """Index permutation mapping an xp-block vector onto an interleaved one.

    ``interleaved_vec = xp_vec[perm]`` where perm[2k] = k and
    perm[2k+1] = N + k.
    """
    perm = np.empty(2 * num_modes, dtype=int)
    perm[0::2] = np.arange(num_modes)
    perm[1::2] = num_modes + np.arange(num_modes)
    return perm


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class GaussianState:
    """Immutable first- and second-moment description of an N-mode state.

    Attributes:
        mean: quadrature expectation values, length 2N.
        cov: symmetric 2N x 2N covariance matrix.
        hbar: value of hbar fixing the vacuum noise hbar/2 (default 2).
        ordering: "interleaved" (x1, p1, ...) or "xp_block" (x1..xN, p1..pN).
    """

    mean: np.ndarray
    cov: np.ndarray
    hbar: float = 2.0
    ordering: Ordering = INTERLEAVED

    def __post_init__(self) -> None:
        mean = np.atleast_1d(np.asarray(self.mean, dtype=float))
        cov = np.asarray(self.cov, dtype=float)
        if mean.ndim != 1 or mean.size % 2 != 0 or mean.size == 0:
            raise MalformedInputError(
                f"mean must be a vector of even length 2N, got shape {mean.shape}"
            )
        if cov.shape != (mean.size, mean.size):
            raise MalformedInputError(
                f"cov must be {mean.size}x{mean.size}, got shape {cov.shape}"
            )
        asym = np.abs(cov - cov.T).max()
        if asym > SYMMETRY_TOL:
            raise MalformedInputError(
                f"cov is not symmetric (max asymmetry {asym:.3e} > {SYMMETRY_TOL})"
            )
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        if self.ordering not in (INTERLEAVED, XP_BLOCK):
            raise ValueError(f"unknown ordering {self.ordering!r}")
        object.__setattr__(self, "mean", _freeze(mean))
        object.__setattr__(self, "cov", _freeze(cov))

    @property
    def num_modes(self) -> int:
        return self.mean.size // 2


def vacuum_state(num_modes: int, hbar: float = 2.0) -> GaussianState:
    """N-mode vacuum: zero mean, cov = (hbar/2) * I."""
    if num_modes < 1:
        raise ValueError("num_modes must be >= 1")
    return GaussianState(
        mean=np.zeros(2 * num_modes),
        cov=(hbar / 2.0) * np.eye(2 * num_modes),
        hbar=hbar,
    )


def to_interleaved(state: GaussianState) -> GaussianState:
    """Permute an xp-block state into interleaved ordering (no-op otherwise)."""
    if state.ordering == INTERLEAVED:
        return state
    perm = xp_to_interleaved_permutation(state.num_modes)
    return GaussianState(
        mean=state.mean[perm],
        cov=state.cov[np.ix_(perm, perm)],
        hbar=state.hbar,
        ordering=INTERLEAVED,
    )


def to_xp_block(state: GaussianState) -> GaussianState:
    """Permute an interleaved state into xp-block ordering (no-op otherwise)."""
    if state.ordering == XP_BLOCK:
        return state
    perm = xp_to_interleaved_permutation(state.num_modes)
    inv = np.argsort(perm)
    return GaussianState(
        mean=state.mean[inv],
        cov=state.cov[np.ix_(inv, inv)],
        hbar=state.hbar,
        ordering=XP_BLOCK,
    )


class PhysicalityReport(NamedTuple):
    physical: bool
    margin: float


def physicality_margin(cov: np.ndarray, hbar: float) -> float:
    """Minimum eigenvalue of the Hermitian matrix cov + i(hbar/2)*Omega.

    The Robertson-Schrodinger uncertainty relation requires this to be >= 0
    for a covariance matrix (interleaved ordering) to describe a quantum state.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2 != 0:
        raise MalformedInputError(f"cov must be 2Nx2N, got shape {cov.shape}")
    asym = np.abs(cov - cov.T).max()
    if asym > SYMMETRY_TOL:
        raise MalformedInputError(
            f"cov is not symmetric (max asymmetry {asym:.3e} > {SYMMETRY_TOL})"
        )
    omega = symplectic_form(cov.shape[0] // 2)
    herm = cov + 1j * (hbar / 2.0) * omega
    eigvals = np.linalg.eigvalsh(herm)
    return float(eigvals.min())


def check_physicality(state: GaussianState, tol: float = PHYSICALITY_TOL) -> PhysicalityReport:
    """Robertson-Schrodinger check: cov + i(hbar/2)Omega >= -tol.

    Returns:
        PhysicalityReport(physical, margin) where margin is the minimum
        eigenvalue of the Hermitian test matrix (0 for states that saturate
        the bound, e.g. the vacuum).
    """
    interleaved = to_interleaved(state)
    margin = physicality_margin(interleaved.cov, interleaved.hbar)
    return PhysicalityReport(physical=margin >= -tol, margin=margin)


def symplectic_eigenvalues(cov: np.ndarray, pairing_tol: float = PAIRING_TOL) -> np.ndarray:
    """Symplectic spectrum of a positive-definite covariance matrix.

    The eigenvalues of i*Omega*cov come in +/- pairs; the symplectic
    eigenvalues are the N moduli, one per pair, returned sorted ascending.
    Pure states have all of them equal to hbar/2.

    Args:
        cov: symmetric positive-definite 2N x 2N matrix, interleaved ordering.
        pairing_tol: maximum allowed mismatch between paired moduli.

    Raises:
        DegenerateInputError: if cov is not positive definite.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2 != 0:
        raise MalformedInputError(f"cov must be 2Nx2N, got shape {cov.shape}")
    min_eig = np.linalg.eigvalsh((cov + cov.T) / 2.0).min()
    if min_eig <= 0:
        raise DegenerateInputError(
            f"cov is not positive definite (min eigenvalue {min_eig:.3e})"
        )
    num_modes = cov.shape[0] // 2
    moduli = np.sort(np.abs(np.linalg.eigvals(1j * symplectic_form(num_modes) @ cov)))
    pairs_lo = moduli[0::2]
    pairs_hi = moduli[1::2]
    mismatch = np.abs(pairs_hi - pairs_lo).max()
    if mismatch > pairing_tol:
        raise DegenerateInputError(
            f"eigenvalue moduli do not pair up (mismatch {mismatch:.3e})"
        )
    return (pairs_lo + pairs_hi) / 2.0


def purity(state: GaussianState) -> float:
    """Tr(rho^2) of a Gaussian state: (hbar/2)^N / sqrt(det cov).

    Equals 1 exactly for pure Gaussian states.

    Raises:
        DegenerateInputError: if cov is singular.
    """
    det = np.linalg.det(state.cov)
    if det <= 0 or not np.isfinite(det):
        raise DegenerateInputError(f"cov is singular (det = {det:.3e})")
    return float((state.hbar / 2.0) ** state.num_modes / np.sqrt(det))


def clean_tiny(arr: np.ndarray, threshold: float = 1e-11) -> np.ndarray:
    """Zero out entries with magnitude below the display threshold."""
    out = np.array(arr, dtype=float, copy=True)
    out[np.abs(out) < threshold] = 0.0
    return out
