"""Symplectic gate builders and their action on Gaussian states.

Every gate is a pair (S, d): a 2N x 2N symplectic matrix and a displacement
vector, acting on moments as mean -> S @ mean + d, cov -> S @ cov @ S.T.
Gates are built as full 2N x 2N embeddings in interleaved ordering.

Conventions (matching the Strawberry Fields gate definitions):
  * displacement by alpha shifts the target mode mean by
    sqrt(2*hbar) * (|alpha| cos(arg), |alpha| sin(arg));
  * squeezing S(r e^{i theta}) acts on quadratures as
    X -> (cosh r - cos(theta) sinh r) X - sin(theta) sinh r P,
    P -> (cosh r + cos(theta) sinh r) P - sin(theta) sinh r X;
  * the beam splitter implements a_i -> cos(theta) a_i - e^{-i phi} sin(theta) a_j,
    a_j -> e^{i phi} sin(theta) a_i + cos(theta) a_j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MalformedInputError
from .states import INTERLEAVED, GaussianState, symplectic_form

#: tolerance on ||S Omega S^T - Omega||_F at gate construction
SYMPLECTIC_TOL = 1e-10


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SymplecticGate:
    """A linear optical element: symplectic matrix plus displacement."""

    matrix: np.ndarray
    displacement: np.ndarray

    def __post_init__(self) -> None:
        matrix = np.asarray(self.matrix, dtype=float)
        disp = np.atleast_1d(np.asarray(self.displacement, dtype=float))
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] % 2:
            raise MalformedInputError(f"matrix must be 2Nx2N, got {matrix.shape}")
        if disp.shape != (matrix.shape[0],):
            raise MalformedInputError(
                f"displacement must have length {matrix.shape[0]}, got {disp.shape}"
            )
        omega = symplectic_form(matrix.shape[0] // 2)
        defect = np.linalg.norm(matrix @ omega @ matrix.T - omega)
        if defect > SYMPLECTIC_TOL:
            raise MalformedInputError(
                f"matrix is not symplectic (||S Omega S^T - Omega||_F = {defect:.3e})"
            )
        object.__setattr__(self, "matrix", _freeze(matrix))
        object.__setattr__(self, "displacement", _freeze(disp))

    @property
    def num_modes(self) -> int:
        return self.matrix.shape[0] // 2


def _check_mode(mode: int, num_modes: int) -> None:
    if not 0 <= mode < num_modes:
        raise ValueError(f"mode {mode} out of range for {num_modes} modes")


def _embed(block: np.ndarray, mode: int, num_modes: int) -> np.ndarray:
    S = np.eye(2 * num_modes)
    S[2 * mode : 2 * mode + 2, 2 * mode : 2 * mode + 2] = block
    return S


def displacement_gate(
    alpha_mag: float, alpha_phase: float, mode: int, num_modes: int, hbar: float = 2.0
) -> SymplecticGate:
    """Displacement D(alpha) with alpha = alpha_mag * e^{i alpha_phase}.

    Identity symplectic matrix; shifts the target mode mean by
    sqrt(2*hbar) * (Re alpha, Im alpha).
    """
    if alpha_mag < 0:
        raise ValueError("alpha_mag must be >= 0 (fold the sign into alpha_phase)")
    _check_mode(mode, num_modes)
    disp = np.zeros(2 * num_modes)
    scale = np.sqrt(2.0 * hbar) * alpha_mag
    disp[2 * mode] = scale * np.cos(alpha_phase)
    disp[2 * mode + 1] = scale * np.sin(alpha_phase)
    return SymplecticGate(matrix=np.eye(2 * num_modes), displacement=disp)


def squeeze_gate(r: float, theta: float, mode: int, num_modes: int) -> SymplecticGate:
    """Single-mode squeezer S(r e^{i theta}), r >= 0."""
    if r < 0:
        raise ValueError("r must be >= 0 (fold the sign into theta)")
    _check_mode(mode, num_modes)
    ch, sh = np.cosh(r), np.sinh(r)
    block = np.array(
        [
            [ch - np.cos(theta) * sh, -np.sin(theta) * sh],
            [-np.sin(theta) * sh, ch + np.cos(theta) * sh],
        ]
    )
    return SymplecticGate(
        matrix=_embed(block, mode, num_modes), displacement=np.zeros(2 * num_modes)
    )


def rotation_gate(phi: float, mode: int, num_modes: int) -> SymplecticGate:
    """Phase-space rotation of the target mode by phi."""
    _check_mode(mode, num_modes)
    block = np.array(
        [[np.cos(phi), -np.sin(phi)], [np.sin(phi), np.cos(phi)]]
    )
    return SymplecticGate(
        matrix=_embed(block, mode, num_modes), displacement=np.zeros(2 * num_modes)
    )


def beamsplitter_gate(
    theta: float, phi: float, modes: tuple[int, int], num_modes: int
) -> SymplecticGate:
    """Two-mode beam splitter with transmission cos(theta) and phase phi.

    theta = pi/4, phi = 0 is the balanced 50:50 splitter.
    """
    i, j = modes
    if i == j:
        raise ValueError("beam splitter modes must be distinct")
    _check_mode(i, num_modes)
    _check_mode(j, num_modes)
    c, s = np.cos(theta), np.sin(theta)
    rot = np.array([[np.cos(phi), -np.sin(phi)], [np.sin(phi), np.cos(phi)]])
    S = np.eye(2 * num_modes)
    S[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = c * np.eye(2)
    S[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = -s * rot.T
    S[2 * j : 2 * j + 2, 2 * i : 2 * i + 2] = s * rot
    S[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = c * np.eye(2)
    return SymplecticGate(matrix=S, displacement=np.zeros(2 * num_modes))


def apply_gate(gate: SymplecticGate, state: GaussianState) -> GaussianState:
    """Transform a state's moments: mean -> S mean + d, cov -> S cov S^T."""
    if state.ordering != INTERLEAVED:
        raise MalformedInputError(
            "gates act on interleaved states; convert with to_interleaved first"
        )
    if gate.num_modes != state.num_modes:
        raise MalformedInputError(
            f"gate is for {gate.num_modes} modes, state has {state.num_modes}"
        )
    S = gate.matrix
    cov = S @ state.cov @ S.T
    cov = (cov + cov.T) / 2.0  # restore exact symmetry lost to rounding
    return GaussianState(
        mean=S @ state.mean + gate.displacement,
        cov=cov,
        hbar=state.hbar,
        ordering=INTERLEAVED,
    )


def thermal_prepare(n_bar: float, mode: int, state: GaussianState) -> GaussianState:
    """Replace a vacuum mode with a thermal state of mean photon number n_bar.

    Not a symplectic gate (the map is not unitary); restricted to modes that
    are currently in the vacuum so the semantics stay unambiguous.
    """
    if n_bar < 0:
        raise ValueError("n_bar must be >= 0")
    if state.ordering != INTERLEAVED:
        raise MalformedInputError(
            "thermal_prepare acts on interleaved states; convert first"
        )
    _check_mode(mode, state.num_modes)
    sl = slice(2 * mode, 2 * mode + 2)
    half = state.hbar / 2.0
    block = state.cov[sl, sl]
    cross = np.delete(state.cov[sl, :], [2 * mode, 2 * mode + 1], axis=1)
    if (
        np.abs(block - half * np.eye(2)).max() > 1e-10
        or (cross.size and np.abs(cross).max() > 1e-10)
        or np.abs(state.mean[sl]).max() > 1e-10
    ):
        raise ValueError(f"mode {mode} is not in the vacuum state")
    cov = np.array(state.cov, copy=True)
    cov[sl, sl] = (2.0 * n_bar + 1.0) * half * np.eye(2)
    return GaussianState(mean=state.mean, cov=cov, hbar=state.hbar, ordering=INTERLEAVED)
