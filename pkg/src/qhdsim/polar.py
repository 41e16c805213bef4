"""Polar decomposition of wave functions and the phase-damping update.

A wave function factors as psi = sqrt(rho) * phi with sqrt(rho) = |psi| and
|phi| = 1 off the node set; phi is set to zero where |psi| falls below the
vacuum threshold.  The hydrodynamic observables are

    grad sqrt(rho) = Re(conj(phi) grad psi)
    Lambda         = hbar * Im(conj(phi) grad psi)
    J              = hbar * Im(conj(psi) grad psi) = sqrt(rho) * Lambda

and the damping update multiplies the unitary factor by exp(-i*tau*theta)
with theta = arg(phi) in [0, 2*pi), which preserves |psi| pointwise and
rescales Lambda by (1 - tau) wherever the phase stays clear of the branch
cut.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import Grid, spectral_gradient
from .state import WaveState

__all__ = [
    "PolarData",
    "HydroFields",
    "default_vacuum_threshold",
    "polar_factor",
    "hydrodynamic_fields",
    "null_form_residual",
    "irrotationality_residual",
    "phase_damping_update",
    "cut_proximity",
    "axis_winding",
]

#: Default vacuum threshold as a fraction of max|psi|.
VACUUM_SCALE = 1e-12

#: Phase width of the cut-proximity diagnostic band below 2*pi.
CUT_BAND = 0.1


@dataclass
class PolarData:
    """Amplitude, unitary factor and node-set mask of one wave function."""

    sqrt_rho: np.ndarray
    phi: np.ndarray
    vacuum_mask: np.ndarray
    delta_vac: float


@dataclass
class HydroFields:
    """Observables extracted from a wave function.

    Vector fields have shape (dim, *grid.shape); ``lam`` is masked to zero on
    the vacuum set, while ``grad_sqrt_rho`` comes from the real-part formula.
    """

    grid: Grid
    hbar: float
    sqrt_rho: np.ndarray
    grad_sqrt_rho: np.ndarray
    lam: np.ndarray
    current: np.ndarray
    rho: np.ndarray
    vacuum_mask: np.ndarray

    def lambda_l2_squared(self) -> float:
        """Cell-volume-weighted integral of |Lambda|^2."""
        return self.grid.integrate(np.sum(self.lam**2, axis=0))


def default_vacuum_threshold(psi: np.ndarray) -> float:
    amax = float(np.max(np.abs(psi))) if psi.size else 0.0
    return VACUUM_SCALE * amax


def polar_factor(state: WaveState, delta_vac: float | None = None) -> PolarData:
    """Split psi into amplitude and unitary factor; phi = 0 on the node set."""
    if delta_vac is None:
        delta_vac = default_vacuum_threshold(state.psi)
    elif delta_vac < 0:
        raise ValueError(f"delta_vac must be nonnegative, got {delta_vac}")
    sqrt_rho = np.abs(state.psi)
    mask = sqrt_rho <= delta_vac
    phi = np.where(mask, 0.0 + 0.0j, state.psi / np.where(mask, 1.0, sqrt_rho))
    return PolarData(sqrt_rho=sqrt_rho, phi=phi, vacuum_mask=mask, delta_vac=float(delta_vac))


def hydrodynamic_fields(state: WaveState, delta_vac: float | None = None) -> HydroFields:
    """Extract sqrt(rho), its gradient, Lambda, J and rho from a wave function."""
    polar = polar_factor(state, delta_vac)
    grad_psi = spectral_gradient(state.grid, state.psi)
    phi_bar = np.conj(polar.phi)
    grad_sqrt_rho = np.real(phi_bar * grad_psi)
    lam = state.hbar * np.imag(phi_bar * grad_psi)
    lam[:, polar.vacuum_mask] = 0.0
    current = state.hbar * np.imag(np.conj(state.psi) * grad_psi)
    return HydroFields(
        grid=state.grid,
        hbar=state.hbar,
        sqrt_rho=polar.sqrt_rho,
        grad_sqrt_rho=grad_sqrt_rho,
        lam=lam,
        current=current,
        rho=polar.sqrt_rho**2,
        vacuum_mask=polar.vacuum_mask,
    )


def null_form_residual(state: WaveState, delta_vac: float | None = None) -> float:
    """Max defect of hbar^2 Re(d_j conj(psi) d_k psi) = hbar^2 d_j sqrt(rho)
    d_k sqrt(rho) + Lambda_j Lambda_k over non-vacuum points and index pairs.

    The right-hand side differentiates the sqrt(rho) grid function spectrally,
    so the residual measures discretization error and vanishes under grid
    refinement on smooth vacuum-free data.
    """
    h = hydrodynamic_fields(state, delta_vac)
    grad_psi = spectral_gradient(state.grid, state.psi)
    dsr = np.real(spectral_gradient(state.grid, h.sqrt_rho.astype(complex)))
    keep = ~h.vacuum_mask
    hb2 = state.hbar**2
    worst = 0.0
    for j in range(state.grid.dim):
        for k in range(state.grid.dim):
            lhs = hb2 * np.real(np.conj(grad_psi[j]) * grad_psi[k])
            rhs = hb2 * dsr[j] * dsr[k] + h.lam[j] * h.lam[k]
            diff = np.abs(lhs - rhs)[keep]
            if diff.size:
                worst = max(worst, float(diff.max()))
    return worst


def irrotationality_residual(h: HydroFields) -> float:
    """Discrete L^2 norm of curl J - 2 grad sqrt(rho) ^ Lambda.

    Returns 0 in one dimension where there is no curl.  The curl and the
    sqrt(rho) gradient are evaluated spectrally.
    """
    grid = h.grid
    if grid.dim == 1:
        return 0.0
    dsr = np.real(spectral_gradient(grid, h.sqrt_rho.astype(complex)))
    dJ = [np.real(spectral_gradient(grid, h.current[ax].astype(complex))) for ax in range(grid.dim)]
    if grid.dim == 2:
        curl = dJ[1][0] - dJ[0][1]
        rhs = 2.0 * (dsr[0] * h.lam[1] - dsr[1] * h.lam[0])
        return grid.l2_norm(curl - rhs)
    total = 0.0
    pairs = ((1, 2), (2, 0), (0, 1))
    for a, b in pairs:
        curl = dJ[b][a] - dJ[a][b]
        rhs = 2.0 * (dsr[a] * h.lam[b] - dsr[b] * h.lam[a])
        total += grid.l2_norm(curl - rhs) ** 2
    return float(np.sqrt(total))


def phase_damping_update(
    state: WaveState, tau: float, delta_vac: float | None = None
) -> WaveState:
    """Damp the phase: psi -> psi * exp(-i*tau*theta), theta = arg(phi) in [0, 2*pi).

    Vacuum points are left untouched.  The modulus is preserved pointwise and
    the recomputed Lambda equals (1 - tau) * Lambda up to spectral
    differentiation error wherever the phase avoids the 0/2*pi branch cut.
    """
    if not (0.0 < tau < 1.0):
        raise ValueError(f"damping fraction must lie in (0, 1), got {tau}")
    polar = polar_factor(state, delta_vac)
    theta = np.mod(np.angle(polar.phi), 2.0 * np.pi)
    psi_new = np.where(polar.vacuum_mask, state.psi, state.psi * np.exp(-1j * tau * theta))
    return state.copy_with(psi=psi_new)


def cut_proximity(state: WaveState, delta_vac: float | None = None, width: float = CUT_BAND) -> float:
    """Volume measure of the non-vacuum region with phase within ``width`` below 2*pi.

    A nonzero value flags data for which the branch choice of the damping
    update is active somewhere.
    """
    polar = polar_factor(state, delta_vac)
    theta = np.mod(np.angle(polar.phi), 2.0 * np.pi)
    near = (~polar.vacuum_mask) & (np.abs(theta - 2.0 * np.pi) < width)
    return float(np.count_nonzero(near)) * state.grid.cell_volume


def axis_winding(state: WaveState) -> np.ndarray:
    """Mean phase winding number along each axis (diagnostic only).

    Sums wrapped nearest-neighbour phase increments around each periodic
    line and averages the integer winding over the transverse directions.
    Unreliable through near-vacuum regions; recorded, never asserted.
    """
    grid = state.grid
    out = np.zeros(grid.dim)
    for ax in range(grid.dim):
        ratio = np.roll(state.psi, -1, axis=ax) * np.conj(state.psi)
        increments = np.angle(np.where(ratio == 0, 1.0, ratio))
        out[ax] = float(np.mean(np.sum(increments, axis=ax))) / (2.0 * np.pi)
    return out
