"""Wave-function state container shared by the polar and stepper layers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import Grid

__all__ = ["WaveState"]


@dataclass
class WaveState:
    """Complex field psi on a grid at one time instant."""

    psi: np.ndarray
    grid: Grid
    t: float
    hbar: float

    def __post_init__(self):
        self.psi = np.asarray(self.psi, dtype=complex)
        if self.psi.shape != self.grid.shape:
            raise ValueError(
                f"psi shape {self.psi.shape} does not match grid shape {self.grid.shape}"
            )
        if not (self.hbar > 0):
            raise ValueError(f"hbar must be positive, got {self.hbar}")

    def copy_with(self, psi: np.ndarray | None = None, t: float | None = None) -> "WaveState":
        return WaveState(
            psi=self.psi if psi is None else psi,
            grid=self.grid,
            t=self.t if t is None else t,
            hbar=self.hbar,
        )

    def density(self) -> np.ndarray:
        return np.abs(self.psi) ** 2

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.psi)))
