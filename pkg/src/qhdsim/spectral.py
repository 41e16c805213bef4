"""Periodic grid and spectral operators.

Everything downstream works on a uniform periodic box [0, L)^d discretized
with N points per axis.  The discrete Fourier transform uses the orthonormal
convention (``norm="ortho"``), declared once here and used everywhere: the
forward transform is an isometry of the cell-volume-weighted discrete L^2
norm, so Parseval holds without bookkeeping factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Grid",
    "make_grid",
    "to_spectral",
    "from_spectral",
    "spectral_gradient",
    "spectral_laplacian",
    "solve_poisson",
    "bessel_quarter_power",
    "dealias",
]


@dataclass
class Grid:
    """Uniform periodic box [0, L)^dim with N points per axis.

    Wavenumbers per axis are 2*pi*m/L for m in {-N/2, ..., N/2 - 1}, stored
    in FFT order.
    """

    dim: int
    n: int
    length: float
    wavenumbers: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        if self.wavenumbers is None:
            self.wavenumbers = 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.spacing)

    @property
    def spacing(self) -> float:
        return self.length / self.n

    @property
    def shape(self) -> tuple:
        return (self.n,) * self.dim

    @property
    def size(self) -> int:
        return self.n**self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    def axis_coordinates(self) -> np.ndarray:
        return np.arange(self.n) * self.spacing

    def meshgrid(self) -> list[np.ndarray]:
        x = self.axis_coordinates()
        return list(np.meshgrid(*([x] * self.dim), indexing="ij"))

    def wavenumber_component(self, axis: int) -> np.ndarray:
        """Wavenumber along one axis, shaped to broadcast over the box."""
        shape = [1] * self.dim
        shape[axis] = self.n
        return self.wavenumbers.reshape(shape)

    def k_squared(self) -> np.ndarray:
        k2 = np.zeros(self.shape)
        for ax in range(self.dim):
            k2 = k2 + self.wavenumber_component(ax) ** 2
        return k2

    def integrate(self, values: np.ndarray) -> float:
        return float(np.sum(values) * self.cell_volume)

    def l2_norm(self, values: np.ndarray) -> float:
        return float(np.sqrt(np.sum(np.abs(values) ** 2).real * self.cell_volume))


def make_grid(dim: int, points_per_axis: int, box_length: float) -> Grid:
    """Build a periodic grid; rejects odd or too-coarse resolutions."""
    if dim not in (1, 2, 3):
        raise ValueError(f"dim must be 1, 2 or 3, got {dim}")
    n = int(points_per_axis)
    if n != points_per_axis or n % 2 != 0:
        raise ValueError(f"points_per_axis must be an even integer, got {points_per_axis}")
    if n < 8:
        raise ValueError(f"points_per_axis must be >= 8, got {n}")
    if not (box_length > 0):
        raise ValueError(f"box_length must be positive, got {box_length}")
    return Grid(dim=dim, n=n, length=float(box_length))


def to_spectral(grid: Grid, values: np.ndarray) -> np.ndarray:
    """Forward transform (orthonormal convention)."""
    return np.fft.fftn(values, norm="ortho")


def from_spectral(grid: Grid, coeffs: np.ndarray) -> np.ndarray:
    """Inverse transform; round-trips with to_spectral to machine precision."""
    return np.fft.ifftn(coeffs, norm="ortho")


def spectral_gradient(grid: Grid, values: np.ndarray) -> np.ndarray:
    """Gradient via the i*k multiplier; returns shape (dim, *grid.shape)."""
    coeffs = to_spectral(grid, values)
    out = np.empty((grid.dim,) + grid.shape, dtype=complex)
    for ax in range(grid.dim):
        out[ax] = from_spectral(grid, 1j * grid.wavenumber_component(ax) * coeffs)
    return out


def spectral_laplacian(grid: Grid, values: np.ndarray) -> np.ndarray:
    coeffs = to_spectral(grid, values)
    return from_spectral(grid, -grid.k_squared() * coeffs)


def solve_poisson(grid: Grid, rho: np.ndarray, doping: np.ndarray | None = None) -> np.ndarray:
    """Solve -lap V = rho - C under the periodic (jellium) closure.

    The mean of the source is removed, which is the unique way to make the
    periodic problem solvable; V is returned in the zero-mean gauge.
    """
    source = np.asarray(rho, dtype=float)
    if doping is not None:
        source = source - doping
    coeffs = to_spectral(grid, source.astype(complex))
    k2 = grid.k_squared()
    with np.errstate(divide="ignore", invalid="ignore"):
        vk = np.where(k2 > 0, coeffs / np.where(k2 > 0, k2, 1.0), 0.0)
    return from_spectral(grid, vk).real


def bessel_quarter_power(grid: Grid, values: np.ndarray) -> np.ndarray:
    """Apply (I - lap)^(1/4): spectrum multiplied by (1 + |k|^2)^(1/4)."""
    coeffs = to_spectral(grid, values)
    return from_spectral(grid, (1.0 + grid.k_squared()) ** 0.25 * coeffs)


def dealias(grid: Grid, values: np.ndarray) -> np.ndarray:
    """2/3-rule low-pass: zero all modes with |m| >= N/3 on any axis."""
    coeffs = to_spectral(grid, values)
    cutoff = grid.n // 3
    m = np.fft.fftfreq(grid.n, d=1.0 / grid.n)
    keep1d = np.abs(m) < cutoff
    for ax in range(grid.dim):
        shape = [1] * grid.dim
        shape[ax] = grid.n
        coeffs = coeffs * keep1d.reshape(shape)
    return from_spectral(grid, coeffs)
