"""Uniform spatial grid, trap potentials, and the one-particle eigenbasis.

The kinetic energy uses the sinc-DVR (Colbert-Miller) matrix on a uniform
grid, which converges spectrally for smooth potentials, so 1024 points over
[-8, 8] give eigenvalues to well below 1e-6.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    num_points: int

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.num_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.num_points)


@dataclass(frozen=True)
class TrapSpec:
    """Harmonic trap plus a normalized-Gaussian central barrier of strength h
    and width w."""

    h: float = 0.0
    w: float = 0.5

    def __post_init__(self):
        if self.w <= 0:
            raise ValueError(f"barrier width w must be > 0, got {self.w}")
        if self.h < 0:
            raise ValueError(f"barrier strength h must be >= 0, got {self.h}")


@dataclass(frozen=True)
class OrbitalBasis:
    """Lowest-n eigenpairs of the one-particle problem on a grid.

    orbitals has shape (n, num_points) and is orthonormal under the grid
    quadrature: sum_a phi_i(x_a) phi_j(x_a) * spacing = delta_ij.
    """

    grid: Grid
    energies: np.ndarray
    orbitals: np.ndarray

    @property
    def n(self) -> int:
        return len(self.energies)

    def truncated(self, n: int) -> "OrbitalBasis":
        if n > self.n:
            raise ValueError(f"cannot truncate basis of size {self.n} to {n}")
        return OrbitalBasis(self.grid, self.energies[:n], self.orbitals[:n])


def make_grid(x_max: float, num_points: int) -> Grid:
    """Uniform grid symmetric about the origin."""
    if x_max <= 0:
        raise ValueError(f"x_max must be > 0, got {x_max}")
    if num_points < 2:
        raise ValueError(f"num_points must be >= 2, got {num_points}")
    return Grid(-x_max, x_max, num_points)


def build_potential(grid: Grid, trap: TrapSpec) -> np.ndarray:
    """U(x) = x^2/2 + h * exp(-x^2/2w^2)/(sqrt(2 pi) w) on the grid."""
    x = grid.points
    barrier = trap.h * np.exp(-x**2 / (2 * trap.w**2)) / (np.sqrt(2 * np.pi) * trap.w)
    return 0.5 * x**2 + barrier


def kinetic_matrix(grid: Grid) -> np.ndarray:
    """Sinc-DVR second-derivative matrix, -1/2 d^2/dx^2."""
    m = grid.num_points
    d = grid.spacing
    idx = np.arange(m)
    diff = idx[:, None] - idx[None, :]
    with np.errstate(divide="ignore"):
        t = 2.0 / diff.astype(float) ** 2
    np.fill_diagonal(t, np.pi**2 / 3.0)
    signs = np.where(diff % 2 == 0, 1.0, -1.0)
    return 0.5 / d**2 * signs * t


def solve_1p(grid: Grid, potential: np.ndarray, n: int) -> OrbitalBasis:
    """Lowest n eigenpairs of -1/2 d^2/dx^2 + U on the grid.

    Orbitals are quadrature-orthonormal and sign-fixed so that the first
    grid point with non-negligible magnitude is positive.
    """
    if n > grid.num_points:
        raise ValueError(f"requested {n} orbitals on a {grid.num_points}-point grid")
    h = kinetic_matrix(grid)
    h[np.diag_indices_from(h)] += potential
    energies, vecs = scipy.linalg.eigh(h, subset_by_index=[0, n - 1])

    orbitals = vecs.T / np.sqrt(grid.spacing)
    for k in range(n):
        phi = orbitals[k]
        nz = np.nonzero(np.abs(phi) > 1e-8 * np.abs(phi).max())[0][0]
        if phi[nz] < 0:
            orbitals[k] = -phi
    return OrbitalBasis(grid, energies, orbitals)


def dump_orbitals_csv(path, basis: OrbitalBasis, potential: np.ndarray) -> None:
    """Write columns x, U, phi_0 .. phi_{n-1}."""
    cols = [basis.grid.points, potential] + [basis.orbitals[k] for k in range(basis.n)]
    header = "x,U," + ",".join(f"phi{k}" for k in range(basis.n))
    np.savetxt(path, np.column_stack(cols), delimiter=",", header=header, comments="")
