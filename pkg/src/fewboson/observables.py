"""Physical diagnostics of a solved state: reduced densities, natural
occupations, displacement, the weak-coupling energy slope, and the
hard-core (fermionized) analytic oracle."""

from dataclasses import dataclass

import numpy as np

from .fock import ManyBodyState, one_body_expectations, two_body_expectations
from .grid import Grid, OrbitalBasis
from .interaction import delta_sigma

DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class DensityProfile:
    grid: Grid
    values: np.ndarray  # (G,) for rho1, (Gc, Gc) for rho2


@dataclass(frozen=True)
class OneBodyDensityMatrix:
    """Unit-trace reduced density matrix in the fixed orbital basis, with its
    spectral (natural-orbital) decomposition."""

    matrix: np.ndarray
    natural_occupations: np.ndarray  # descending, in [0, 1]
    natural_orbitals: np.ndarray     # (n, G), rows match the occupations
    degenerate: np.ndarray           # flags occupations within tol of the next


def one_body_density(state: ManyBodyState, basis1p: OrbitalBasis):
    """Reduced one-body density matrix (trace 1) and the spatial profile
    rho1(x), normalized to integrate to 1."""
    n = state.basis.n
    mat = one_body_expectations(state) / state.basis.N
    mat = 0.5 * (mat + mat.T)
    occ, vecs = np.linalg.eigh(mat)
    occ, vecs = occ[::-1], vecs[:, ::-1]
    phi = basis1p.orbitals[:n]
    naturals = vecs.T @ phi
    degenerate = np.zeros(n, dtype=bool)
    close = np.abs(np.diff(occ)) < DEGENERACY_TOL
    degenerate[:-1] |= close
    degenerate[1:] |= close
    profile = np.einsum("ij,ig,jg->g", mat, phi, phi)
    dm = OneBodyDensityMatrix(mat, occ, naturals, degenerate)
    return dm, DensityProfile(basis1p.grid, profile)


def two_body_density(state: ManyBodyState, basis1p: OrbitalBasis,
                     stride: int = 4) -> DensityProfile:
    """rho2(x1, x2), unit normalized, on a subsampled grid (every stride-th
    point) to keep the rank-4 reconstruction cheap."""
    basis = state.basis
    g2 = two_body_expectations(state) / (basis.N * (basis.N - 1))
    phi = basis1p.orbitals[: basis.n, ::stride]
    values = np.einsum("ijkl,ia,ka,jb,lb->ab", g2, phi, phi, phi, phi, optimize=True)
    x = basis1p.grid.points[::stride]
    coarse = Grid(x[0], x[-1], len(x))
    return DensityProfile(coarse, values)


def displacement(dm_profile: DensityProfile) -> float:
    """<x> = integral of x rho1(x)."""
    x = dm_profile.grid.points
    return float(np.sum(x * dm_profile.values) * dm_profile.grid.spacing)


def energy_slope_at_zero(N: int, basis1p: OrbitalBasis, sigma: float) -> float:
    """dE/dg at g=0: N(N-1)/2 times the mollified density overlap of two
    particles in the lowest orbital."""
    d = basis1p.grid.spacing
    x = basis1p.grid.points
    rho = basis1p.orbitals[0] ** 2
    overlap = rho @ delta_sigma(x[:, None] - x[None, :], sigma) @ rho * d * d
    return 0.5 * N * (N - 1) * float(overlap)


def tg_oracle(basis1p: OrbitalBasis, N: int):
    """Hard-core limit via the Bose-Fermi mapping: energy and density of N
    noninteracting fermions in the same trap."""
    if basis1p.n < N:
        raise ValueError(f"oracle needs {N} orbitals, basis has {basis1p.n}")
    energy = float(basis1p.energies[:N].sum())
    profile = (basis1p.orbitals[:N] ** 2).sum(axis=0) / N
    return energy, DensityProfile(basis1p.grid, profile)


def count_humps(profile: DensityProfile, window: int = 5,
                floor_fraction: float = 0.05) -> int:
    """Local maxima that beat all `window` neighbors on each side and exceed
    floor_fraction of the global maximum; suppresses discretization ripple."""
    v = profile.values
    floor = floor_fraction * v.max()
    count = 0
    for a in range(len(v)):
        if v[a] <= floor:
            continue
        lo = max(0, a - window)
        hi = min(len(v), a + window + 1)
        neighbors = np.concatenate([v[lo:a], v[a + 1 : hi]])
        if neighbors.size and np.all(v[a] > neighbors):
            count += 1
    return count


def write_profile_csv(path, profile: DensityProfile, header_extra: str = "") -> None:
    x = profile.grid.points
    with open(path, "w") as f:
        if header_extra:
            f.write(f"# {header_extra}\n")
        if profile.values.ndim == 1:
            f.write("x,rho1\n")
            for a in range(len(x)):
                f.write(f"{x[a]!r},{profile.values[a]!r}\n")
        else:
            f.write("x1,x2,rho2\n")
            for a in range(len(x)):
                for b in range(len(x)):
                    f.write(f"{x[a]!r},{x[b]!r},{profile.values[a, b]!r}\n")


def write_occupations_csv(path, dm: OneBodyDensityMatrix, header_extra: str = "") -> None:
    with open(path, "w") as f:
        if header_extra:
            f.write(f"# {header_extra}\n")
        f.write("a,n_a,degenerate\n")
        for a, (na, flag) in enumerate(zip(dm.natural_occupations, dm.degenerate)):
            f.write(f"{a},{na!r},{int(flag)}\n")
