import numpy as np
import pytest

import fewboson as fb
from fewboson.grid import dump_orbitals_csv

from conftest import orbital_basis


def test_make_grid_spacing():
    g = fb.make_grid(8, 1024)
    assert g.spacing == pytest.approx(16 / 1023)


def test_two_point_grid():
    g = fb.make_grid(8, 2)
    assert list(g.points) == [-8.0, 8.0]


def test_grid_symmetric_about_zero():
    x = fb.make_grid(8, 1024).points
    assert np.allclose(x + x[::-1], 0.0, atol=1e-12)


def test_make_grid_validation():
    with pytest.raises(ValueError):
        fb.make_grid(-1.0, 100)
    with pytest.raises(ValueError):
        fb.make_grid(8.0, 1)


def test_potential_pure_harmonic():
    g = fb.make_grid(8, 1025)
    u = fb.build_potential(g, fb.TrapSpec(h=0.0))
    x = g.points
    assert u[np.argmin(np.abs(x))] == pytest.approx(0.0, abs=1e-12)
    assert u[np.argmin(np.abs(x - 2))] == pytest.approx(2.0)


def test_potential_barrier_peak():
    # closed form h/(sqrt(2 pi) w) at the origin
    g = fb.make_grid(8, 1025)
    u = fb.build_potential(g, fb.TrapSpec(h=5.0, w=0.5))
    assert u.min() >= 0
    assert u[np.argmin(np.abs(g.points))] == pytest.approx(3.98942280, abs=1e-6)


@pytest.mark.parametrize("h", [0.0, 2.0, 10.0])
def test_potential_parity(h):
    g = fb.make_grid(8, 1024)
    u = fb.build_potential(g, fb.TrapSpec(h=h))
    assert np.allclose(u, u[::-1], atol=1e-12)


def test_harmonic_spectrum():
    orb = orbital_basis(h=0.0, n=6)
    assert np.allclose(orb.energies, np.arange(6) + 0.5, atol=1e-6)


def test_orthonormality():
    orb = orbital_basis(h=5.0, n=8)
    overlaps = orb.orbitals @ orb.orbitals.T * orb.grid.spacing
    assert np.allclose(overlaps, np.eye(8), atol=1e-10)


def test_orbital_parity_symmetric_trap():
    orb = orbital_basis(h=2.0, n=6)
    for k in range(6):
        phi = orb.orbitals[k]
        assert np.allclose(np.abs(phi), np.abs(phi[::-1]), atol=1e-8)


def test_doublet_splitting_h10():
    e = orbital_basis(h=10.0, n=4).energies
    assert e[1] - e[0] < 0.2 * (e[2] - e[1])


def test_splitting_decreases_with_barrier():
    gaps = [orbital_basis(h=h, n=2).energies for h in (0.0, 2.0, 5.0, 10.0)]
    splittings = [e[1] - e[0] for e in gaps]
    assert all(b < a for a, b in zip(splittings, splittings[1:]))


@pytest.mark.parametrize("h", [0.0, 2.0, 5.0, 10.0])
def test_grid_convergence(h):
    e_coarse = orbital_basis(h=h, n=1, points=1024).energies[0]
    e_fine = orbital_basis(h=h, n=1, points=2048).energies[0]
    assert abs(e_coarse - e_fine) < 1e-8


def test_sign_convention_reproducible():
    a = orbital_basis(h=5.0, n=6)
    b = fb.solve_1p(a.grid, fb.build_potential(a.grid, fb.TrapSpec(h=5.0)), 6)
    assert np.allclose(a.orbitals, b.orbitals, atol=1e-12)


def test_too_many_orbitals_rejected():
    g = fb.make_grid(8, 32)
    with pytest.raises(ValueError):
        fb.solve_1p(g, fb.build_potential(g, fb.TrapSpec()), 64)


def test_orbital_csv_dump(tmp_path):
    orb = orbital_basis(h=0.0, n=3, points=128)
    u = fb.build_potential(orb.grid, fb.TrapSpec())
    path = tmp_path / "orbitals.csv"
    dump_orbitals_csv(path, orb, u)
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    assert data.shape == (128, 5)
    assert np.allclose(data[:, 0], orb.grid.points)
