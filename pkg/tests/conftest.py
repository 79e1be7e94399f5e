import functools

import pytest

import fewboson as fb


@functools.lru_cache(maxsize=None)
def orbital_basis(h=0.0, n=10, points=1024, x_max=8.0, w=0.5):
    grid = fb.make_grid(x_max, points)
    potential = fb.build_potential(grid, fb.TrapSpec(h=h, w=w))
    return fb.solve_1p(grid, potential, n)


@functools.lru_cache(maxsize=None)
def solve_case(N, n, g0, h=0.0, alpha=0.0, sigma=0.05, points=1024, tol=1e-10):
    """Ground-state solve shared across test modules (cached per session)."""
    orb = orbital_basis(h=h, n=n, points=points)
    tensor = fb.two_body_tensor(orb, fb.InteractionSpec(g0, alpha=alpha, sigma=sigma))
    report = fb.ground_state_krylov(fb.enumerate_basis(N, n), orb, tensor, tol=tol)
    return report, orb


@pytest.fixture(scope="session")
def harmonic_basis():
    return orbital_basis(h=0.0, n=10)
