"""Acceptance gate: one test per published-behavior criterion.

Each test prints a single ``[acceptance] NN <name>: PASS|FAIL`` line (visible
with ``pytest -v -s`` or in the captured output of a failing run) and then
asserts, so the suite doubles as a readable scorecard.  The heavy criteria
(fermionization scans, N = 6 convergence sweeps) dominate the runtime; the
full gate takes on the order of an hour on one core.

Run it alone with::

    pytest tests/test_acceptance.py -v -s
"""

import time

import numpy as np
import pytest

import fewboson as fb
from fewboson.cli import DEFAULT_SCAN_VALUES

from conftest import orbital_basis, solve_case
from test_fock import _projected_first_quantized
from test_units import TABLE_ROWS


def _verdict(num: int, name: str, ok: bool, detail: str, t0: float) -> None:
    state = "PASS" if ok else "FAIL"
    print(f"\n[acceptance] {num:02d} {name}: {state} ({time.time() - t0:.1f}s) {detail}")
    assert ok, f"criterion {num} ({name}): {detail}"


def _n0(report, orb):
    dm, _ = fb.one_body_density(report.state, orb)
    return float(dm.natural_occupations[0])


def test_01_noninteracting_baseline():
    t0 = time.time()
    worst = 0.0
    slowest = 0.0
    for N in range(2, 7):
        t1 = time.time()
        report, _ = solve_case(N, 6, 0.0)
        slowest = max(slowest, time.time() - t1)
        worst = max(worst, abs(report.energy - N / 2))
    ok = worst < 1e-6 and slowest < 5.0
    _verdict(1, "noninteracting baseline", ok,
             f"max |E - N/2| = {worst:.2e}, slowest solve {slowest:.2f}s", t0)


def test_02_coupling_table():
    t0 = time.time()
    rows = [(a0, expected, fb.coupling_strength_1d(fb.PhysicalParams(a0, 0.1)))
            for a0, expected in TABLE_ROWS]
    worst = max(abs(g - expected) / abs(expected) for _, expected, g in rows)
    _verdict(2, "coupling-strength table", worst < 0.05,
             f"max relative deviation {worst:.3f} over {len(rows)} rows "
             "(the suspect fifth row is excluded, see README)", t0)


def test_03_slope_law():
    t0 = time.time()
    dg = 1e-3
    worst = 0.0
    ordering_ok = True
    for N in (2, 3, 4):
        slopes = {}
        for h in (0.0, 5.0):
            orb = orbital_basis(h=h, n=6)
            e0, _ = solve_case(N, 6, 0.0, h=h)
            e1, _ = solve_case(N, 6, dg, h=h)
            fd = (e1.energy - e0.energy) / dg
            slopes[h] = fb.energy_slope_at_zero(N, orb, 0.05)
            worst = max(worst, abs(fd - slopes[h]) / slopes[h])
        ordering_ok = ordering_ok and slopes[5.0] < slopes[0.0]
    ok = worst < 0.01 and ordering_ok
    _verdict(3, "interaction-energy slope law", ok,
             f"max FD/formula deviation {worst:.2e}, "
             f"barrier slope smaller: {ordering_ok}", t0)


def test_04_fermionization_saturation():
    t0 = time.time()
    energies = []
    for g in list(DEFAULT_SCAN_VALUES) + [194.0]:
        report, _ = solve_case(3, 20, float(g))
        energies.append(report.energy)
    scan = np.array(energies[:-1])
    e194 = energies[-1]
    monotone = bool(np.all(np.diff(scan) >= -1e-10))
    in_window = 4.2 <= e194 <= 4.5
    _verdict(4, "fermionization saturation", monotone and in_window,
             f"monotone={monotone}, E(194)={e194:.4f} vs window [4.2, 4.5] "
             "(the mollified interaction overshoots the hard-core limit; "
             "see README and the decisions ledger)", t0)


def test_05_n_hump_profile():
    t0 = time.time()
    report, orb = solve_case(5, 15, 15.0)
    _, profile = fb.one_body_density(report.state, orb)
    humps = fb.count_humps(profile)
    _verdict(5, "N-hump fermionized profile", humps == 5,
             f"counted {humps} humps for N=5", t0)


def test_06_natural_occupation_scaling():
    t0 = time.time()
    details = []
    ok = True
    for N, n in ((4, 16), (5, 16)):
        report, orb = solve_case(N, n, 194.0)
        n0 = _n0(report, orb)
        target = N ** -0.41
        dev = abs(n0 - target) / target
        details.append(f"N={N}: n0={n0:.4f} vs {target:.4f} (dev {dev:.3f})")
        ok = ok and dev <= 0.15
    report6, orb6 = solve_case(6, 15, 194.0)
    n0_6 = _n0(report6, orb6)
    details.append(f"N=6: n0={n0_6:.4f} (< 0.6 required)")
    ok = ok and n0_6 < 0.6
    _verdict(6, "natural-occupation scaling", ok, "; ".join(details), t0)


def test_07_even_odd_barrier_effect():
    t0 = time.time()
    vals = {}
    for N in (4, 5):
        for h in (0.0, 5.0):
            report, orb = solve_case(N, 15, 4.7, h=h)
            vals[(N, h)] = _n0(report, orb)
    even_ok = vals[(4, 5.0)] < vals[(4, 0.0)]
    odd_ok = vals[(5, 5.0)] > vals[(5, 0.0)]
    detail = (f"N=4: n0(h=5)={vals[(4, 5.0)]:.4f} < n0(h=0)={vals[(4, 0.0)]:.4f} -> "
              f"{even_ok}; N=5: n0(h=5)={vals[(5, 5.0)]:.4f} > "
              f"n0(h=0)={vals[(5, 0.0)]:.4f} -> {odd_ok}")
    _verdict(7, "even/odd double-well effect", even_ok and odd_ok, detail, t0)


def _displacement_scan(h: float):
    out = []
    for g0 in DEFAULT_SCAN_VALUES:
        report, orb = solve_case(5, 12, float(g0), h=h, alpha=0.5)
        _, profile = fb.one_body_density(report.state, orb)
        out.append(fb.displacement(profile))
    return np.array(out)


def test_08_displacement_curve():
    t0 = time.time()
    r0, orb0 = solve_case(5, 12, 0.0, alpha=0.5)
    _, p0 = fb.one_body_density(r0.state, orb0)
    zero_g = abs(fb.displacement(p0))
    r1, orb1 = solve_case(5, 12, 4.7, alpha=0.0)
    _, p1 = fb.one_body_density(r1.state, orb1)
    zero_alpha = abs(fb.displacement(p1))

    minus_x_flat = -_displacement_scan(0.0)
    minus_x_barrier = -_displacement_scan(5.0)
    interior_pos = bool(np.all(minus_x_flat > 0))
    peak = int(np.argmax(minus_x_flat))
    interior_max = 0 < peak < len(minus_x_flat) - 1
    steeper = minus_x_barrier[0] > minus_x_flat[0]
    ok = (zero_g < 1e-8 and zero_alpha < 1e-8 and interior_pos
          and interior_max and steeper)
    _verdict(8, "displacement curve", ok,
             f"|<x>|(g0=0)={zero_g:.1e}, |<x>|(alpha=0)={zero_alpha:.1e}, "
             f"-<x>>0: {interior_pos}, max at scan index {peak}/15, "
             f"steeper initial rise with barrier: {steeper}", t0)


def test_09_cross_solver_oracle():
    t0 = time.time()
    worst = 0.0
    for N in (2, 3):
        for h in (0.0, 5.0):
            for g in (0.4, 4.7):
                report, orb = solve_case(N, 8, g, h=h)
                tensor = fb.two_body_tensor(orb, fb.InteractionSpec(g))
                relaxed = fb.relax_imaginary_time(
                    fb.enumerate_basis(N, 8), orb, tensor)
                worst = max(worst, abs(report.energy - relaxed.energy))
    _verdict(9, "cross-solver oracle", worst < 1e-8,
             f"max |E_krylov - E_relax| = {worst:.2e} over 8 cases", t0)


def test_10_brute_force_equivalence():
    t0 = time.time()
    orb = orbital_basis(h=0.0, n=4)
    spec = fb.InteractionSpec(1.3)
    tensor = fb.two_body_tensor(orb, spec)
    basis = fb.enumerate_basis(2, 4)
    h_ci = fb.HamiltonianOperator(basis, orb, tensor).matrix()
    h_ref = _projected_first_quantized(orb, spec, basis)
    worst = float(np.max(np.abs(h_ci - h_ref)))
    _verdict(10, "brute-force equivalence", worst < 1e-8,
             f"max element-wise deviation {worst:.2e} on the N=2, n=4 matrix", t0)


def test_11_variational_monotonicity():
    t0 = time.time()
    n_list = range(1, 16)
    spec = fb.InteractionSpec(15.0)
    curves = {}
    for h in (0.0, 5.0):
        orb = orbital_basis(h=h, n=15)
        curves[h] = np.array([e for _, e in fb.convergence_sweep(6, n_list, orb, spec)])
    mono = all(bool(np.all(np.diff(c) <= 1e-10)) for c in curves.values())

    offset = curves[5.0][-1] - curves[0.0][-1]
    report, orb5 = solve_case(6, 15, 15.0, h=5.0)
    _, profile = fb.one_body_density(report.state, orb5)
    x, dx = profile.grid.points, profile.grid.spacing
    barrier = 5.0 * np.exp(-x**2 / (2 * 0.5**2)) / (np.sqrt(2 * np.pi) * 0.5)
    expected = 6 * float(np.sum(profile.values * barrier) * dx)
    ratio = offset / expected
    ok = mono and offset > 0 and 0.5 <= ratio <= 2.0
    _verdict(11, "variational monotonicity and barrier offset", ok,
             f"E(n) nonincreasing: {mono}; offset {offset:.3f} vs barrier "
             f"expectation {expected:.3f} (ratio {ratio:.2f})", t0)
