"""Ground-state solvers: Lanczos with full reorthogonalization, plus an
independent imaginary-time relaxation used as a cross-check oracle."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .fock import FockBasis, HamiltonianOperator, ManyBodyState, enumerate_basis
from .grid import OrbitalBasis
from .interaction import InteractionSpec, TwoBodyTensor, two_body_tensor

INITIAL_NOISE = 1e-3
INITIAL_SEED = 12345


class SolverError(RuntimeError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


@dataclass
class SolveReport:
    energy: float
    state: ManyBodyState
    residual_norm: float
    iterations: int
    method: str
    degenerate_gap: float | None = None


def initial_vector(basis: FockBasis, seed: int = INITIAL_SEED) -> np.ndarray:
    """Unit weight on the noninteracting ground configuration (all particles
    in orbital 0) plus a small fixed-seed perturbation, which guarantees
    overlap with the true ground state in every symmetry sector."""
    rng = np.random.default_rng(seed)
    c = rng.uniform(-INITIAL_NOISE, INITIAL_NOISE, basis.size)
    c[0] += 1.0
    return c / np.linalg.norm(c)


def ground_state_krylov(basis: FockBasis, orbitals: OrbitalBasis,
                        tensor: TwoBodyTensor, tol: float = 1e-10,
                        max_iter: int = 500) -> SolveReport:
    """Lowest eigenpair by symmetric Lanczos with full reorthogonalization."""
    op = HamiltonianOperator(basis, orbitals, tensor)
    vecs = [initial_vector(basis)]
    alphas: list[float] = []
    betas: list[float] = []
    theta = ritz = None
    niter = 0
    resid_est = np.inf
    for it in range(min(max_iter, op.dim) + 1):
        niter = it + 1
        w = op.apply(vecs[-1])
        alphas.append(float(vecs[-1] @ w))
        vmat = np.asarray(vecs)
        # full reorthogonalization, twice for good measure
        w -= vmat.T @ (vmat @ w)
        w -= vmat.T @ (vmat @ w)
        beta = float(np.linalg.norm(w))

        evals, evecs = scipy.linalg.eigh_tridiagonal(alphas, betas, select="i",
                                                     select_range=(0, 0))
        theta, ritz = evals[0], evecs[:, 0]
        resid_est = beta * abs(ritz[-1])
        if resid_est < 0.1 * tol or beta < 1e-14 or len(alphas) == op.dim:
            break
        betas.append(beta)
        vecs.append(w / beta)

    c = np.asarray(vecs[: len(alphas)]).T @ ritz
    c /= np.linalg.norm(c)
    hc = op.apply(c)
    energy = float(c @ hc)
    residual = float(np.linalg.norm(hc - energy * c))
    if residual > tol:
        raise SolverError(
            f"Lanczos did not reach residual {tol:.1e} in {niter} iterations "
            f"(best residual {residual:.3e})",
            residual=residual,
        )
    degenerate_gap = None
    if len(alphas) >= 2:
        lo = scipy.linalg.eigh_tridiagonal(alphas, betas[: len(alphas) - 1],
                                           select="i", select_range=(0, 1))[0]
        gap = float(lo[1] - lo[0])
        if gap < 1e-8:
            degenerate_gap = gap
    elif op.dim >= 2:
        # converged before the Krylov space could see a second Ritz value;
        # probe the orthogonal complement so a collapsed doublet is not missed
        gap = _lowest_in_complement(op, c) - energy
        if gap < 1e-8:
            degenerate_gap = float(max(gap, 0.0))
    if c[np.argmax(np.abs(c))] < 0:
        c = -c
    return SolveReport(energy, ManyBodyState(basis, c), residual, niter,
                       "krylov", degenerate_gap)


def _lowest_in_complement(op: HamiltonianOperator, c: np.ndarray,
                          max_iter: int = 50) -> float:
    """Lowest Ritz value of H restricted to span{c}^perp (deflated Lanczos),
    used to size the gap above an already-converged ground state."""
    rng = np.random.default_rng(INITIAL_SEED + 1)
    v = rng.standard_normal(op.dim)
    v -= c * (c @ v)
    vecs = [v / np.linalg.norm(v)]
    alphas: list[float] = []
    betas: list[float] = []
    theta = np.inf
    for _ in range(min(max_iter, op.dim - 1)):
        w = op.apply(vecs[-1])
        alphas.append(float(vecs[-1] @ w))
        vmat = np.vstack([c, *vecs])
        w -= vmat.T @ (vmat @ w)
        w -= vmat.T @ (vmat @ w)
        beta = float(np.linalg.norm(w))
        evals, evecs = scipy.linalg.eigh_tridiagonal(
            alphas, betas, select="i", select_range=(0, 0))
        theta = evals[0]
        if beta * abs(evecs[-1, 0]) < 1e-12 or len(alphas) == op.dim - 1:
            break
        betas.append(beta)
        vecs.append(w / beta)
    return float(theta)


def _expm_multiply(op: HamiltonianOperator, c: np.ndarray, dtau: float,
                   krylov_dim: int = 20) -> np.ndarray:
    """exp(-dtau H) c by a short Lanczos iterate; exact when the subspace
    reaches an invariant one (happy breakdown)."""
    m = min(krylov_dim, op.dim)
    vecs = [c / np.linalg.norm(c)]
    alphas, betas = [], []
    for _ in range(m):
        w = op.apply(vecs[-1])
        alphas.append(float(vecs[-1] @ w))
        vmat = np.asarray(vecs)
        w -= vmat.T @ (vmat @ w)
        w -= vmat.T @ (vmat @ w)
        beta = float(np.linalg.norm(w))
        if beta < 1e-14:
            break
        betas.append(beta)
        vecs.append(w / beta)
    k = len(alphas)
    evals, evecs = scipy.linalg.eigh_tridiagonal(alphas, betas[: k - 1])
    small = evecs @ (np.exp(-dtau * (evals - evals.min())) * evecs[0])
    return np.linalg.norm(c) * (np.asarray(vecs[:k]).T @ small)


def relax_imaginary_time(basis: FockBasis, orbitals: OrbitalBasis,
                         tensor: TwoBodyTensor, dtau: float = 0.1,
                         tol: float = 1e-12, max_steps: int = 100_000) -> SolveReport:
    """Repeated application of exp(-dtau H) with renormalization, stopping
    when the energy change per step drops below tol."""
    op = HamiltonianOperator(basis, orbitals, tensor)
    c = initial_vector(basis)
    energy = float(c @ op.apply(c))
    steps = 0
    for steps in range(1, max_steps + 1):
        c = _expm_multiply(op, c, dtau)
        c /= np.linalg.norm(c)
        hc = op.apply(c)
        new_energy = float(c @ hc)
        if new_energy > energy + 1e-12:
            raise SolverError(
                f"imaginary-time energy increased at step {steps}: "
                f"{energy!r} -> {new_energy!r}"
            )
        done = energy - new_energy < tol
        energy = new_energy
        if done:
            break
    else:
        raise SolverError(f"imaginary-time relaxation not settled after {max_steps} steps")
    residual = float(np.linalg.norm(hc - energy * c))
    if c[np.argmax(np.abs(c))] < 0:
        c = -c
    return SolveReport(energy, ManyBodyState(basis, c), residual, steps, "imaginary_time")


def convergence_sweep(N: int, n_list, orbitals: OrbitalBasis,
                      spec: InteractionSpec, tol: float = 1e-10):
    """E(n) over an ascending list of orbital counts, sharing one orbital set
    and one interaction tensor so the bases are strictly nested."""
    n_list = list(n_list)
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError(f"n_list must be ascending, got {n_list}")
    n_max = n_list[-1]
    if n_max > orbitals.n:
        raise ValueError(f"sweep needs {n_max} orbitals, basis has {orbitals.n}")
    tensor = two_body_tensor(orbitals.truncated(n_max), spec)
    out = []
    for n in n_list:
        report = ground_state_krylov(enumerate_basis(N, n), orbitals, tensor, tol=tol)
        out.append((n, report.energy))
    return out
