"""Symmetric N-boson occupation basis and the matrix-free Hamiltonian action."""

from dataclasses import dataclass
from math import comb

import numpy as np

from .grid import OrbitalBasis
from .interaction import TwoBodyTensor, pair_index_table
from . import kernels

MAX_BASIS_SIZE = 10**8


class FockBasis:
    """All C(N+n-1, N) occupation vectors of N bosons in n orbitals, in
    reverse-lexicographic order (all particles in orbital 0 first), with a
    combinatorial perfect-hash rank as the inverse lookup."""

    def __init__(self, N: int, n: int, occupations: np.ndarray, binom: np.ndarray):
        self.N = N
        self.n = n
        self.occupations = occupations
        self.binom = binom

    @property
    def size(self) -> int:
        return self.occupations.shape[0]

    def index(self, occ) -> int:
        occ = np.asarray(occ, dtype=np.int64)
        if occ.shape != (self.n,) or occ.sum() != self.N or occ.min() < 0:
            raise ValueError(f"not a valid occupation vector for this basis: {occ}")
        return int(kernels.occupation_rank(occ, self.binom))


def enumerate_basis(N: int, n: int) -> FockBasis:
    if N < 1 or n < 1:
        raise ValueError(f"need N >= 1 and n >= 1, got N={N}, n={n}")
    size = comb(N + n - 1, N)
    if size > MAX_BASIS_SIZE:
        raise ValueError(f"basis size C({N + n - 1},{N}) = {size} exceeds {MAX_BASIS_SIZE}")

    occs = np.zeros((size, n), dtype=np.int64)
    v = np.zeros(n, dtype=np.int64)
    v[0] = N
    for s in range(size):
        occs[s] = v
        if v[n - 1] == N:
            break
        # next composition in reverse-lexicographic order
        j = n - 2
        while v[j] == 0:
            j -= 1
        rest = v[j + 1:].sum()
        v[j] -= 1
        v[j + 1:] = 0
        v[j + 1] = rest + 1

    t_max = N + n
    binom = np.zeros((t_max + 1, t_max + 1), dtype=np.int64)
    for t in range(t_max + 1):
        binom[t, 0] = 1
        for k in range(1, t + 1):
            binom[t, k] = binom[t - 1, k - 1] + binom[t - 1, k]
    return FockBasis(N, n, occs, binom)


@dataclass
class ManyBodyState:
    basis: FockBasis
    coeffs: np.ndarray

    def normalized(self) -> "ManyBodyState":
        return ManyBodyState(self.basis, self.coeffs / np.linalg.norm(self.coeffs))


class HamiltonianOperator:
    """Matrix-free H = sum_k eps_k n_k + 1/2 sum V_{ijkl} a+_i a+_j a_l a_k.

    The rank-4 tensor is folded into a matrix over unordered orbital pairs,
    with the 1/2 prefactor and pair multiplicities absorbed, so the kernel
    only ever walks i<=j annihilation and k<=l creation pairs.
    """

    def __init__(self, basis: FockBasis, orbitals: OrbitalBasis, tensor: TwoBodyTensor):
        if orbitals.n < basis.n or tensor.n < basis.n:
            raise ValueError(
                f"basis needs {basis.n} orbitals, got {orbitals.n} single-particle "
                f"functions and a tensor over {tensor.n}"
            )
        self.basis = basis
        self.eps = np.ascontiguousarray(orbitals.energies[: basis.n])
        self.pair_i, self.pair_j = pair_index_table(basis.n)
        v = tensor.values[: basis.n, : basis.n, : basis.n, : basis.n]
        self.pair_coeffs = _pair_coefficients(v, self.pair_i, self.pair_j)

    @property
    def dim(self) -> int:
        return self.basis.size

    def apply(self, c: np.ndarray) -> np.ndarray:
        if c.shape != (self.dim,):
            raise ValueError(f"coefficient vector has shape {c.shape}, expected ({self.dim},)")
        out = np.empty_like(c)
        kernels.apply_hamiltonian(
            self.basis.occupations, self.eps, self.pair_coeffs,
            self.pair_i, self.pair_j, self.basis.binom, c, out,
        )
        return out

    def matrix(self) -> np.ndarray:
        """Dense matrix, for small bases and oracle comparisons only."""
        h = np.empty((self.dim, self.dim))
        e = np.zeros(self.dim)
        for s in range(self.dim):
            e[s] = 1.0
            h[:, s] = self.apply(e)
            e[s] = 0.0
        return h


def _pair_coefficients(v: np.ndarray, pi: np.ndarray, pj: np.ndarray) -> np.ndarray:
    """Symmetrize V over orderings of its annihilation and creation pairs and
    fold in the 1/2 prefactor and the i!=j / k!=l multiplicities."""
    vbar = 0.25 * (
        v[pi[:, None], pj[:, None], pi[None, :], pj[None, :]]
        + v[pi[:, None], pj[:, None], pj[None, :], pi[None, :]]
        + v[pj[:, None], pi[:, None], pi[None, :], pj[None, :]]
        + v[pj[:, None], pi[:, None], pj[None, :], pi[None, :]]
    )
    mult = np.where(pi == pj, 1.0, 2.0)
    w = 0.5 * mult[:, None] * mult[None, :] * vbar
    # exact zeros (e.g. parity selection) give the kernel its skip branch
    w[np.abs(w) < 1e-300] = 0.0
    return w


def hamiltonian_action(state: ManyBodyState, orbitals: OrbitalBasis,
                       tensor: TwoBodyTensor) -> np.ndarray:
    """One-shot H |state>; scans should build a HamiltonianOperator once."""
    return HamiltonianOperator(state.basis, orbitals, tensor).apply(state.coeffs)


def one_body_expectations(state: ManyBodyState) -> np.ndarray:
    """<a+_i a_j> matrix; trace equals the particle number N."""
    return kernels.one_body_expectation_matrix(
        state.basis.occupations, state.basis.binom, state.coeffs
    )


def two_body_expectations(state: ManyBodyState) -> np.ndarray:
    """Full rank-4 array of <a+_i a+_j a_l a_k>; requires N >= 2."""
    basis = state.basis
    if basis.N < 2:
        raise ValueError(f"two-body expectations need N >= 2, got N={basis.N}")
    pi, pj = pair_index_table(basis.n)
    gp = kernels.two_body_expectation_pairs(
        basis.occupations, pi, pj, basis.binom, state.coeffs
    )
    n = basis.n
    pair_of = np.zeros((n, n), dtype=np.int64)
    pair_of[pi, pj] = np.arange(len(pi))
    pair_of[pj, pi] = np.arange(len(pi))
    ii, jj, kk, ll = np.meshgrid(*[np.arange(n)] * 4, indexing="ij")
    return gp[pair_of[ii, jj], pair_of[kk, ll]]
