"""Hot inner loops of the many-body engine.

By default the kernels are compiled with numba; setting the environment
variable FEWBOSON_DISABLE_NUMBA=1 before import selects the plain
NumPy/Python path instead (same code, no JIT), which is what the
benchmark in benchmarks/bench_kernels.py compares against.
"""

import os

import numpy as np

USE_NUMBA = os.environ.get("FEWBOSON_DISABLE_NUMBA", "0") not in ("1", "true", "yes")

if USE_NUMBA:
    from numba import njit, prange
else:  # pragma: no cover - exercised via subprocess in the benchmark/tests
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

    prange = range


@njit(cache=True)
def occupation_rank(occ, binom):
    """Ordinal of an occupation vector in the reverse-lexicographic basis
    order, via combinatorial ranking.  binom is a precomputed Pascal table."""
    n = occ.shape[0]
    total = 0
    for k in range(n):
        total += occ[k]
    r = 0
    rem = total
    for i in range(n - 1):
        d = rem - occ[i] - 1
        if d >= 0:
            r += binom[d + n - i - 1, n - i - 1]
        rem -= occ[i]
    return r


@njit(cache=True, parallel=True)
def apply_hamiltonian(occs, eps, w, pi, pj, binom, c, out):
    """out = H c for H = sum_k eps_k n_k + interaction.

    w[p, q] carries the symmetrized two-body coefficient for annihilating
    the unordered orbital pair p = (pi[p] <= pj[p]) and creating pair q
    (prefactor 1/2 and pair multiplicities folded in).  Gather form: each
    output row is accumulated independently, so the parallel loop is
    race-free.
    """
    nstates, n = occs.shape
    npairs = pi.shape[0]
    for s in prange(nstates):
        occ = occs[s]
        diag = 0.0
        for k in range(n):
            diag += eps[k] * occ[k]
        acc = diag * c[s]
        mid = np.empty(n, np.int64)
        for p in range(npairs):
            i = pi[p]
            j = pj[p]
            if i == j:
                a1 = occ[i] * (occ[i] - 1)
            else:
                a1 = occ[i] * occ[j]
            if a1 == 0:
                continue
            for t in range(n):
                mid[t] = occ[t]
            mid[i] -= 1
            mid[j] -= 1
            sq1 = np.sqrt(a1)
            for q in range(npairs):
                wpq = w[p, q]
                if wpq == 0.0:
                    continue
                k = pi[q]
                l = pj[q]
                mid[k] += 1
                mid[l] += 1
                if k == l:
                    a2 = mid[k] * (mid[k] - 1)
                else:
                    a2 = mid[k] * mid[l]
                acc += wpq * sq1 * np.sqrt(a2) * c[occupation_rank(mid, binom)]
                mid[k] -= 1
                mid[l] -= 1
        out[s] = acc


@njit(cache=True)
def one_body_expectation_matrix(occs, binom, c):
    """n x n matrix of <a+_i a_j> for the normalized coefficient vector c."""
    nstates, n = occs.shape
    rho = np.zeros((n, n))
    mid = np.empty(n, np.int64)
    for s in range(nstates):
        occ = occs[s]
        cs = c[s]
        for k in range(n):
            rho[k, k] += occ[k] * cs * cs
        for i in range(n):
            if occ[i] == 0:
                continue
            for j in range(n):
                if j == i:
                    continue
                for t in range(n):
                    mid[t] = occ[t]
                mid[i] -= 1
                mid[j] += 1
                amp = np.sqrt(occ[i] * mid[j])
                rho[i, j] += amp * cs * c[occupation_rank(mid, binom)]
    return rho


@njit(cache=True)
def two_body_expectation_pairs(occs, pi, pj, binom, c):
    """Pair-compressed <a+_i a+_j a_l a_k> with p=(i<=j) annihilated and
    q=(k<=l) created; expand with the bosonic index symmetries afterwards."""
    nstates, n = occs.shape
    npairs = pi.shape[0]
    g = np.zeros((npairs, npairs))
    mid = np.empty(n, np.int64)
    for s in range(nstates):
        occ = occs[s]
        cs = c[s]
        for p in range(npairs):
            i = pi[p]
            j = pj[p]
            if i == j:
                a1 = occ[i] * (occ[i] - 1)
            else:
                a1 = occ[i] * occ[j]
            if a1 == 0:
                continue
            for t in range(n):
                mid[t] = occ[t]
            mid[i] -= 1
            mid[j] -= 1
            sq1 = np.sqrt(a1)
            for q in range(npairs):
                k = pi[q]
                l = pj[q]
                mid[k] += 1
                mid[l] += 1
                if k == l:
                    a2 = mid[k] * (mid[k] - 1)
                else:
                    a2 = mid[k] * mid[l]
                if a2 > 0:
                    g[p, q] += sq1 * np.sqrt(a2) * cs * c[occupation_rank(mid, binom)]
                mid[k] -= 1
                mid[l] -= 1
    return g
