"""Compare the jitted Hamiltonian kernels against the pure-numpy fallback.

The backend is chosen at import time from FEWBOSON_DISABLE_NUMBA, so the
benchmark runs each path in its own subprocess and reports wall times side
by side.  Usage::

    python3 benchmarks/bench_kernels.py [--repeats 5]
"""

import argparse
import json
import os
import subprocess
import sys
import time


CASES = [
    # (N, n, g0): kept modest because the fallback runs the same loops
    # interpreted; the jitted path handles dims ~40k in well under a second
    (3, 8, 4.7),
    (4, 10, 4.7),
    (5, 10, 4.7),
]


def run_cases(repeats: int) -> list[dict]:
    import numpy as np

    import fewboson as fb
    from fewboson import kernels
    from fewboson.solver import initial_vector

    grid = fb.make_grid(8.0, 1024)
    potential = fb.build_potential(grid, fb.TrapSpec())
    rows = []
    for N, n, g0 in CASES:
        orb = fb.solve_1p(grid, potential, n)
        tensor = fb.two_body_tensor(orb, fb.InteractionSpec(g0))
        basis = fb.enumerate_basis(N, n)
        op = fb.HamiltonianOperator(basis, orb, tensor)
        c = initial_vector(basis)
        op.apply(c)  # warm-up: triggers compilation on the jitted path
        t0 = time.perf_counter()
        for _ in range(repeats):
            c = op.apply(c)
        dt = (time.perf_counter() - t0) / repeats
        rows.append({"N": N, "n": n, "dim": basis.size,
                     "matvec_s": dt, "numba": kernels.USE_NUMBA})
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        json.dump(run_cases(args.repeats), sys.stdout)
        return

    results = {}
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, FEWBOSON_DISABLE_NUMBA=flag)
        out = subprocess.run(
            [sys.executable, __file__, "--worker", "--repeats", str(args.repeats)],
            env=env, capture_output=True, text=True, check=True)
        results[label] = json.loads(out.stdout)

    print(f"{'N':>3} {'n':>3} {'dim':>8} {'numba [ms]':>12} "
          f"{'numpy [ms]':>12} {'speedup':>8}")
    for jit, plain in zip(results["numba"], results["numpy"]):
        assert jit["numba"] and not plain["numba"], "backend flag was ignored"
        print(f"{jit['N']:>3} {jit['n']:>3} {jit['dim']:>8} "
              f"{1e3 * jit['matvec_s']:>12.2f} {1e3 * plain['matvec_s']:>12.2f} "
              f"{plain['matvec_s'] / jit['matvec_s']:>8.2f}x")


if __name__ == "__main__":
    main()
