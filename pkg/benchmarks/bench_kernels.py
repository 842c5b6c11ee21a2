"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--n 12]

The first numba call of each kernel (compilation or cache load) is excluded.
"""

import argparse
import timeit

import numpy as np

from dualperron import kernels
from dualperron.experiments import generate_primitive


def cases(n):
    A = generate_primitive(n, 0.5, "signed", 1)
    rho = np.max(np.abs(np.linalg.eigvals(A.s)))
    As_decay = A.s * (0.95 / rho)
    x0 = np.ones(n) / np.sqrt(n)
    rng = np.random.default_rng(0)
    M, B = rng.normal(size=(n + 1, n + 1)), rng.normal(size=(n + 1, 1))
    P = A.s > 0
    return {
        "collatz_loop": lambda k: k.collatz_loop(A.s, A.d, x0, np.zeros(n), 1e-10, 1e-10, 5000),
        "decay_loop": lambda k: k.decay_loop(As_decay, A.d, 2000),
        "gauss_solve": lambda k: k.gauss_solve(M, B),
        "primitive_witness": lambda k: k.primitive_witness(P, (n - 1) ** 2 + 1),
        "power_iteration": lambda k: k.power_iteration(A.s, 1e-12, 100000),
        "lemma_grid": lambda k: k.lemma_grid(2.0, 3.0, 1.0, 1.0, 0.6, 10, 9),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=12, help="matrix size")
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    if kernels.numba_backend is None:
        raise SystemExit("numba is not importable; nothing to compare")

    print(f"{'kernel':<20}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, call in cases(args.n).items():
        call(kernels.numba_backend)  # compile / load cache
        times = {}
        for label, backend in (("numpy", kernels.numpy_backend), ("numba", kernels.numba_backend)):
            number = 3
            times[label] = min(timeit.repeat(lambda: call(backend), number=number, repeat=args.repeat)) / number
        print(
            f"{name:<20}{1e3 * times['numpy']:>12.3f}{1e3 * times['numba']:>12.3f}"
            f"{times['numpy'] / times['numba']:>9.1f}x"
        )


if __name__ == "__main__":
    main()
