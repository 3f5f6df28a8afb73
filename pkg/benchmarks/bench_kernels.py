"""Compare the compiled and pure-Python numerical kernels.

Run: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from expoconv.kernels import available_backends


def _problems(n, rng):
    roots = rng.uniform(-3, 3, n) + 1j * rng.uniform(-3, 3, n)
    mults = np.ones(n, dtype=np.int64)
    coeffs = np.poly(roots)[::-1]  # ascending, monic
    return roots, mults, coeffs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()
    rng = np.random.default_rng(7)
    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is available")
    print(f"{'kernel':<18}{'n':>4}" + "".join(f"{b:>14}" for b in backends) + f"{'speedup':>10}")
    for n in (4, 8, 12):
        roots, mults, coeffs = _problems(n, rng)
        rhs = np.zeros((n, 1), dtype=np.complex128)
        rhs[-1, 0] = 1.0
        cases = {
            "confluent_matrix": lambda m: m.confluent_matrix(roots, mults),
            "gauss_solve": lambda m: m.gauss_solve(m.confluent_matrix(roots, mults), rhs, 1e-13),
            "aberth": lambda m: m.aberth(coeffs, m.initial_circle(coeffs), 200, 1e-13),
        }
        for name, fn in cases.items():
            times = {}
            for b, mod in backends.items():
                t = timeit.timeit(lambda: fn(mod), number=args.repeat)
                times[b] = t / args.repeat * 1e6
            row = f"{name:<18}{n:>4}" + "".join(f"{times[b]:>12.1f}us" for b in backends)
            if "cython" in times:
                row += f"{times['python'] / times['cython']:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
