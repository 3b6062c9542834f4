"""Time the Hamiltonian action: compiled kernel against the numpy fallback.

    python benchmarks/bench_kernels.py [--cutoff N] [--repeat R]
"""
import argparse
import timeit

import numpy as np

from raman_witness import paper_params
from raman_witness.fock import _fallback, build_hamiltonian, build_space

try:
    from raman_witness.fock import _kernels
except ImportError:
    _kernels = None


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cutoff", type=int, nargs="+", default=[8, 12, 16])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    p = paper_params()
    print(f"{'cutoff':>6} {'dim':>9} {'python ms':>10} {'cython ms':>10} {'speedup':>8} {'max rel diff':>12}")
    for n in args.cutoff:
        space = build_space((n,) * 4)
        H = build_hamiltonian(p, space)
        w = np.asarray(H.w, dtype=float)
        psi = rng.normal(size=space.shape) + 1j * rng.normal(size=space.shape)
        out_py, out_cy = np.empty_like(psi), np.empty_like(psi)

        def run_py():
            _fallback.apply_hamiltonian(psi, out_py, w, H.g, H.chi)

        t_py = min(timeit.repeat(run_py, number=1, repeat=args.repeat)) * 1e3
        if _kernels is None:
            print(f"{n:>6} {space.dim:>9} {t_py:>10.2f} {'n/a':>10} {'n/a':>8} {'n/a':>12}")
            continue

        def run_cy():
            _kernels.apply_hamiltonian(psi, out_cy, w, H.g, H.chi)

        t_cy = min(timeit.repeat(run_cy, number=1, repeat=args.repeat)) * 1e3
        diff = np.max(np.abs(out_py - out_cy)) / (H.norm_bound() * np.max(np.abs(psi)))
        print(f"{n:>6} {space.dim:>9} {t_py:>10.2f} {t_cy:>10.2f} {t_py / t_cy:>8.2f} {diff:>12.1e}")


if __name__ == "__main__":
    main()
