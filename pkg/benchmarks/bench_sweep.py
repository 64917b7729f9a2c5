"""Compare the compiled and numpy sweep kernels on obstruction cosets.

Usage: python benchmarks/bench_sweep.py [--dim 26] [--repeat 3]

The K6 coset is truncated to its first ``--dim`` basis vectors so the numpy
kernel finishes in seconds; the full sweep is 2^35 steps.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from obslab import _kernel_py
from obslab.gf2 import AffineSubspace
from obslab.graph import complete, complete_bipartite
from obslab.realisability import obstruction_model

try:
    from obslab import _kernel
except ImportError:
    _kernel = None


def run(impl, sub: AffineSubspace) -> tuple[np.ndarray, float]:
    nwords = len(sub.basepoint.words())
    basis = np.array([b.words() for b in sub.basis], dtype=np.uint64).reshape(sub.dim, nwords)
    start = np.array(sub.basepoint.words(), dtype=np.uint64)
    hist = np.zeros(64 * nwords + 1, dtype=np.int64)
    t0 = time.perf_counter()
    impl.sweep(start, basis, sub.dim, hist)
    return hist, time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=26)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    k6 = obstruction_model(complete(6)).coset
    cases = [
        ("K5", obstruction_model(complete(5)).coset),
        ("K3,3", obstruction_model(complete_bipartite(3, 3)).coset),
        (f"K6[:{args.dim}]", AffineSubspace(k6.basepoint, k6.basis[: args.dim])),
    ]
    impls = [("numpy", _kernel_py)]
    if _kernel is not None:
        impls.insert(0, ("cython", _kernel))
    else:
        print("compiled kernel not built; numpy only")

    print(f"{'case':<10} {'dim':>4} {'kernel':<7} {'best s':>9} {'ns/step':>8}")
    for name, sub in cases:
        hists = []
        for label, impl in impls:
            best = float("inf")
            for _ in range(args.repeat):
                hist, dt = run(impl, sub)
                best = min(best, dt)
            hists.append(hist)
            steps = 1 << sub.dim
            print(f"{name:<10} {sub.dim:>4} {label:<7} {best:>9.4f} {best / steps * 1e9:>8.2f}")
        if len(hists) == 2 and not np.array_equal(*hists):
            raise SystemExit(f"kernels disagree on {name}")


if __name__ == "__main__":
    main()
