"""Time the compiled kernels against the numpy fallback.

Run from the repository root after building the extension::

    python3 benchmarks/bench_kernels.py --sizes 256 1024 4096
"""
import argparse
import time

import numpy as np

from grigshift import _pure, operators, words
from grigshift.operators import WeightParams

try:
    from grigshift import _core
except ImportError:
    _core = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def level_arrays(n):
    m = operators.laplacian_gamma_n(n, WeightParams(1.0, 1.0, 2.0, 3.0))
    d = np.ascontiguousarray(m.diagonal, dtype=np.float64)
    e2 = np.ascontiguousarray(np.asarray(m.off_diagonal, dtype=np.float64) ** 2)
    return d, e2


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", type=int, nargs="+", default=[8, 10, 12],
                    help="operator levels for the eigenvalue kernels (size 2^n)")
    ap.add_argument("--text", type=int, nargs="+", default=[1 << 12, 1 << 14, 1 << 16],
                    help="prefix lengths for the period-run kernel")
    ap.add_argument("--pmax", type=int, default=256)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if _core is None:
        print("compiled kernels not built; showing the numpy fallback only")
    backends = [("numpy", _pure)] + ([("cython", _core)] if _core else [])
    print(f"{'kernel':<22}{'size':>8}" + "".join(f"{name:>12}" for name, _ in backends)
          + ("     speedup" if _core else ""))

    def row(label, size, call):
        t = [best_of(lambda mod=mod: call(mod), args.repeat) for _, mod in backends]
        line = f"{label:<22}{size:>8}" + "".join(f"{x:>11.4f}s" for x in t)
        if len(t) == 2:
            line += f"{t[0] / t[1]:>11.1f}x"
        print(line)

    for n in args.levels:
        d, e2 = level_arrays(n)
        lo, hi = float(d.min() - 4 * np.sqrt(e2.max())), float(d.max() + 4 * np.sqrt(e2.max()))
        x = np.linspace(lo, hi, 1024)
        row("sturm_counts x1024", len(d), lambda mod: mod.sturm_counts(d, e2, x, 1e-300))
        row("bisect_all 50 iter", len(d), lambda mod: mod.bisect_all(d, e2, lo, hi, 50, 1e-300))

    for L in args.text:
        s = np.frombuffer(words.eta_prefix(L), dtype=np.uint8)
        row(f"period runs p<={args.pmax}", L, lambda mod: mod.longest_period_runs(s, args.pmax))


if __name__ == "__main__":
    main()
