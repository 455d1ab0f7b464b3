"""Compare the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 20]
"""
import argparse
import timeit

import numpy as np

from mdgabor import _ext
from mdgabor.signal import unit_roots


def cases(rng):
    M, N = 6, 8
    g = rng.standard_normal(48) + 1j * rng.standard_normal(48)
    h = rng.standard_normal(40) + 1j * rng.standard_normal(40)
    f = rng.standard_normal(400) + 1j * rng.standard_normal(400)
    js = np.arange(N, dtype=np.int64)
    R = 10
    G = np.ascontiguousarray(rng.standard_normal((N, 2 * R + 1)) + 0j)
    row_of = np.arange(N, dtype=np.int64)
    roots = np.asarray(unit_roots(M, -1))
    return {
        "correlation_block": lambda k: k.correlation_block(h, -5, g, 3, M, N, js, -R, R),
        "analysis_block": lambda k: k.analysis_block(f, -200, g, 3, M, N, roots),
        "walnut_apply": lambda k: k.walnut_apply(G, row_of, -R, M, N, f, -200),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    core = _ext.compiled()
    impls = {"python": _ext.fallback}
    if core is not None:
        impls["cython"] = core
    else:
        print("compiled kernels not built; timing the fallback only")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<20}" + "".join(f"{name:>14}" for name in impls) + f"{'speedup':>10}")
    for name, fn in cases(rng).items():
        times = {}
        for label, mod in impls.items():
            times[label] = min(timeit.repeat(lambda: fn(mod), number=5, repeat=args.repeat)) / 5
        if core is not None:
            ref, got = fn(_ext.fallback), fn(core)
            a = ref[1] if isinstance(ref, tuple) else ref
            b = got[1] if isinstance(got, tuple) else got
            assert np.allclose(a, b, atol=1e-10), f"{name}: backends disagree"
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{name:<20}" + "".join(f"{times[k] * 1e6:>11.1f} us" for k in impls) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
