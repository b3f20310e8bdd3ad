"""Compare the compiled kernels with the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``.  Each kernel is timed
with :mod:`timeit` on the same inputs for both backends; the table shows
the best of five repeats and the speedup of the compiled version.
"""

import argparse
import timeit

import numpy as np

from bnineq import _kernels_py

try:
    from bnineq import _ckernels
except ImportError:
    _ckernels = None


def cases(rng):
    c = rng.standard_normal(257) + 1j * rng.standard_normal(257)
    x = rng.uniform(-np.pi, np.pi, 20000)
    v = rng.standard_normal(200) + 1j * rng.standard_normal(200)
    xs = rng.uniform(-300, 300, 5000)
    return [
        ("eval_trig n=128, 20000 pts", "eval_trig", (c, x)),
        ("hilbert_window 200 atoms, 4001 m", "hilbert_window", (v, -100, -2000, 2000, 0.5)),
        ("sinc_synth 200 terms, 5000 pts", "sinc_synth", (v, -100, xs)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=3)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(0)
    print(f"{'kernel':36s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for label, name, inputs in cases(rng):
        t_py = min(timeit.repeat(lambda: getattr(_kernels_py, name)(*inputs),
                                 repeat=args.repeat, number=args.number)) / args.number
        if _ckernels is None:
            print(f"{label:36s} {1e3 * t_py:12.2f} {'n/a':>12s} {'n/a':>8s}")
            continue
        fn = getattr(_ckernels, name)
        err = np.max(np.abs(np.asarray(fn(*inputs)) - getattr(_kernels_py, name)(*inputs)))
        t_c = min(timeit.repeat(lambda: fn(*inputs), repeat=args.repeat, number=args.number)) / args.number
        print(f"{label:36s} {1e3 * t_py:12.2f} {1e3 * t_c:12.2f} {t_py / t_c:8.2f}x   (max diff {err:.1e})")


if __name__ == "__main__":
    main()
