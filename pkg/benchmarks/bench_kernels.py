"""Benchmark the pure-Python kernels against the compiled extension.

Times the three hot paths on realistic workloads:

* sparse Laurent-polynomial products as they occur mid-chain in the
  symbolic word-matrix computation for b(31, 11);
* 2x2 matrix products mod p as in the word-evaluation batteries;
* trace-polynomial evaluation as in the oracle battery.

Run:  python benchmarks/bench_kernels.py
"""

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from knotdeform import _pykernels  # noqa: E402

try:
    from knotdeform import _ckernels
except ImportError:
    _ckernels = None


def _laurent_workload():
    """Dict operands shaped like the W-chain for a mid-size knot."""
    from knotdeform.riley import c_symbolic, d_symbolic
    from knotdeform.words import TwoBridgeKnot, schubert_word

    knot = TwoBridgeKnot(31, 11)
    word = schubert_word(knot)
    mats = {"a": c_symbolic(), "b": d_symbolic()}
    current = mats["a"]
    steps = []
    for gen, exp in list(word.letters)[1:]:
        nxt = mats[gen] if exp > 0 else mats[gen].inverse()
        steps.append((current.entries, nxt.entries))
        current = current * nxt
    return steps


def bench_poly_mul(kern, steps, repeat=3):
    t0 = time.perf_counter()
    for _ in range(repeat):
        for left, right in steps:
            for i in range(2):
                for j in range(2):
                    kern.poly_mul_2(left[i][0].terms, right[0][j].terms)
                    kern.poly_mul_2(left[i][1].terms, right[1][j].terms)
    return (time.perf_counter() - t0) / repeat


def bench_mat2(kern, n=200_000):
    rng = random.Random(0)
    p = 10007
    mats = [tuple(rng.randrange(p) for _ in range(4)) for _ in range(64)]
    t0 = time.perf_counter()
    acc = (1, 0, 0, 1)
    for i in range(n):
        acc = kern.mat2_mul(acc, mats[i & 63], p)
    return time.perf_counter() - t0


def bench_eval(kern, n=40_000):
    rng = random.Random(1)
    p = 7
    items = tuple(
        ((rng.randrange(9), rng.randrange(9), rng.randrange(9)),
         rng.randrange(-50, 50))
        for _ in range(20)
    )
    powx = tuple(pow(3, i, p) for i in range(9))
    powz = tuple(pow(5, i, p) for i in range(9))
    powy = tuple(pow(2, i, p) for i in range(9))
    t0 = time.perf_counter()
    for _ in range(n):
        kern.eval_poly3(items, powx, powz, powy, p)
    return time.perf_counter() - t0


def main():
    if _ckernels is None:
        print("compiled kernels not built; run: python setup.py build_ext --inplace")

    backends = [("python", _pykernels)] + (
        [("c", _ckernels)] if _ckernels else []
    )
    steps = _laurent_workload()
    rows = []
    for name, kern in backends:
        rows.append(
            (
                name,
                bench_poly_mul(kern, steps),
                bench_mat2(kern),
                bench_eval(kern),
            )
        )

    print(f"{'backend':<8} {'poly_mul_2 (s)':>15} {'mat2_mul (s)':>14} "
          f"{'eval_poly3 (s)':>15}")
    for name, t1, t2, t3 in rows:
        print(f"{name:<8} {t1:>15.4f} {t2:>14.4f} {t3:>15.4f}")
    if len(rows) == 2:
        py, c = rows
        print(
            f"{'speedup':<8} {py[1] / c[1]:>14.1f}x {py[2] / c[2]:>13.1f}x "
            f"{py[3] / c[3]:>14.1f}x"
        )


if __name__ == "__main__":
    main()
