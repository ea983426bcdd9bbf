#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot operations on representative workloads:

* poly_mul: truncated products of the kind jet composition performs,
* rref: the matrices behind kernel bases and determinacy certificates.

Run from the repository root after installing:

    python benchmarks/bench_kernels.py
"""

import time
from fractions import Fraction

from harmgerm._kernels import pure
from harmgerm.determinacy import jacobian_generators
from harmgerm.graded import laplacian_matrix, monomial_basis
from harmgerm.harmonic import harmonic_pair
from harmgerm.polyring import Poly
from harmgerm.rng import Xoshiro256StarStar, random_homogeneous

try:
    from harmgerm._kernels import _speedups as compiled
except ImportError:
    compiled = None


def _dense_poly(rng, max_degree):
    p = Poly.zero()
    for d in range(0, max_degree + 1):
        p = p + random_homogeneous(rng, d)
    return p


def _determinacy_rows(k):
    """The product matrix behind the level-(2k-3) certificate for f_k."""
    level = 2 * k - 3
    germ = harmonic_pair(k).f
    hx, hy = jacobian_generators(germ)
    monos = [m for d in range(1, level + 1) for m in monomial_basis(d)]
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for d in range(1, level - k + 2):
        for a, b in monomial_basis(d):
            mono = Poly.monomial(a, b)
            for gen in (hx, hy):
                product = mono.mul_truncated(gen, level)
                row = [Fraction(0)] * len(monos)
                for exps, c in product.terms():
                    row[index[exps]] = c
                rows.append(row)
    return rows


def _time(func, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        func(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    cases = []

    rng = Xoshiro256StarStar(7)
    for degree, cap in ((8, None), (12, None), (12, 12), (16, 16)):
        p = _dense_poly(rng, degree)
        q = _dense_poly(rng, degree)
        label = f"poly_mul deg<={degree}" + (f" cap={cap}" if cap else "")
        cases.append((label, "poly_mul", (dict(p), dict(q), cap)))

    for k, s in ((10, 2), (14, 4), (16, 8)):
        rows = [list(r) for r in laplacian_matrix(k, s).entries]
        cases.append((f"rref laplacian k={k} s={s}", "rref", (rows,)))
    for k in (6, 7, 8):
        cases.append((f"rref determinacy k={k}", "rref", (_determinacy_rows(k),)))

    header = f"{'case':<30} {'pure':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, op, args in cases:
        t_pure = _time(getattr(pure, op), *args)
        if compiled is None:
            print(f"{label:<30} {t_pure * 1e3:>10.2f}ms {'n/a':>12} {'n/a':>9}")
            continue
        t_fast = _time(getattr(compiled, op), *args)
        assert getattr(pure, op)(*args) == getattr(compiled, op)(*args)
        print(
            f"{label:<30} {t_pure * 1e3:>10.2f}ms {t_fast * 1e3:>10.2f}ms "
            f"{t_pure / t_fast:>8.1f}x"
        )
    if compiled is None:
        print("\ncompiled kernels unavailable; showing pure timings only")


if __name__ == "__main__":
    main()
