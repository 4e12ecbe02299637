"""Benchmark the compiled sign-enumeration kernel against the pure one.

Both backends scan all 2^n sign classes of the projector-norm formula;
the compiled kernel walks them in Gray-code order with O(n) work per
step, the pure one evaluates vectorized blocks.  Run as

    python3 benchmarks/bench_signmax.py [--n-max 24] [--repeats 3]
"""
import argparse
import time

import numpy as np

from simplexball import Ball, regular_in_ball
from simplexball import _signmax_py

try:
    from simplexball import _signmax
except ImportError:
    _signmax = None


def coefficient_arrays(n: int):
    ball = Ball(np.zeros(n), 1.0)
    simplex = regular_in_ball(ball)
    grads = np.ascontiguousarray(simplex.inverse[:-1].T)
    consts = np.ascontiguousarray(simplex.lambda_at(ball.center))
    return grads, consts


def best_time(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-min", type=int, default=10)
    parser.add_argument("--n-max", type=int, default=24)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if _signmax is None:
        print("compiled backend unavailable; timing the pure kernel only")
    header = f"{'n':>3} {'classes':>12} {'pure (s)':>10}"
    if _signmax is not None:
        header += f" {'compiled (s)':>13} {'speedup':>8}"
    print(header)
    for n in range(args.n_min, args.n_max + 1):
        grads, consts = coefficient_arrays(n)
        radius = 1.0
        t_pure = best_time(
            lambda: _signmax_py.max_sign_value(grads, consts, radius),
            args.repeats)
        line = f"{n:>3} {2**n:>12} {t_pure:>10.4f}"
        if _signmax is not None:
            t_fast = best_time(
                lambda: _signmax.max_sign_value(grads, consts, radius),
                args.repeats)
            v_pure, _ = _signmax_py.max_sign_value(grads, consts, radius)
            v_fast, _ = _signmax.max_sign_value(grads, consts, radius)
            # The regular configuration ties C(n+1,k) classes at the
            # maximum, so the winning sign vector may differ between
            # backends by rounding; the value itself must agree.
            assert abs(v_pure - v_fast) < 1e-12, "backends disagree on the value"
            line += f" {t_fast:>13.4f} {t_pure / t_fast:>7.1f}x"
        print(line, flush=True)


if __name__ == "__main__":
    main()
