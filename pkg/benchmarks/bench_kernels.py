"""Time the numba kernels against their numpy counterparts.

    python3 benchmarks/bench_kernels.py [--repeat N]

Inputs match the sizes used by the library: order-64 series, 8192-point
hull tests, 1024-sample curves and the 360 x 360 two-angle grid over 1024
disk points.  The first numba call (compilation) is excluded.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from convexharm import _accel


def cases(rng):
    def cvec(n):
        return rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)

    a, b = cvec(65), cvec(65)
    b[0] = 2.0
    inner = np.r_[0, 0.5 * cvec(64)]
    z = 0.9 * cvec(4096)
    t = 2 * np.pi * np.arange(1024) / 1024
    poly = np.exp(1j * t) * (1 + 0.1 * np.cos(3 * t))
    pts = 1.2 * cvec(8192)
    w = 0.99 * np.exp(1j * t)
    zz = np.outer([0.3, 0.6, 0.9, 0.99], np.exp(2j * np.pi * np.arange(256) / 256)).ravel()
    hp, gp = 1 / (1 - zz) ** 3, -zz / (1 - zz) ** 3
    ang = 2 * np.pi * np.arange(360) / 360
    return {
        "cauchy_product (N=64)": ("cauchy_product", (a, b, 65)),
        "series_divide (N=64)": ("series_divide", (a, b, 65)),
        "compose_horner (N=64)": ("compose_horner", (a, inner, 65)),
        "horner_eval (N=64, 4096 pts)": ("horner_eval", (a, z)),
        "points_in_polygon (8192 x 1024)": ("points_in_polygon", (pts.real.copy(), pts.imag.copy(),
                                                                  poly.real.copy(), poly.imag.copy())),
        "turn_cross (1024)": ("turn_cross", (w.real.copy(), w.imag.copy())),
        "css2_grid (360 x 360 x 1024)": ("css2_grid", (hp, gp, zz * zz, ang, ang)),
    }


def best_time(fn, args, repeat):
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05:
        number *= 4
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    if _accel.NUMBA_KERNELS is None:
        raise SystemExit("numba is not importable")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<34}{'numpy':>12}{'numba':>12}{'speedup':>10}")
    for label, (name, inputs) in cases(rng).items():
        np_fn, nb_fn = _accel.NUMPY_KERNELS[name], _accel.NUMBA_KERNELS[name]
        ref, out = np_fn(*inputs), nb_fn(*inputs)  # also compiles
        if not np.allclose(ref, out, rtol=1e-10, atol=1e-12):
            raise SystemExit(f"{name}: kernels disagree")
        t_np = best_time(np_fn, inputs, args.repeat)
        t_nb = best_time(nb_fn, inputs, args.repeat)
        print(f"{label:<34}{t_np * 1e3:>10.3f}ms{t_nb * 1e3:>10.3f}ms{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
