"""Independent reference values frozen into the C++ unit tests.

Run with: python3 tests/oracles/compute_oracles.py
"""
import math

import numpy as np


def grid_max(fn, n=2_000_001):
    xs = np.arange(n, dtype=np.float64) / (n - 1)  # x_j = j/(n-1), as in the library
    ys = fn(xs)
    j = int(np.argmax(ys))  # first occurrence on ties
    return ys[j], xs[j]


def f(x):
    return 0.5 * np.sin(13 * x) * np.sin(27 * x) + 0.5


def g(x):
    return np.maximum(3.6 * x * (1 - x), 1 - (1 / 0.05) * np.abs(x - 0.05))


def garland(x):
    return x * (1 - x) * (4 - np.sqrt(np.abs(np.sin(60 * x))))


def moss_noise_free(means, horizon):
    k = len(means)
    counts = [0] * k
    sums = [0.0] * k
    best = max(means)
    regret = 0.0
    for _ in range(horizon):
        arm = None
        for i in range(k):
            if counts[i] == 0:
                arm = i
                break
        if arm is None:
            idx = []
            for i in range(k):
                n = counts[i]
                bonus = math.sqrt(max(math.log(horizon / (k * n)), 0.0) / n)
                idx.append(sums[i] / n + bonus)
            arm = max(range(k), key=lambda i: (idx[i], -i))
        counts[arm] += 1
        sums[arm] += means[arm]
        regret += best - means[arm]
    return regret, counts


if __name__ == "__main__":
    for name, fn in (("f", f), ("g", g), ("garland", garland)):
        v, x = grid_max(fn)
        print(f"grid_max {name}: value={v!r} argmax={x!r}")

    n = 10_000_000
    mid = (np.arange(n) + 0.5) / n
    print("riemann mean f on [0,1]:", repr(float(np.mean(f(mid)))))
    print("analytic mean f on [0,1]:",
          repr(0.5 + 0.25 * (math.sin(14) / 14 - math.sin(40) / 40)))

    for horizon in (2, 3, 4, 10, 100, 1000, 10000):
        r, c = moss_noise_free([0.9, 0.1], horizon)
        print(f"moss (0.9,0.1) T={horizon}: regret={r!r} counts={c}")

    print("medzo_bound(2^10, 2^20, 1, 1):", repr(412 * 10 ** 1.5 * max(1024, 2 ** 20 * 2 ** -5)))
    p = 13
    print("gpo_bound(2^13, 1, 1):",
          repr((54 + math.sqrt(math.pi) / 2 * 13) * (p / 8192) ** (1 / 3)))
    print("globreg phi0 delta=0.4 ell=1 gamma=2:", repr((0.4 / 2) ** 0.5))
