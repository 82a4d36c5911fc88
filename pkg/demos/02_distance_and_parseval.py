"""The two-level geometry of Walsh differences.

Distinct Walsh functions agree on exactly half of [0, 1), so the L^p
distance between any two of them is 2**(1 - 1/p): independent of which
pair, growing from 1 at p = 1 to 2 at p = inf.
"""

import math

import numpy as np

from walsh_lab import Resolution, analysis, lp_norm, lq_norm, step_function, walsh_distance

res = Resolution(10)
rng = np.random.default_rng(1)

print("L^p distance between random distinct Walsh pairs (expect 2^(1-1/p)):")
print(f"{'p':>6} {'expected':>12} {'max |measured - expected|':>28}")
for p in (1.0, 1.5, 2.0, 3.0, 10.0, math.inf):
    expect = 2.0 if p == math.inf else 2.0 ** (1.0 - 1.0 / p)
    worst = 0.0
    for _ in range(50):
        n, m = rng.integers(0, 1024, 2)
        if n == m:
            continue
        worst = max(worst, abs(walsh_distance(int(n), int(m), p, res) - expect))
    label = "inf" if p == math.inf else f"{p:g}"
    print(f"{label:>6} {expect:12.8f} {worst:28.2e}")

print("\nParseval: the coefficient 2-norm reproduces the function 2-norm.")
worst = 0.0
for _ in range(200):
    f = step_function(rng.standard_normal(1024) + 1j * rng.standard_normal(1024))
    worst = max(worst, abs(lq_norm(analysis(f), 2.0) - lp_norm(f, 2.0)))
print(f"  max gap over 200 random functions at m=10: {worst:.2e}")
