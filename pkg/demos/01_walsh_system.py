"""Tour of the dyadic core: Walsh functions, transforms, exactness.

Walsh functions take values +-1 on dyadic cells, multiply by XOR of their
indices, and the fast transform realizes the whole matrix in N log N work.
"""

import numpy as np

from walsh_lab import (
    Resolution,
    analysis,
    fwht,
    step_function,
    synthesis,
    walsh_matrix,
    walsh_step,
    walsh_value,
)

res = Resolution(3)

print("First eight Walsh functions on eight cells (rows = W_0..W_7):")
for n in range(8):
    row = " ".join(f"{walsh_value(n, i, res):+d}" for i in range(8))
    print(f"  W_{n}: {row}")

print("\nXOR product rule: W_3 * W_5 = W_6 cell by cell:")
w3 = walsh_step(3, res).values.real.astype(int)
w5 = walsh_step(5, res).values.real.astype(int)
w6 = walsh_step(6, res).values.real.astype(int)
print("  W_3*W_5:", (w3 * w5), " W_6:", w6)
assert np.array_equal(w3 * w5, w6)

print("\nOrthonormality: the Gram matrix of the rows is the identity, exactly.")
h = walsh_matrix(3)
gram = h @ h.T // 8
print(gram)

print("\nRound trip through analysis/synthesis on a random step function:")
rng = np.random.default_rng(0)
f = step_function(rng.standard_normal(256))
err = np.abs(synthesis(analysis(f)).values - f.values).max()
print(f"  max reconstruction error at m=8: {err:.3e}")

print("\nApplying the transform twice multiplies by the dimension:")
v = rng.standard_normal(1024)
err = np.abs(fwht(fwht(v)) - 1024 * v).max()
print(f"  max error of fwht(fwht(v)) - 1024 v: {err:.3e}")
