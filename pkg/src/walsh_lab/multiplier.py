"""Application of multiplier symbols to step functions.

On the span of the first ``2**m`` Walsh functions a multiplier acts exactly:
transform, scale coefficient ``n`` by ``a_n``, transform back.  The dense
matrix realization exists on demand for small resolutions; everything else
goes through the fast transform.
"""

from __future__ import annotations

import numpy as np

from .dyadic import (
    MAX_DENSE_LEVELS,
    Resolution,
    StepFunction,
    fwht,
    walsh_matrix,
)
from .metrics import pnorm
from .symbols import Symbol, resolvent_symbol


def apply_diag(diag: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Multiplier with coefficient diagonal ``diag`` applied to cell values.

    Batched over leading axes.  Exact on Walsh functions: the only rounding
    is the butterfly's, and divisions are by powers of two.
    """
    dim = diag.shape[-1]
    return fwht(fwht(values) * diag) / dim


def apply(sym: Symbol, f: StepFunction) -> StepFunction:
    """Apply the multiplier: coefficient n is scaled by ``sym.value(n)``."""
    res = f.resolution
    diag = sym.values(res.dim)
    return StepFunction(res, apply_diag(diag, f.values))


class MultiplierMatrix:
    """A symbol restricted to the ``2**m``-dimensional step-function space.

    ``matvec`` uses the fast transform; ``dense()`` materializes the cell-space
    matrix (only for m <= 12) and caches it.
    """

    def __init__(self, sym: Symbol, res: Resolution):
        self.symbol = sym
        self.resolution = res
        self.diag = sym.values(res.dim)
        self._dense: np.ndarray | None = None

    def matvec(self, values: np.ndarray) -> np.ndarray:
        return apply_diag(self.diag, np.asarray(values, dtype=np.complex128))

    def adjoint_matvec(self, values: np.ndarray) -> np.ndarray:
        return apply_diag(np.conj(self.diag), np.asarray(values, dtype=np.complex128))

    def dense(self) -> np.ndarray:
        if self._dense is None:
            m = self.resolution.m
            if m > MAX_DENSE_LEVELS:
                raise ValueError(
                    f"dense multiplier matrices are limited to m <= {MAX_DENSE_LEVELS}, got {m}"
                )
            h = walsh_matrix(m).astype(np.float64)
            # H @ diag(a) @ H / 2**m on cell-value vectors
            self._dense = h @ (self.diag[:, None] * h) / self.resolution.dim
        return self._dense


def compose_check(sym: Symbol, lam: complex, f: StepFunction, tolerance: float = 1e-12) -> float:
    """Residual of the two-sided inverse identity for the shifted multiplier.

    With ``b_n = 1/(a_n - lam)`` both compositions must reproduce f:
    returns the larger of the two L^2 residuals.  Scales like 1/delta times
    the rounding unit, so small certified gaps inflate it.
    """
    res = f.resolution
    b, _ = resolvent_symbol(sym, lam, tolerance)
    a_diag = sym.values(res.dim)
    b_diag = b.values(res.dim)
    w = 2.0**-res.m

    shifted = apply_diag(a_diag, f.values) - lam * f.values
    left = apply_diag(b_diag, shifted) - f.values

    inv = apply_diag(b_diag, f.values)
    right = apply_diag(a_diag, inv) - lam * inv - f.values

    return max(pnorm(left, 2.0, w), pnorm(right, 2.0, w))
