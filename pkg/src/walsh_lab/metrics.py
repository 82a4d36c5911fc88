"""Exact L^p norms of step functions and l^q norms of coefficient vectors.

Step functions make every L^p norm a finite weighted sum, so the values here
are exact up to floating-point rounding.  ``p = inf`` is admitted everywhere
and handled as the max norm; the dual exponent pairs 1 with inf.
"""

from __future__ import annotations

import math

import numpy as np

from .dyadic import CoeffVector, Resolution, StepFunction, analysis, synthesis, walsh_step

INF = math.inf


def _check_exponent(p: float) -> float:
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ValueError(f"exponent must lie in [1, inf], got {p}")
    return p


def dual_exponent(p: float) -> float:
    """Conjugate exponent p' = p / (p - 1), with 1' = inf and inf' = 1."""
    p = _check_exponent(p)
    if p == 1.0:
        return INF
    if p == INF:
        return 1.0
    return p / (p - 1.0)


def pnorm(a: np.ndarray, p: float, weight: float = 1.0) -> float:
    """(weight * sum |a_i|^p)^(1/p), max |a_i| for p = inf.

    The max is factored out before powering, so large exponents do not
    overflow.  ``weight = 2**-m`` turns the plain sum into an integral over
    [0, 1); ``weight = 1`` gives the sequence norm.
    """
    p = _check_exponent(p)
    mags = np.abs(np.asarray(a))
    if mags.size == 0:
        return 0.0
    top = float(mags.max())
    if p == INF or top == 0.0:
        return top
    s = float(((mags / top) ** p).sum()) * weight
    return top * s ** (1.0 / p)


def lp_norm(f: StepFunction, p: float) -> float:
    """L^p[0,1] norm of a step function: (2**-m sum |f_i|^p)^(1/p)."""
    return pnorm(f.values, p, weight=2.0 ** -f.resolution.m)


def lq_norm(c: CoeffVector, q: float) -> float:
    """l^q norm of a coefficient vector: (sum |c_n|^q)^(1/q)."""
    return pnorm(c.coeffs, q)


def walsh_distance(n: int, m_idx: int, p: float, res: Resolution) -> float:
    """L^p distance between W_n and W_m.

    For distinct indices this equals ``2**(1 - 1/p)`` (max-norm value 2 at
    p = inf): the product W_n * W_m is a nontrivial Walsh function, so the
    two factors agree on exactly half of [0, 1).
    """
    _check_exponent(p)
    diff = walsh_step(n, res).values - walsh_step(m_idx, res).values
    return pnorm(diff, p, weight=2.0 ** -res.m)


def hy_ratio(f: StepFunction, p: float) -> float:
    """Ratio ||f_hat||_{p'} / ||f||_p for 1 < p <= 2.

    Each observed ratio is a lower bound for the best analysis constant at
    this resolution.  At p = 2 the ratio is identically 1 (Parseval).
    """
    p = _check_exponent(p)
    if not 1.0 < p <= 2.0:
        raise ValueError(f"analysis ratio needs 1 < p <= 2, got {p}")
    den = lp_norm(f, p)
    if den == 0.0:
        raise ValueError("undefined ratio for identically zero input")
    return lq_norm(analysis(f), dual_exponent(p)) / den


def synthesis_ratio(c: CoeffVector, p: float) -> float:
    """Ratio ||sum c_n W_n||_p / ||c||_{p'} for 1 < p < 2.

    Lower bound for the best synthesis constant at this resolution; no
    ceiling is asserted (see the constant probes for measured growth).
    """
    p = _check_exponent(p)
    if not 1.0 < p < 2.0:
        raise ValueError(f"synthesis ratio needs 1 < p < 2, got {p}")
    den = lq_norm(c, dual_exponent(p))
    if den == 0.0:
        raise ValueError("undefined ratio for identically zero input")
    return lp_norm(synthesis(c), p) / den
