"""Spectrum and compactness diagnostics for Walsh multipliers.

At p = 2 the description is complete: the spectrum is the closure of the
coefficient values and the resolvent norm is the reciprocal gap.  For other
exponents only the inclusion closure{a_n} within the spectrum is certified:
outside it a bounded inverse symbol exists and is checked by composition,
inside it Walsh functions are explicit (quasi-)eigenvectors.  No claim is
ever emitted that the spectrum is exhausted for p != 2; a shift whose
resolvent certificate fails numerically is reported as undetermined.

Compactness at finite resolution is diagnosed from truncation tails: the
remainder norm tracks ``sup_{n > N} |a_n|``, which decays exactly when the
symbol values tend to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .dyadic import Resolution, StepFunction, walsh_step
from .metrics import pnorm
from .multiplier import apply_diag, compose_check
from .opnorm import NormEstimate, multiplier_bound_check, tail_norm
from .symbols import Symbol, resolvent_symbol

INF = math.inf

_WITNESS_SCAN = 1 << 16
_MAX_WITNESSES = 12

IN_SPECTRUM = "in_spectrum"
IN_RESOLVENT = "in_resolvent"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class SpectralQuery:
    """One membership question: shift, exponent, resolution, gap tolerance."""

    lam: complex
    p: float = 2.0
    m: int = 8
    tolerance: float = 1e-12

    def __post_init__(self) -> None:
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@dataclass
class MembershipCertificate:
    """Verdict for one shift plus the evidence backing it.

    In the resolvent case: the certified gap, the inverse symbol, the
    composition residual on a seeded test function and (for p != 2) a
    measured-constant upper bound on the inverse norm.  In the spectrum
    case: indices whose coefficient values approach the shift, each one a
    norm-one Walsh quasi-eigenvector with residual exactly |a_n - lam|.
    """

    verdict: str
    lam: complex
    p: float
    delta: float
    resolvent: Symbol | None = None
    compose_residual: float | None = None
    lp_upper: float | None = None
    witness_indices: list[int] = field(default_factory=list)
    witness_gaps: list[float] = field(default_factory=list)


@dataclass
class CompactnessRow:
    cutoff: int
    estimate: NormEstimate
    analytic_sup: float


@dataclass
class CompactnessReport:
    family: str
    p_in: float
    p_out: float
    m: int
    rows: list[CompactnessRow]
    verdict: str  # 'compact' | 'not_compact'
    corroborated: bool
    tail_limit: float


@dataclass
class SpectralReport:
    """Full per-symbol report at one resolution and shift."""

    family: str
    m: int
    point_spectrum: list[tuple[int, complex]]
    membership: MembershipCertificate
    resolvent_norm_l2: float
    lp_resolvent_upper: float | None
    compactness: str
    accumulation_check: str  # 'pass' | 'fail' | 'n/a'

    def to_json_dict(self) -> dict:
        cert = self.membership
        return {
            "family": self.family,
            "m": self.m,
            "point_spectrum": [[n, [z.real, z.imag]] for n, z in self.point_spectrum],
            "membership": {
                "verdict": cert.verdict,
                "lambda": [cert.lam.real, cert.lam.imag],
                "p": cert.p,
                "delta": cert.delta,
                "compose_residual": cert.compose_residual,
                "lp_upper": cert.lp_upper,
                "witness_indices": cert.witness_indices,
                "witness_gaps": cert.witness_gaps,
            },
            "resolvent_norm_l2": None if self.resolvent_norm_l2 == INF else self.resolvent_norm_l2,
            "lp_resolvent_upper": self.lp_resolvent_upper,
            "compactness": self.compactness,
            "accumulation_check": self.accumulation_check,
        }


def point_spectrum(sym: Symbol, res: Resolution, include_vectors: bool = False):
    """Eigenpairs (n, a_n) for n < 2**m; W_n is the eigenvector.

    The eigen-identity is verified exactly: applying the multiplier to a
    Walsh function involves only sums of a single nonzero coefficient, so
    the cell values come out bit-for-bit equal to ``a_n * W_n``.
    """
    dim = res.dim
    diag = sym.values(dim)
    pairs = []
    block = 1 << min(res.m, 8)
    for lo in range(0, dim, block):
        hi = min(lo + block, dim)
        rows = np.vstack([walsh_step(n, res).values for n in range(lo, hi)])
        out = apply_diag(diag, rows)
        if np.abs(out - diag[lo:hi, None] * rows).max() != 0.0:
            raise RuntimeError("multiplier failed the exact eigen-identity on a Walsh function")
        if include_vectors:
            pairs.extend(
                (n, complex(diag[n]), StepFunction(res, rows[n - lo])) for n in range(lo, hi)
            )
        else:
            pairs.extend((n, complex(diag[n])) for n in range(lo, hi))
    return pairs


def resolvent_norm_l2(sym: Symbol, lam: complex) -> float:
    """sup_n 1/|a_n - lam| via the closed-form gap; inf when lam touches
    the closure of the values."""
    d = sym.closure_distance(lam)
    return INF if d == 0.0 else 1.0 / d


@lru_cache(maxsize=64)
def _cached_multiplier_constant(p: float, m: int, trials: int, seed: int) -> float:
    """Largest measured p -> p norm / sup ratio over seeded random symbols."""
    from .opnorm import random_explicit_symbol

    rng = np.random.default_rng(seed)
    res = Resolution(m)
    best = 1.0
    for _ in range(trials):
        sym = random_explicit_symbol(rng, res.dim)
        report = multiplier_bound_check(sym, res, p, seed=seed, exchange_rounds=0)
        best = max(best, report.ratio)
    return best


def membership(
    sym: Symbol,
    query: SpectralQuery,
    *,
    bound_constant: float | None = None,
    test_seed: int = 7,
) -> MembershipCertificate:
    """Classify the shift and produce the corresponding certificate.

    Exactly one of the verdicts holds: a certified gap above the query
    tolerance yields the resolvent verdict, anything at or below it the
    spectrum verdict.  The undetermined verdict appears only if a resolvent
    certificate unexpectedly fails its own composition check.
    """
    lam = complex(query.lam)
    res = Resolution(query.m)
    delta = sym.closure_distance(lam)

    if delta > query.tolerance:
        b, delta = resolvent_symbol(sym, lam, query.tolerance)
        rng = np.random.default_rng(test_seed)
        f = StepFunction(
            res, rng.standard_normal(res.dim) + 1j * rng.standard_normal(res.dim)
        )
        residual = compose_check(sym, lam, f, query.tolerance)
        lp_upper = None
        if query.p != 2.0:
            const = bound_constant
            if const is None:
                const = _cached_multiplier_constant(float(query.p), min(query.m, 6), 4, 0)
            lp_upper = const / delta
        # Residual scales like 1/delta; anything far beyond that means the
        # certificate did not actually invert the operator.
        verdict = IN_RESOLVENT
        if residual > 1e-6 * max(1.0, 1.0 / delta):
            verdict = UNDETERMINED
        return MembershipCertificate(
            verdict=verdict,
            lam=lam,
            p=query.p,
            delta=delta,
            resolvent=b,
            compose_residual=residual,
            lp_upper=lp_upper,
        )

    gaps = np.abs(sym.values(_WITNESS_SCAN) - lam)
    running = np.minimum.accumulate(gaps)
    improving = np.flatnonzero(gaps <= running)
    strict = [int(improving[0])]
    for n in improving[1:]:
        if gaps[n] < gaps[strict[-1]]:
            strict.append(int(n))
    picks = strict[-_MAX_WITNESSES:]
    verified: list[float] = []
    for n in picks:
        if n < res.dim:
            residual_fn = apply_diag(sym.values(res.dim), walsh_step(n, res).values)
            residual_fn -= lam * walsh_step(n, res).values
            verified.append(pnorm(residual_fn, query.p, 2.0**-res.m))
        else:
            verified.append(float(gaps[n]))
    return MembershipCertificate(
        verdict=IN_SPECTRUM,
        lam=lam,
        p=query.p,
        delta=delta,
        witness_indices=picks,
        witness_gaps=verified,
    )


def compactness_report(
    sym: Symbol,
    p_in: float,
    p_out: float,
    res: Resolution,
    cutoffs,
    **opts,
) -> CompactnessReport:
    """Truncation-tail decay table plus the compactness verdict.

    The verdict follows the symbol's decay flag; the table corroborates it:
    decaying analytic sups for a compact symbol, tail norms bounded away
    from zero for a non-compact one.
    """
    cutoffs = [int(c) for c in cutoffs]
    if not cutoffs:
        raise ValueError("need at least one cutoff")
    if any(b <= a for a, b in zip(cutoffs, cutoffs[1:])):
        raise ValueError("cutoffs must be strictly increasing")
    if cutoffs[0] < 0 or cutoffs[-1] >= res.dim:
        raise ValueError(f"cutoffs must lie in [0, {res.dim})")

    rows = []
    for cutoff in cutoffs:
        est, analytic = tail_norm(sym, cutoff, res, p_in, p_out, **opts)
        rows.append(CompactnessRow(cutoff, est, analytic))

    tail_limit = sym.tail_sup(1 << 40)
    sups = [r.analytic_sup for r in rows]
    if sym.is_c0:
        verdict = "compact"
        corroborated = tail_limit <= 1e-9 and all(b <= a for a, b in zip(sups, sups[1:]))
    else:
        verdict = "not_compact"
        floor = max(1e-9, 0.5 * tail_limit)
        corroborated = all(r.estimate.value >= floor for r in rows)
    return CompactnessReport(
        family=sym.family,
        p_in=float(p_in),
        p_out=float(p_out),
        m=res.m,
        rows=rows,
        verdict=verdict,
        corroborated=corroborated,
        tail_limit=tail_limit,
    )


def separation_distance(
    sym: Symbol, k: int, j: int, p: float, res: Resolution
) -> tuple[float, float]:
    """Measured and closed-form L^p distance between the multiplier images
    of phase-normalized Walsh inputs at indices k and j.

    With ``f_k = (conj(a_k)/|a_k|) W_k`` (plain ``W_k`` when ``a_k = 0``) the
    image is ``|a_k| W_k``, and the distance has the exact two-level form
    ``(|| |a_k| - |a_j| |**p + (|a_k| + |a_j|)**p) / 2)**(1/p)``.
    """
    if k == j:
        raise ValueError("indices must be distinct")
    dim = res.dim
    if not (0 <= k < dim and 0 <= j < dim):
        raise ValueError(f"indices must be below 2**m = {dim}")
    ak = complex(sym.value(k))
    aj = complex(sym.value(j))

    def normalized(n: int, a: complex) -> np.ndarray:
        w = walsh_step(n, res).values
        return w if a == 0 else (a.conjugate() / abs(a)) * w

    diag = sym.values(dim)
    image = apply_diag(diag, normalized(k, ak) - normalized(j, aj))
    measured = pnorm(image, p, 2.0**-res.m)

    rk, rj = abs(ak), abs(aj)
    if p == INF:
        formula = max(abs(rk - rj), rk + rj)
    else:
        formula = (0.5 * abs(rk - rj) ** p + 0.5 * (rk + rj) ** p) ** (1.0 / p)
    return measured, formula


def riesz_schauder_check(sym: Symbol, res: Resolution, eps_grid) -> list[dict]:
    """Finite-count check for the accumulation structure of a decaying symbol.

    For each threshold the number of coefficient values at or above it must
    be finite uniformly in the resolution: the count is computed at m and
    m + 1 and certified final when the analytic tail sup has dropped below
    the threshold.  Zero must lie in the closure of the values.
    """
    if not sym.is_c0:
        raise ValueError("accumulation check applies only to symbols with a_n -> 0")
    rows = []
    m2 = min(res.m + 1, 26)
    vals1 = np.abs(sym.values(res.dim))
    vals2 = np.abs(sym.values(1 << m2))
    zero_ok = sym.closure_distance(0.0) <= 1e-15
    for eps in eps_grid:
        eps = float(eps)
        if eps <= 0:
            raise ValueError("thresholds must be positive")
        count1 = int((vals1 >= eps).sum())
        count2 = int((vals2 >= eps).sum())
        settled = sym.tail_sup((1 << m2) - 1) < eps
        rows.append(
            {
                "eps": eps,
                "count": count1,
                "count_next": count2,
                "stabilized": bool(count1 == count2 and settled),
                "zero_in_closure": bool(zero_ok),
            }
        )
    return rows


def spectral_report(sym: Symbol, query: SpectralQuery, **membership_opts) -> SpectralReport:
    """Assemble the full diagnostic for one symbol and shift."""
    res = Resolution(query.m)
    cert = membership(sym, query, **membership_opts)
    acc = "n/a"
    if sym.is_c0:
        rows = riesz_schauder_check(sym, res, [0.5, 0.1, 0.05])
        acc = "pass" if all(r["stabilized"] and r["zero_in_closure"] for r in rows) else "fail"
    return SpectralReport(
        family=sym.family,
        m=res.m,
        point_spectrum=point_spectrum(sym, res),
        membership=cert,
        resolvent_norm_l2=resolvent_norm_l2(sym, query.lam),
        lp_resolvent_upper=cert.lp_upper,
        compactness="compact" if sym.is_c0 else "not_compact",
        accumulation_check=acc,
    )
