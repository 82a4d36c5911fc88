"""Operator norms of Walsh multipliers on the finite step-function space.

Exact paths exist at p = 2 (largest |a_n|, cross-checked by iteration) and at
p in {1, inf} (column / row sums of the dense matrix; the uniform cell weight
cancels for equal domain and range exponents).  Every other regime gets a
certified *lower* bound from a dual power iteration whose Rayleigh-type ratio
never decreases, reported together with convergence metadata.  Upper bounds
come separately from interpolation between the exact p = 1 and p = inf norms.

General matrix p-norms are NP-hard to certify; the ``kind`` tag is honest
about which path produced a value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dyadic import Resolution, fwht, walsh_step
from .metrics import dual_exponent, pnorm
from .multiplier import MultiplierMatrix
from .symbols import ExplicitSymbol, Symbol, tail

INF = math.inf

EXACT = "exact"
LOWER = "lower"
UPPER = "upper"

# Iteration defaults; the acceptance tolerances assume these.
DEFAULT_RANDOM_STARTS = 16
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 500
_WALSH_STARTS = 3
_MONOTONE_SLACK = 1e-9


@dataclass(frozen=True)
class NormEstimate:
    """A norm value tagged exact / lower / upper with convergence metadata."""

    value: float
    kind: str
    iterations: int = 0
    residual: float = 0.0
    starts: int = 0


@dataclass
class ConstantProbe:
    """Best observed ratio for one of the measured inequalities.

    ``best_ratio`` is reproducible from the stored witness; the constants
    themselves are never asserted, only measured.
    """

    inequality: str  # 'hy' | 'synthesis' | 'multiplier_bound'
    p: float
    m: int
    best_ratio: float
    witness: np.ndarray = field(repr=False)
    trials: int = 0
    seed: int = 0
    symbol: Symbol | None = None

    def recompute(self) -> float:
        """Re-evaluate the ratio from the stored witness."""
        from .dyadic import coeff_vector, step_function
        from .metrics import hy_ratio, synthesis_ratio

        if self.inequality == "hy":
            return hy_ratio(step_function(self.witness), self.p)
        if self.inequality == "synthesis":
            return synthesis_ratio(coeff_vector(self.witness), self.p)
        if self.inequality == "multiplier_bound":
            if self.symbol is None:
                raise ValueError("multiplier-bound probes need their symbol to recompute")
            m = self.m
            diag = self.symbol.values(1 << m)
            w = 2.0**-m
            out = fwht(fwht(self.witness) * diag) / (1 << m)
            sup = float(np.abs(diag).max())
            num = pnorm(out, self.p, w) / pnorm(self.witness, self.p, w)
            return num / sup if sup > 0 else 0.0
        raise ValueError(f"unknown inequality {self.inequality!r}")


@dataclass
class _PowerResult:
    value: float
    witness: np.ndarray
    iterations: int
    residual: float
    starts: int
    histories: list[list[float]] | None = None


def _phase(v: np.ndarray) -> np.ndarray:
    mags = np.abs(v)
    out = np.zeros_like(v)
    np.divide(v, mags, out=out, where=mags > 0)
    return out


def _dual_map_rows(v: np.ndarray, q: float) -> np.ndarray:
    """Row-wise Hoelder duality map: phase(v) |v|**(q-1), scale-free.

    q = 1 keeps only the phases; q = inf concentrates on the first
    max-modulus coordinate.  Rows of zeros map to zeros.
    """
    if q == 1.0:
        return _phase(v)
    mags = np.abs(v)
    top = mags.max(axis=-1, keepdims=True)
    safe = np.where(top > 0, top, 1.0)
    if q == INF:
        hit = mags == top
        first = np.cumsum(hit, axis=-1) == 1
        return _phase(v) * (hit & first)
    return _phase(v) * (mags / safe) ** (q - 1.0)


def _row_pnorm(v: np.ndarray, p: float, weight: float) -> np.ndarray:
    mags = np.abs(v)
    top = mags.max(axis=-1)
    if p == INF:
        return top
    safe = np.where(top > 0, top, 1.0)
    s = ((mags / safe[:, None]) ** p).sum(axis=-1) * weight
    return top * s ** (1.0 / p)


def _start_matrix(
    diag: np.ndarray,
    m: int,
    random_starts: int,
    seed: int,
    extra_starts,
) -> np.ndarray:
    """Default multi-start block: all-ones, cell basis vectors, the Walsh
    functions with the largest |a_n|, then seeded random vectors."""
    dim = 1 << m
    rows = [np.ones((1, dim))]
    rows.append(np.eye(1 << min(m, 6), dim))
    order = np.argsort(-np.abs(diag), kind="stable")[: min(_WALSH_STARTS, dim)]
    rows.append(np.vstack([walsh_step(int(n), Resolution(m)).values.real for n in order]))
    if random_starts > 0:
        rng = np.random.default_rng(seed)
        rows.append(
            rng.standard_normal((random_starts, dim)) + 1j * rng.standard_normal((random_starts, dim))
        )
    if extra_starts is not None:
        for x in extra_starts:
            rows.append(np.asarray(x, dtype=np.complex128).reshape(1, dim))
    return np.vstack([r.astype(np.complex128) for r in rows])


def _power_lower(
    diag: np.ndarray,
    m: int,
    p_in: float,
    p_out: float,
    *,
    seed: int = 0,
    random_starts: int = DEFAULT_RANDOM_STARTS,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    extra_starts=None,
    want_history: bool = False,
) -> _PowerResult:
    """Dual power iteration for the L^{p_in} -> L^{p_out} norm, all starts batched.

    Per start the ratio ||T x_k|| / ||x_k|| is nondecreasing in k; iteration
    stops when its relative change drops below ``tol``.  The reduction over
    starts is a max with ties resolved by the lowest start index.
    """
    dim = 1 << m
    w = 2.0**-m
    q_dual = dual_exponent(p_in)
    conj_diag = np.conj(diag)

    x = _start_matrix(diag, m, random_starts, seed, extra_starts)
    norms = _row_pnorm(x, p_in, w)
    keep = norms > 0
    x = x[keep] / norms[keep][:, None]
    n_starts = x.shape[0]

    gamma = np.zeros(n_starts)
    residual = np.full(n_starts, np.inf)
    iterations = np.zeros(n_starts, dtype=int)
    witness = x.copy()
    active = np.ones(n_starts, dtype=bool)
    histories: list[list[float]] | None = [[] for _ in range(n_starts)] if want_history else None

    for step in range(max_iter):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        xa = x[idx]
        y = fwht(fwht(xa) * diag) / dim
        g = _row_pnorm(y, p_out, w)
        prev = gamma[idx]

        if step > 0:
            drops = g < prev - _MONOTONE_SLACK * (1.0 + np.abs(g))
            if drops.any():
                raise RuntimeError(
                    "power-iteration ratio decreased; this contradicts the ascent property"
                )
        if histories is not None:
            for local, row in enumerate(idx):
                if g[local] > 0:
                    histories[row].append(float(g[local]))

        witness[idx] = xa
        gamma[idx] = np.maximum(g, prev)
        iterations[idx] += 1

        rel = np.abs(g - prev) / np.where(g > 0, g, 1.0)
        residual[idx] = rel
        dead = g == 0
        done = dead | ((step > 0) & (rel <= tol))
        active[idx[done]] = False
        still = idx[~done]
        if still.size == 0:
            continue

        u = _dual_map_rows(y[~done], p_out)
        z = fwht(fwht(u) * conj_diag) / dim
        xn = _dual_map_rows(z, q_dual)
        nn = _row_pnorm(xn, p_in, w)
        alive = nn > 0
        active[still[~alive]] = False
        sel = still[alive]
        x[sel] = xn[alive] / nn[alive][:, None]

    best = int(np.argmax(gamma))
    return _PowerResult(
        value=float(gamma[best]),
        witness=witness[best],
        iterations=int(iterations[best]),
        residual=float(residual[best]) if math.isfinite(residual[best]) else float("inf"),
        starts=n_starts,
        histories=histories,
    )


def opnorm(
    sym: Symbol,
    res: Resolution,
    p_in: float,
    p_out: float,
    *,
    seed: int = 0,
    random_starts: int = DEFAULT_RANDOM_STARTS,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    extra_starts=None,
    cross_check: bool | None = None,
) -> NormEstimate:
    """Norm of the multiplier on the 2**m-dimensional step-function space,
    measured from the L^{p_in} domain norm to the L^{p_out} range norm.

    Paths:

    * ``p_in = p_out = 2``: exact, ``max |a_n|``, cross-checked against the
      iterative estimator unless ``cross_check=False``.
    * ``p_in = p_out in {1, inf}``: exact via dense column / row sums
      (resolution capped at m = 12 by the dense realization).
    * anything else: iterative lower bound (see ``_power_lower``).
    """
    for p in (p_in, p_out):
        if math.isnan(float(p)) or float(p) < 1.0:
            raise ValueError(f"exponents must lie in [1, inf], got {p}")
    p_in = float(p_in)
    p_out = float(p_out)
    m = res.m
    diag = sym.values(res.dim)

    if p_in == p_out == 2.0:
        exact = float(np.abs(diag).max())
        if cross_check is None:
            cross_check = m <= 10
        iters = 0
        if cross_check:
            run = _power_lower(
                diag, m, 2.0, 2.0,
                seed=seed, random_starts=4, tol=tol, max_iter=200,
            )
            if abs(run.value - exact) > 1e-8 * max(1.0, exact):
                raise RuntimeError(
                    f"p=2 exact norm {exact} and power iteration {run.value} disagree"
                )
            iters = run.iterations
        return NormEstimate(exact, EXACT, iterations=iters, residual=0.0, starts=0)

    if p_in == p_out and p_in in (1.0, INF):
        dense = MultiplierMatrix(sym, res).dense()
        axis = 0 if p_in == 1.0 else 1
        value = float(np.abs(dense).sum(axis=axis).max())
        return NormEstimate(value, EXACT)

    run = _power_lower(
        diag, m, p_in, p_out,
        seed=seed, random_starts=random_starts, tol=tol, max_iter=max_iter,
        extra_starts=extra_starts,
    )
    return NormEstimate(run.value, LOWER, run.iterations, run.residual, run.starts)


def opnorm_upper_interpolated(sym: Symbol, res: Resolution, p: float) -> NormEstimate:
    """Upper bound for the p -> p norm by interpolating the exact endpoint
    norms: ||T||_1^(1/p) * ||T||_inf^(1 - 1/p)."""
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ValueError(f"exponent must lie in [1, inf], got {p}")
    n1 = opnorm(sym, res, 1.0, 1.0).value
    ninf = opnorm(sym, res, INF, INF).value
    theta = 0.0 if p == INF else 1.0 / p
    value = n1**theta * ninf ** (1.0 - theta)
    return NormEstimate(value, UPPER)


def tail_norm(
    sym: Symbol,
    cutoff: int,
    res: Resolution,
    p_in: float,
    p_out: float,
    **opts,
) -> tuple[NormEstimate, float]:
    """Norm of the truncation remainder (indices > cutoff) plus the analytic
    reference ``sup_{cutoff < n < 2**m} |a_n|``.

    In the (2, 2) and (p, 2) regimes the two coincide: the remainder norm is
    sandwiched between the Walsh-function witness at the largest remaining
    coefficient and the Parseval/embedding estimate from above.
    """
    if not 0 <= cutoff < res.dim:
        raise ValueError(f"cutoff {cutoff} out of range for m = {res.m}")
    rest = tail(sym, cutoff)
    vals = np.abs(sym.values(res.dim)[cutoff + 1 :])
    analytic = float(vals.max()) if vals.size else 0.0
    return opnorm(rest, res, p_in, p_out, **opts), analytic


@dataclass
class MultiplierBoundReport:
    """Measured p -> p norm of a multiplier against its coefficient sup."""

    p: float
    m: int
    estimate: NormEstimate
    dual_estimate: NormEstimate
    sup: float
    ratio: float
    duality_gap: float
    probe: ConstantProbe

    @property
    def duality_ok(self) -> bool:
        scale = max(1.0, self.estimate.value)
        return self.duality_gap <= 1e-6 * scale


def _dual_witness(diag: np.ndarray, m: int, p: float, x: np.ndarray) -> np.ndarray:
    """Convert a domain witness for T into a start for the adjoint at p'.

    With y = T x, the duality-map image of y pairs with x at the achieved
    ratio, so the adjoint run starts at least as high (Hoelder equality)."""
    dim = 1 << m
    y = fwht(fwht(x) * diag) / dim
    u = _dual_map_rows(y[None, :], p)[0]
    w = 2.0**-m
    nu = pnorm(u, dual_exponent(p), w)
    return u / nu if nu > 0 else u


def multiplier_bound_check(
    sym: Symbol,
    res: Resolution,
    p: float,
    *,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    random_starts: int = DEFAULT_RANDOM_STARTS,
    exchange_rounds: int = 8,
) -> MultiplierBoundReport:
    """Measure the p -> p lower bound, its ratio to sup |a_n|, and the
    adjoint symmetry: the conjugate symbol at the dual exponent must give the
    same norm.

    The two power runs exchange Hoelder-dual witnesses until neither
    improves, so the reported pair agrees to iteration tolerance while both
    sides remain genuine lower bounds.
    """
    p = float(p)
    if not 1.0 < p < INF:
        raise ValueError(f"duality check needs 1 < p < inf, got {p}")
    q = dual_exponent(p)
    m = res.m
    dim = res.dim
    diag = sym.values(dim)
    conj_diag = np.conj(diag)
    sup = float(np.abs(diag).max())

    kwargs = dict(random_starts=random_starts, tol=tol, max_iter=max_iter)
    run_a = _power_lower(diag, m, p, p, seed=seed, **kwargs)
    run_b = _power_lower(conj_diag, m, q, q, seed=seed + 1, **kwargs)

    for _ in range(exchange_rounds):
        gap = abs(run_a.value - run_b.value)
        if gap <= tol * max(1.0, run_a.value, run_b.value):
            break
        start_b = _dual_witness(diag, m, p, run_a.witness)
        start_a = _dual_witness(conj_diag, m, q, run_b.witness)
        run_b = _power_lower(
            conj_diag, m, q, q, seed=seed + 1, extra_starts=[start_b], **kwargs
        )
        run_a = _power_lower(diag, m, p, p, seed=seed, extra_starts=[start_a], **kwargs)

    ratio = run_a.value / sup if sup > 0 else 0.0
    probe = ConstantProbe(
        inequality="multiplier_bound",
        p=p,
        m=m,
        best_ratio=ratio,
        witness=run_a.witness,
        trials=run_a.starts,
        seed=seed,
        symbol=sym,
    )
    return MultiplierBoundReport(
        p=p,
        m=m,
        estimate=NormEstimate(run_a.value, LOWER, run_a.iterations, run_a.residual, run_a.starts),
        dual_estimate=NormEstimate(run_b.value, LOWER, run_b.iterations, run_b.residual, run_b.starts),
        sup=sup,
        ratio=ratio,
        duality_gap=abs(run_a.value - run_b.value),
        probe=probe,
    )


def _hy_ratios(batch: np.ndarray, p: float, m: int) -> np.ndarray:
    dim = 1 << m
    coeffs = fwht(batch) / dim
    num = _row_pnorm(coeffs, dual_exponent(p), 1.0)
    den = _row_pnorm(batch, p, 2.0**-m)
    return np.where(den > 0, num / np.where(den > 0, den, 1.0), 0.0)


def _synthesis_ratios(batch: np.ndarray, p: float, m: int) -> np.ndarray:
    num = _row_pnorm(fwht(batch), p, 2.0**-m)
    den = _row_pnorm(batch, dual_exponent(p), 1.0)
    return np.where(den > 0, num / np.where(den > 0, den, 1.0), 0.0)


def constant_probe(
    inequality: str,
    p: float,
    res: Resolution,
    trials: int = 10000,
    seed: int = 0,
    *,
    ascent_starts: int = 4,
    max_passes: int = 16,
) -> ConstantProbe:
    """Empirical lower bound for an analysis/synthesis constant.

    Random complex starts evaluated in a batch, then coordinate sign/phase
    ascent (multiplying one coordinate by -1 or +-i) from the best starts
    until no single-coordinate change improves the ratio.  The observed
    maximum only ever grows, and the best witness is stored.
    """
    p = float(p)
    if inequality == "hy":
        if not 1.0 < p <= 2.0:
            raise ValueError(f"analysis probe needs 1 < p <= 2, got {p}")
        ratios_of = _hy_ratios
    elif inequality == "synthesis":
        if not 1.0 < p < 2.0:
            raise ValueError(f"synthesis probe needs 1 < p < 2, got {p}")
        ratios_of = _synthesis_ratios
    else:
        raise ValueError(f"unknown inequality {inequality!r} (expected 'hy' or 'synthesis')")
    if trials < 1:
        raise ValueError("need at least one trial")

    m = res.m
    dim = res.dim
    rng = np.random.default_rng(seed)
    batch = rng.standard_normal((trials, dim)) + 1j * rng.standard_normal((trials, dim))
    ratios = ratios_of(batch, p, m)

    order = np.argsort(-ratios, kind="stable")[: max(1, ascent_starts)]
    best_ratio = float(ratios[order[0]])
    best_witness = batch[order[0]].copy()

    for row in order:
        x = batch[row].copy()
        current = float(ratios_of(x[None, :], p, m)[0])
        for _ in range(max_passes):
            improved = False
            for i in range(dim):
                keep = x[i]
                for mul in (-1.0, 1j, -1j):
                    x[i] = keep * mul
                    trial = float(ratios_of(x[None, :], p, m)[0])
                    if trial > current * (1.0 + 1e-14):
                        current = trial
                        keep = x[i]
                        improved = True
                x[i] = keep
            if not improved:
                break
        if current > best_ratio:
            best_ratio = current
            best_witness = x.copy()

    return ConstantProbe(
        inequality=inequality,
        p=p,
        m=m,
        best_ratio=best_ratio,
        witness=best_witness,
        trials=trials,
        seed=seed,
    )


def random_explicit_symbol(rng: np.random.Generator, count: int) -> ExplicitSymbol:
    """Seeded random explicit symbol (zero tail); handy for probes and tests."""
    prefix = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    return ExplicitSymbol(prefix, "zero")
