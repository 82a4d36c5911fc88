"""Acceptance gate: one test per criterion, each at its stated tolerance.

Run with ``pytest -v tests/test_acceptance.py`` (add ``-s`` to see the
per-criterion report lines and the emitted growth curves).
"""

import math
import time
import warnings

import numpy as np
import pytest
import scipy.optimize

from walsh_lab import (
    AlternatingSymbol,
    GeometricSymbol,
    MultiplierMatrix,
    ReciprocalSymbol,
    Resolution,
    StepFunction,
    analysis,
    compose_check,
    constant_probe,
    fwht,
    lp_norm,
    lq_norm,
    multiplier_bound_check,
    opnorm,
    opnorm_upper_interpolated,
    random_explicit_symbol,
    resolvent_norm_l2,
    separation_distance,
    tail_norm,
    walsh_distance,
)
from walsh_lab.opnorm import _power_lower

INF = math.inf


def report(num: int, name: str, detail: str = ""):
    suffix = f"  [{detail}]" if detail else ""
    print(f"ACCEPTANCE {num:2d} {name}: PASS{suffix}")


def test_criterion_01_walsh_distance_lemma():
    res = Resolution(10)
    rng = np.random.default_rng(101)
    worst = 0.0
    pairs = 0
    while pairs < 200:
        n, m = (int(x) for x in rng.integers(0, 1024, 2))
        if n == m:
            continue
        pairs += 1
        for p in (1.0, 1.5, 2.0, 3.0, 10.0, INF):
            expect = 2.0 if p == INF else 2.0 ** (1.0 - 1.0 / p)
            worst = max(worst, abs(walsh_distance(n, m, p, res) - expect))
    assert worst <= 1e-12
    report(1, "Walsh distance lemma (200 pairs, 6 exponents)", f"max err {worst:.2e}")


def test_criterion_02_parseval_exactness():
    res = Resolution(10)
    rng = np.random.default_rng(102)
    worst = 0.0
    for _ in range(1000):
        f = StepFunction(res, rng.standard_normal(1024) + 1j * rng.standard_normal(1024))
        worst = max(worst, abs(lq_norm(analysis(f), 2.0) - lp_norm(f, 2.0)))
    assert worst <= 1e-12
    report(2, "Parseval / p=2 exactness (1000 random f, m=10)", f"max err {worst:.2e}")


def test_criterion_03_diagonal_spectrum_at_p2():
    res = Resolution(6)
    worst = 0.0
    for sym in (ReciprocalSymbol(), AlternatingSymbol(), GeometricSymbol(0.7)):
        eig = np.linalg.eigvals(MultiplierMatrix(sym, res).dense())
        want = sym.values(64)
        cost = np.abs(eig[:, None] - want[None, :])
        rows, cols = scipy.optimize.linear_sum_assignment(cost)
        worst = max(worst, float(cost[rows, cols].max()))
    assert worst <= 1e-10
    report(3, "dense eigensolve returns {a_n} (3 families, m=6)", f"max gap {worst:.2e}")


def test_criterion_04_resolvent_formula():
    rng = np.random.default_rng(104)
    rec = ReciprocalSymbol()
    res = Resolution(8)
    worst_product = 0.0
    worst_residual = 0.0
    done = 0
    while done < 100:
        lam = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        delta = rec.closure_distance(lam)
        if delta <= 0.05:
            continue
        done += 1
        worst_product = max(worst_product, abs(resolvent_norm_l2(rec, lam) * delta - 1.0))
        f = StepFunction(res, rng.standard_normal(256) + 1j * rng.standard_normal(256))
        worst_residual = max(worst_residual, compose_check(rec, lam, f))
    assert worst_product <= 1e-12
    assert worst_residual <= 1e-10
    report(
        4,
        "resolvent formula + two-sided inverse (100 shifts, m=8)",
        f"norm*gap err {worst_product:.2e}, residual {worst_residual:.2e}",
    )


def test_criterion_05_tail_norms_both_regimes():
    res = Resolution(6)
    rec = ReciprocalSymbol()
    cutoffs = [1, 3, 7, 15, 31]
    want = [1 / 3, 1 / 5, 1 / 9, 1 / 17, 1 / 33]
    worst = 0.0
    for regime in ((2.0, 2.0), (4.0, 2.0)):
        for cutoff, expect in zip(cutoffs, want):
            est, analytic = tail_norm(rec, cutoff, res, *regime)
            worst = max(worst, abs(est.value - expect), abs(analytic - expect))
    assert worst <= 1e-8
    report(5, "tail norms collapse to sup in (2,2) and (4,2)", f"max err {worst:.2e}")


def test_criterion_06_noncompactness_witness():
    res = Resolution(6)
    alt = AlternatingSymbol()
    for cutoff in (1, 3, 7, 15, 31):
        est, _ = tail_norm(alt, cutoff, res, 2.0, 2.0)
        assert abs(est.value - 1.0) <= 1e-12
    rng = np.random.default_rng(106)
    worst = 0.0
    done = 0
    while done < 100:
        k, j = (int(x) for x in rng.integers(0, 64, 2))
        if k == j:
            continue
        done += 1
        p = float(rng.uniform(1.0, 10.0))
        measured, formula = separation_distance(alt, k, j, p, res)
        worst = max(worst, abs(measured - formula))
    assert worst <= 1e-12
    report(6, "non-compactness witness + separation identity", f"max err {worst:.2e}")


def test_criterion_07_opnorm_consistency():
    res = Resolution(6)
    rng = np.random.default_rng(107)
    worst = 0.0
    for k in range(20):
        sym = random_explicit_symbol(rng, 64)
        est = opnorm(sym, res, 2.0, 2.0)
        sup = float(np.abs(sym.values(64)).max())
        svd = float(np.linalg.svd(MultiplierMatrix(sym, res).dense(), compute_uv=False).max())
        worst = max(worst, abs(est.value - sup), abs(est.value - svd))
        diag = sym.values(64)
        for p in (1.5, 3.0):
            run = _power_lower(diag, 6, p, p, seed=k, want_history=True)
            upper = opnorm_upper_interpolated(sym, res, p).value
            assert run.value <= upper + 1e-10
            for hist in run.histories:
                assert all(b >= a - 1e-12 * (1.0 + abs(b)) for a, b in zip(hist, hist[1:]))
    assert worst <= 1e-10
    report(7, "opnorm: p=2 exact vs SVD, lower<=interpolated upper, monotone ratios", f"max p2 err {worst:.2e}")


def test_criterion_08_duality_symmetry():
    res = Resolution(6)
    rng = np.random.default_rng(108)
    worst = 0.0
    for k in range(10):
        sym = random_explicit_symbol(rng, 64)
        rep = multiplier_bound_check(sym, res, 1.5, seed=k)
        worst = max(worst, rep.duality_gap)
        assert rep.duality_gap <= 1e-6 * max(1.0, rep.estimate.value)
    report(8, "duality symmetry ||T_a||_p = ||T_conj(a)||_p' (10 symbols)", f"max gap {worst:.2e}")


def test_criterion_09_hausdorff_young_probe():
    worst = 0.0
    for m in (6, 8):
        for p in (1.25, 1.5, 2.0):
            probe = constant_probe("hy", p, Resolution(m), trials=10000, seed=109)
            worst = max(worst, probe.best_ratio)
            assert probe.best_ratio <= 1.0 + 1e-9
    curve = []
    for m in (4, 6, 8):
        probe = constant_probe("synthesis", 1.25, Resolution(m), trials=10000, seed=109)
        curve.append((m, probe.best_ratio))
    print("synthesis ratio growth (p=1.25):", ", ".join(f"m={m}: {r:.6f}" for m, r in curve))
    report(9, "analysis probe ceiling 1 + emitted synthesis growth curve", f"max hy ratio {worst:.12f}")


def test_criterion_10_performance_informational():
    rng = np.random.default_rng(110)
    best = []
    for lg in range(16, 21):
        v = rng.standard_normal(1 << lg)
        fwht(v)
        fwht(v)  # warm allocator and caches before timing
        samples = []
        for _ in range(7):
            t0 = time.perf_counter()
            fwht(v)
            samples.append(time.perf_counter() - t0)
        best.append(min(samples))
    ratios = [b / a for a, b in zip(best, best[1:])]
    big = best[-1]
    detail = f"ratios {['%.2f' % r for r in ratios]}, t(2^20) = {big * 1e3:.1f} ms"
    if max(ratios) > 2.5:
        warnings.warn(f"fwht scaling ratio above 2.5: {detail}")
    if big > 1.0:
        warnings.warn(f"fwht at 2^20 slower than 1 s: {detail}")
    report(10, "performance (warn-only informational gate)", detail)
