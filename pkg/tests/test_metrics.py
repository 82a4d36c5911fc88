import math

import numpy as np
import pytest

from walsh_lab import (
    CoeffVector,
    Resolution,
    StepFunction,
    analysis,
    dual_exponent,
    hy_ratio,
    lp_norm,
    lq_norm,
    synthesis_ratio,
    walsh_distance,
    walsh_step,
)

INF = math.inf


def test_dual_exponent_pairs():
    assert dual_exponent(1.0) == INF
    assert dual_exponent(INF) == 1.0
    assert dual_exponent(2.0) == 2.0
    assert abs(dual_exponent(1.5) - 3.0) < 1e-15
    with pytest.raises(ValueError):
        dual_exponent(0.5)


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0, 10.0, INF])
def test_walsh_functions_are_norm_one(p):
    res = Resolution(5)
    assert abs(lp_norm(walsh_step(13, res), p) - 1.0) < 1e-14


def test_difference_norms_from_the_two_level_structure():
    res = Resolution(2)
    f = StepFunction(res, walsh_step(1, res).values - walsh_step(2, res).values)
    assert abs(lp_norm(f, 2.0) - math.sqrt(2)) < 1e-14
    assert abs(lp_norm(f, 1.0) - 1.0) < 1e-14
    assert lp_norm(f, INF) == 2.0


def test_lp_norm_rejects_bad_exponent():
    with pytest.raises(ValueError):
        lp_norm(StepFunction(Resolution(1), [1, 1]), 0.9)


def test_lq_norm_basics():
    res = Resolution(2)
    e2 = np.zeros(4)
    e2[2] = 1
    for q in (1.0, 2.0, 7.0, INF):
        assert lq_norm(CoeffVector(res, e2), q) == 1.0
    assert lq_norm(CoeffVector(res, np.ones(4)), 2.0) == 2.0


def test_lq_of_analysis_is_parseval():
    rng = np.random.default_rng(0)
    res = Resolution(8)
    f = StepFunction(res, rng.standard_normal(256) + 1j * rng.standard_normal(256))
    assert abs(lq_norm(analysis(f), 2.0) - lp_norm(f, 2.0)) < 1e-12


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0, 10.0, INF])
def test_walsh_distance_lemma(p):
    res = Resolution(10)
    rng = np.random.default_rng(1)
    expect = 2.0 if p == INF else 2.0 ** (1.0 - 1.0 / p)
    for _ in range(25):
        n, m = rng.integers(0, 1024, 2)
        if n == m:
            continue
        assert abs(walsh_distance(int(n), int(m), p, res) - expect) < 1e-12


def test_walsh_distance_specific_values():
    res = Resolution(4)
    assert abs(walsh_distance(3, 7, 2.0, res) - math.sqrt(2)) < 1e-14
    assert walsh_distance(1, 1, 3.7, res) == 0.0
    assert abs(walsh_distance(5, 9, 3.0, res) - 2.0 ** (2.0 / 3.0)) < 1e-14
    with pytest.raises(ValueError):
        walsh_distance(0, 16, 2.0, res)


def test_lp_monotone_in_p_on_probability_space():
    rng = np.random.default_rng(2)
    res = Resolution(7)
    f = StepFunction(res, rng.standard_normal(128) + 1j * rng.standard_normal(128))
    ps = [1.0, 1.3, 2.0, 4.0, 9.0, INF]
    vals = [lp_norm(f, p) for p in ps]
    assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))


def test_hy_ratio_trivial_inputs():
    res = Resolution(4)
    assert abs(hy_ratio(StepFunction(res, np.ones(16)), 1.5) - 1.0) < 1e-14
    assert abs(hy_ratio(walsh_step(9, res), 1.2) - 1.0) < 1e-14


def test_hy_ratio_is_one_at_p2():
    rng = np.random.default_rng(3)
    res = Resolution(6)
    for _ in range(10):
        f = StepFunction(res, rng.standard_normal(64) + 1j * rng.standard_normal(64))
        assert abs(hy_ratio(f, 2.0) - 1.0) < 1e-12


def test_hy_ratio_validation():
    res = Resolution(3)
    with pytest.raises(ValueError):
        hy_ratio(StepFunction(res, np.ones(8)), 2.5)
    with pytest.raises(ValueError, match="zero"):
        hy_ratio(StepFunction(res, np.zeros(8)), 1.5)


def test_synthesis_ratio_unit_vector():
    res = Resolution(4)
    e7 = np.zeros(16)
    e7[7] = 1
    assert abs(synthesis_ratio(CoeffVector(res, e7), 1.5) - 1.0) < 1e-14


def test_synthesis_ratio_two_coefficients():
    # c = (1, 1, 0, ...): the synthesized function has cell values (2, 0, ...)
    # and the ratio collapses to 1 for every 1 < p < 2.
    res = Resolution(3)
    c = np.zeros(8)
    c[0] = c[1] = 1
    for p in (1.25, 1.5, 1.75):
        assert abs(synthesis_ratio(CoeffVector(res, c), p) - 1.0) < 1e-14


def test_synthesis_ratio_validation():
    res = Resolution(3)
    with pytest.raises(ValueError):
        synthesis_ratio(CoeffVector(res, np.ones(8)), 2.0)
    with pytest.raises(ValueError, match="zero"):
        synthesis_ratio(CoeffVector(res, np.zeros(8)), 1.5)


def test_ratio_homogeneity():
    rng = np.random.default_rng(4)
    res = Resolution(6)
    f = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    lam = complex(rng.standard_normal(), rng.standard_normal()) * 2.3
    a = hy_ratio(StepFunction(res, f), 1.5)
    b = hy_ratio(StepFunction(res, lam * f), 1.5)
    assert abs(a - b) < 1e-12
    c = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    a = synthesis_ratio(CoeffVector(res, c), 1.25)
    b = synthesis_ratio(CoeffVector(res, lam * c), 1.25)
    assert abs(a - b) < 1e-12
