import numpy as np
import pytest

from walsh_lab import (
    AlternatingSymbol,
    ConstantSymbol,
    ExplicitSymbol,
    GeometricSymbol,
    MultiplierMatrix,
    ReciprocalSymbol,
    Resolution,
    StepFunction,
    UnitDiracSymbol,
    analysis,
    apply,
    compose_check,
    truncate,
    walsh_step,
)


def rand_step(rng, m):
    res = Resolution(m)
    return StepFunction(res, rng.standard_normal(res.dim) + 1j * rng.standard_normal(res.dim))


def test_constant_symbol_is_identity():
    rng = np.random.default_rng(0)
    f = rand_step(rng, 6)
    out = apply(ConstantSymbol(1.0), f)
    assert np.abs(out.values - f.values).max() < 1e-13


def test_unit_dirac_projects():
    res = Resolution(5)
    n0 = 7
    sym = UnitDiracSymbol(n0)
    w = walsh_step(n0, res)
    assert np.array_equal(apply(sym, w).values, w.values)
    other = walsh_step(12, res)
    assert np.abs(apply(sym, other).values).max() == 0.0


def test_reciprocal_scales_walsh_functions():
    res = Resolution(5)
    w4 = walsh_step(4, res)
    out = apply(ReciprocalSymbol(), w4)
    assert np.array_equal(out.values, w4.values / 5)


def test_diagonality_exact():
    res = Resolution(10)
    sym = GeometricSymbol(0.7)
    for n in (0, 1, 17, 513, 1023):
        coeffs = analysis(apply(sym, walsh_step(n, res))).coeffs
        want = np.zeros(res.dim, dtype=complex)
        want[n] = sym.value(n)
        assert np.array_equal(coeffs, want)


def test_linearity():
    rng = np.random.default_rng(1)
    f, g = rand_step(rng, 7), rand_step(rng, 7)
    sym = ExplicitSymbol(rng.standard_normal(128) + 1j * rng.standard_normal(128), "zero")
    a, b = 1.5 - 0.3j, -2.0 + 0.1j
    combo = StepFunction(f.resolution, a * f.values + b * g.values)
    lhs = apply(sym, combo).values
    rhs = a * apply(sym, f).values + b * apply(sym, g).values
    assert np.abs(lhs - rhs).max() < 1e-12


def test_composition_is_pointwise_product():
    rng = np.random.default_rng(2)
    f = rand_step(rng, 6)
    sa = GeometricSymbol(0.8)
    sb = ExplicitSymbol(rng.standard_normal(64), "zero")
    prod = ExplicitSymbol(sa.values(64) * sb.values(64), "zero")
    lhs = apply(sa, apply(sb, f)).values
    rhs = apply(prod, f).values
    assert np.abs(lhs - rhs).max() < 1e-12


def test_dense_matrix_matches_matvec():
    rng = np.random.default_rng(3)
    res = Resolution(5)
    sym = ExplicitSymbol(rng.standard_normal(32) + 1j * rng.standard_normal(32), "zero")
    mat = MultiplierMatrix(sym, res)
    v = rng.standard_normal(32) + 1j * rng.standard_normal(32)
    assert np.abs(mat.dense() @ v - mat.matvec(v)).max() < 1e-11
    # adjoint realization carries the conjugate symbol
    lhs = np.vdot(v, mat.matvec(v))
    rhs = np.vdot(mat.adjoint_matvec(v), v)
    assert abs(lhs - rhs) < 1e-11


def test_dense_matrix_refuses_large_resolutions():
    mat = MultiplierMatrix(ReciprocalSymbol(), Resolution(13))
    with pytest.raises(ValueError, match="m <= 12"):
        mat.dense()


def test_truncated_matrix_rank():
    rng = np.random.default_rng(4)
    res = Resolution(6)
    prefix = rng.standard_normal(8)
    prefix[2] = 0.0
    sym = ExplicitSymbol(prefix, "zero")
    cut = 5
    dense = MultiplierMatrix(truncate(sym, cut), res).dense()
    svals = np.linalg.svd(dense, compute_uv=False)
    rank = int((svals > 1e-10).sum())
    assert rank == int((np.abs(prefix[: cut + 1]) > 0).sum())


def test_compose_check_constant():
    rng = np.random.default_rng(5)
    f = rand_step(rng, 6)
    assert compose_check(ConstantSymbol(0.0), 1.0, f) < 1e-12


def test_compose_check_reciprocal_and_alternating():
    rng = np.random.default_rng(6)
    f = rand_step(rng, 8)
    assert compose_check(ReciprocalSymbol(), 2.0, f) < 1e-10
    assert compose_check(AlternatingSymbol(), 3.0, f) < 1e-10


def test_compose_check_propagates_gap_errors():
    rng = np.random.default_rng(7)
    f = rand_step(rng, 5)
    from walsh_lab import SpectralGapError

    with pytest.raises(SpectralGapError):
        compose_check(ReciprocalSymbol(), 0.25, f)


def test_adjoint_pairing_identity():
    rng = np.random.default_rng(8)
    res = Resolution(6)
    f, g = rand_step(rng, 6), rand_step(rng, 6)
    sym = ExplicitSymbol(rng.standard_normal(64) + 1j * rng.standard_normal(64), "zero")
    # integral pairing <u, v> = mean(u * conj(v))
    lhs = np.mean(apply(sym, f).values * np.conj(g.values))
    rhs = np.mean(f.values * np.conj(apply(sym.conjugate(), g).values))
    assert abs(lhs - rhs) < 1e-12
