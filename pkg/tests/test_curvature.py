import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rigidsphere.curvature import (
    circular_g,
    circular_residual,
    circular_series,
    curvature_residual,
    curvature_series,
    log_laplacian,
    reduced_residual,
    reduced_series,
    tube_in_z,
    verify_tube,
)
from rigidsphere.parameters import NormalFormCoeffs, coeffs_to_twist
from rigidsphere.series import MultiSeries, SeriesError, allclose, compose, differentiate, log_series
from rigidsphere.surfaces import circular_surface, expand_surface

ZZB = ("z", "zbar")


def var(name, cap=10):
    return MultiSeries.var(name, cap, ZZB)


def test_log_laplacian_examples():
    zz = var("z") * var("zbar")
    assert log_laplacian(zz).max_abs() == 0
    f = log_laplacian(zz + zz * zz)
    assert allclose(f, log_series(1 + 4 * zz).truncate(f.cap), 1e-14)
    x = MultiSeries.var("x", 10)
    e = tube_in_z(sum((x ** k) * (1 / math.factorial(k)) for k in range(11)))
    f = log_laplacian(e)
    # Laplacian of e^x is e^x / 4, so f = x - log 4
    assert abs(f.coeff(z=1) - 0.5) < 1e-14 and abs(f.coeff(zbar=1) - 0.5) < 1e-14
    assert abs(f.constant + math.log(4)) < 1e-14
    assert f.truncate(f.cap).homogeneous_norms()[2:].max() < 1e-14


def test_degenerate_levi_form():
    with pytest.raises(SeriesError):
        log_laplacian(var("z") ** 3 + var("zbar") ** 3)


def test_heisenberg_zero():
    rep = curvature_residual(MultiSeries(ZZB, 8))
    assert rep.spherical and rep.max_abs_residual_coefficient == 0 and rep.cap == 4


def test_non_spherical_detected():
    zz = var("z") * var("zbar")
    rep = curvature_residual(log_laplacian(zz + zz ** 3))
    assert not rep.spherical
    assert rep.verdict == f"nonzero_at_degree {rep.first_nonzero_degree}"
    assert rep.first_nonzero_degree is not None


@pytest.mark.parametrize("n", [NormalFormCoeffs(0, -2 * math.sqrt(2), -4),
                               NormalFormCoeffs(1.3, 0.7 - 2.1j, -3.2),
                               NormalFormCoeffs(-4.1, 3.3j, 4.9)])
def test_expanded_surfaces_spherical(n):
    for t in coeffs_to_twist(n):
        rep = curvature_residual(log_laplacian(expand_surface(t, 10).V), 1e-9)
        assert rep.spherical and rep.max_abs_residual_coefficient < 1e-8


def test_perturbed_surface_not_spherical():
    t = coeffs_to_twist(NormalFormCoeffs(1.0, 0.5, 2.0))[0]
    V = expand_surface(t, 10).V
    zz = MultiSeries.var("z", 10, ZZB) * MultiSeries.var("zbar", 10, ZZB)
    rep = curvature_residual(log_laplacian(V + 0.1 * zz ** 3))
    assert not rep.spherical


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.floats(-3, 3))
def test_constant_shift_invariance(seed, c):
    rng = np.random.default_rng(seed)
    arr = rng.uniform(-1, 1, (9, 9)) + 1j * rng.uniform(-1, 1, (9, 9))
    f = MultiSeries(ZZB, 8, arr)
    a = curvature_series(f)
    b = curvature_series(f + c)
    assert np.array_equal(np.asarray(a.coeffs), np.asarray(b.coeffs))


@pytest.mark.parametrize("n", [NormalFormCoeffs(0, -2 * math.sqrt(2), -4), NormalFormCoeffs(2.0, 1 + 1j, 0.5)])
def test_reduced_and_full_vanish_together(n):
    t = coeffs_to_twist(n)[0]
    f = log_laplacian(expand_surface(t, 10).V)
    ft = differentiate(f, "zbar")
    assert reduced_residual(ft).spherical and curvature_residual(f).spherical
    # the full residual is the zbar-derivative-free reduced residual evaluated on ftilde
    assert allclose(reduced_series(ft), curvature_series(f), 1e-10)


def test_reduced_tube_solutions():
    x = MultiSeries.var("x", 10)
    zero = MultiSeries(ZZB, 10)
    assert reduced_residual(zero).spherical
    assert reduced_residual(zero + 0.5).spherical
    # tan x and -tanh x, written as series in x = (z + zbar)/2
    tan = [0, 1, 0, 1 / 3, 0, 2 / 15, 0, 17 / 315, 0, 62 / 2835, 0]
    tanh = [c * (-1) ** (k // 2) for k, c in enumerate(tan)]
    for coeffs, sign in ((tan, 1), (tanh, -1)):
        ft = tube_in_z(sign * MultiSeries.univariate("x", coeffs, 10))
        assert reduced_residual(ft, 1e-12).spherical
    assert not reduced_residual(tube_in_z(x)).spherical


@pytest.mark.parametrize("kind", ["parabola", "exponential", "cos", "cosh"])
def test_tubes_spherical(kind):
    rep = verify_tube(kind, 12)
    assert rep.spherical and rep.max_abs_residual_coefficient < 1e-10


def test_circular_zero_and_errors():
    assert circular_residual(MultiSeries(("t",), 8)).max_abs_residual_coefficient == 0
    with pytest.raises(SeriesError):
        circular_residual(MultiSeries(ZZB, 8))


@pytest.mark.parametrize("family", ["sin", "sinh"])
@pytest.mark.parametrize("alpha2, beta", [(0.0, 0.0), (1.0, 0.0), (2.0, 0.5), (0.3, -0.6)])
def test_circular_families(family, alpha2, beta):
    g = circular_g(circular_surface(alpha2, beta, family, 12))
    assert circular_residual(g).spherical
    sign = 1 if family == "sin" else -1
    assert g.coeff(t=1) == pytest.approx(-8 * beta, abs=1e-12)
    assert g.coeff(t=2) == pytest.approx(sign * 1.5 * alpha2 + 22 * beta ** 2, abs=1e-12)


def test_circular_ode_rejects_generic_start():
    # two free coefficients determine the rest; a wrong third coefficient is detected
    g = circular_g(circular_surface(1.0, 0.2, "sin", 10))
    bad = g + 0.01 * MultiSeries.var("t", 10) ** 3
    assert not circular_residual(bad).spherical


@pytest.mark.parametrize("alpha2, beta, family", [(1.0, 0.3, "sin"), (0.5, -0.4, "sinh")])
def test_circular_consistent_with_full(alpha2, beta, family):
    h = circular_surface(alpha2, beta, family, 10)
    zz = var("z") * var("zbar")
    H = compose(h, {"t": zz})
    full = curvature_residual(log_laplacian(H))
    circ = circular_residual(circular_g(h))
    assert full.spherical and circ.spherical
    bumped = h + 0.05 * MultiSeries.var("t", 10) ** 3
    assert not curvature_residual(log_laplacian(compose(bumped, {"t": zz}))).spherical
    assert not circular_residual(circular_g(bumped)).spherical


def test_circular_series_shape():
    g = MultiSeries.var("t", 8)
    assert circular_series(g).cap == 4
