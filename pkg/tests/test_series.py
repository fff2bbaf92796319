import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rigidsphere.series import (
    MultiSeries,
    SeriesError,
    allclose,
    compose,
    differentiate,
    exp_series,
    integrate,
    log_series,
    power_series,
    recip_series,
    solve_implicit,
    sqrt_series,
)

ZZB = ("z", "zbar")


def var(name, cap=6, vars=ZZB):
    return MultiSeries.var(name, cap, vars)


def test_add_examples():
    z, zb = var("z"), var("zbar")
    s = z + zb
    assert s.coeff(z=1) == 1 and s.coeff(zbar=1) == 1
    assert allclose(s + 0, s)
    assert allclose((1 + z) + (1 - z), MultiSeries.const(2, ZZB, 6))


def test_mul_examples():
    z, zb = var("z", 2), var("zbar", 2)
    assert allclose((1 + z) * (1 - z), 1 - z * z)
    assert (1 - z * z).coeff(z=2) == -1
    sq = (z + zb) ** 2
    assert sq.coeff(z=2) == 1 and sq.coeff(z=1, zbar=1) == 2 and sq.coeff(zbar=2) == 1


def test_mul_truncates_to_min_cap():
    a = var("z", 3)
    b = var("z", 5)
    assert (a * b).cap == 3
    assert (a ** 4).max_abs() == 0


def test_differentiate_examples():
    z, zb = var("z"), var("zbar")
    d = differentiate(z * z * zb, "z")
    assert d.cap == 5
    assert d.coeff(z=1, zbar=1) == 2
    assert differentiate(MultiSeries.const(3, ZZB, 4), "z").max_abs() == 0
    t = differentiate(differentiate(z ** 2 * zb ** 2, "z"), "zbar")
    assert t.coeff(z=1, zbar=1) == 4


def test_differentiate_unknown_var():
    with pytest.raises(SeriesError):
        differentiate(var("z"), "w")


def test_integrate_inverts_differentiate():
    s = MultiSeries.univariate("u", [1, 2, 3, 4], 6)
    assert allclose(differentiate(integrate(s, "u"), "u"), s)


def test_incompatible_vars():
    with pytest.raises(SeriesError):
        MultiSeries.var("z", 3, ("z", "w")) + MultiSeries.var("u", 3)


def test_compose_examples():
    exp1 = exp_series(MultiSeries.var("t", 8))
    assert allclose(compose(exp1, {"t": MultiSeries(("z",), 8)}), MultiSeries.const(1, ("z",), 8))
    zw = ("z", "w")
    z2 = MultiSeries.var("z", 4, zw) ** 2
    out = compose(z2, {"z": MultiSeries.var("z", 4, zw) + MultiSeries.var("w", 4, zw)})
    assert out.coeff(z=2) == 1 and out.coeff(z=1, w=1) == 2 and out.coeff(w=2) == 1


def test_compose_rejects_unit_into_series():
    exp1 = exp_series(MultiSeries.var("t", 6))
    with pytest.raises(SeriesError):
        compose(exp1, {"t": 1 + MultiSeries.var("z", 6)})


def test_compose_polynomial_shift():
    p = MultiSeries.univariate("t", [0, 0, 1], 4)
    out = compose(p, {"t": 1 + MultiSeries.var("z", 4)}, polynomial=True)
    assert allclose(out, MultiSeries.univariate("z", [1, 2, 1], 4))


def test_elementary_examples():
    zero = MultiSeries(ZZB, 6)
    assert allclose(exp_series(zero), MultiSeries.const(1, ZZB, 6))
    one = MultiSeries.const(1, ZZB, 6)
    assert allclose(sqrt_series(one), one)
    z, zb = var("z", 8), var("zbar", 8)
    geo = recip_series(1 - 2j * zb * z) * z
    for k in range(4):
        assert abs(geo.coeff(z=k + 1, zbar=k) - (2j) ** k) < 1e-14


def test_elementary_errors():
    z = var("z")
    for f in (log_series, sqrt_series, recip_series):
        with pytest.raises(SeriesError):
            f(z)


def test_log_of_constant_and_branch():
    s = MultiSeries.const(-1, ("u",), 3)
    assert abs(log_series(s).constant - 1j * math.pi) < 1e-15
    u = MultiSeries.var("u", 8)
    assert abs(power_series(4 + 4 * u, 1.5).constant - 8) < 1e-14


def test_exp_log_univariate_known_coefficients():
    u = MultiSeries.var("u", 10)
    e = exp_series(u)
    for k in range(11):
        assert abs(e.coeff(u=k) - 1 / math.factorial(k)) < 1e-16
    lg = log_series(1 + u)
    for k in range(1, 11):
        assert abs(lg.coeff(u=k) - (-1) ** (k + 1) / k) < 1e-15


def test_solve_implicit_examples():
    vars = ("z", "zbar", "v")
    zz = var("z", 6, vars) * var("zbar", 6, vars)
    F = MultiSeries.var("v", 6, vars) - zz
    V = solve_implicit(F, var("z", 6) * var("zbar", 6))
    assert allclose(V, var("z", 6) * var("zbar", 6))


def test_solve_implicit_degenerate():
    vars = ("z", "v")
    F = MultiSeries.var("v", 4, vars) ** 2 - MultiSeries.var("z", 4, vars)
    with pytest.raises(SeriesError):
        solve_implicit(F, MultiSeries(("z",), 4))


def test_solve_implicit_nonzero_start():
    # v^2 + v - 2 - z = 0 near v = 1
    vars = ("z", "v")
    v = MultiSeries.var("v", 6, vars)
    F = v * v + v - 2 - MultiSeries.var("z", 6, vars)
    V = solve_implicit(F, MultiSeries.const(1, ("z",), 6))
    check = V * V + V - 2 - var("z", 6, ("z",))
    assert check.max_abs() < 1e-13
    assert abs(V.constant - 1) < 1e-15


def test_json_roundtrip_and_format():
    s = (var("z") + 2j * var("zbar")) ** 3
    obj = json.loads(s.to_json())
    assert obj["vars"] == ["z", "zbar"] and obj["cap"] == 6
    assert {"deg", "re", "im"} <= set(obj["coeffs"][0])
    back = MultiSeries.from_json(s.to_json())
    assert back.vars == s.vars and back.cap == s.cap
    assert np.array_equal(np.asarray(back.coeffs, dtype=complex), np.asarray(s.coeffs, dtype=complex))


def test_hermitian_predicate():
    z, zb = var("z"), var("zbar")
    assert (z * zb + 1j * z - 1j * zb).is_hermitian()
    assert not (1j * z).is_hermitian()


def test_immutable():
    s = var("z")
    with pytest.raises(AttributeError):
        s.cap = 3
    with pytest.raises(ValueError):
        s.coeffs[0, 0] = 1


# ----------------------------------------------------------------------
# property tests
VARSETS = [("z",), ("z", "zbar"), ("z", "zbar", "v")]


@st.composite
def series(draw, vars=None, cap=None, const=None):
    vars = vars or draw(st.sampled_from(VARSETS))
    cap = cap if cap is not None else draw(st.integers(0, 6))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = np.random.default_rng(seed)
    shape = (cap + 1,) * len(vars)
    arr = rng.uniform(-1, 1, shape) + 1j * rng.uniform(-1, 1, shape)
    if const is not None:
        arr[(0,) * len(vars)] = const
    return MultiSeries(vars, cap, arr)


@st.composite
def series_triple(draw):
    vars = draw(st.sampled_from(VARSETS))
    cap = draw(st.integers(0, 6))
    return tuple(draw(series(vars=vars, cap=cap)) for _ in range(3))


@settings(max_examples=60, deadline=None)
@given(series_triple())
def test_ring_laws(abc):
    a, b, c = abc
    assert allclose(a + b, b + a, 1e-12)
    assert allclose((a + b) + c, a + (b + c), 1e-12)
    assert allclose(a * b, b * a, 1e-12)
    assert allclose((a * b) * c, a * (b * c), 1e-12)
    assert allclose(a * (b + c), a * b + a * c, 1e-12)


@settings(max_examples=60, deadline=None)
@given(series(const=0.0))
def test_exp_log_inverse(s):
    one_plus = 1 + s
    assert allclose(exp_series(log_series(one_plus)), one_plus, 1e-12)
    assert allclose(log_series(exp_series(s)), s, 1e-12)


@settings(max_examples=60, deadline=None)
@given(series(const=0.0))
def test_sqrt_squares_back(s):
    r = sqrt_series(1 + s)
    assert allclose(r * r, 1 + s, 1e-12)


@settings(max_examples=60, deadline=None)
@given(series(const=1.5 - 0.5j))
def test_recip(s):
    assert allclose(s * recip_series(s), MultiSeries.const(1, s.vars, s.cap), 1e-12)


@settings(max_examples=60, deadline=None)
@given(series_triple())
def test_leibniz(abc):
    a, b, _ = abc
    var_ = a.vars[0]
    lhs = differentiate(a * b, var_)
    rhs = differentiate(a, var_) * b.truncate(a.cap - 1 if a.cap else 0) + a.truncate(max(a.cap - 1, 0)) * differentiate(b, var_)
    assert allclose(lhs, rhs, 1e-12)


@settings(max_examples=40, deadline=None)
@given(series(vars=("z", "zbar", "v"), cap=6, const=0.0), st.floats(0.5, 2.0))
def test_solve_implicit_residual(G, slope):
    vars = ("z", "zbar", "v")
    F = slope * MultiSeries.var("v", 6, vars) + 0.3 * G
    # dF/dv(0) must stay away from zero
    if abs(differentiate(F, "v").constant) < 0.2:
        return
    V = solve_implicit(F, MultiSeries(("z", "zbar"), 6))
    res = compose(F, {"v": V})
    assert res.max_abs() < 1e-10


@settings(max_examples=40, deadline=None)
@given(series(vars=("z", "zbar"), cap=5), series(vars=("z", "zbar"), cap=5))
def test_hermitian_closed(a, b):
    ha, hb = a + a.bar(), b + b.bar()
    assert (ha + hb).is_hermitian(1e-12)
    assert (ha * hb).is_hermitian(1e-12)


@settings(max_examples=30, deadline=None)
@given(series(vars=("z", "zbar"), cap=5))
def test_hermitian_solve_implicit(a):
    vars = ("z", "zbar", "v")
    h = (a + a.bar()) * 0.1
    h = h - h.constant
    zz = var("z", 5, vars) * var("zbar", 5, vars)
    v = MultiSeries.var("v", 5, vars)
    F = v - zz - h.embed(vars) * v
    V = solve_implicit(F, var("z", 5) * var("zbar", 5))
    assert V.is_hermitian(1e-12)


@settings(max_examples=30, deadline=None)
@given(series())
def test_json_roundtrip_property(s):
    back = MultiSeries.from_json(s.to_json())
    assert allclose(back, s, 1e-15)
