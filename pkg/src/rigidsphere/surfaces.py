"""
Defining functions of rigid spheres and their normal-form expansions.

The universal equation is

    (1 - 4 phi |z|^2) S(v) - e^{-2 theta v} |z|^2
        - (phi - conj(a) z - a conj(z) + 4 phi (phi - theta) |z|^2) Kv(v) = 0

with ``S(v) = sin(2 r v) / (2 r)`` and
``Kv(v) = (e^{-2 theta v} - cos 2rv + theta sin(2rv)/r) / (r^2 + theta^2)``.
Both are entire in ``r^2`` and ``theta``; near the removable singularities we
switch to their Taylor coefficients, which are polynomials in ``r^2`` and
``theta``.

This is the sphere equation ``Im W = |Z|^2`` pulled back by the twisted
Stanton map and cleared of denominators; for parameters coming from
Stanton's family it equals ``|1 - 2i conj(b) z|^2`` times Stanton's own
defining function.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .parameters import NormalFormCoeffs, StantonParams, TwistParams
from .series import MultiSeries, exp_series, log_series, solve_implicit

__all__ = [
    "KernelEval",
    "SurfaceSeries",
    "SurfaceShapeError",
    "PoleError",
    "NewtonError",
    "sinc2",
    "kernel_Kw",
    "kernel_Kv",
    "kernel_coefficients",
    "defining_value",
    "stanton_defining_value",
    "solve_v",
    "defining_series",
    "expand_surface",
    "extract_coeffs",
    "tube_h",
    "circular_surface",
]

_MAX_TERMS = 400


class SurfaceShapeError(ValueError):
    """A series is not of the expected normal-form shape."""


class PoleError(ZeroDivisionError):
    """A denominator of Stanton's formula vanishes at the evaluation point."""


class NewtonError(RuntimeError):
    """Newton iteration for the graph of a surface failed to converge."""


# ----------------------------------------------------------------------
# kernels
def _factorial(m: int) -> np.longdouble:
    return np.longdouble(math.factorial(m))


def _divided_differences(x: float, y: float, n_max: int) -> list[float]:
    """``g_n = (x^n - y^n) / (x - y)`` for ``n = 0..n_max``, as polynomials."""
    x, y = np.longdouble(x), np.longdouble(y)
    g = [np.longdouble(0), np.longdouble(1)]
    ypow = np.longdouble(1)
    for _ in range(2, n_max + 1):
        ypow *= y
        g.append(x * g[-1] + ypow)
    return g[: n_max + 1]


def kernel_coefficients(r2: float, theta: float, order: int) -> np.ndarray:
    """Taylor coefficients of ``(cosh rw - e^{i theta w} + i theta sinh(rw)/r) / (r^2 + theta^2)``.

    Index ``m`` holds the coefficient of ``w**m``.
    """
    n_max = order // 2 + 1
    th = np.longdouble(theta)
    g = _divided_differences(r2, -th * th, n_max)
    out = np.zeros(order + 1, dtype=np.clongdouble)
    for m in range(2, order + 1):
        n = m // 2
        if m % 2 == 0:
            out[m] = g[n] / _factorial(m)
        else:
            out[m] = 1j * th * g[n] / _factorial(m)
    return out


@dataclass(frozen=True)
class KernelEval:
    """Evaluator for the two removable-singularity kernels.

    ``mode`` is ``"direct"``, ``"series"`` or ``"auto"``; in auto mode the
    series is used when ``|r^2 + theta^2| < threshold * (1 + |w|)^-2``.
    """

    r2: float
    theta: float
    mode: Literal["auto", "direct", "series"] = "auto"
    threshold: float = 0.1

    def use_series(self, w: complex) -> bool:
        if self.mode != "auto":
            return self.mode == "series"
        return abs(self.r2 + self.theta ** 2) < self.threshold * (1.0 + abs(w)) ** -2

    def Kw(self, w: complex) -> complex:
        return kernel_Kw(self, w)

    def Kv(self, v: complex) -> complex:
        return kernel_Kv(self, v)


def _sinh_over_r(r2: float, w: complex) -> complex:
    if r2 == 0:
        return complex(w)
    r = cmath.sqrt(r2)
    return cmath.sinh(r * w) / r


def _kw_series(r2: float, theta: float, w: complex) -> complex:
    y = -theta * theta
    g = 1.0  # g_1
    ypow = 1.0
    total = 0j
    w = complex(w)
    term_even = w * w / 2.0  # w^{2n}/(2n)!
    small = 0
    for n in range(1, _MAX_TERMS):
        term = g * term_even * (1.0 + 1j * theta * w / (2 * n + 1))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        ypow *= y
        g = r2 * g + ypow
        term_even *= w * w / ((2 * n + 1) * (2 * n + 2))
    return total


def kernel_Kw(k: KernelEval, w: complex) -> complex:
    """``(cosh rw - e^{i theta w} + i theta sinh(rw)/r) / (r^2 + theta^2)``, entire in ``(r^2, theta, w)``."""
    if k.use_series(w):
        return _kw_series(k.r2, k.theta, w)
    r = cmath.sqrt(k.r2)
    num = cmath.cosh(r * w) - cmath.exp(1j * k.theta * w) + 1j * k.theta * _sinh_over_r(k.r2, w)
    return num / (k.r2 + k.theta ** 2)


def kernel_Kv(k: KernelEval, v: complex) -> complex:
    """``(e^{-2 theta v} - cos 2rv + theta sin(2rv)/r) / (r^2 + theta^2)``.

    Equal to ``-Kw(2 i v)``; real for real ``v``.
    """
    if k.use_series(2.0 * v):
        return -_kw_series(k.r2, k.theta, 2j * v)
    r = cmath.sqrt(k.r2)
    sin_over_r = 2.0 * sinc2(k.r2, v)
    num = cmath.exp(-2.0 * k.theta * v) - cmath.cos(2.0 * r * v) + k.theta * sin_over_r
    return num / (k.r2 + k.theta ** 2)


def kv_coefficients(r2: float, theta: float, order: int) -> np.ndarray:
    kw = kernel_coefficients(r2, theta, order)
    return np.array([-(2j) ** m * kw[m] for m in range(order + 1)], dtype=np.clongdouble)


def sinc2_coefficients(r2: float, order: int) -> np.ndarray:
    """Taylor coefficients of ``sin(2 r v) / (2 r)`` in ``v``."""
    out = np.zeros(order + 1, dtype=np.longdouble)
    for n in range((order - 1) // 2 + 1):
        out[2 * n + 1] = (-4 * np.longdouble(r2)) ** n / _factorial(2 * n + 1)
    return out


def sinc2(r2: float, v: complex):
    """``sin(2 r v) / (2 r)`` with ``r = sqrt(r2)``; ``sinh`` for ``r2 < 0``, ``v`` at ``r2 = 0``."""
    x = r2 * (v * v) if not isinstance(v, complex) else r2 * abs(v) ** 2
    if abs(x) < 1e-3:
        # sum (-r2)^n (2v)^{2n+1} / (2 (2n+1)!)
        term = v
        total = term
        for n in range(1, 12):
            term = term * (-4.0 * r2 * v * v) / ((2 * n) * (2 * n + 1))
            total = total + term
        return total
    if r2 > 0:
        r = math.sqrt(r2)
        if isinstance(v, complex):
            return cmath.sin(2 * r * v) / (2 * r)
        return math.sin(2 * r * v) / (2 * r)
    r = math.sqrt(-r2)
    if isinstance(v, complex):
        return cmath.sinh(2 * r * v) / (2 * r)
    return math.sinh(2 * r * v) / (2 * r)


# ----------------------------------------------------------------------
# pointwise defining functions
def _universal_lhs(t: TwistParams, z: complex, v: complex) -> complex:
    z = complex(z)
    zz = abs(z) ** 2
    k = KernelEval(t.r2, t.theta)
    linear = t.phi - 2.0 * (t.a.conjugate() * z).real + 4.0 * t.phi * (t.phi - t.theta) * zz
    return (
        (1.0 - 4.0 * t.phi * zz) * sinc2(t.r2, v)
        - cmath.exp(-2.0 * t.theta * v) * zz
        - linear * kernel_Kv(k, v)
    )


def defining_value(t: TwistParams, z: complex, v: float) -> float:
    """Left-hand side of the universal rigid-sphere equation at ``(z, v)``."""
    return _universal_lhs(t, z, float(v)).real


def stanton_defining_value(s: StantonParams, z: complex, v: float) -> float:
    """Left minus right side of Stanton's equation for the family ``(b, c)``."""
    s.require_nonzero_c()
    z = complex(z)
    b, r, th = s.b, s.r, s.theta
    c = s.c
    bb = abs(b) ** 2
    cc = abs(c) ** 2
    zz = abs(z) ** 2
    left_factor = 1.0 - 2.0 * b.conjugate() * z * 1j
    right_factor = 1.0 + 2.0j * b * z.conjugate()
    if abs(left_factor) < 1e-14:
        raise PoleError("1 - 2i conj(b) z vanishes (and with it 1 + 2i b conj(z))")
    e = math.exp(-2.0 * th * v)
    lhs = sinc2(r * r, v) * (1.0 - 2.0 * bb * th / cc)
    rhs = (
        zz * e / (left_factor * right_factor)
        + (bb / cc) * (e - math.cos(2.0 * r * v))
        + b.conjugate() * z / (c.conjugate() * left_factor) * (e - cmath.exp(2j * r * v))
        + b * z.conjugate() / (c * right_factor) * (e - cmath.exp(-2j * r * v))
    )
    return (lhs - rhs).real


def solve_v(t: TwistParams, z: complex, radius: float = 0.5, tol: float = 1e-12,
            max_iter: int = 50) -> float:
    """Height ``v`` of the rigid sphere above ``z``, by Newton from ``v = |z|^2``."""
    z = complex(z)
    if abs(z) > radius:
        raise ValueError(f"|z| = {abs(z):.3g} exceeds the sampling radius {radius}")
    v = abs(z) ** 2
    h = 1e-30
    for _ in range(max_iter):
        # complex-step derivative; the function is real-analytic in v
        val = _universal_lhs(t, z, complex(v, h))
        f, df = val.real, val.imag / h
        if abs(f) < tol:
            return v
        if df == 0:
            break
        v -= f / df
    if abs(_universal_lhs(t, z, v).real) < tol:
        return v
    raise NewtonError(f"no convergence for z = {z} after {max_iter} iterations")


# ----------------------------------------------------------------------
# series expansions
@dataclass(frozen=True)
class SurfaceSeries:
    """A rigid surface ``v = V(z, zbar)`` together with where it came from."""

    V: MultiSeries
    source: dict = field(default_factory=dict)

    def coeff(self, j: int, k: int) -> complex:
        return self.V.coeff(z=j, zbar=k)

    def check(self, tol: float = 1e-9) -> bool:
        V = self.V
        lower = [(0, 0), (1, 0), (0, 1), (2, 0), (0, 2)]
        return (
            V.is_hermitian(tol)
            and all(abs(V.coeff(z=j, zbar=k)) <= tol for j, k in lower)
            and abs(V.coeff(z=1, zbar=1) - 1.0) <= tol
        )


def _refined(t: TwistParams):
    """``(phi, theta, r2)`` in extended precision.

    Parameters within ``1e-9`` of the algebraic set are pulled back onto it
    by Newton steps on the cubic, so the series sees an exactly consistent
    parameter set; anything further off is used as given.
    """
    phi, theta, r2 = (np.longdouble(x) for x in (t.phi, t.theta, t.r2))
    if not t.check(1e-9):
        return phi, theta, r2
    tau, rho = np.longdouble(t.tau), np.longdouble(t.rho)
    a2 = np.longdouble(t.a.real) ** 2 + np.longdouble(t.a.imag) ** 2
    for _ in range(3):
        f = ((4 * phi + 4 * tau) * phi + (tau * tau - rho)) * phi - a2
        df = (12 * phi + 8 * tau) * phi + (tau * tau - rho)
        if df == 0:
            break
        step = f / df
        if not abs(step) <= 1e-6 * max(1, abs(phi)):
            break
        phi -= step
    return phi, tau + 3 * phi, -rho + (2 * tau + 3 * phi) * phi


def defining_series(t: TwistParams, cap: int) -> MultiSeries:
    """The universal defining function as a series in ``(z, zbar, v)``."""
    vars = ("z", "zbar", "v")
    z = MultiSeries.var("z", cap, vars)
    zb = MultiSeries.var("zbar", cap, vars)
    zz = z * zb

    def in_v(coefficients):
        terms = {(0, 0, m): c for m, c in enumerate(coefficients)}
        return MultiSeries.from_terms(vars, cap, terms)

    phi, theta, r2 = _refined(t)
    a = np.clongdouble(t.a)
    S = in_v(sinc2_coefficients(r2, cap))
    E = in_v([(-2 * theta) ** m / _factorial(m) for m in range(cap + 1)])
    K = in_v(kv_coefficients(r2, theta, cap))
    linear = phi - np.conj(a) * z - a * zb + 4 * phi * (phi - theta) * zz
    return (1 - 4 * phi * zz) * S - E * zz - linear * K


def expand_surface(t: TwistParams, cap: int = 10) -> SurfaceSeries:
    """Graph ``v = V(z, zbar)`` of the universal rigid sphere, up to total degree ``cap``."""
    F = defining_series(t, cap)
    zz = MultiSeries.var("z", cap, ("z", "zbar")) * MultiSeries.var("zbar", cap, ("z", "zbar"))
    V = solve_implicit(F, zz, var="v")
    return SurfaceSeries(V, {"kind": "twist", **t.to_dict()})


def extract_coeffs(S: SurfaceSeries | MultiSeries, tol: float = 1e-8) -> NormalFormCoeffs:
    """Read ``(c22, c23, c33)`` off a normal-form surface series."""
    V = S.V if isinstance(S, SurfaceSeries) else S
    if V.cap < 6:
        raise SurfaceShapeError(f"need cap >= 6 to read c33, got {V.cap}")
    c22 = V.coeff(z=2, zbar=2)
    c23 = V.coeff(z=2, zbar=3)
    c32 = V.coeff(z=3, zbar=2)
    c33 = V.coeff(z=3, zbar=3)
    if abs(V.coeff(z=1, zbar=1) - 1.0) > tol:
        raise SurfaceShapeError("coefficient of z*zbar is not 1")
    for name, c in (("c22", c22), ("c33", c33)):
        if abs(c.imag) > tol * max(1.0, abs(c)):
            raise SurfaceShapeError(f"{name} = {c} is not real")
    if abs(c32 - c23.conjugate()) > tol * max(1.0, abs(c23)):
        raise SurfaceShapeError(f"c32 = {c32} is not the conjugate of c23 = {c23}")
    return NormalFormCoeffs(c22.real, c23, c33.real)


# ----------------------------------------------------------------------
# tubes and circular surfaces
TubeKind = Literal["parabola", "exponential", "cos", "cosh"]


def tube_h(kind: TubeKind, cap: int = 12) -> MultiSeries:
    """Series in ``x`` of the tube profile ``h`` with ``v = h(x)``."""
    if kind == "parabola":
        return MultiSeries.univariate("x", [0.0, 0.0, 0.5], cap)
    if kind == "exponential":
        return MultiSeries.univariate("x", [1.0 / math.factorial(k) for k in range(cap + 1)], cap)
    cos_coeffs = [((-1) ** (k // 2)) / math.factorial(k) if k % 2 == 0 else 0.0 for k in range(cap + 1)]
    if kind == "cos":
        return -log_series(MultiSeries.univariate("x", cos_coeffs, cap))
    if kind == "cosh":
        cosh_coeffs = [abs(c) for c in cos_coeffs]
        return log_series(MultiSeries.univariate("x", cosh_coeffs, cap))
    raise ValueError(f"unknown tube kind {kind!r}")


def circular_surface(alpha2: float, beta: float, family: Literal["sin", "sinh"] = "sin",
                     cap: int = 10) -> MultiSeries:
    """``v = h(t)``, ``t = |z|^2``, on ``sin(alpha v)/alpha = e^{-2 beta v} t`` (or ``sinh``).

    Entire in ``alpha2 = alpha**2``; the sinh family is the sin family at ``-alpha2``.
    """
    if family not in ("sin", "sinh"):
        raise ValueError(f"family must be 'sin' or 'sinh', not {family!r}")
    sign = -1.0 if family == "sin" else 1.0
    vars = ("t", "v")
    odd = {(0, 2 * n + 1): (sign * alpha2) ** n / math.factorial(2 * n + 1)
           for n in range(cap // 2 + 1)}
    lhs = MultiSeries.from_terms(vars, cap, odd)
    v = MultiSeries.var("v", cap, vars)
    t = MultiSeries.var("t", cap, vars)
    F = lhs - exp_series(-2.0 * beta * v) * t
    return solve_implicit(F, MultiSeries.var("t", cap), var="v")
