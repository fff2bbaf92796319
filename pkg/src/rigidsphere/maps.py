"""
Holomorphic map germs onto the Heisenberg sphere ``Im w = |z|^2`` and the
ODE systems they solve.

Map germs are :class:`MapJet` pairs ``(Z, W)`` of series in ``(z, w)``.
The flow system pulls ``d/dw`` back to an infinitesimal sphere
automorphism::

    dZ/dw = b + c Z + a W + 2i conj(a) Z^2 + rho Z W
    dW/dw = 1 + 2i conj(b) Z + 2 Re(c) W + 2i conj(a) Z W + rho W^2

Closed-form solutions (Stanton's linear case and the twisted map) are
compared with order-by-order integration; the modified normalization ODEs
for ``(alpha, p, h)`` are solved the same way.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .parameters import NormalFormCoeffs, StantonParams, TwistParams
from .series import (
    MultiSeries,
    SeriesError,
    compose,
    differentiate,
    exp_series,
    integrate,
    recip_series,
    solve_implicit,
    sqrt_series,
)
from .surfaces import KernelEval, SurfaceSeries, kernel_Kw, kernel_coefficients

__all__ = [
    "MapJet",
    "VectorFieldParams",
    "NormalizationData",
    "stanton_map",
    "twisted_map",
    "twisted_map_value",
    "twist_field",
    "system_residual",
    "integrate_system",
    "sphere_automorphism",
    "compose_maps",
    "sphere_pullback",
    "induced_surface",
    "normalization_ode_solve",
    "norm_residuals",
    "stanton_normalization_data",
    "normalization_map",
]

MAP_VARS = ("z", "w")


@dataclass(frozen=True)
class MapJet:
    Z: MultiSeries
    W: MultiSeries

    @property
    def cap(self) -> int:
        return min(self.Z.cap, self.W.cap)

    def restrict_w0(self) -> tuple[MultiSeries, MultiSeries]:
        """The slices ``Z(z, 0)`` and ``W(z, 0)``."""
        return self.Z.drop_var("w"), self.W.drop_var("w")

    def to_json_obj(self) -> dict:
        return {"Z": self.Z.to_json_obj(), "W": self.W.to_json_obj()}

    @classmethod
    def identity(cls, cap: int) -> "MapJet":
        return cls(MultiSeries.var("z", cap, MAP_VARS), MultiSeries.var("w", cap, MAP_VARS))


@dataclass(frozen=True)
class VectorFieldParams:
    """Coefficients ``(b, c, a, rho)`` of an infinitesimal automorphism of the sphere."""

    b: complex = 0j
    c: complex = 0j
    a: complex = 0j
    rho: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "rho", float(self.rho))


@dataclass(frozen=True)
class NormalizationData:
    alpha: MultiSeries
    p: MultiSeries
    h: MultiSeries
    q: MultiSeries


# ----------------------------------------------------------------------
# univariate helpers in w (or u)
def _in_w(coefficients, cap: int, vars=MAP_VARS) -> MultiSeries:
    k = vars.index("w")
    terms = {}
    for m, c in enumerate(coefficients[: cap + 1]):
        deg = [0] * len(vars)
        deg[k] = m
        terms[tuple(deg)] = c
    return MultiSeries.from_terms(vars, cap, terms)


def _exp_coeffs(lam: complex, cap: int) -> list[complex]:
    return [lam ** m / math.factorial(m) for m in range(cap + 1)]


def _expm1_over(lam: complex, cap: int) -> list[complex]:
    """Coefficients of ``(e^{lam w} - 1) / lam``, entire in ``lam``."""
    return [0j] + [lam ** (m - 1) / math.factorial(m) for m in range(1, cap + 1)]


def _cosh_coeffs(r2: float, cap: int) -> list[complex]:
    return [r2 ** (m // 2) / math.factorial(m) if m % 2 == 0 else 0.0 for m in range(cap + 1)]


def _sinh_over_r_coeffs(r2: float, cap: int) -> list[complex]:
    return [r2 ** (m // 2) / math.factorial(m) if m % 2 == 1 else 0.0 for m in range(cap + 1)]


# ----------------------------------------------------------------------
# closed-form maps
def stanton_map(s: StantonParams, cap: int = 8) -> MapJet:
    """Stanton's solution of the linear flow system (``a = rho = 0``)."""
    s.require_nonzero_c()
    b, c, r = s.b, s.c, s.r
    z = MultiSeries.var("z", cap, MAP_VARS)
    ecw = _in_w(_exp_coeffs(c, cap), cap)
    e2rw = _in_w(_exp_coeffs(2 * r, cap), cap)
    zeta = z * recip_series(1.0 - 2j * b.conjugate() * z)
    Z = b * _in_w(_expm1_over(c, cap), cap) + ecw * zeta
    W = (1.0 - 2j * abs(b) ** 2 / c) * _in_w(_expm1_over(2 * r, cap), cap) + (
        2j * b.conjugate() / c.conjugate()
    ) * (zeta + b / c) * (e2rw - ecw)
    return MapJet(Z, W)


def _twist_pieces(t: TwistParams):
    return t.theta, t.phi, t.a, t.a.conjugate()


def twisted_map(t: TwistParams, cap: int = 8) -> MapJet:
    """The twisted Stanton map ``(P1/Q, P2/Q)``, entire in all parameters."""
    th, ph, a, ab = _twist_pieces(t)
    z = MultiSeries.var("z", cap, MAP_VARS)
    K = _in_w(kernel_coefficients(t.r2, th, cap), cap)
    S = _in_w(_sinh_over_r_coeffs(t.r2, cap), cap)
    C = _in_w(_cosh_coeffs(t.r2, cap), cap)
    E = _in_w(_exp_coeffs(1j * th, cap), cap)
    P1 = (a + 4.0 * (th - ph) * ph * z) * K + (-2j * ph * S + E) * z
    P2 = 2j * (ph - ab * z) * K + S
    Q = 2.0 * (ph - th) * (ph - ab * z) * K + 1j * (ph - 2.0 * ab * z) * S + C
    Qinv = recip_series(Q)
    return MapJet(P1 * Qinv, P2 * Qinv)


def twisted_map_value(t: TwistParams, z: complex, w: complex) -> tuple[complex, complex]:
    """Pointwise ``(Z, W)`` of the twisted map."""
    th, ph, a, ab = _twist_pieces(t)
    K = kernel_Kw(KernelEval(t.r2, th), w)
    if t.r2 == 0:
        S, C = complex(w), 1.0 + 0j
    else:
        r = cmath.sqrt(t.r2)
        S, C = cmath.sinh(r * w) / r, cmath.cosh(r * w)
    P1 = (a + 4.0 * (th - ph) * ph * z) * K + (-2j * ph * S + cmath.exp(1j * th * w)) * z
    P2 = 2j * (ph - ab * z) * K + S
    Q = 2.0 * (ph - th) * (ph - ab * z) * K + 1j * (ph - 2.0 * ab * z) * S + C
    return P1 / Q, P2 / Q


def twist_field(t: TwistParams) -> VectorFieldParams:
    """The vector field the twisted map pulls ``d/dw`` back to."""
    return VectorFieldParams(b=0j, c=1j * t.tau, a=t.a, rho=t.rho)


def sphere_automorphism(b: complex, r: float, cap: int = 8) -> MapJet:
    """``(z - b w, w) / (1 + 2i conj(b) z + (r - i|b|^2) w)``."""
    b = complex(b)
    z = MultiSeries.var("z", cap, MAP_VARS)
    w = MultiSeries.var("w", cap, MAP_VARS)
    den = recip_series(1.0 + 2j * b.conjugate() * z + complex(r, -abs(b) ** 2) * w)
    return MapJet((z - b * w) * den, w * den)


def compose_maps(outer: MapJet, inner: MapJet) -> MapJet:
    """``outer o inner``; ``inner`` must fix the origin."""
    subs = {"z": inner.Z, "w": inner.W}
    return MapJet(compose(outer.Z, subs), compose(outer.W, subs))


# ----------------------------------------------------------------------
# the flow system
def system_residual(m: MapJet, v: VectorFieldParams) -> tuple[MultiSeries, MultiSeries]:
    """``dZ/dw - X_z(Z, W)`` and ``dW/dw - X_w(Z, W)``, to cap - 1."""
    Z, W = m.Z, m.W
    cap = m.cap - 1
    ab, bb = v.a.conjugate(), v.b.conjugate()
    rhs_z = v.b + v.c * Z + v.a * W + 2j * ab * Z * Z + v.rho * Z * W
    rhs_w = 1.0 + 2j * bb * Z + 2.0 * v.c.real * W + 2j * ab * Z * W + v.rho * W * W
    res_z = differentiate(Z, "w") - rhs_z.truncate(cap)
    res_w = differentiate(W, "w") - rhs_w.truncate(cap)
    return res_z, res_w


def integrate_system(v: VectorFieldParams, Z0: MultiSeries, cap: int = 8,
                     iterations: int | None = None) -> MapJet:
    """Series solution of the flow system with ``Z(z,0) = Z0`` and ``W(z,0) = 0``.

    Picard iteration in ``w``: each sweep fixes at least one more order.
    """
    if cap < 1:
        raise SeriesError("cap must be at least 1")
    Z0 = Z0.truncate(cap).embed(MAP_VARS)
    Z, W = Z0, MultiSeries(MAP_VARS, cap)
    ab, bb = v.a.conjugate(), v.b.conjugate()
    for _ in range(iterations if iterations is not None else cap + 1):
        rhs_z = v.b + v.c * Z + v.a * W + 2j * ab * Z * Z + v.rho * Z * W
        rhs_w = 1.0 + 2j * bb * Z + 2.0 * v.c.real * W + 2j * ab * Z * W + v.rho * W * W
        Z = Z0 + integrate(rhs_z, "w").truncate(cap)
        W = integrate(rhs_w, "w").truncate(cap)
    return MapJet(Z, W)


# ----------------------------------------------------------------------
# surfaces induced by maps
def sphere_pullback(m: MapJet) -> MultiSeries:
    """``Im W - |Z|^2`` along ``w = i v`` as a series in ``(z, zbar, v)``.

    For maps whose preimage of the sphere is rigid this slice determines
    the whole preimage.
    """
    cap = m.cap
    zv = ("z", "v")
    iv = 1j * MultiSeries.var("v", cap, zv)
    Zs = compose(m.Z, {"w": iv})
    Ws = compose(m.W, {"w": iv})
    vars = ("z", "zbar", "v")
    Zs, Ws = Zs.embed(vars), Ws.embed(vars)
    Zb, Wb = Zs.bar().embed(vars), Ws.bar().embed(vars)
    return (Ws - Wb) * (-0.5j) - Zs * Zb


def induced_surface(m: MapJet) -> SurfaceSeries:
    """Graph ``v = V(z, zbar)`` of the preimage of ``Im w = |z|^2``."""
    G = sphere_pullback(m)
    zz = MultiSeries.var("z", G.cap, ("z", "zbar")) * MultiSeries.var("zbar", G.cap, ("z", "zbar"))
    return SurfaceSeries(solve_implicit(G, zz, var="v"), {"kind": "map"})


# ----------------------------------------------------------------------
# modified normalization
def _u(cap: int) -> MultiSeries:
    return MultiSeries.var("u", cap)


def norm_residuals(d: NormalizationData, n: NormalFormCoeffs) -> tuple[MultiSeries, MultiSeries, MultiSeries]:
    """Residuals of the three normalization equations for ``(alpha, p, h)``.

    ``conj(p)`` is ``p`` with conjugated coefficients (``u`` is real).
    """
    alpha, p, h = d.alpha, d.p, d.h
    D = lambda s: differentiate(s, "u")
    h1 = D(h)
    if abs(h1.constant) == 0:
        raise SeriesError("h'(0) must be nonzero")
    h2, h3 = D(h1), D(D(h1))
    p1 = D(p)
    p2 = D(p1)
    pb1, pb2 = p1.conj_coeffs(), p2.conj_coeffs()
    pp = p1 * pb1  # |p'|^2
    r1 = 6.0 * pp + 2.0 * D(alpha) - n.c22 * h1
    r2 = (-n.c23 * exp_series(-1j * alpha) * h1 * sqrt_series(h1)
          - 2.0 * p2 + 4j * pp * p1)
    r3 = (h3 / 3.0 - h2 * h2 * recip_series(h1) * 0.5
          + 0.5 * (3.0 * n.c22 ** 2 - 2.0 * n.c33) * h1 * h1 * h1
          + 2.0 * pp * pp * h1 + (2.0 / 3.0) * (1j * p2 * pb1 - 1j * p1 * pb2) * h1)
    return r1, r2, r3


def _chain_q(p: MultiSeries) -> MultiSeries:
    """``q`` with ``q(0) = 0`` and ``q' = 1 + 2i p' conj(p)``."""
    p1 = differentiate(p, "u")
    return integrate(1.0 + 2j * p1 * p.conj_coeffs().truncate(p1.cap), "u").truncate(p.cap)


def normalization_ode_solve(n: NormalFormCoeffs, cap: int = 12,
                            iterations: int | None = None) -> NormalizationData:
    """Unique series ``(alpha, p, h)`` with the normalized initial data.

    ``alpha(0) = p(0) = p'(0) = h(0) = h''(0) = 0`` and ``h'(0) = 1``; the
    coefficients are fixed order by order by integrating the equations
    solved for ``alpha'``, ``p''`` and ``h'''``.
    """
    u = _u(cap)
    alpha = MultiSeries(("u",), cap)
    p = MultiSeries(("u",), cap)
    h = u
    k = (3.0 * n.c22 ** 2 - 2.0 * n.c33) / 2.0
    D = lambda s: differentiate(s, "u")
    I = lambda s: integrate(s, "u").truncate(cap)
    for _ in range(iterations if iterations is not None else cap + 2):
        h1 = D(h)
        h2 = D(h1)
        p1 = D(p)
        p2 = D(p1)
        pb1, pb2 = p1.conj_coeffs(), p2.conj_coeffs()
        pp = p1 * pb1
        dalpha = (n.c22 * h1 - 6.0 * pp) * 0.5
        ddp = (-n.c23 * exp_series(-1j * alpha) * h1 * sqrt_series(h1) + 4j * pp * p1) * 0.5
        dddh = 3.0 * (h2 * h2 * recip_series(h1) * 0.5 - k * h1 * h1 * h1
                      - 2.0 * pp * pp * h1 - (2.0 / 3.0) * (1j * p2 * pb1 - 1j * p1 * pb2) * h1)
        alpha = I(dalpha)
        p = I(I(ddp))
        h = I(1.0 + I(I(dddh)))
    return NormalizationData(alpha, p, h, _chain_q(p))


def stanton_normalization_data(s: StantonParams, cap: int = 12) -> NormalizationData:
    """Normalization data of Stanton's map.

    ``h = log(1 + 2ru)/(2r)``, ``alpha = -theta h`` and
    ``p = (b/c)(e^{c h} - 1)``, all expanded entire in ``r`` and ``c``.
    """
    s.require_nonzero_c()
    r, c = s.r, s.c
    # log(1 + 2ru)/(2r) = sum (-2r)^{m-1} u^m / m
    h = MultiSeries.univariate("u", [0.0] + [(-2.0 * r) ** (m - 1) / m for m in range(1, cap + 1)], cap)
    alpha = -s.theta * h
    # (e^{x} - 1)/x at x = c h
    E = MultiSeries.univariate("t", [1.0 / math.factorial(m + 1) for m in range(cap + 1)], cap)
    p = s.b * h * compose(E, {"t": c * h})
    return NormalizationData(alpha, p, h, _chain_q(p))


def normalization_map(d: NormalizationData, cap: int | None = None) -> MapJet:
    """The map from the normalized surface to the sphere.

    With ``(z1, w1)`` the intermediate coordinates, the second map
    ``z = e^{i alpha(w1)} sqrt(h'(w1)) z1``, ``w = h(w1)`` is inverted and
    followed by the first map
    ``z2 = p(w1) + z1/(1 - 2i conj(p)'(w1) z1)``,
    ``w2 = q(w1) + 2i conj(p)(w1) z1/(1 - 2i conj(p)'(w1) z1)``.
    """
    if cap is None:
        cap = d.h.cap - 1
    hu = d.h.truncate(cap)
    # w1 = h^{-1}(w)
    F = compose(hu, {"u": MultiSeries.var("u", cap, ("w", "u"))}) - MultiSeries.var("w", cap, ("w", "u"))
    w1 = solve_implicit(F, MultiSeries.var("w", cap), var="u").embed(MAP_VARS)
    at_w1 = lambda s: compose(s.truncate(cap), {"u": w1})
    h1 = differentiate(d.h, "u")
    z = MultiSeries.var("z", cap, MAP_VARS)
    z1 = z * at_w1(exp_series(-1j * d.alpha)) * recip_series(at_w1(sqrt_series(h1)))
    pb = d.p.conj_coeffs()
    pb1 = differentiate(pb, "u")
    den = recip_series(1.0 - 2j * at_w1(pb1) * z1)
    Z2 = at_w1(d.p) + z1 * den
    W2 = at_w1(d.q) + 2j * at_w1(pb) * z1 * den
    return MapJet(Z2, W2)
