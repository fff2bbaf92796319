"""
Zero-curvature certificates for rigid hypersurfaces ``v = h(z, zbar)``.

A rigid hypersurface is spherical exactly when ``f = log(h_{z zbar})``
satisfies

    f_{z zbar zbar zbar} - 3 f_{z zbar zbar} f_{zbar}
        + 2 f_{z zbar} f_{zbar}^2 - f_{z zbar} f_{zbar zbar} = 0.

Everything here works on truncated series, so "zero" means every
coefficient up to the surviving degree is below ``tol * 2**degree``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .series import MultiSeries, SeriesError, compose, differentiate, log_series

__all__ = [
    "CurvatureReport",
    "log_laplacian",
    "curvature_series",
    "curvature_residual",
    "reduced_series",
    "reduced_residual",
    "circular_g",
    "circular_series",
    "circular_residual",
    "tube_in_z",
    "verify_tube",
]

DEFAULT_TOL = 1e-9


@dataclass
class CurvatureReport:
    max_abs_residual_coefficient: float
    per_degree_residuals: list[float]
    cap: int
    verdict: str
    tol: float = DEFAULT_TOL
    residual: MultiSeries | None = field(default=None, repr=False)

    @property
    def spherical(self) -> bool:
        return self.verdict == "spherical_to_order"

    @property
    def first_nonzero_degree(self) -> int | None:
        for d, r in enumerate(self.per_degree_residuals):
            if r > self.tol * 2.0 ** d:
                return d
        return None

    def to_dict(self) -> dict:
        return {
            "max_abs_residual_coefficient": self.max_abs_residual_coefficient,
            "per_degree_residuals": list(self.per_degree_residuals),
            "cap": self.cap,
            "verdict": self.verdict,
            "tol": self.tol,
        }


def _report(residual: MultiSeries, tol: float) -> CurvatureReport:
    per_degree = [float(x) for x in residual.homogeneous_norms()]
    bad = [d for d, r in enumerate(per_degree) if r > tol * 2.0 ** d]
    verdict = "spherical_to_order" if not bad else f"nonzero_at_degree {bad[0]}"
    return CurvatureReport(
        max_abs_residual_coefficient=max(per_degree) if per_degree else 0.0,
        per_degree_residuals=per_degree,
        cap=residual.cap,
        verdict=verdict,
        tol=tol,
        residual=residual,
    )


def log_laplacian(h: MultiSeries) -> MultiSeries:
    """``f = log(h_{z zbar})``; the Laplacian is taken without the factor 4."""
    lap = differentiate(differentiate(h, "z"), "zbar")
    if abs(lap.constant) == 0:
        raise SeriesError("Levi form degenerates at the origin (h_{z zbar}(0) = 0)")
    return log_series(lap)


def curvature_series(f: MultiSeries) -> MultiSeries:
    d = differentiate
    f_b = d(f, "zbar")
    f_zb = d(f_b, "z")
    f_bb = d(f_b, "zbar")
    f_zbb = d(f_zb, "zbar")
    f_zbbb = d(f_zbb, "zbar")
    return f_zbbb - 3.0 * f_zbb * f_b + 2.0 * f_zb * f_b * f_b - f_zb * f_bb


def curvature_residual(f: MultiSeries, tol: float = DEFAULT_TOL) -> CurvatureReport:
    """Residual of the rigid zero-curvature equation; the cap drops by four."""
    return _report(curvature_series(f), tol)


def reduced_series(ft: MultiSeries) -> MultiSeries:
    d = differentiate
    ft_z = d(ft, "z")
    ft_b = d(ft, "zbar")
    ft_zb = d(ft_z, "zbar")
    ft_zbb = d(ft_zb, "zbar")
    return ft_zbb - 3.0 * ft_zb * ft + 2.0 * ft_z * ft * ft - ft_z * ft_b


def reduced_residual(ftilde: MultiSeries, tol: float = DEFAULT_TOL) -> CurvatureReport:
    """Residual of the equation in terms of ``ftilde = d/dzbar log h_{z zbar}``."""
    return _report(reduced_series(ftilde), tol)


# ----------------------------------------------------------------------
# circular surfaces v = h(|z|^2)
def circular_g(h: MultiSeries) -> MultiSeries:
    """``g(t) = log(h'(t) + t h''(t))`` for a profile ``h`` in ``t = |z|^2``."""
    t = MultiSeries.var("t", h.cap)
    h1 = differentiate(h, "t")
    h2 = differentiate(h1, "t")
    return log_series(h1 + t * h2)


def circular_series(g: MultiSeries) -> MultiSeries:
    d = differentiate
    t = MultiSeries.var("t", g.cap, g.vars)
    g1 = d(g, "t")
    g2 = d(g1, "t")
    g3 = d(g2, "t")
    g4 = d(g3, "t")
    return (t * g4 + 3.0 * g3 - g1 * (3.0 * t * g3 + 7.0 * g2) - t * g2 * g2
            + 2.0 * t * g1 * g1 * g2 + 2.0 * g1 * g1 * g1)


def circular_residual(g: MultiSeries, tol: float = DEFAULT_TOL) -> CurvatureReport:
    """Residual of the ODE satisfied by ``g = log(h' + t h'')`` on circular spheres."""
    if g.vars != ("t",):
        raise SeriesError(f"circular residual needs a series in t, got {g.vars}")
    return _report(circular_series(g), tol)


# ----------------------------------------------------------------------
# tubes v = h(x)
def tube_in_z(h: MultiSeries) -> MultiSeries:
    """Re-express a profile ``h(x)`` with ``x = (z + zbar)/2``."""
    vars = ("z", "zbar")
    x = 0.5 * (MultiSeries.var("z", h.cap, vars) + MultiSeries.var("zbar", h.cap, vars))
    return compose(h, {"x": x})


def verify_tube(kind: str, cap: int = 12, tol: float = DEFAULT_TOL) -> CurvatureReport:
    """Curvature report for one of the four spherical tube profiles."""
    from .surfaces import tube_h

    h = tube_in_z(tube_h(kind, cap))
    return curvature_residual(log_laplacian(h), tol)


def max_residual(reports) -> float:
    return float(np.max([r.max_abs_residual_coefficient for r in reports])) if reports else 0.0
