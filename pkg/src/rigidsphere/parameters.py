"""
Parameter algebra for rigid spheres.

Three coordinate systems describe the same rigid spheres:

* :class:`NormalFormCoeffs` ``(c22, c23, c33)`` -- the free low-order
  coefficients of the rigid normal form ``v = |z|^2 + c22|z|^4 + ...``;
* :class:`TwistParams` ``(tau, a, rho, phi, theta, r2)`` -- parameters of the
  twisted Stanton map, where ``phi`` is a real root of a cubic;
* :class:`StantonParams` ``(b, r, theta)`` -- Stanton's original 4-parameter
  family, which does not reach every normal form.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from numpy.polynomial import Polynomial

__all__ = [
    "NormalFormCoeffs",
    "TwistParams",
    "StantonParams",
    "cubic_real_roots",
    "coeffs_to_twist",
    "twist_from_phi",
    "twist_to_coeffs",
    "tau0_phi",
    "stanton_to_coeffs",
    "stanton_to_twist",
    "stanton_reachable",
    "twist_cubic",
]


@dataclass(frozen=True)
class NormalFormCoeffs:
    c22: float
    c23: complex
    c33: float

    def __post_init__(self):
        object.__setattr__(self, "c22", float(self.c22))
        object.__setattr__(self, "c23", complex(self.c23))
        object.__setattr__(self, "c33", float(self.c33))

    @property
    def c32(self) -> complex:
        return self.c23.conjugate()

    def to_dict(self) -> dict:
        return {"c22": self.c22, "c23_re": self.c23.real, "c23_im": self.c23.imag, "c33": self.c33}

    def isclose(self, other: "NormalFormCoeffs", tol: float = 1e-9) -> bool:
        return (
            abs(self.c22 - other.c22) <= tol * max(1.0, abs(other.c22))
            and abs(self.c23 - other.c23) <= tol * max(1.0, abs(other.c23))
            and abs(self.c33 - other.c33) <= tol * max(1.0, abs(other.c33))
        )


@dataclass(frozen=True)
class TwistParams:
    """Parameters of the universal rigid-sphere construction.

    ``r2`` stands for ``r**2`` and may be negative (imaginary ``r``);
    ``phi`` may be negative as well.
    """

    tau: float
    a: complex
    rho: float
    phi: float
    theta: float
    r2: float

    def __post_init__(self):
        for name in ("tau", "rho", "phi", "theta", "r2"):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "a", complex(self.a))

    @classmethod
    def zero(cls) -> "TwistParams":
        return cls(0.0, 0j, 0.0, 0.0, 0.0, 0.0)

    def cubic_defect(self) -> float:
        """Left minus right side of the cubic relation fixing ``phi``."""
        return twist_cubic(self.tau, self.rho, self.phi) - abs(self.a) ** 2

    def check(self, tol: float = 1e-9) -> bool:
        ok_theta = abs(self.theta - (self.tau + 3 * self.phi)) <= tol * max(1.0, abs(self.theta))
        r2 = -self.rho + (2 * self.tau + 3 * self.phi) * self.phi
        ok_r2 = abs(self.r2 - r2) <= tol * max(1.0, abs(r2))
        scale = max(1.0, abs(self.a) ** 2, abs(self.phi) ** 3, abs(self.rho * self.phi))
        return ok_theta and ok_r2 and abs(self.cubic_defect()) <= tol * scale

    def to_dict(self) -> dict:
        d = asdict(self)
        a = d.pop("a")
        d["a_re"], d["a_im"] = a.real, a.imag
        return d


@dataclass(frozen=True)
class StantonParams:
    b: complex
    r: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def c(self) -> complex:
        return complex(self.r, self.theta)

    def require_nonzero_c(self):
        if self.r == 0 and self.theta == 0:
            raise ValueError("Stanton parameter c = r + i*theta must be nonzero")

    def to_dict(self) -> dict:
        return {"b_re": self.b.real, "b_im": self.b.imag, "r": self.r, "theta": self.theta}


# ----------------------------------------------------------------------
# cubic equations
def _cubic_value(coeffs, x):
    p3, p2, p1, p0 = coeffs
    return ((p3 * x + p2) * x + p1) * x + p0


def _newton_polish(coeffs, x: float, steps: int = 6) -> float:
    """A few monotone Newton steps on the cubic; stops as soon as |f| stops shrinking.

    Steps are kept small: near a double root f' is tiny and a full step can
    land on a different root.
    """
    for _ in range(steps):
        f = _cubic_value(coeffs, x)
        df = (3 * coeffs[0] * x + 2 * coeffs[1]) * x + coeffs[2]
        if df == 0 or f == 0:
            break
        step = f / df
        if abs(step) > 1e-4 * max(1.0, abs(x)):
            break
        x_new = x - step
        if abs(_cubic_value(coeffs, x_new)) >= abs(f):
            break
        x = x_new
    return x


def cubic_real_roots(p3: float, p2: float, p1: float, p0: float, merge: float = 1e-8) -> list[float]:
    """Distinct real roots of ``p3 x^3 + p2 x^2 + p1 x + p0``, ascending.

    Closed form (trigonometric when three roots are real, Cardano
    otherwise) followed by a few Newton steps on the original cubic.
    """
    if p3 == 0:
        raise ValueError("leading coefficient of a cubic must be nonzero")
    coeffs = (float(p3), float(p2), float(p1), float(p0))
    b, c, d = p2 / p3, p1 / p3, p0 / p3
    shift = -b / 3.0
    # depressed cubic t^3 + p t + q, x = t + shift
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    half_q2 = (q / 2.0) ** 2
    third_p3 = (p / 3.0) ** 3
    disc = half_q2 + third_p3
    scale = max(half_q2, abs(third_p3), 1e-300)

    if abs(p) <= 1e-14 * max(1.0, b * b, abs(c)) and abs(q) <= 1e-14 * max(1.0, abs(b) ** 3, abs(d)):
        ts = [0.0]
    elif abs(disc) <= 1e-12 * scale:
        # a repeated root
        ts = [3.0 * q / p, -1.5 * q / p]
    elif disc < 0:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        arg = min(1.0, max(-1.0, arg))
        phi = math.acos(arg) / 3.0
        ts = [m * math.cos(phi - 2.0 * math.pi * k / 3.0) for k in range(3)]
    else:
        sq = math.sqrt(disc)
        ts = [float(np.cbrt(-q / 2.0 + sq) + np.cbrt(-q / 2.0 - sq))]

    roots = [_newton_polish(coeffs, t + shift) for t in ts]
    if len(roots) == 1:
        # rounding can push a double root's discriminant just positive; deflate and look again
        x1 = roots[0]
        q1 = coeffs[1] + coeffs[0] * x1
        q0 = coeffs[2] + q1 * x1
        d2 = q1 * q1 - 4.0 * coeffs[0] * q0
        if d2 >= -1e-10 * (q1 * q1 + abs(4.0 * coeffs[0] * q0)):
            s = math.sqrt(max(d2, 0.0))
            roots += [_newton_polish(coeffs, (-q1 + sgn * s) / (2.0 * coeffs[0])) for sgn in (1.0, -1.0)]
    roots.sort()
    merged = []
    for x in roots:
        if merged and abs(x - merged[-1]) <= merge * max(1.0, abs(x)):
            continue
        merged.append(x)
    return merged


def twist_cubic(tau: float, rho: float, phi: float) -> float:
    """``4 phi^3 + 4 tau phi^2 + (tau^2 - rho) phi``."""
    return ((4.0 * phi + 4.0 * tau) * phi + (tau * tau - rho)) * phi


# ----------------------------------------------------------------------
# normal form <-> twist parameters
def _twist_base(n: NormalFormCoeffs) -> tuple[float, complex, float]:
    tau = -n.c22 / 2.0
    a = -n.c23 / 2.0
    rho = -1.5 * n.c33 + 2.25 * n.c22 ** 2
    return tau, a, rho


def twist_from_phi(tau: float, a: complex, rho: float, phi: float) -> TwistParams:
    """Complete ``(tau, a, rho, phi)`` with ``theta`` and ``r2``.

    ``phi`` is taken as given, so the result lies off the algebraic set
    unless ``phi`` is a root of the cubic.
    """
    theta = tau + 3.0 * phi
    r2 = -rho + (2.0 * tau + 3.0 * phi) * phi
    return TwistParams(tau, a, rho, phi, theta, r2)


def coeffs_to_twist(n: NormalFormCoeffs) -> list[TwistParams]:
    """All twist parameter sets realising ``n``, one per real root ``phi``, by ascending ``phi``."""
    tau, a, rho = _twist_base(n)
    roots = cubic_real_roots(4.0, 4.0 * tau, tau * tau - rho, -abs(a) ** 2)
    return [twist_from_phi(tau, a, rho, phi) for phi in roots]


def default_root_index(twists: list[TwistParams]) -> int:
    """Index of the root ``phi`` of smallest absolute value."""
    return min(range(len(twists)), key=lambda k: (abs(twists[k].phi), twists[k].phi))


def twist_to_coeffs(t: TwistParams) -> NormalFormCoeffs:
    c22 = -2.0 * t.tau
    c23 = -2.0 * t.a
    c33 = (2.25 * c22 ** 2 - t.rho) * (2.0 / 3.0)
    return NormalFormCoeffs(c22, c23, c33)


def tau0_phi(a: complex, rho: float) -> float:
    """Closed-form root of ``4 phi^3 - rho phi = |a|^2`` (the case ``tau = 0``).

    Evaluates ``(A + sqrt(A^2 - rho^3/27))^(1/3) + (A - sqrt(...))^(1/3)``
    halved, with ``A = |a|^2``: real cube roots when the radicand is
    non-negative, principal complex cube roots otherwise.
    """
    A = abs(a) ** 2
    radicand = A * A - rho ** 3 / 27.0
    if radicand >= 0:
        s = math.sqrt(radicand)
        return 0.5 * float(np.cbrt(A + s) + np.cbrt(A - s))
    s = math.sqrt(-radicand)
    u = complex(A, s) ** (1.0 / 3.0)
    v = complex(A, -s) ** (1.0 / 3.0)
    return 0.5 * (u + v).real


# ----------------------------------------------------------------------
# Stanton's family
def stanton_to_coeffs(s: StantonParams) -> NormalFormCoeffs:
    s.require_nonzero_c()
    b2 = abs(s.b) ** 2
    r, th = s.r, s.theta
    c22 = 6.0 * b2 - 2.0 * th
    c23 = 2.0 * complex(r, -th) * s.b + 4j * s.b * b2
    c33 = (2.0 / 3.0) * r * r + 6.0 * th * th + 56.0 * b2 * b2 - (112.0 / 3.0) * th * b2
    return NormalFormCoeffs(c22, c23, c33)


def stanton_to_twist(s: StantonParams) -> TwistParams:
    """Twist parameters of the composite of Stanton's map with the sphere automorphism."""
    phi = abs(s.b) ** 2
    r, th = s.r, s.theta
    a = -s.b * complex(r, -th + 2.0 * phi)
    tau = th - 3.0 * phi
    rho = -3.0 * phi * phi - r * r + 2.0 * phi * th
    return TwistParams(tau, a, rho, phi, th, r * r)


def stanton_reachable(n: NormalFormCoeffs, tol: float = 1e-9) -> tuple[bool, StantonParams | None]:
    """Decide whether Stanton's family contains the rigid sphere ``n``.

    Eliminates ``theta`` and ``r^2`` in favour of ``B = |b|^2`` and solves
    the resulting real cubic in ``B``.  A root is admissible when ``B >= 0``,
    ``r^2 >= 0`` and ``c = r + i theta`` is nonzero; the witness recovers the
    phase of ``b`` from the linear relation for ``c23``.
    """
    B = Polynomial([0.0, 1.0])
    theta = 3.0 * B - n.c22 / 2.0
    r2 = 1.5 * (n.c33 - 6.0 * theta ** 2 - 56.0 * B ** 2 + (112.0 / 3.0) * theta * B)
    cubic = B * (4.0 * r2 + (4.0 * B - 2.0 * theta) ** 2) - abs(n.c23) ** 2
    coef = np.zeros(4)
    coef[: len(cubic.coef)] = cubic.coef
    candidates = []
    for Bv in cubic_real_roots(coef[3], coef[2], coef[1], coef[0]):
        if Bv < -tol:
            continue
        Bv = max(Bv, 0.0)
        r2v = r2(Bv)
        if r2v < -tol * max(1.0, abs(n.c33), n.c22 ** 2):
            continue
        r = math.sqrt(max(r2v, 0.0))
        th = theta(Bv)
        if r == 0 and abs(th) <= tol:
            continue
        denom = 2.0 * complex(r, -th) + 4j * Bv
        if abs(denom) > 1e-12 and abs(n.c23) > 0:
            b = n.c23 / denom
        else:
            b = complex(math.sqrt(Bv), 0.0)
        witness = StantonParams(b, r, th)
        candidates.append(witness)
    for w in candidates:
        if stanton_to_coeffs(w).isclose(n, 1e-7):
            return True, w
    return False, None
