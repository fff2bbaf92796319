"""Sphere maps as flows of infinitesimal automorphisms, and the modified normalization ODEs."""
from rigidsphere.maps import (
    VectorFieldParams,
    induced_surface,
    integrate_system,
    norm_residuals,
    normalization_map,
    normalization_ode_solve,
    stanton_map,
    stanton_normalization_data,
    system_residual,
    twist_field,
    twisted_map,
)
from rigidsphere.parameters import NormalFormCoeffs, StantonParams, coeffs_to_twist, stanton_to_coeffs, twist_from_phi
from rigidsphere.series import MultiSeries

# Stanton's closed-form map solves the flow system for the field (b, c, 0, 0)
s = StantonParams(0.3 + 0.2j, 0.9, -0.4)
rz, rw = system_residual(stanton_map(s, 8), VectorFieldParams(b=s.b, c=s.c))
print("Stanton map residuals:", rz.max_abs(), rw.max_abs())

# the twisted map solves it exactly when phi is a root of the cubic, and fails linearly in the defect otherwise
t = coeffs_to_twist(NormalFormCoeffs(1.0, 0.5 - 0.3j, -2.0))[0]
rz, rw = system_residual(twisted_map(t, 8), twist_field(t))
print("twisted map residuals on the algebraic set:", rz.max_abs(), rw.max_abs())
for delta in (1e-2, 1e-3, 1e-4):
    tp = twist_from_phi(t.tau, t.a, t.rho, t.phi + delta)
    _, rw = system_residual(twisted_map(tp, 8), twist_field(tp))
    print(f"  delta={delta:.0e}: defect={tp.cubic_defect():+.3e}  w^3 residual={rw.coeff(z=0, w=3):.3e}")

# any coefficients are realised by integrating the flow of (0, i theta, a, rho) from Z = z
theta, a, rho = 0.5, 0.4 - 0.1j, 1.2
J = integrate_system(VectorFieldParams(0, 1j * theta, a, rho), MultiSeries.var("z", 8), 8)
S = induced_surface(J)
print("induced c22, c23, c33:", S.coeff(2, 2).real, S.coeff(2, 3), S.coeff(3, 3).real,
      "expected", -2 * theta, -2 * a, 6 * theta ** 2 - 2 * rho / 3)

# normalization ODEs: arctan closed form when c23 = 0, residual check otherwise
d = normalization_ode_solve(NormalFormCoeffs(1.0, 0, 0), 9)
print("h(u) for c22=1:", d.h)
n = NormalFormCoeffs(0.7, 0.2 + 0.5j, -1.0)
d = normalization_ode_solve(n, 10)
print("general residuals:", [f"{r.max_abs():.1e}" for r in norm_residuals(d, n)])
d = stanton_normalization_data(s, 10)
print("Stanton data: p'(0) =", d.p.coeff(u=1), " h''(0) =", 2 * d.h.coeff(u=2).real)
print("Stanton data residuals:", [f"{r.max_abs():.1e}" for r in norm_residuals(d, stanton_to_coeffs(s))])
print("normalization map surface c22:", induced_surface(normalization_map(d)).coeff(2, 2).real)
