"""Machine certificates of sphericity through the rigid zero-curvature equation."""
import numpy as np

from rigidsphere.curvature import circular_g, circular_residual, curvature_residual, log_laplacian, verify_tube
from rigidsphere.parameters import NormalFormCoeffs, coeffs_to_twist
from rigidsphere.series import MultiSeries
from rigidsphere.surfaces import circular_surface, expand_surface

rng = np.random.default_rng(1)
for _ in range(4):
    c22, c23r, c23i, c33 = rng.uniform(-5, 5, 4)
    n = NormalFormCoeffs(c22, complex(c23r, c23i), c33)
    for k, t in enumerate(coeffs_to_twist(n)):
        rep = curvature_residual(log_laplacian(expand_surface(t, 10).V))
        print(f"c=({c22:+.2f}, {c23r:+.2f}{c23i:+.2f}i, {c33:+.2f}) root {k}: "
              f"{rep.verdict}, max residual {rep.max_abs_residual_coefficient:.1e}")

# a surface that is not a sphere is caught at the first degree it deviates
zz = MultiSeries.var("z", 10, ("z", "zbar")) * MultiSeries.var("zbar", 10, ("z", "zbar"))
print("v = |z|^2 + |z|^6:", curvature_residual(log_laplacian(zz + zz ** 3)).verdict)

for kind in ("parabola", "exponential", "cos", "cosh"):
    print(f"tube {kind}: {verify_tube(kind).verdict}")

for family in ("sin", "sinh"):
    g = circular_g(circular_surface(1.0, 0.3, family, 10))
    rep = circular_residual(g)
    print(f"circular {family}: {rep.verdict}, c1={g.coeff(t=1).real:+.4f}, c2={g.coeff(t=2).real:+.4f}")
