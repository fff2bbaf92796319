"""The universal implicit equation of rigid spheres, pointwise and as a series."""
import math

import numpy as np

from rigidsphere.parameters import NormalFormCoeffs, StantonParams, coeffs_to_twist, stanton_to_twist
from rigidsphere.surfaces import defining_value, expand_surface, extract_coeffs, solve_v, stanton_defining_value

t = [t for t in coeffs_to_twist(NormalFormCoeffs(0.0, -2 * math.sqrt(2), -4.0)) if abs(t.phi + 1) < 1e-9][0]
S = expand_surface(t, 10)
print("surface series to degree 8:")
for (j, k), c in S.V.terms(1e-12):
    if j + k <= 8:
        print(f"  z^{j} zbar^{k}: {c.real:+.6f}")
print("extracted coefficients:", extract_coeffs(S))

# the series and a Newton solve agree near the origin, up to truncation of the series at degree 10
for z in (0.05, 0.1 + 0.05j, -0.08j):
    v = solve_v(t, z)
    series = S.V.evaluate(z=z, zbar=z.conjugate()).real
    print(f"z={z}: Newton v={v:.15f}, series v={series:.15f}, F={defining_value(t, z, v):.1e}")

# Stanton's family is a special case, up to a nonvanishing factor
s = StantonParams(0.2 + 0.1j, 0.7, 0.4)
ts = stanton_to_twist(s)
rng = np.random.default_rng(0)
for _ in range(3):
    z, v = complex(*rng.uniform(-0.3, 0.3, 2)), rng.uniform(-0.2, 0.2)
    unit = abs(1 - 2j * s.b.conjugate() * z) ** 2
    print(f"universal {defining_value(ts, z, v):+.12f}  Stanton x unit {unit * stanton_defining_value(s, z, v):+.12f}")
