"""From normal form coefficients to twist parameters, and back; which coefficients Stanton's family reaches."""
import math

from rigidsphere.parameters import (
    NormalFormCoeffs,
    StantonParams,
    coeffs_to_twist,
    default_root_index,
    stanton_reachable,
    stanton_to_coeffs,
    twist_to_coeffs,
)

n = NormalFormCoeffs(0.0, -2 * math.sqrt(2), -4.0)
twists = coeffs_to_twist(n)
print(f"{len(twists)} real roots for c = {n}")
for k, t in enumerate(twists):
    print(f"  root {k}: phi={t.phi:+.6f} theta={t.theta:+.6f} r^2={t.r2:+.6f} defect={t.cubic_defect():.1e}")
    assert twist_to_coeffs(t).isclose(n, 1e-12)
print("default root (smallest |phi|):", default_root_index(twists))

# Stanton's two-parameter family covers only part of coefficient space
for c33 in (5.0, 0.0, -2.0, -2.1, -4.0):
    ok, w = stanton_reachable(NormalFormCoeffs(0.0, 2.0, c33))
    extra = f" witness |b|={abs(w.b):.4f} r={w.r:.4f} theta={w.theta:.4f}" if ok else ""
    print(f"c22=0 c23=2 c33={c33:+.1f}: reachable={ok}{extra}")

s = StantonParams(0.3 - 0.2j, 0.8, -0.5)
print("Stanton", s, "->", stanton_to_coeffs(s))
