"""Truncated power series in several variables: arithmetic, elementary functions, implicit solves."""
import math

from rigidsphere.series import MultiSeries, exp_series, log_series, solve_implicit, sqrt_series

# series live in a fixed set of variables and are truncated at a total degree cap
u = MultiSeries.var("u", 8)
e = exp_series(u)
print("exp(u):", e)
print("log(exp(u)) - u, max coefficient:", (log_series(e) - u).max_abs())
print("sqrt(1 + u)^2 - (1 + u):", (sqrt_series(1 + u) ** 2 - (1 + u)).max_abs())

# the Heisenberg sphere v = |z|^2 recovered from F(z, zbar, v) = 0
vars = ("z", "zbar", "v")
z, zb, v = (MultiSeries.var(n, 8, vars) for n in vars)
F = exp_series(v) - 1 - z * zb
ZZB = ("z", "zbar")
V = solve_implicit(F, MultiSeries.var("z", 8, ZZB) * MultiSeries.var("zbar", 8, ZZB))
print("v = log(1 + |z|^2):", V)
print("coefficient of |z|^4:", V.coeff(z=2, zbar=2), "expected", -0.5)
print("coefficient of |z|^8:", V.coeff(z=4, zbar=4), "expected", -1 / 4)

# series round-trip through JSON
assert MultiSeries.from_json(V.to_json()).max_abs() == V.max_abs()
print("JSON round trip ok;", len(V.to_json()), "bytes;", math.comb(8 + 2, 2), "slots at cap 8")
