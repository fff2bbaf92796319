"""
Truncated multivariate formal power series with complex coefficients.

A :class:`MultiSeries` is a dense table of coefficients indexed by
multidegree, truncated at a maximum *total* degree ``cap``.  Coefficients
of total degree above ``cap`` are unknown and always stored as zero.  The
result of any binary operation carries the smaller of the two caps.

Variables come from a fixed vocabulary (``z``, ``zbar``, ``w``, ``v``,
``u``, ``t``, ``x``); ``zbar`` is an independent formal variable, and
Hermitian symmetry is something one tests for, not something enforced::

    >>> z, zb = MultiSeries.var("z", 4), MultiSeries.var("zbar", 4)
    >>> s = (z + zb) ** 2
    >>> s.coeff(z=1, zbar=1)
    (2+0j)
    >>> s.is_hermitian()
    True

Elementary functions (:func:`exp_series`, :func:`log_series`,
:func:`sqrt_series`, :func:`recip_series`) work for any number of
variables by means of the Euler operator ``E = sum x_i d/dx_i``, which
multiplies the homogeneous part of degree ``d`` by ``d``.
"""
from __future__ import annotations

import json
import math
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

VARIABLES = ("z", "zbar", "w", "v", "u", "t", "x")
# extended precision keeps long cancellation chains (curvature residuals) near 1e-18
COEFF_DTYPE = np.clongdouble

_CONJUGATE_NAME = {"z": "zbar", "zbar": "z"}


class SeriesError(ValueError):
    """Raised for incompatible operands or ill-posed series operations."""


@lru_cache(maxsize=None)
def _degree_grid(nvars: int, cap: int) -> np.ndarray:
    if nvars == 0:
        return np.zeros((), dtype=int)
    axes = np.indices((cap + 1,) * nvars)
    grid = axes.sum(axis=0)
    grid.setflags(write=False)
    return grid


@lru_cache(maxsize=None)
def _truncation_mask(nvars: int, cap: int) -> np.ndarray:
    mask = _degree_grid(nvars, cap) <= cap
    mask.setflags(write=False)
    return mask


def _check_vars(names: Sequence[str]) -> tuple[str, ...]:
    names = tuple(names)
    for n in names:
        if n not in VARIABLES:
            raise SeriesError(f"unknown variable {n!r}; expected one of {VARIABLES}")
    if len(set(names)) != len(names):
        raise SeriesError(f"repeated variable in {names}")
    return names


class MultiSeries:
    """Dense truncated power series in a few named variables.

    Parameters
    ----------
    vars : sequence of str
        Ordered variable names, a subset of :data:`VARIABLES`.
    cap : int
        Maximum total degree retained.
    coeffs : array_like, optional
        Array of shape ``(cap + 1,) * len(vars)``; entries above total
        degree ``cap`` are discarded.  Omitted means the zero series.

    Instances are immutable.
    """

    __slots__ = ("vars", "cap", "coeffs")
    # numpy scalars defer to our reflected operators
    __array_ufunc__ = None

    def __init__(self, vars: Sequence[str], cap: int, coeffs=None):
        vars = _check_vars(vars)
        cap = int(cap)
        if cap < 0:
            raise SeriesError("cap must be non-negative")
        shape = (cap + 1,) * len(vars)
        if coeffs is None:
            arr = np.zeros(shape, dtype=COEFF_DTYPE)
        else:
            arr = np.array(coeffs, dtype=COEFF_DTYPE)
            if arr.shape != shape:
                raise SeriesError(f"coefficient array has shape {arr.shape}, expected {shape}")
            arr[~_truncation_mask(len(vars), cap)] = 0
        arr.setflags(write=False)
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("MultiSeries is immutable")

    # ------------------------------------------------------------------
    # constructors
    @classmethod
    def const(cls, value, vars: Sequence[str] = (), cap: int = 0) -> "MultiSeries":
        vars = _check_vars(vars)
        arr = np.zeros((cap + 1,) * len(vars), dtype=COEFF_DTYPE)
        arr[(0,) * len(vars)] = value
        return cls(vars, cap, arr)

    @classmethod
    def var(cls, name: str, cap: int, vars: Sequence[str] | None = None) -> "MultiSeries":
        """The series consisting of the single variable ``name``."""
        vars = _check_vars(vars if vars is not None else (name,))
        if name not in vars:
            raise SeriesError(f"{name!r} not among {vars}")
        arr = np.zeros((cap + 1,) * len(vars), dtype=COEFF_DTYPE)
        if cap >= 1:
            idx = [0] * len(vars)
            idx[vars.index(name)] = 1
            arr[tuple(idx)] = 1.0
        return cls(vars, cap, arr)

    @classmethod
    def from_terms(cls, vars: Sequence[str], cap: int, terms: Mapping[tuple, complex]) -> "MultiSeries":
        """Build from ``{multidegree: coefficient}``; terms above ``cap`` are dropped."""
        vars = _check_vars(vars)
        arr = np.zeros((cap + 1,) * len(vars), dtype=COEFF_DTYPE)
        for deg, c in terms.items():
            deg = tuple(int(d) for d in deg)
            if len(deg) != len(vars):
                raise SeriesError(f"multidegree {deg} does not match variables {vars}")
            if sum(deg) <= cap:
                arr[deg] += c
        return cls(vars, cap, arr)

    @classmethod
    def univariate(cls, name: str, coefficients: Sequence[complex], cap: int | None = None) -> "MultiSeries":
        coefficients = list(coefficients)
        if cap is None:
            cap = len(coefficients) - 1
        arr = np.zeros(cap + 1, dtype=COEFF_DTYPE)
        n = min(cap + 1, len(coefficients))
        arr[:n] = coefficients[:n]
        return cls((name,), cap, arr)

    # ------------------------------------------------------------------
    # inspection
    @property
    def nvars(self) -> int:
        return len(self.vars)

    def coeff(self, *deg, **named) -> complex:
        """Coefficient at a multidegree, given positionally or by variable name."""
        if named:
            if deg:
                raise TypeError("give the multidegree positionally or by name, not both")
            unknown = set(named) - set(self.vars)
            if unknown:
                # monomials in absent variables have zero coefficient
                if any(named[k] for k in unknown):
                    return 0j
            deg = tuple(named.get(v, 0) for v in self.vars)
        elif len(deg) == 1 and isinstance(deg[0], (tuple, list)):
            deg = tuple(deg[0])
        if len(deg) != self.nvars:
            raise SeriesError(f"multidegree {deg} does not match variables {self.vars}")
        if any(d < 0 for d in deg) or sum(deg) > self.cap:
            return 0j
        return complex(self.coeffs[tuple(deg)])

    @property
    def constant(self) -> complex:
        return complex(self.coeffs[(0,) * self.nvars])

    def terms(self, tol: float = 0.0):
        """Yield ``(multidegree, coefficient)`` for coefficients with ``|c| > tol``."""
        for idx in zip(*np.nonzero(np.abs(self.coeffs) > tol)):
            yield tuple(int(i) for i in idx), complex(self.coeffs[idx])

    def degree_grid(self) -> np.ndarray:
        return _degree_grid(self.nvars, self.cap)

    def homogeneous_norms(self) -> np.ndarray:
        """Largest coefficient magnitude in each total degree ``0..cap``."""
        out = np.zeros(self.cap + 1)
        if self.nvars == 0:
            out[0] = abs(self.constant)
            return out
        grid = self.degree_grid()
        mags = np.abs(self.coeffs)
        for d in range(self.cap + 1):
            sel = grid == d
            if sel.any():
                out[d] = mags[sel].max()
        return out

    def max_abs(self) -> float:
        return float(np.abs(self.coeffs).max()) if self.coeffs.size else 0.0

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        """True when swapping z and zbar and conjugating leaves the series fixed."""
        if ("z" in self.vars) != ("zbar" in self.vars):
            vars = tuple(self.vars) + (("zbar",) if "z" in self.vars else ("z",))
            return self.embed(vars).is_hermitian(tol)
        return allclose(self.bar(), self, tol)

    def evaluate(self, **point) -> complex:
        """Numerically sum the truncated series at a point."""
        missing = set(self.vars) - set(point)
        if missing:
            raise SeriesError(f"no value given for {sorted(missing)}")
        total = 0j
        for deg, c in self.terms():
            term = c
            for name, d in zip(self.vars, deg):
                if d:
                    term *= complex(point[name]) ** d
            total += term
        return total

    # ------------------------------------------------------------------
    # structural operations
    def truncate(self, cap: int) -> "MultiSeries":
        """Lower (or, padding with zeros, raise) the cap."""
        cap = int(cap)
        if cap == self.cap:
            return self
        n = self.nvars
        arr = np.zeros((cap + 1,) * n, dtype=COEFF_DTYPE)
        m = min(cap, self.cap) + 1
        sl = (slice(0, m),) * n
        arr[sl] = self.coeffs[sl]
        return MultiSeries(self.vars, cap, arr)

    def embed(self, vars: Sequence[str]) -> "MultiSeries":
        """View this series as one in a larger (or reordered) variable set."""
        vars = _check_vars(vars)
        if tuple(vars) == self.vars:
            return self
        missing = set(self.vars) - set(vars)
        if missing:
            raise SeriesError(f"cannot embed {self.vars} into {vars}: missing {sorted(missing)}")
        # put our axes in target order, then insert singleton axes
        present = [v for v in vars if v in self.vars]
        arr = np.transpose(self.coeffs, [self.vars.index(v) for v in present])
        shape = [self.cap + 1 if v in self.vars else 1 for v in vars]
        arr = arr.reshape(shape)
        out = np.zeros((self.cap + 1,) * len(vars), dtype=COEFF_DTYPE)
        out[tuple(slice(0, s) for s in shape)] = arr
        return MultiSeries(vars, self.cap, out)

    def rename(self, mapping: Mapping[str, str]) -> "MultiSeries":
        return MultiSeries([mapping.get(v, v) for v in self.vars], self.cap, self.coeffs)

    def conj_coeffs(self) -> "MultiSeries":
        """Conjugate every coefficient, keeping the variables."""
        return MultiSeries(self.vars, self.cap, np.conj(self.coeffs))

    def bar(self) -> "MultiSeries":
        """Complex conjugate of the function, all variables other than z/zbar real.

        Conjugates the coefficients and exchanges the roles of ``z`` and ``zbar``.
        """
        return self.conj_coeffs().rename(_CONJUGATE_NAME)

    def drop_var(self, name: str) -> "MultiSeries":
        """Restrict to ``name = 0``."""
        if name not in self.vars:
            return self
        k = self.vars.index(name)
        arr = np.take(self.coeffs, 0, axis=k)
        return MultiSeries(self.vars[:k] + self.vars[k + 1:], self.cap, arr)

    def slice_degree(self, name: str, k: int) -> "MultiSeries":
        """Coefficient of ``name**k``, as a series in the remaining variables."""
        i = self.vars.index(name)
        arr = np.take(self.coeffs, k, axis=i) if k <= self.cap else None
        rest = self.vars[:i] + self.vars[i + 1:]
        if arr is None:
            return MultiSeries(rest, self.cap)
        return MultiSeries(rest, self.cap, arr)

    # ------------------------------------------------------------------
    # arithmetic
    def _coerce(self, other) -> tuple["MultiSeries", "MultiSeries"]:
        if not isinstance(other, MultiSeries):
            other = MultiSeries.const(other, self.vars, self.cap)
        return _align(self, other)

    def __add__(self, other):
        a, b = self._coerce(other)
        return MultiSeries(a.vars, a.cap, a.coeffs + b.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries(self.vars, self.cap, -self.coeffs)

    def __sub__(self, other):
        a, b = self._coerce(other)
        return MultiSeries(a.vars, a.cap, a.coeffs - b.coeffs)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            return MultiSeries(self.vars, self.cap, self.coeffs * COEFF_DTYPE(other))
        a, b = _align(self, other)
        if a.nvars == 0:
            return MultiSeries((), a.cap, a.coeffs * b.coeffs)
        return MultiSeries(a.vars, a.cap, _truncated_product(a.coeffs, b.coeffs, a.cap))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, MultiSeries):
            return self * (1 / COEFF_DTYPE(other))
        return self * recip_series(other)

    def __rtruediv__(self, other):
        return recip_series(self) * other

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            return recip_series(self) ** (-n)
        result = MultiSeries.const(1.0, self.vars, self.cap)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __repr__(self):
        shown = []
        for deg, c in sorted(self.terms(1e-15), key=lambda dc: (sum(dc[0]), dc[0])):
            mono = "*".join(f"{v}^{d}" if d > 1 else v for v, d in zip(self.vars, deg) if d)
            shown.append(f"({c:.6g}){'*' + mono if mono else ''}")
            if len(shown) >= 12:
                shown.append("...")
                break
        body = " + ".join(shown) if shown else "0"
        return f"MultiSeries({body}; vars={self.vars}, cap={self.cap})"

    # ------------------------------------------------------------------
    # serialization
    def to_json_obj(self, tol: float = 0.0) -> dict:
        return {
            "vars": list(self.vars),
            "cap": self.cap,
            "coeffs": [
                {"deg": list(deg), "re": c.real, "im": c.imag}
                for deg, c in self.terms(tol)
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_obj(), **kwargs)

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "MultiSeries":
        try:
            vars = list(obj["vars"])
            cap = int(obj["cap"])
            terms = {}
            for entry in obj.get("coeffs", []):
                deg = tuple(entry["deg"])
                terms[deg] = terms.get(deg, 0) + complex(entry.get("re", 0.0), entry.get("im", 0.0))
        except (KeyError, TypeError) as exc:
            raise SeriesError(f"malformed series JSON: {exc}") from exc
        return cls.from_terms(vars, cap, terms)

    @classmethod
    def from_json(cls, text: str) -> "MultiSeries":
        return cls.from_json_obj(json.loads(text))


def _truncated_product(x: np.ndarray, y: np.ndarray, cap: int) -> np.ndarray:
    # loop over the sparser factor, accumulating shifted copies of the other
    if np.count_nonzero(x) > np.count_nonzero(y):
        x, y = y, x
    out = np.zeros_like(y)
    n = x.ndim
    if n == 1:
        return np.convolve(x, y)[: cap + 1]
    for idx in zip(*np.nonzero(x)):
        dst = tuple(slice(i, cap + 1) for i in idx)
        src = tuple(slice(0, cap + 1 - i) for i in idx)
        out[dst] += x[idx] * y[src]
    return out


def _align(a: MultiSeries, b: MultiSeries) -> tuple[MultiSeries, MultiSeries]:
    cap = min(a.cap, b.cap)
    if a.vars == b.vars:
        vars = a.vars
    elif set(b.vars) <= set(a.vars):
        vars = a.vars
    elif set(a.vars) <= set(b.vars):
        vars = b.vars
    else:
        raise SeriesError(f"incompatible variable sets {a.vars} and {b.vars}")
    return a.truncate(cap).embed(vars), b.truncate(cap).embed(vars)


def allclose(a: MultiSeries, b, tol: float = 1e-10) -> bool:
    """Coefficientwise comparison with tolerance ``tol * 2**degree`` (relative above 1)."""
    diff = a - b
    ref = b if isinstance(b, MultiSeries) else a
    ref = ref.truncate(diff.cap).embed(diff.vars) if set(ref.vars) <= set(diff.vars) else diff
    grid = diff.degree_grid()
    bound = tol * (2.0 ** grid) * np.maximum(1.0, np.abs(ref.coeffs))
    return bool(np.all(np.abs(diff.coeffs) <= bound))


# ----------------------------------------------------------------------
# calculus
def add(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    return a + b


def mul(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    return a * b


def differentiate(s: MultiSeries, var: str) -> MultiSeries:
    """Formal partial derivative; the cap drops by one."""
    if var not in s.vars:
        raise SeriesError(f"cannot differentiate in {var!r}: series variables are {s.vars}")
    if s.cap == 0:
        return MultiSeries(s.vars, 0)
    k = s.vars.index(var)
    n = s.nvars
    src = [slice(0, s.cap)] * n
    src[k] = slice(1, s.cap + 1)
    shape = [1] * n
    shape[k] = s.cap
    factor = np.arange(1, s.cap + 1).reshape(shape)
    arr = s.coeffs[tuple(src)] * factor
    return MultiSeries(s.vars, s.cap - 1, arr)


def integrate(s: MultiSeries, var: str) -> MultiSeries:
    """Antiderivative in ``var`` vanishing at ``var = 0``; the cap rises by one."""
    if var not in s.vars:
        s = s.embed(s.vars + (var,))
    k = s.vars.index(var)
    n = s.nvars
    arr = np.zeros((s.cap + 2,) * n, dtype=COEFF_DTYPE)
    dst = [slice(0, s.cap + 1)] * n
    dst[k] = slice(1, s.cap + 2)
    shape = [1] * n
    shape[k] = s.cap + 1
    arr[tuple(dst)] = s.coeffs / np.arange(1, s.cap + 2).reshape(shape)
    return MultiSeries(s.vars, s.cap + 1, arr)


def euler(s: MultiSeries) -> MultiSeries:
    """Euler operator: scales the degree-d homogeneous part by d."""
    return MultiSeries(s.vars, s.cap, s.coeffs * s.degree_grid())


def euler_inverse(s: MultiSeries) -> MultiSeries:
    """Inverse of :func:`euler` on series without constant term."""
    grid = s.degree_grid().astype(float)
    if s.nvars and abs(s.constant) > 0:
        raise SeriesError("euler_inverse needs a zero constant term")
    with np.errstate(divide="ignore", invalid="ignore"):
        arr = np.where(grid > 0, s.coeffs / np.where(grid > 0, grid, 1.0), 0)
    return MultiSeries(s.vars, s.cap, arr)


def _iterations(cap: int) -> int:
    return max(1, math.ceil(math.log2(max(cap, 1)))) + 1


def recip_series(s: MultiSeries) -> MultiSeries:
    """Multiplicative inverse by Newton iteration ``y <- y (2 - s y)``."""
    c0 = s.coeffs[(0,) * s.nvars]
    if c0 == 0:
        raise SeriesError("recip_series needs a nonzero constant term")
    y = MultiSeries.const(1 / c0, s.vars, s.cap)
    for _ in range(_iterations(s.cap + 1)):
        y = y * (2.0 - s * y)
    return y


def log_series(s: MultiSeries) -> MultiSeries:
    """Principal logarithm, anchored at ``log`` of the constant term."""
    c0 = s.constant
    if c0 == 0:
        raise SeriesError("log_series needs a nonzero constant term")
    # E log s = (E s) / s
    body = euler_inverse(euler(s) * recip_series(s))
    return body + np.log(s.coeffs[(0,) * s.nvars])


def exp_series(s: MultiSeries) -> MultiSeries:
    """Exponential; a nonzero constant term factors out as ``exp(c0)``."""
    ds = euler(s)
    y = MultiSeries.const(1.0, s.vars, s.cap)
    # E y = y E s, one order gained per sweep
    for _ in range(s.cap):
        y = 1.0 + euler_inverse(y * ds)
    return y * np.exp(s.coeffs[(0,) * s.nvars])


def sqrt_series(s: MultiSeries) -> MultiSeries:
    """Principal square root."""
    return power_series(s, 0.5)


def power_series(s: MultiSeries, exponent: float) -> MultiSeries:
    """``s**exponent`` on the principal branch at the constant term."""
    c0 = s.coeffs[(0,) * s.nvars]
    if c0 == 0:
        raise SeriesError("fractional power needs a nonzero constant term")
    unit = MultiSeries(s.vars, s.cap, s.coeffs / c0)
    body = exp_series(exponent * (log_series(unit)))
    return body * c0 ** exponent


# ----------------------------------------------------------------------
# composition
def compose(outer: MultiSeries, assignments: Mapping[str, MultiSeries], polynomial: bool = False) -> MultiSeries:
    """Substitute series for some variables of ``outer`` simultaneously.

    Unassigned variables of ``outer`` are kept.  Substituting a series with
    a nonzero constant term is only allowed when ``outer`` is declared an
    exact ``polynomial`` (otherwise the result would depend on the unknown
    tail beyond ``cap``).
    """
    assignments = {k: v for k, v in assignments.items() if k in outer.vars}
    for name, s in assignments.items():
        if s.constant != 0 and not polynomial:
            raise SeriesError(
                f"substituting a series with nonzero constant term for {name!r} "
                "into a truncated series is ill-defined"
            )
    kept = [v for v in outer.vars if v not in assignments]
    result_vars = list(kept)
    cap = outer.cap
    for s in assignments.values():
        for v in s.vars:
            if v not in result_vars:
                result_vars.append(v)
        if not polynomial:
            cap = min(cap, s.cap)
    result_vars = tuple(result_vars)
    subs = [
        (outer.vars.index(name), s.truncate(min(s.cap, cap)).embed(result_vars))
        for name, s in assignments.items()
    ]
    if polynomial:
        cap = min([cap] + [s.cap for _, s in subs])
        subs = [(k, s.truncate(cap)) for k, s in subs]
    kept_axes = [outer.vars.index(v) for v in kept]

    def rec(arr: np.ndarray, axes: list[int], pending: list) -> MultiSeries:
        # ``arr`` has the remaining outer axes listed in ``axes``
        if not pending:
            order = [axes.index(a) for a in kept_axes]
            base = MultiSeries(kept, outer.cap, np.transpose(arr, order))
            return base.truncate(cap).embed(result_vars) if kept else MultiSeries.const(
                complex(arr), result_vars, cap)
        (k, s), rest = pending[0], pending[1:]
        pos = axes.index(k)
        sub_axes = axes[:pos] + axes[pos + 1:]
        top = outer.cap
        while top > 0 and not np.any(np.take(arr, top, axis=pos)):
            top -= 1
        acc = rec(np.take(arr, top, axis=pos), sub_axes, rest)
        for j in range(top - 1, -1, -1):
            acc = acc * s + rec(np.take(arr, j, axis=pos), sub_axes, rest)
        return acc

    return rec(np.asarray(outer.coeffs), list(range(outer.nvars)), subs)


def solve_implicit(F: MultiSeries, v0: MultiSeries, var: str = "v",
                   iterations: int | None = None) -> MultiSeries:
    """Solve ``F(..., V) = 0`` for ``V`` as a series in the other variables.

    Newton's method on series, started from ``v0``; each step doubles the
    number of correct orders, so ``ceil(log2(cap)) + 1`` steps suffice when
    ``v0`` has the right constant term.
    """
    if var not in F.vars:
        raise SeriesError(f"{var!r} is not a variable of F")
    rest = tuple(x for x in F.vars if x != var)
    if not isinstance(v0, MultiSeries):
        v0 = MultiSeries.const(complex(v0), rest, F.cap)
    v0 = v0.embed(rest) if set(v0.vars) <= set(rest) else v0
    if v0.vars != rest:
        raise SeriesError(f"initial guess must be a series in {rest}")
    cap = min(F.cap, v0.cap)
    c0 = v0.constant
    # recentre so that the unknown has zero constant term
    shifted = F
    if c0 != 0:
        shift = MultiSeries.var(var, F.cap, F.vars) + c0
        shifted = compose(F.truncate(F.cap), {var: shift}, polynomial=True)
    dF = differentiate(shifted, var).truncate(cap)
    if abs(dF.drop_var(var).constant) < 1e-300:
        raise SeriesError("implicit function theorem fails: dF/dv vanishes at the origin")
    V = (v0 - c0).truncate(cap)
    for _ in range(iterations if iterations is not None else _iterations(cap)):
        val = compose(shifted, {var: V})
        slope = compose(dF, {var: V})
        V = V - val * recip_series(slope)
    return V + c0


def horner_univariate(coefficients: Sequence[complex], s: MultiSeries) -> MultiSeries:
    """Evaluate ``sum c_k s**k`` for a coefficient list and a series ``s``."""
    acc = MultiSeries.const(coefficients[-1], s.vars, s.cap)
    for c in reversed(coefficients[:-1]):
        acc = acc * s + c
    return acc
