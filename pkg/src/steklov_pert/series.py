"""Finite real trigonometric series and exact arithmetic on them.

A series is stored densely as cosine coefficients ``b[0..J]`` and sine
coefficients ``a[0..J]`` and represents

    s(theta) = sum_j a_j sin(j theta) + b_j cos(j theta).

``a_0`` is identically absent (sin(0) == 0): any nonzero input there is
discarded with a warning.  Instances are immutable; every operation returns
a new series, so values can be shared freely between threads.
"""

import json
import warnings

import numpy as np

MODE_CAP = 64


def _as_coeff_array(values, name):
    arr = np.atleast_1d(np.asarray(values, dtype=float))
    if arr.ndim != 1:
        raise ValueError(f"{name}: expected a 1-d coefficient array")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: coefficients must be finite")
    return arr


class FourierSeries:
    """Immutable finite Fourier series with cosine part ``b`` and sine part ``a``.

    Parameters
    ----------
    b : array-like, optional
        Cosine coefficients, index = mode (``b[0]`` is the constant term).
    a : array-like, optional
        Sine coefficients, index = mode.  Position 0 is meaningless and is
        discarded with a warning if nonzero.
    cap : int
        Largest admissible mode index; guards against runaway growth through
        repeated products.
    """

    __slots__ = ("a", "b", "_cap")

    def __init__(self, b=None, a=None, cap=MODE_CAP):
        b = _as_coeff_array(b if b is not None else [0.0], "b")
        a = _as_coeff_array(a if a is not None else [0.0], "a")
        if a[0] != 0.0:
            warnings.warn("sine coefficient at mode 0 is meaningless; discarding it")
        n = max(b.size, a.size)
        bb = np.zeros(n)
        aa = np.zeros(n)
        bb[: b.size] = b
        aa[: a.size] = a
        aa[0] = 0.0
        # trim trailing zeros so max_mode is tight
        j = n - 1
        while j > 0 and bb[j] == 0.0 and aa[j] == 0.0:
            j -= 1
        bb = bb[: j + 1]
        aa = aa[: j + 1]
        if j > cap:
            raise ValueError(f"mode {j} exceeds the cap {cap}")
        bb.flags.writeable = False
        aa.flags.writeable = False
        self.b = bb
        self.a = aa
        self._cap = cap

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, value):
        return cls(b=[float(value)])

    @classmethod
    def cosine(cls, mode, amplitude=1.0, cap=MODE_CAP):
        b = np.zeros(mode + 1)
        b[mode] = amplitude
        return cls(b=b, cap=cap)

    @classmethod
    def sine(cls, mode, amplitude=1.0, cap=MODE_CAP):
        if mode < 1:
            raise ValueError("sine mode must be >= 1")
        a = np.zeros(mode + 1)
        a[mode] = amplitude
        return cls(a=a, cap=cap)

    @classmethod
    def from_dict(cls, data):
        """Build a series from ``{"a": {...}, "b": {...}}`` JSON-style data.

        Coefficient maps use string mode indices; dense lists are also
        accepted, with index = position.
        """
        if not isinstance(data, dict):
            raise ValueError("rho: expected a JSON object with 'a'/'b' entries")
        unknown = set(data) - {"a", "b"}
        if unknown:
            raise ValueError(f"rho: unknown keys {sorted(unknown)}")
        out = {}
        for name in ("a", "b"):
            entry = data.get(name)
            if entry is None:
                out[name] = [0.0]
            elif isinstance(entry, dict):
                coeffs = {}
                for key, value in entry.items():
                    try:
                        mode = int(key)
                    except (TypeError, ValueError):
                        raise ValueError(f"rho.{name}: bad mode index {key!r}") from None
                    if mode < 0:
                        raise ValueError(f"rho.{name}: negative mode index {mode}")
                    coeffs[mode] = float(value)
                size = max(coeffs) + 1 if coeffs else 1
                dense = np.zeros(size)
                for mode, value in coeffs.items():
                    dense[mode] = value
                out[name] = dense
            elif isinstance(entry, (list, tuple)):
                out[name] = [float(v) for v in entry] or [0.0]
            else:
                raise ValueError(f"rho.{name}: expected a map or a list")
        return cls(b=out["b"], a=out["a"])

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"rho: invalid JSON ({exc})") from None
        return cls.from_dict(data)

    def to_dict(self):
        return {
            "a": {str(j): float(self.a[j]) for j in range(1, self.a.size) if self.a[j] != 0.0},
            "b": {str(j): float(self.b[j]) for j in range(self.b.size) if self.b[j] != 0.0},
        }

    # -- basic queries -----------------------------------------------------

    @property
    def max_mode(self):
        """Largest index carrying a nonzero coefficient (0 for the zero series)."""
        return self.b.size - 1

    def is_zero(self, tol=0.0):
        return bool(np.all(np.abs(self.a) <= tol) and np.all(np.abs(self.b) <= tol))

    def coeff(self, j):
        """(a_j, b_j) for j >= 0, zero-padded beyond the stored range."""
        if j < 0:
            raise ValueError("coeff expects j >= 0; use signed_coefficient for j < 0")
        if j > self.max_mode:
            return (0.0, 0.0)
        return (float(self.a[j]), float(self.b[j]))

    def signed_coefficient(self, j):
        """(a_j, b_j) for any integer j under the convention a_{-j} = -a_j, b_{-j} = b_j."""
        if j >= 0:
            return self.coeff(j)
        aj, bj = self.coeff(-j)
        return (-aj, bj)

    def sum_of_squares(self):
        """sum_{j>=1} (a_j^2 + b_j^2)."""
        return float(np.dot(self.a[1:], self.a[1:]) + np.dot(self.b[1:], self.b[1:]))

    # -- evaluation and calculus -------------------------------------------

    def evaluate(self, theta):
        """Evaluate the series at angle(s) theta (scalar or array, radians)."""
        theta_arr = np.asarray(theta, dtype=float)
        modes = np.arange(self.b.size)
        angles = np.multiply.outer(theta_arr, modes)
        values = np.cos(angles) @ self.b + np.sin(angles) @ self.a
        if np.isscalar(theta) or theta_arr.ndim == 0:
            return float(values)
        return values

    def derivative(self):
        """Term-by-term derivative: b'_j = j a_j, a'_j = -j b_j."""
        modes = np.arange(self.b.size, dtype=float)
        return FourierSeries(b=modes * self.a, a=-modes * self.b, cap=self._cap)

    def product(self, other):
        """Exact trigonometric product, re-expanded in the Fourier basis.

        Uses the product-to-sum identities pairwise, so the result has
        max_mode <= max_mode(self) + max_mode(other).
        """
        if not isinstance(other, FourierSeries):
            raise TypeError("product expects another FourierSeries")
        js = self.b.size
        jt = other.b.size
        nb = np.zeros(js + jt - 1)
        na = np.zeros(js + jt - 1)

        def add_cos(m, c):
            nb[abs(m)] += c

        def add_sin(m, c):
            if m > 0:
                na[m] += c
            elif m < 0:
                na[-m] -= c

        for i in range(js):
            ai, bi = self.a[i], self.b[i]
            if ai == 0.0 and bi == 0.0:
                continue
            for j in range(jt):
                aj, bj = other.a[j], other.b[j]
                if aj == 0.0 and bj == 0.0:
                    continue
                # cos*cos, sin*sin, sin*cos, cos*sin
                if bi != 0.0 and bj != 0.0:
                    add_cos(i - j, 0.5 * bi * bj)
                    add_cos(i + j, 0.5 * bi * bj)
                if ai != 0.0 and aj != 0.0:
                    add_cos(i - j, 0.5 * ai * aj)
                    add_cos(i + j, -0.5 * ai * aj)
                if ai != 0.0 and bj != 0.0:
                    add_sin(i + j, 0.5 * ai * bj)
                    add_sin(i - j, 0.5 * ai * bj)
                if bi != 0.0 and aj != 0.0:
                    add_sin(i + j, 0.5 * bi * aj)
                    add_sin(i - j, -0.5 * bi * aj)
        return FourierSeries(b=nb, a=na, cap=max(self._cap, other._cap))

    def square(self):
        return self.product(self)

    def truncate(self, max_mode):
        """Drop all coefficients above ``max_mode``; idempotent."""
        if max_mode < 0:
            raise ValueError("truncate expects max_mode >= 0")
        cut = min(max_mode + 1, self.b.size)
        return FourierSeries(b=self.b[:cut], a=self.a[:cut], cap=self._cap)

    # -- linear-space operations -------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = FourierSeries.constant(other)
        if not isinstance(other, FourierSeries):
            return NotImplemented
        n = max(self.b.size, other.b.size)
        b = np.zeros(n)
        a = np.zeros(n)
        b[: self.b.size] += self.b
        b[: other.b.size] += other.b
        a[: self.a.size] += self.a
        a[: other.a.size] += other.a
        return FourierSeries(b=b, a=a, cap=max(self._cap, other._cap))

    __radd__ = __add__

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, float)):
            return NotImplemented
        return FourierSeries(b=self.b * scalar, a=self.a * scalar, cap=self._cap)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other if isinstance(other, FourierSeries) else -float(other))

    def allclose(self, other, tol=1e-12):
        n = max(self.b.size, other.b.size)
        b1 = np.zeros(n)
        b2 = np.zeros(n)
        a1 = np.zeros(n)
        a2 = np.zeros(n)
        b1[: self.b.size] = self.b
        b2[: other.b.size] = other.b
        a1[: self.a.size] = self.a
        a2[: other.a.size] = other.a
        return bool(np.all(np.abs(b1 - b2) <= tol) and np.all(np.abs(a1 - a2) <= tol))

    def __repr__(self):
        terms = []
        for j in range(self.b.size):
            if self.b[j] != 0.0:
                terms.append(f"b{j}={self.b[j]:g}")
            if self.a[j] != 0.0:
                terms.append(f"a{j}={self.a[j]:g}")
        return f"FourierSeries({', '.join(terms) or '0'})"
