"""Truncated univariate Taylor arithmetic.

A ``Jet`` carries the Taylor coefficients a[j] = f^(j)(t0)/j! of a function
at one point, up to a fixed order.  Arithmetic and the elementary functions
propagate coefficients exactly (standard power-series recurrences), which is
how the curve parametrizations and interface jump data supply analytic
derivatives of arbitrary composite expressions without symbolic algebra.
"""

from __future__ import annotations

import math

import numpy as np


class Jet:
    __slots__ = ("coef",)

    def __init__(self, coef):
        self.coef = np.asarray(coef, dtype=complex)

    @classmethod
    def variable(cls, t0: float, order: int) -> "Jet":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = t0
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value, order: int) -> "Jet":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(c)

    @property
    def order(self) -> int:
        return len(self.coef) - 1

    def deriv(self, p: int):
        """p-th derivative value at the expansion point."""
        return self.coef[p] * math.factorial(p)

    def derivative(self) -> "Jet":
        """The jet of f', one order shorter."""
        n = len(self.coef)
        return Jet(self.coef[1:] * np.arange(1, n))

    def derivative_padded(self) -> "Jet":
        """The jet of f' kept at the same length (top coefficient invalid).

        Used inside fixed-length recursions that only ever read entries
        whose order stays within the remaining validity range.
        """
        n = len(self.coef)
        out = np.zeros(n, dtype=complex)
        out[: n - 1] = self.coef[1:] * np.arange(1, n)
        return Jet(out)

    def derivs(self) -> np.ndarray:
        """All derivative values f^(0..order)(t0)."""
        return self.coef * np.array([math.factorial(j) for j in range(len(self.coef))])

    def _wrap(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(other, self.order)

    def __add__(self, other):
        o = self._wrap(other)
        return Jet(self.coef + o.coef)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.coef)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        o = self._wrap(other)
        n = len(self.coef)
        out = np.zeros(n, dtype=complex)
        for j in range(n):
            out[j] = np.dot(self.coef[: j + 1], o.coef[j::-1])
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._wrap(other).reciprocal()

    def __rtruediv__(self, other):
        return self._wrap(other) * self.reciprocal()

    def __pow__(self, p: int):
        if p < 0:
            return self.reciprocal() ** (-p)
        out = Jet.constant(1.0, self.order)
        for _ in range(p):
            out = out * self
        return out

    def reciprocal(self) -> "Jet":
        f = self.coef
        if f[0] == 0:
            raise ZeroDivisionError("jet with zero constant term")
        n = len(f)
        r = np.zeros(n, dtype=complex)
        r[0] = 1.0 / f[0]
        for j in range(1, n):
            r[j] = -np.dot(f[1 : j + 1], r[j - 1 :: -1]) / f[0]
        return Jet(r)

    def sqrt(self) -> "Jet":
        f = self.coef
        n = len(f)
        q = np.zeros(n, dtype=complex)
        q[0] = np.sqrt(f[0])
        if q[0] == 0:
            raise ZeroDivisionError("sqrt of jet vanishing at the base point")
        for j in range(1, n):
            s = np.dot(q[1:j], q[j - 1 : 0 : -1]) if j >= 2 else 0.0
            q[j] = (f[j] - s) / (2 * q[0])
        return Jet(q)

    def _chain(self, v0, dv0, second_sign):
        """Shared recurrence for (sin, cos) and (cosh-like) pairs."""
        f = self.coef
        n = len(f)
        s = np.zeros(n, dtype=complex)
        c = np.zeros(n, dtype=complex)
        s[0], c[0] = v0, dv0
        for j in range(1, n):
            ds = 0.0
            dc = 0.0
            for l in range(1, j + 1):
                ds += l * f[l] * c[j - l]
                dc += l * f[l] * s[j - l]
            s[j] = ds / j
            c[j] = second_sign * dc / j
        return Jet(s), Jet(c)

    def sincos(self):
        """(sin(f), cos(f)) as jets."""
        return self._chain(np.sin(self.coef[0]), np.cos(self.coef[0]), -1.0)

    def sin(self) -> "Jet":
        return self.sincos()[0]

    def cos(self) -> "Jet":
        return self.sincos()[1]

    def exp(self) -> "Jet":
        f = self.coef
        n = len(f)
        e = np.zeros(n, dtype=complex)
        e[0] = np.exp(f[0])
        for j in range(1, n):
            e[j] = sum(l * f[l] * e[j - l] for l in range(1, j + 1)) / j
        return Jet(e)
