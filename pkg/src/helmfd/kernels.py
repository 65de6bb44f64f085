"""Truncated expansion kernels pairing point values with derivative data.

A smooth function obeying Du + k^2 u = f admits, around a base point, the
representation

    u(x* + x, y* + y) = sum_{m<=1, m+n<=L} u^(m,n) g(L,m,n; x,y)
                      + sum_{m+n<=L-2}     f^(m,n) h(L,m,n; x,y) + O(h^(L+1)),

where g and h are the finite bivariate polynomials evaluated here.  Both are
double sums with floor-bounded ranges, alternating signs, and binomial
weights in k^2; ``level`` is the truncation level L.

The lowest total degree of g(L,m,n) in (x, y) is m + n, and of h(L,m,n) is
m + n + 2; this degree bookkeeping is what keeps the h^(-1)/h^(-2)-scaled
right-hand-side tables bounded as h -> 0.
"""

from __future__ import annotations

import math

import numpy as np

# factorials precomputed well past the largest level (L + 2 <= 10 + 2)
_FACT = [math.factorial(i) for i in range(21)]


def g_kernel(level: int, m: int, n: int, k: float, x, y):
    """Point-value weight of u^(m,n) at offset (x, y), truncation level L.

    Accepts scalar or broadcastable ndarray offsets.  Empty summation range
    (m + n > level) yields 0.
    """
    if level < 0 or m < 0 or n < 0:
        raise ValueError("level, m, n must be nonnegative")
    total = 0.0
    k2 = k * k
    for p in range((level - m - n) // 2 + 1):
        kp = k2**p
        part = 0.0
        for l in range(p, p + n // 2 + 1):
            c = math.comb(l, p) / (_FACT[m + 2 * l] * _FACT[n + 2 * p - 2 * l])
            term = c * x ** (m + 2 * l) * y ** (n + 2 * p - 2 * l)
            part = part + (-term if l % 2 else term)
        total = total + kp * part
    return total


def h_kernel(level: int, m: int, n: int, k: float, x, y):
    """Point-value weight of f^(m,n) at offset (x, y), truncation level L."""
    if level < 0 or m < 0 or n < 0:
        raise ValueError("level, m, n must be nonnegative")
    total = 0.0
    k2 = k * k
    for p in range((level - 2 - m - n) // 2 + 1):
        kp = k2**p
        part = 0.0
        for l in range(1 + p, 1 + p + n // 2 + 1):
            c = math.comb(l - 1, p) / (_FACT[m + 2 * l] * _FACT[2 * p + n + 2 - 2 * l])
            term = c * x ** (m + 2 * l) * y ** (2 * p + n + 2 - 2 * l)
            part = part + (term if l % 2 else -term)
        total = total + kp * part
    return total


def g_kernel_hcoeffs(level: int, m: int, n: int, k: float, a: float, b: float) -> np.ndarray:
    """Coefficients in powers of h of g_kernel(level, m, n, k, a*h, b*h).

    Returns an array c with c[d] multiplying h^d, d = 0..level.  Term degrees
    are m + n + 2p, so only those slots are populated.
    """
    out = np.zeros(level + 1)
    k2 = k * k
    for p in range((level - m - n) // 2 + 1):
        d = m + n + 2 * p
        kp = k2**p
        acc = 0.0
        for l in range(p, p + n // 2 + 1):
            c = math.comb(l, p) / (_FACT[m + 2 * l] * _FACT[n + 2 * p - 2 * l])
            term = c * a ** (m + 2 * l) * b ** (n + 2 * p - 2 * l)
            acc += -term if l % 2 else term
        out[d] += kp * acc
    return out


def h_kernel_hcoeffs(level: int, m: int, n: int, k: float, a: float, b: float) -> np.ndarray:
    """Coefficients in powers of h of h_kernel(level, m, n, k, a*h, b*h)."""
    out = np.zeros(level + 1)
    k2 = k * k
    for p in range((level - 2 - m - n) // 2 + 1):
        d = m + n + 2 * p + 2
        kp = k2**p
        acc = 0.0
        for l in range(1 + p, 1 + p + n // 2 + 1):
            c = math.comb(l - 1, p) / (_FACT[m + 2 * l] * _FACT[2 * p + n + 2 - 2 * l])
            term = c * a ** (m + 2 * l) * b ** (2 * p + n + 2 - 2 * l)
            acc += term if l % 2 else -term
        out[d] += kp * acc
    return out
