"""PDE-based reduction of high derivatives to a thin band plus source data.

Differentiating Du + k^2 u = f repeatedly in one coordinate lets any u^(m,n)
with m >= 2 be rewritten through derivatives with x-order at most one
(x-major form), at the price of f-derivative terms of total order at most
m + n - 2.  The y-major form swaps the roles of m and n.  These identities
hold exactly at any point where u solves the equation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .indexing import lambda_set


@dataclass(frozen=True)
class ReductionFunctional:
    """u^(target) expressed as sum(coef * u^(idx)) + sum(coef * f^(idx)).

    For a target already in the band the functional is the identity (single
    u-term, no f-terms); that case is legitimate input, not an error.
    """

    target: tuple
    u_terms: tuple  # ((m, n), coefficient) pairs, band indices
    f_terms: tuple  # ((m, n), coefficient) pairs, total order <= m+n-2

    def evaluate(self, u_deriv, f_deriv):
        """Apply to callables u_deriv(m, n), f_deriv(m, n)."""
        acc = sum(c * u_deriv(m, n) for (m, n), c in self.u_terms)
        acc += sum(c * f_deriv(m, n) for (m, n), c in self.f_terms)
        return acc


def reduce_derivative(m: int, n: int, k: float, orientation: str = "x-major") -> ReductionFunctional:
    """Reduction of u^(m,n) to x-order <= 1 (or y-order <= 1) derivatives.

    ``x-major`` eliminates x-orders m >= 2; ``y-major`` eliminates y-orders
    n >= 2.  Targets already inside the band return the identity functional.
    """
    if m < 0 or n < 0:
        raise ValueError("derivative orders must be nonnegative")
    if orientation not in ("x-major", "y-major"):
        raise ValueError(f"unknown orientation {orientation!r}")
    if orientation == "y-major":
        flipped = reduce_derivative(n, m, k, "x-major")
        return ReductionFunctional(
            (m, n),
            tuple(((b, a), c) for (a, b), c in flipped.u_terms),
            tuple(((b, a), c) for (a, b), c in flipped.f_terms),
        )
    if m <= 1:
        return ReductionFunctional((m, n), (((m, n), 1.0),), ())
    half = m // 2
    odd = m % 2
    k2 = k * k
    sign = -1.0 if half % 2 else 1.0
    u_terms = [
        ((odd, 2 * half + n - 2 * i), sign * math.comb(half, i) * k2**i)
        for i in range(half + 1)
    ]
    f_terms = []
    for i in range(1, half + 1):
        s = -1.0 if (i - 1) % 2 else 1.0
        for j in range(i):
            f_terms.append(((m - 2 * i, n + 2 * j), s * math.comb(i - 1, j) * k2 ** (i - j - 1)))
    return ReductionFunctional((m, n), tuple(u_terms), tuple(f_terms))


def reduction_matrices(M: int, k: float):
    """Matrices mapping all derivatives of order <= M to band + source data.

    Returns (band, fset, R_u, R_f) where ``R_u`` has shape (|full|, |band1|)
    and ``R_f`` has shape (|full|, |order <= M-2|), both laid out in
    graded-lex order, such that

        u^(idx) = (R_u @ u_band)[idx] + (R_f @ f_full)[idx]

    for every idx in the full set whenever u solves the equation at the
    evaluation point.
    """
    full = lambda_set(M, "full")
    band = lambda_set(M, "band1")
    fset = lambda_set(max(M - 2, 0), "full")
    R_u = np.zeros((len(full), len(band)))
    R_f = np.zeros((len(full), len(fset)))
    for r, (m, n) in enumerate(full):
        func = reduce_derivative(m, n, k)
        for idx, c in func.u_terms:
            R_u[r, band.index(idx)] += c
        for idx, c in func.f_terms:
            R_f[r, fset.index(idx)] += c
    return band, fset, R_u, R_f
