"""Stencils for grid points whose 9-point footprint straddles the interface.

Rows at irregular points carry scale h^-1 and expand every footprint value
about the on-curve base point with the kernels of its own side; the inside
contributions are converted to outside data through the transmission table.
For equal wavenumbers the interior coefficients are reused unchanged
(seventh-order local accuracy); for unequal wavenumbers the coefficients
are polynomials in max(k+,k-)*h solving the order-5 fit condition at each
point, with the same pinned leading constants as the interior scheme and
remaining freedom zeroed deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .geometry import BasePoint
from .indexing import lambda_set
from .kernels import g_kernel, g_kernel_hcoeffs, h_kernel
from .stencils import interior_reduced
from .transmission import TransmissionTable

_OFFSETS9 = tuple(
    sorted(((a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)), key=lambda o: (abs(o[0]) + abs(o[1]), o))
)
_PINNED0 = {off: (-20.0 if off == (0, 0) else 4.0 if abs(off[0]) + abs(off[1]) == 1 else 1.0) for off in _OFFSETS9}


class SchemeDerivationError(RuntimeError):
    pass


@dataclass(frozen=True)
class IrregularStencil:
    """One irregular row: 9 coefficients and its data weight tables."""

    base: BasePoint
    footprint: tuple
    coeffs: np.ndarray
    f_plus: dict
    f_minus: dict
    g: np.ndarray
    g_gamma: np.ndarray

    def rhs(self, f_plus_deriv, f_minus_deriv, jump):
        """Contract the tables against derivative oracles and jump data."""
        acc = sum(w * f_plus_deriv(m, n) for (m, n), w in self.f_plus.items())
        acc += sum(w * f_minus_deriv(m, n) for (m, n), w in self.f_minus.items())
        acc += self.g @ jump.g[: len(self.g)]
        acc += self.g_gamma @ jump.g_gamma[: len(self.g_gamma)]
        return acc


def _tables(base, d_plus, d_minus, coeffs, k_plus, k_minus, h, trans: TransmissionTable, level: int):
    """Shared right-hand-side table construction at kernel level ``level``."""
    v0, w0 = base.v0, base.w0
    cmap = dict(zip(_OFFSETS9, coeffs))
    band = lambda_set(level, "band1")
    fset = lambda_set(level - 2, "full")
    I_minus = np.zeros(len(band), dtype=complex)
    for idx, (m, n) in enumerate(band):
        I_minus[idx] = sum(
            cmap[o] * g_kernel(level, m, n, k_minus, (v0 + o[0]) * h, (w0 + o[1]) * h) for o in d_minus
        )
    f_plus, f_minus = {}, {}
    for m, n in fset:
        jp = sum(cmap[o] * h_kernel(level, m, n, k_plus, (v0 + o[0]) * h, (w0 + o[1]) * h) for o in d_plus)
        jm = sum(cmap[o] * h_kernel(level, m, n, k_minus, (v0 + o[0]) * h, (w0 + o[1]) * h) for o in d_minus)
        fi = fset.index((m, n))
        f_plus[(m, n)] = (jp + I_minus @ trans.Tf_plus[:, fi]) / h
        f_minus[(m, n)] = (jm + I_minus @ trans.Tf_minus[:, fi]) / h
    g = (I_minus @ trans.Tg) / h
    g_gamma = (I_minus @ trans.TgGamma) / h
    return f_plus, f_minus, g, g_gamma


def irregular_stencil_same_k(
    base: BasePoint, d_plus, d_minus, k: float, h: float, trans: TransmissionTable
) -> IrregularStencil:
    """Irregular row for equal wavenumbers (interior coefficients, level 7)."""
    if trans.order != 7:
        raise ValueError("equal-wavenumber scheme expects an order-7 transmission table")
    coeffs = interior_reduced(k * h).coeffs
    f_plus, f_minus, g, gg = _tables(base, d_plus, d_minus, coeffs, k, k, h, trans, 7)
    return IrregularStencil(base, _OFFSETS9, coeffs, f_plus, f_minus, g, gg)


def solve_coefficients(base: BasePoint, d_plus, d_minus, k_plus: float, k_minus: float, h: float,
                       trans: TransmissionTable, M: int = 5):
    """Coefficient polynomials solving the order-M fit condition.

    Each coefficient is sum_p c[offset, p] (max(k+, k-) h)^p with the p = 0
    values pinned to the interior constants; the linear conditions demand
    every h-power through h^M of each band-derivative functional to cancel
    after transmission.  The underdetermined system is resolved by a
    column-pivoted basic solution with the free columns zeroed.
    """
    K = max(k_plus, k_minus)
    v0, w0 = base.v0, base.w0
    band = lambda_set(M, "band1")
    # per-offset polynomial weights Phi (coefficients in powers of h)
    phi = {}
    for off in _OFFSETS9:
        X, Y = v0 + off[0], w0 + off[1]
        if off in d_plus:
            acc = {mn: g_kernel_hcoeffs(M, mn[0], mn[1], k_plus, X, Y) for mn in band}
        else:
            gm = np.stack([g_kernel_hcoeffs(M, m, n, k_minus, X, Y) for (m, n) in band])
            acc = {mn: trans.Tu[:, i] @ gm for i, mn in enumerate(band)}
        phi[off] = acc
    slots = [(off, p) for off in _OFFSETS9 for p in range(1, M + 1)]
    rows, rhs = [], []
    for mn in band:
        for t in range(M + 1):
            row = np.zeros(len(slots), dtype=complex)
            for j, (off, p) in enumerate(slots):
                if 0 <= t - p <= M:
                    row[j] = K**p * phi[off][mn][t - p]
            b = -sum(_PINNED0[off] * phi[off][mn][t] for off in _OFFSETS9)
            rows.append(row)
            rhs.append(b)
    A = np.array(rows)
    b = np.array(rhs)
    scale = np.abs(A).max(axis=1)
    scale[scale == 0] = 1.0
    A_s, b_s = A / scale[:, None], b / scale
    Q, R, piv = scipy.linalg.qr(A_s, pivoting=True)
    diag = np.abs(np.diag(R))
    rank = int(np.sum(diag > 1e-10 * diag[0]))
    y = Q.conj().T @ b_s
    z = scipy.linalg.solve_triangular(R[:rank, :rank], y[:rank])
    x = np.zeros(len(slots), dtype=complex)
    x[piv[:rank]] = z
    resid = np.abs(A_s @ x - b_s).max()
    if resid > 1e-9:
        raise SchemeDerivationError(
            f"no order-{M} coefficient solution at node {base.owner} (residual {resid:.2e})"
        )
    coeffs = np.empty(9, dtype=complex)
    for i, off in enumerate(_OFFSETS9):
        val = _PINNED0[off]
        for p in range(1, M + 1):
            val = val + x[slots.index((off, p))] * (K * h) ** p
        coeffs[i] = val
    return coeffs


def irregular_stencil_general(
    base: BasePoint, d_plus, d_minus, k_plus: float, k_minus: float, h: float,
    trans: TransmissionTable
) -> IrregularStencil:
    """Irregular row for possibly unequal wavenumbers (order 5, level 5)."""
    if trans.order != 5:
        raise ValueError("general scheme expects an order-5 transmission table")
    coeffs = solve_coefficients(base, d_plus, d_minus, k_plus, k_minus, h, trans)
    f_plus, f_minus, g, gg = _tables(base, d_plus, d_minus, coeffs, k_plus, k_minus, h, trans, 5)
    return IrregularStencil(base, _OFFSETS9, coeffs, f_plus, f_minus, g, gg)
