"""Transmission of derivative data across the interface.

At a base point on the curve, the inside solution's thin-band derivatives
are linear in the outside band derivatives, in both sources' derivatives,
and in the jump data coefficients.  The linear maps are recovered by
differentiating the two jump identities along the parametrization (the
value jump M+1 times, the arc-length-scaled flux jump M times), rewriting
every derivative of total x-order >= 2 through the PDE, and solving the
resulting square system for the 2M+1 inside band derivatives.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import factorial

import numpy as np

from .geometry import InterfaceCurve, normal_sign
from .indexing import lambda_set
from .jets import Jet
from .reduction import reduction_matrices

log = logging.getLogger(__name__)


def tangential_weight_jets(r_jet: Jet, s_jet: Jet, M: int):
    """Jets of the u^(m,n)-coefficients of d^p/dt^p [u(r(t), s(t))].

    Returns {(p, (m, n)): Jet}; the plain value of each jet is the
    coefficient at the expansion parameter.  Built by the product/chain
    recursion; exact for p <= M given curve jets through order M+1.
    """
    full = lambda_set(M, "full")
    rp, sp = r_jet.derivative(), s_jet.derivative()
    n = len(rp.coef)
    zero = Jet.constant(0.0, n - 1)
    P = {(0, (0, 0)): Jet.constant(1.0, n - 1)}
    for p in range(M):
        for m, nn in full:
            cur = P.get((p, (m, nn)))
            if cur is None:
                continue
            key = (p + 1, (m, nn))
            P[key] = P.get(key, zero) + cur.derivative_padded()
            for dm, dn, fac in ((1, 0, rp), (0, 1, sp)):
                if m + dm + nn + dn <= M:
                    key = (p + 1, (m + dm, nn + dn))
                    P[key] = P.get(key, zero) + fac * cur
    return P


def tangential_functional(curve: InterfaceCurve, t_star: float, p: int, M: int) -> np.ndarray:
    """Coefficient vector over the order-M index set of d^p/dt^p [u on curve]."""
    if p > M:
        raise ValueError("derivative order exceeds the index-set order")
    r, s = curve.jets(t_star, M + 1)
    P = tangential_weight_jets(r, s, M)
    full = lambda_set(M, "full")
    out = np.zeros(len(full), dtype=complex)
    for idx, mn in enumerate(full):
        jet = P.get((p, mn))
        if jet is not None:
            out[idx] = jet.coef[0]
    return out


def _jump_rows(r_jet: Jet, s_jet: Jet, M: int):
    """Rows J[p] (value jump) and F[p] (scaled flux jump), index set order M."""
    full = lambda_set(M, "full")
    P = tangential_weight_jets(r_jet, s_jet, M)

    def value(p, mn):
        jet = P.get((p, mn))
        return jet.coef[0] if jet is not None else 0.0

    J = np.zeros((M + 1, len(full)), dtype=complex)
    for p in range(M + 1):
        for idx, mn in enumerate(full):
            J[p, idx] = value(p, mn)
    rpd = r_jet.derivative().derivs()
    spd = s_jet.derivative().derivs()
    F = np.zeros((M, len(full)), dtype=complex)
    from math import comb

    for p in range(M):
        for idx, (m, nn) in enumerate(full):
            acc = 0.0
            for j in range(p + 1):
                c = comb(p, j)
                if m >= 1:
                    acc += c * spd[p - j] * value(j, (m - 1, nn))
                if nn >= 1:
                    acc -= c * rpd[p - j] * value(j, (m, nn - 1))
            F[p, idx] = acc
    return J, F


@dataclass(frozen=True)
class TransmissionTable:
    """Linear maps from outside data to the inside band derivatives."""

    order: int
    band: tuple
    fset: tuple
    Tu: np.ndarray
    Tf_plus: np.ndarray
    Tf_minus: np.ndarray
    Tg: np.ndarray
    TgGamma: np.ndarray
    cond: float

    def inside_band(self, u_plus_band, f_plus, f_minus, g, g_gamma):
        return (
            self.Tu @ u_plus_band
            + self.Tf_plus @ f_plus
            + self.Tf_minus @ f_minus
            + self.Tg @ g
            + self.TgGamma @ g_gamma
        )


def transmission(
    curve: InterfaceCurve,
    t_star: float,
    k_plus: float,
    k_minus: float,
    M: int,
    sigma: int | None = None,
    probe: float = 1e-4,
) -> TransmissionTable:
    """Transmission table of order M at one base point.

    ``sigma`` orients the conormal toward the positive region; when None it
    is determined by probing the level set at distance ``probe``.
    """
    if M > 7:
        raise ValueError("transmission supported through order 7")
    if sigma is None:
        sigma = normal_sign(curve, t_star, probe)
    r, s = curve.jets(t_star, M + 1)
    J, F = _jump_rows(r, s, M)
    band_p, fset_p, Rup, Rfp = reduction_matrices(M, k_plus)
    band_m, fset_m, Rum, Rfm = reduction_matrices(M, k_minus)
    nb = len(band_p)
    A = np.vstack([J @ Rum, sigma * (F @ Rum)])
    Bu = np.vstack([J @ Rup, sigma * (F @ Rup)])
    Bfp = np.vstack([J @ Rfp, sigma * (F @ Rfp)])
    Bfm = -np.vstack([J @ Rfm, sigma * (F @ Rfm)])
    Bg = np.zeros((2 * M + 1, M + 1), dtype=complex)
    Bgg = np.zeros((2 * M + 1, M), dtype=complex)
    for p in range(M + 1):
        Bg[p, p] = -factorial(p)
    for p in range(M):
        Bgg[M + 1 + p, p] = -factorial(p)
    scale = np.abs(A).max(axis=1)
    if not np.all(scale > 0):
        raise np.linalg.LinAlgError("degenerate transmission row")
    A_s = A / scale[:, None]
    cond = float(np.linalg.cond(A_s))
    if not np.isfinite(cond):
        raise np.linalg.LinAlgError(f"singular transmission system (cond={cond})")
    log.debug("transmission system at t*=%.6f: cond %.3e", t_star, cond)
    rhs = np.hstack([Bu, Bfp, Bfm, Bg, Bgg]) / scale[:, None]
    sol = np.linalg.solve(A_s, rhs)
    c0, c1 = nb, nb + len(fset_p)
    return TransmissionTable(
        M,
        tuple(band_p),
        tuple(fset_p),
        sol[:, :c0],
        sol[:, c0:c1],
        sol[:, c1 : c1 + len(fset_m)],
        sol[:, c1 + len(fset_m) : c1 + len(fset_m) + M + 1],
        sol[:, c1 + len(fset_m) + M + 1 :],
        cond,
    )
