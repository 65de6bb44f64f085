"""Plane-wave truncation minimization for pollution reduction.

The free parameters of each stencil family are pinned by a two-stage fit:

1. per mesh-ratio sample eps = k*h, minimize the angular average of the
   squared plane-wave truncation error over the non-center stencil classes
   (center fixed to the family's constant: -20 interior, -10 side, -5
   corner); the objective is an exact quadratic, solved by small normal
   equations.
2. least-squares match of the family's coefficient polynomials to the
   per-sample minimizers over the whole sample set, then rounding of the
   free parameters to multiples of 2^-20.

Boundary and corner objectives include the plane wave's own boundary data
contracted against the trial scheme's data tables, so the minimization sees
the full one-row truncation error, not just the interior part.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import derive
from .stencils import FreeParams, impedance_side_values, interior_family


@dataclass(frozen=True)
class KhSampleSet:
    samples: tuple

    @classmethod
    def paper(cls) -> "KhSampleSet":
        return cls(tuple(0.25 + 3 * s / 4000 for s in range(1001)))


@dataclass(frozen=True)
class TruncationQuadrature:
    """Composite 3/8-rule nodes/weights on the periodic circle."""

    n_points: int = 900

    def __post_init__(self):
        if self.n_points % 3:
            raise ValueError("point count must be divisible by 3")

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n_points) * (2 * np.pi / self.n_points)

    @property
    def weights(self) -> np.ndarray:
        step = 2 * np.pi / self.n_points
        w = np.full(self.n_points, 3.0)
        w[::3] = 2.0
        return w * (3 * step / 8)


_QUAD = TruncationQuadrature()


def _interior_basis(kh: float, quad: TruncationQuadrature = _QUAD):
    th = quad.nodes
    cx, sy = np.cos(kh * np.cos(th)), np.cos(kh * np.sin(th))
    return 4 * cx * sy, 2 * (np.cos(kh * np.cos(th)) + np.cos(kh * np.sin(th)))


def interior_truncation(cw11: float, cw10: float, kh: float) -> float:
    """Angular-average squared truncation of the normalized interior trial.

    Center coefficient fixed at -20; the integrand is real and pi/2
    symmetric for the symmetric footprint.
    """
    A, B = _interior_basis(kh)
    T = cw11 * A + cw10 * B - 20.0
    return float(_QUAD.weights @ (np.abs(T) ** 2))


def minimize_per_kh(kh: float):
    """Per-sample minimizer of the interior truncation (2x2 normal solve)."""
    if not 0 < kh:
        raise ValueError("kh must be positive")
    A, B = _interior_basis(kh)
    w = _QUAD.weights
    M = np.array([[w @ (A * A), w @ (A * B)], [w @ (A * B), w @ (B * B)]])
    det = M[0, 0] * M[1, 1] - M[0, 1] ** 2
    if not det > 1e-12 * max(M[0, 0] * M[1, 1], 1.0):
        raise np.linalg.LinAlgError(f"singular normal matrix at kh={kh}")
    rhs = np.array([20 * (w @ A), 20 * (w @ B)])
    sol = np.linalg.solve(M, rhs)
    return float(sol[0]), float(sol[1])


def round_dyadic(values, bits: int = 20):
    v = np.asarray(values, dtype=float)
    return np.round(v * 2**bits) / 2**bits


def _interior_class_values(kh, c8):
    c = FreeParams(tuple(c8) + (0.0, 0.0, 0.0))
    st = interior_family(kh, c)
    return (
        st.coeff((1, 1)).real,
        st.coeff((1, 0)).real,
        st.coeff((0, 0)).real,
    )


def fit_free_params(per_kh_targets, samples=None, round_bits: int = 20) -> FreeParams:
    """Pin the eight interior parameters to the per-sample minimizers.

    ``per_kh_targets`` is a sequence of (cw11, cw10) minimizers aligned with
    ``samples`` (the paper sample set by default).  Linear least squares in
    the parameters, then dyadic rounding; the three seventh-degree
    parameters stay zero.
    """
    samples = KhSampleSet.paper().samples if samples is None else samples
    targets = np.asarray(per_kh_targets, dtype=float)
    rows = []
    rhs = []
    base = np.array([_interior_class_values(kh, np.zeros(8)) for kh in samples])
    cols = []
    for i in range(8):
        e = np.zeros(8)
        e[i] = 1.0
        vals = np.array([_interior_class_values(kh, e) for kh in samples])
        cols.append(vals - base)
    # residuals: C_b + (target_b / 20) * C00 for b in {11, 10}
    for bi, tcol in ((0, 0), (1, 1)):
        t = targets[:, tcol] / 20.0
        rhs.append(-(base[:, bi] + t * base[:, 2]))
        rows.append(np.stack([cols[i][:, bi] + t * cols[i][:, 2] for i in range(8)], axis=1))
    A = np.vstack(rows)
    b = np.concatenate(rhs)
    c8, *_ = np.linalg.lstsq(A, b, rcond=None)
    if round_bits:
        c8 = round_dyadic(c8, round_bits)
    return FreeParams(tuple(c8) + (0.0, 0.0, 0.0))


def derive_interior_params(round_bits: int = 20) -> FreeParams:
    """Full interior pipeline: per-sample minimization, fit, rounding."""
    S = KhSampleSet.paper().samples
    targets = [minimize_per_kh(kh) for kh in S]
    return fit_free_params(targets, S, round_bits)


def scheme_objective(kh: float, class_values: dict, cfg=None, tables=None) -> float:
    """Angular-average squared one-row truncation of an actual stencil.

    ``class_values`` maps C11/C01/C10/C00 (or the interior classes) to the
    stencil coefficient values at this kh.  For side/corner configurations
    pass the SchemeConfig and the per-class data-table polynomials so the
    plane wave's boundary data enters the error.
    """
    if cfg is None:
        A, B = _interior_basis(kh)
        T = class_values["C11"] * A + class_values["C10"] * B + class_values["C00"]
        return float(_QUAD.weights @ (np.abs(T) ** 2))
    phi = _class_phis(cfg, tables, kh)
    T = sum(class_values[lab] * phi[lab] for lab in cfg.classes)
    return float(_QUAD.weights @ (np.abs(T) ** 2))


def _plane_wave_data_factors(kind, inward, trig_normal, trig_tangent, nmax):
    """Scaled data derivatives of the unit plane wave along one side.

    Returns the array [g^(n)/k^(n+1)] for n = 0..nmax-1, with
    ``trig_normal``/``trig_tangent`` the direction cosines along the side's
    normal/tangential coordinate axes.
    """
    imp = 1.0 if kind == "impedance" else 0.0
    base = -inward * 1j * trig_normal - 1j * imp
    steps = np.stack([(1j * trig_tangent) ** n for n in range(nmax)])
    return base * steps


def _class_phis(cfg, tables, kh):
    """Per-class angular profiles of the one-row plane-wave truncation."""
    th = _QUAD.nodes
    c, s = np.cos(th), np.sin(th)
    gx = gy = None
    if cfg.xbc is not None:
        gx = _plane_wave_data_factors(cfg.xbc, cfg.sx, c, s, 8)
    if cfg.ybc is not None:
        gy = _plane_wave_data_factors(cfg.ybc, cfg.sy, s, c, 8)
    phi = {}
    for lab, (route, offsets) in cfg.classes.items():
        E = sum(np.exp(1j * kh * (a * c + b * s)) for a, b in offsets)
        acc = E.astype(complex)
        tab_gx, tab_gy = tables[lab]
        if gx is not None:
            for n, arr in tab_gx.items():
                acc = acc - gx[n] * np.polynomial.polynomial.polyval(kh, arr)
        if gy is not None:
            for n, arr in tab_gy.items():
                acc = acc - gy[n] * np.polynomial.polynomial.polyval(kh, arr)
        phi[lab] = acc
    return phi


def minimize_scheme_per_kh(cfg, tables, kh: float, normalization: float):
    """Complex least-squares minimizer of the one-row truncation.

    The center class is pinned to ``normalization``; returns values for the
    other three classes in the order C11, C01, C10.
    """
    phi = _class_phis(cfg, tables, kh)
    free = [lab for lab in ("C11", "C01", "C10") if lab in cfg.classes]
    w = _QUAD.weights
    F = np.stack([phi[lab] for lab in free], axis=1)
    d = normalization * phi["C00"]
    M = F.conj().T @ (w[:, None] * F)
    r = -F.conj().T @ (w * d)
    sol = np.linalg.solve(M, r)
    return dict(zip(free, sol))


def _family_fit_rows(samples, targets, value_fn, nbasis, normalization):
    """Rows of the linear fit linking family values to per-kh minimizers.

    ``value_fn(kh, coeffs)`` returns the class values (C11, C01, C10, C00)
    of the family member with the given coefficient vector; the residual per
    class b is C_b + (target_b / |Z|) * C00 / ... following the interior
    link with normalization Z.
    """
    base = np.array([value_fn(kh, np.zeros(nbasis)) for kh in samples])
    cols = []
    for i in range(nbasis):
        e = np.zeros(nbasis)
        e[i] = 1.0
        cols.append(np.array([value_fn(kh, e) for kh in samples]) - base)
    rows, rhs = [], []
    nclass = base.shape[1] - 1
    for bi in range(nclass):
        t = np.array([targets[j][bi] for j in range(len(samples))]) / (-normalization)
        rhs.append(-(base[:, bi] + t * base[:, nclass]))
        rows.append(np.stack([cols[i][:, bi] + t * cols[i][:, nclass] for i in range(nbasis)], axis=1))
    return np.vstack(rows), np.concatenate(rhs)


def fit_impedance_side(samples=None, round_bits: int = 20):
    """Reproduce the impedance-side free parameters from the minimization."""
    samples = KhSampleSet.paper().samples if samples is None else samples
    cfg = derive.side_config("impedance", 6)
    tables = derive.class_table_polys(cfg, 8, 9)
    targets = []
    for kh in samples:
        t = minimize_scheme_per_kh(cfg, tables, kh, -10.0)
        targets.append((t["C11"], t["C01"], t["C10"]))

    def value_fn(kh, c8):
        return impedance_side_values(kh, c8)

    A, b = _family_fit_rows(samples, targets, value_fn, 8, -10.0)
    Ar = np.vstack([A.real, A.imag])
    br = np.concatenate([b.real, b.imag])
    c8, *_ = np.linalg.lstsq(Ar, br, rcond=None)
    if round_bits:
        c8 = round_dyadic(c8, round_bits)
    return tuple(c8)


def minimize_scheme_family(cfg, deg: int, normalization: float, samples=None, round_bits: int = 20):
    """Pollution-minimized member of a consistency family (side or corner).

    Solves the consistency system for the affine family, minimizes the
    summed per-kh link residuals over the family's free coordinates, rounds
    those coordinates dyadically, and returns the class coefficient
    polynomials of the resulting stencil.
    """
    samples = KhSampleSet.paper().samples if samples is None else samples
    slots, z_part, N = derive.solve_family(cfg, deg, normalization)
    tables = derive.class_table_polys(cfg, 8, 9)
    targets = []
    for kh in samples:
        t = minimize_scheme_per_kh(cfg, tables, kh, normalization)
        targets.append((t.get("C11", 0.0), t.get("C01", 0.0), t.get("C10", 0.0)))
    labels = list(cfg.classes)
    pows = np.arange(deg + 1)

    def value_fn_complex(kh, nu):
        z = z_part + N @ nu
        polys = derive.slots_to_polys(slots, z, labels, deg)
        e = kh**pows
        return tuple(polys[lab] @ e for lab in ("C11", "C01", "C10", "C00"))

    nb = N.shape[1]
    base = np.array([value_fn_complex(kh, np.zeros(nb, dtype=complex)) for kh in samples])
    cols = []
    for i in range(nb):
        e = np.zeros(nb, dtype=complex)
        e[i] = 1.0
        cols.append(np.array([value_fn_complex(kh, e) for kh in samples]) - base)
    rows, rhs = [], []
    for bi in range(3):
        t = np.array([targets[j][bi] for j in range(len(samples))]) / (-normalization)
        rhs.append(-(base[:, bi] + t * base[:, 3]))
        rows.append(np.stack([cols[i][:, bi] + t * cols[i][:, 3] for i in range(nb)], axis=1))
    A = np.vstack(rows)
    b = np.concatenate(rhs)
    nu, *_ = np.linalg.lstsq(A, b, rcond=None)
    if round_bits:
        nu = round_dyadic(nu.real, round_bits) + 1j * round_dyadic(nu.imag, round_bits)
    z = z_part + N @ nu
    return derive.slots_to_polys(slots, z, labels, deg)
