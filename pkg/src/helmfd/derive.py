"""Truncation-expansion engine for boundary and corner schemes.

One algorithm underlies every side/corner construction: expand the stencil's
point values through the level-L kernels (x-direction form for the nodes on
the corner's own row, y-direction form for the nodes one row in), substitute
the boundary identities for normal derivatives, and reduce remaining pure-x
derivatives through the PDE.  What survives is a linear functional in the
u^(0,n) (whose smallness in h is the consistency condition) plus weight
tables for source and boundary data (the scheme's right-hand side).

The engine runs in two modes sharing the code path:

* numeric: physical k and h, kernel values are complex numbers; produces the
  actual right-hand-side tables.
* polynomial: unit wavenumber, offsets carry a formal power of eps = k*h;
  every scalar is an eps-coefficient array.  This yields the consistency
  linear system used both to golden-test the published stencils and to
  derive stencils for boundary combinations the tables do not cover.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .indexing import lambda_set
from .kernels import g_kernel, g_kernel_hcoeffs, h_kernel, h_kernel_hcoeffs
from .reduction import reduce_derivative


def bc_normal_identity(kind: str, inward: int, k: float):
    """(alpha, beta) with d/d(normal-coord) u = alpha*u + beta*g on the side.

    Written for the coordinate derivative: u^(1,n) = alpha u^(0,n) + beta
    g^(n) on a vertical side (same for y on a horizontal side).  ``inward``
    is the sign of the inward coordinate step.
    """
    if kind == "neumann":
        return 0.0j, -float(inward)
    if kind == "impedance":
        return -1j * k * inward, -float(inward)
    raise ValueError(f"no normal-derivative identity for {kind!r}")


def _expand(c, ct, xsig, ysig, kred, G, H, zero, level):
    """Shared expansion/substitution/reduction pass.

    ``c``/``ct`` map offsets to coefficients (x-form and y-form parts),
    ``xsig``/``ysig`` are (alpha, beta) identities or None, ``kred`` is the
    wavenumber used inside the derivative reduction (1 in polynomial mode),
    and ``G``/``H`` evaluate kernels at integer offsets.  All outputs are at
    the unscaled level (h times the final tables).
    """
    u, f, gx, gy = {}, {}, {}, {}

    def acc(d, key, val):
        d[key] = d.get(key, zero) + val

    for (a, b), cv in c.items():
        for n in range(level + 1):
            acc(u, (0, n), cv * G(0, n, a, b))
        for n in range(level):
            p1 = cv * G(1, n, a, b)
            if xsig is None:
                acc(u, (1, n), p1)
            else:
                acc(u, (0, n), xsig[0] * p1)
                acc(gx, n, xsig[1] * p1)
        for m, n in lambda_set(level - 2):
            acc(f, (m, n), cv * H(m, n, a, b))

    X = {}
    for (a, b), cv in ct.items():
        for m in range(level + 1):
            X[m] = X.get(m, zero) + cv * G(0, m, b, a)
        for m in range(level):
            p1 = cv * G(1, m, b, a)
            X[m] = X.get(m, zero) + ysig[0] * p1
            acc(gy, m, ysig[1] * p1)
        for m, n in lambda_set(level - 2):
            acc(f, (m, n), cv * H(n, m, b, a))

    if X:
        acc(u, (0, 0), X[0])
        if 1 in X:
            if xsig is None:
                acc(u, (1, 0), X[1])
            else:
                acc(u, (0, 0), xsig[0] * X[1])
                acc(gx, 0, xsig[1] * X[1])
        for m in range(2, level + 1):
            if m not in X:
                continue
            func = reduce_derivative(m, 0, kred)
            for (mo, r), w in func.u_terms:
                if mo == 0:
                    acc(u, (0, r), w * X[m])
                elif xsig is None:
                    acc(u, (1, r), w * X[m])
                else:
                    acc(u, (0, r), (w * xsig[0]) * X[m])
                    acc(gx, r, (w * xsig[1]) * X[m])
            for idx, w in func.f_terms:
                acc(f, idx, w * X[m])
    return u, f, gx, gy


def corner_tables(c, ct, bc_pair, sx: int, sy: int, k: float, h: float, level: int = 8):
    """Right-hand-side tables of a corner row with known split coefficients.

    Returns (f_weights over order <= level-2, x-side data weights n=0..7,
    y-side data weights m=0..7), all carrying the scheme's h^-1 scale.
    """
    xsig = bc_normal_identity(bc_pair[0], sx, k)
    ysig = bc_normal_identity(bc_pair[1], sy, k)

    def G(m, n, a, b):
        return g_kernel(level, m, n, k, a * h, b * h)

    def H(m, n, a, b):
        return h_kernel(level, m, n, k, a * h, b * h)

    _, f, gx, gy = _expand(c, ct, xsig, ysig, k, G, H, 0.0j, level)
    f = {idx: v / h for idx, v in f.items()}
    gx = {n: v / h for n, v in gx.items()}
    gy = {n: v / h for n, v in gy.items()}
    return f, gx, gy


def _poly_mode(c, ct, xsig, ysig, level, npow):
    def G(m, n, a, b):
        out = np.zeros(npow, dtype=complex)
        arr = g_kernel_hcoeffs(level, m, n, 1.0, a, b)
        out[: len(arr)] = arr
        return out

    def H(m, n, a, b):
        out = np.zeros(npow, dtype=complex)
        arr = h_kernel_hcoeffs(level, m, n, 1.0, a, b)
        out[: len(arr)] = arr
        return out

    zero = np.zeros(npow, dtype=complex)
    return _expand(c, ct, xsig, ysig, 1.0, G, H, zero, level)


class SchemeConfig:
    """Classes of tied stencil coefficients for one scheme kind.

    ``classes`` maps a class label to (route, offsets) with route "c" for
    the x-form expansion and "ct" for the y-form one.  ``xbc``/``ybc`` name
    the boundary kinds (ybc None for side schemes), and ``order`` is the
    target consistency order M.
    """

    def __init__(self, classes, xbc, ybc, sx, sy, order, scale):
        self.classes = classes
        self.xbc, self.ybc, self.sx, self.sy = xbc, ybc, sx, sy
        self.order = order
        self.scale = scale  # h-power of the scheme row

    @property
    def tmax(self):
        # row scale h^-s needs the u-functional to vanish through h^(M+s-1)
        return self.order + self.scale - 1

    def signs(self, k):
        xsig = None if self.xbc is None else bc_normal_identity(self.xbc, self.sx, k)
        ysig = None if self.ybc is None else bc_normal_identity(self.ybc, self.sy, k)
        return xsig, ysig


def interior_config(order: int = 6) -> SchemeConfig:
    classes = {
        "C00": ("c", [(0, 0)]),
        "C10": ("c", [(1, 0), (-1, 0), (0, 1), (0, -1)]),
        "C11": ("c", [(1, 1), (1, -1), (-1, 1), (-1, -1)]),
    }
    return SchemeConfig(classes, None, None, 1, 1, order, 2)


def side_config(bc: str, order: int = 6) -> SchemeConfig:
    classes = {
        "C00": ("c", [(0, 0)]),
        "C01": ("c", [(0, 1), (0, -1)]),
        "C10": ("c", [(1, 0)]),
        "C11": ("c", [(1, 1), (1, -1)]),
    }
    return SchemeConfig(classes, bc, None, 1, 1, order, 1)


def corner_config(bc_pair, order: int = 6) -> SchemeConfig:
    classes = {
        "C00": ("c", [(0, 0)]),
        "C10": ("c", [(1, 0)]),
        "C01": ("ct", [(0, 1)]),
        "C11": ("ct", [(1, 1)]),
    }
    return SchemeConfig(classes, bc_pair[0], bc_pair[1], 1, 1, order, 1)


def class_weight_polys(cfg: SchemeConfig, level: int, npow: int):
    """Per-class eps-polynomials of every u^(m,n) functional coefficient."""
    xsig, ysig = cfg.signs(1.0)
    out = {}
    for label, (route, offsets) in cfg.classes.items():
        ind = {off: 1.0 + 0.0j for off in offsets}
        c, ct = (ind, {}) if route == "c" else ({}, ind)
        u, _, _, _ = _poly_mode(c, ct, xsig, ysig, level, npow)
        out[label] = u
    return out


def class_table_polys(cfg: SchemeConfig, level: int, npow: int):
    """Per-class eps-polynomials of the unscaled data tables (h times J).

    Returns {label: (gx, gy)} with gx[n]/gy[m] eps-coefficient arrays; used
    by the plane-wave truncation objective, where the data tables enter the
    trial scheme linearly.
    """
    xsig, ysig = cfg.signs(1.0)
    out = {}
    for label, (route, offsets) in cfg.classes.items():
        ind = {off: 1.0 + 0.0j for off in offsets}
        c, ct = (ind, {}) if route == "c" else ({}, ind)
        _, _, gx, gy = _poly_mode(c, ct, xsig, ysig, level, npow)
        out[label] = (gx, gy)
    return out


def consistency_matrix(cfg: SchemeConfig, deg: int):
    """Linear system expressing the consistency conditions.

    Unknowns are the eps-polynomial coefficients z[class, p], p = 0..deg;
    each row demands one eps-power (through eps^tmax) of one u-functional
    coefficient to vanish.  Returns (A, slots) with slots the column labels.
    """
    level = cfg.tmax
    npow = cfg.tmax + 1
    weights = class_weight_polys(cfg, level, npow)
    labels = list(cfg.classes)
    slots = [(lab, p) for lab in labels for p in range(deg + 1)]
    ukeys = sorted({key for w in weights.values() for key in w})
    rows = []
    for key in ukeys:
        for t in range(cfg.tmax + 1):
            row = np.zeros(len(slots), dtype=complex)
            for j, (lab, p) in enumerate(slots):
                w = weights[lab].get(key)
                if w is not None and 0 <= t - p < len(w):
                    row[j] = w[t - p]
            rows.append(row)
    return np.array(rows), slots


def check_consistency(cfg: SchemeConfig, coeff_polys: dict, deg: int) -> float:
    """Max residual of given stencil polynomials against the conditions.

    ``coeff_polys`` maps class label to an eps-coefficient array.  Small
    output certifies membership in the scheme family.
    """
    A, slots = consistency_matrix(cfg, deg)
    z = np.zeros(len(slots), dtype=complex)
    for j, (lab, p) in enumerate(slots):
        arr = coeff_polys[lab]
        if p < len(arr):
            z[j] = arr[p]
    return float(np.abs(A @ z).max())


def solve_family(cfg: SchemeConfig, deg: int, pin_value: float, rcond: float = 1e-9):
    """Affine solution space of the consistency system.

    Pins the constant term of the center class to ``pin_value`` and returns
    (slots, z_part, N) with the general member z_part + N @ nu.  Raises if
    the pinned system is infeasible at this polynomial degree.
    """
    A, slots = consistency_matrix(cfg, deg)
    pin = slots.index(("C00", 0))
    keep = [j for j in range(len(slots)) if j != pin]
    Ak = A[:, keep]
    b = -A[:, pin] * pin_value
    z, *_ = np.linalg.lstsq(Ak, b, rcond=None)
    resid = np.abs(Ak @ z - b).max()
    scale = max(np.abs(A).max(), 1.0)
    if resid > 1e-8 * scale:
        raise np.linalg.LinAlgError(
            f"corner/side family infeasible at degree {deg} (residual {resid:.2e})"
        )
    U, s, Vh = np.linalg.svd(Ak)
    rank = int(np.sum(s > rcond * s[0]))
    N = Vh[rank:].conj().T
    z_full = np.zeros(len(slots), dtype=complex)
    z_full[pin] = pin_value
    Nf = np.zeros((len(slots), N.shape[1]), dtype=complex)
    for i, j in enumerate(keep):
        z_full[j] = z[i]
        Nf[j] = N[i]
    return slots, z_full, Nf


def slots_to_polys(slots, z, labels, deg):
    out = {lab: np.zeros(deg + 1, dtype=complex) for lab in labels}
    for (lab, p), v in zip(slots, z):
        out[lab][p] = v
    return out


@lru_cache(maxsize=8)
def derived_corner_values_polys(bc_pair: tuple, deg: int = 4):
    """Pollution-minimized corner coefficient polynomials for a bc pair.

    Used for corner combinations without published tables.  The family comes
    from the consistency system; the member is picked by the plane-wave
    truncation minimization and the free coordinates are rounded dyadically,
    so repeated derivations are bit-stable.
    """
    from .pollution import minimize_scheme_family

    cfg = corner_config(bc_pair)
    return minimize_scheme_family(cfg, deg=deg, normalization=-5.0)


def derived_corner_values(bc_pair: tuple, kh: float):
    polys = derived_corner_values_polys(bc_pair)
    vals = {lab: complex(np.polynomial.polynomial.polyval(kh, arr)) for lab, arr in polys.items()}
    return vals["C11"], vals["C01"], vals["C10"], vals["C00"]
