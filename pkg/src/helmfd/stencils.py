"""Closed-form compact stencil coefficients and right-hand-side weight tables.

All stencil coefficients are low-degree polynomials of eps = k*h:

* interior points: 9-point symmetric stencil, real coefficients, row scale
  h^-2; the general six-order family carries eleven free parameters, and the
  pollution-reduced instance pins them to dyadic constants.
* boundary-side points (Neumann/impedance): 6-point stencil, row scale h^-1.
* corner points (two non-Dirichlet sides): 4-point stencil, row scale h^-1.

Dirichlet sides and corners never receive stencils; assembly eliminates
those nodes.  Right-hand-side tables contract the level-8 expansion kernels
against the stencil coefficients; they depend only on (k, h) and are shared
by every grid point of the same class.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .indexing import lambda_set
from .kernels import g_kernel, h_kernel

SIDE_LEFT, SIDE_RIGHT, SIDE_BOTTOM, SIDE_TOP = 1, 2, 3, 4
_X_SIDES = (SIDE_LEFT, SIDE_RIGHT)
# inward normal step for each side (+1 means increasing coordinate)
SIDE_INWARD = {SIDE_LEFT: 1, SIDE_RIGHT: -1, SIDE_BOTTOM: 1, SIDE_TOP: -1}
# corner name -> (x inward sign, y inward sign)
CORNER_SIGNS = {"BL": (1, 1), "BR": (-1, 1), "TL": (1, -1), "TR": (-1, -1)}

KERNEL_LEVEL = 8  # truncation level of every right-hand-side table


@dataclass(frozen=True)
class StencilWeights:
    """Stencil footprint, per-offset coefficients, and row scale h^-scale."""

    footprint: tuple
    coeffs: np.ndarray
    scale: int

    def coeff(self, offset):
        return self.coeffs[self.footprint.index(offset)]


@dataclass(frozen=True)
class RhsWeightTable:
    """Weights contracting source/boundary derivative data into one row.

    ``f_weights`` maps (m, n) to the weight of f^(m,n); ``boundary_weights``
    maps a side id to {n: weight of the n-th tangential data derivative}.
    """

    f_weights: dict
    boundary_weights: dict


@dataclass(frozen=True)
class FreeParams:
    """The eleven free parameters of the interior six-order family."""

    c: tuple

    def __post_init__(self):
        if len(self.c) != 11:
            raise ValueError("expected 11 free parameters")

    @classmethod
    def zeros(cls):
        return cls((0.0,) * 11)

    @classmethod
    def reduced_pollution(cls):
        """The dyadic constants of the published reduced-pollution stencil."""
        return cls(
            (
                303 / 2**18,
                -3 / 2**20,
                13 / 2**20,
                -7 / 2**16,
                -3027 / 2**20,
                5 / 2**20,
                -73 / 2**20,
                4173 / 2**19,
                0.0,
                0.0,
                0.0,
            )
        )


_INTERIOR_FOOTPRINT = tuple(
    sorted(((a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)), key=lambda o: (abs(o[0]) + abs(o[1]), o))
)


def _interior_weights(c11, c10, c00):
    coeffs = np.empty(9, dtype=complex)
    for i, (a, b) in enumerate(_INTERIOR_FOOTPRINT):
        coeffs[i] = (c00, c10, c11)[abs(a) + abs(b)]
    return StencilWeights(_INTERIOR_FOOTPRINT, coeffs, 2)


def interior_family(kh: float, params: FreeParams) -> StencilWeights:
    """General sixth-order 9-point family, degree-7 polynomials of kh."""
    if kh < 0:
        raise ValueError("kh must be nonnegative")
    c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11 = params.c
    e = kh
    C11 = (
        1
        + (-240 * c2 + 15 * c4 - 120 * c6 + 480 * c10 + 120 * c11 + 480 * c9) * e
        + (1 / 15 + 4 * c1 + 2 * c5 - 8 * c7 - 2 * c8 - 8 * c3) * e**2
        + (-12 * c2 + c4 - 6 * c6 + 24 * c10 + 6 * c11 + 24 * c9) * e**3
        + c1 * e**4
        + c2 * e**5
        + c3 * e**6
        + c9 * e**7
    )
    C10 = (
        4
        + (-960 * c2 + 60 * c4 - 480 * c6 + 1920 * c10 + 480 * c11 + 1920 * c9) * e
        + (1 / 15 + 16 * c1 + 8 * c5 - 32 * c7 - 8 * c8 - 32 * c3) * e**2
        + c4 * e**3
        + c5 * e**4
        + c6 * e**5
        + c7 * e**6
        + c10 * e**7
    )
    C00 = (
        -20
        + (4800 * c2 - 300 * c4 + 2400 * c6 - 9600 * c10 - 2400 * c11 - 9600 * c9) * e
        + (82 / 15 - 80 * c1 - 40 * c5 + 160 * c7 + 40 * c8 + 160 * c3) * e**2
        + (-1392 * c2 + 82 * c4 - 696 * c6 + 2784 * c10 + 696 * c11 + 2784 * c9) * e**3
        + (-3 / 10 + 20 * c1 + 8 * c5 - 48 * c7 - 12 * c8 - 48 * c3) * e**4
        + (92 * c2 - 9 * c4 / 2 + 44 * c6 - 192 * c10 - 48 * c11 - 192 * c9) * e**5
        + c8 * e**6
        + c11 * e**7
    )
    return _interior_weights(C11, C10, C00)


def interior_reduced(kh: float) -> StencilWeights:
    """The published reduced-pollution interior stencil (degree-6 in kh)."""
    if kh < 0:
        raise ValueError("kh must be nonnegative")
    e = kh
    C11 = (
        1
        - 195 / 2**17 * e
        + (1 / 15 - 8709 / 2**19) * e**2
        - 53 / 2**19 * e**3
        + 303 / 2**18 * e**4
        - 3 / 2**20 * e**5
        + 13 / 2**20 * e**6
    )
    C10 = (
        4
        - 195 / 2**15 * e
        + (1 / 15 - 8709 / 2**17) * e**2
        - 7 / 2**16 * e**3
        - 3027 / 2**20 * e**4
        + 5 / 2**20 * e**5
        - 73 / 2**20 * e**6
    )
    C00 = (
        -20
        + 975 / 2**15 * e
        + (43545 / 2**17 + 82 / 15) * e**2
        - 1061 / 2**17 * e**3
        - (3 / 10 + 3039 / 2**15) * e**4
        + 7 / 2**14 * e**5
        + 4173 / 2**19 * e**6
    )
    return _interior_weights(C11, C10, C00)


def interior_rhs(k: float, h: float) -> RhsWeightTable:
    """Level-8 source weight table of the reduced interior scheme."""
    if h <= 0:
        raise ValueError("h must be positive")
    st = interior_reduced(k * h)
    f_weights = {}
    for m, n in lambda_set(6):
        f_weights[(m, n)] = sum(
            st.coeffs[i] * h_kernel(KERNEL_LEVEL, m, n, k, a * h, b * h)
            for i, (a, b) in enumerate(st.footprint)
        ) / h**2
    return RhsWeightTable(f_weights, {})


def impedance_side_values(kh: float, c=None):
    """Six-order impedance-side family values (C11, C01, C10, C00).

    ``c`` is the 8-vector of real free parameters; None selects the
    published reduced-pollution instance.
    """
    if c is None:
        c = IMPEDANCE_SIDE_PARAMS
    c1, c2, c3, c4, c5, c6, c7, c8 = c
    e = kh
    j = 1j
    C11 = (
        1
        - 60 * (c1 * j + 2 * c3 * j + c4 * j / 2 + c6 * j - 4j / 225 - c8 / 2 + c2 - c5 - 2 * c7) * e
        + 12
        * (c8 * j - 7 * c2 * j / 3 + 7 * c5 * j / 3 + 13 * c7 * j / 3 + 7 * c1 / 3 + 13 * c3 / 3 + c4 + 7 * c6 / 3 - 4 / 135)
        * e**2
        + (c2 + c6 * j) * e**3
        + (c3 + c7 * j) * e**4
    )
    C01 = (
        2
        - 120 * (c1 * j + 2 * c3 * j + c4 * j / 2 + c6 * j - 29j / 1800 - c8 / 2 + c2 - c5 - 2 * c7) * e
        + 18
        * (c8 * j - 22 * c2 * j / 9 + 22 * c5 * j / 9 + 40 * c7 * j / 9 + 22 * c1 / 9 + 40 * c3 / 9 + c4 + 22 * c6 / 9 - 11 / 324)
        * e**2
        + 13
        * (c1 * j + 20 * c3 * j / 13 + 7 * c4 * j / 26 + 12 * c6 * j / 13 - 17j / 1170 - 7 * c8 / 26 + 12 * c2 / 13 - c5 - 20 * c7 / 13)
        * e**3
        + (c1 + c5 * j) * e**4
    )
    C10 = (
        4
        - 240 * (c1 * j + 2 * c3 * j + c4 * j / 2 + c6 * j - 29j / 1800 - c8 / 2 + c2 - c5 - 2 * c7) * e
        + 36
        * (c8 * j - 22 * c2 * j / 9 + 22 * c5 * j / 9 + 40 * c7 * j / 9 + 22 * c1 / 9 + 40 * c3 / 9 + c4 + 22 * c6 / 9 - 49 / 1620)
        * e**2
        + 18
        * (c1 * j + 4 * c3 * j / 3 + c4 * j / 6 + 8 * c6 * j / 9 - 1j / 90 - c8 / 6 + 8 * c2 / 9 - c5 - 4 * c7 / 3)
        * e**3
        + (c4 + c8 * j) * e**4
    )
    C00 = (
        -10
        + 600 * (c1 * j + 2 * c3 * j + c4 * j / 2 + c6 * j - 29j / 4500 - c8 / 2 + c2 - c5 - 2 * c7) * e
        + 84
        * (c8 * j - 32 * c2 * j / 21 + 32 * c5 * j / 21 + 74 * c7 * j / 21 + 32 * c1 / 21 + 74 * c3 / 21 + c4 + 32 * c6 / 21 + 1 / 3780)
        * e**2
        - 80 * (c1 * j + 2 * c3 * j + c4 * j / 2 + 39 * c6 * j / 40 - 7j / 720 - c8 / 2 + 39 * c2 / 40 - c5 - 2 * c7) * e**3
        - 4 * (c8 * j - 3 * c2 * j / 2 + 2 * c5 * j + 7 * c7 * j / 2 + 2 * c1 + 7 * c3 / 2 + c4 + 3 * c6 / 2 - 1 / 80) * e**4
    )
    return C11, C01, C10, C00


# free parameters reproducing the published impedance-side stencil
IMPEDANCE_SIDE_PARAMS = tuple(
    v / 2**15 for v in (807.0, 1017.0, -112.0, 87.0, 798.0, -410.0, -49.0, 397.0)
)


def _impedance_side_published(kh: float):
    """Published impedance-side coefficients, transcribed verbatim."""
    e = kh
    C11 = (
        1
        - 120 * ((237 + 433j) / 2**17 - 2j / 225) * e
        + (99 / 2**9 - 979j / 2**13 - 48 / 135) * e**2
        + (1017 - 410j) / 2**15 * e**3
        - (112 + 49j) / 2**15 * e**4
    )
    C01 = (
        2
        - (15 * (237 + 433j) / 2**13 - 29j / 15) * e
        + (3 * 1679 / 2**14 - 3205j / 2**14 - 11 / 18) * e**2
        + ((2841 + 7271j) / 2**16 - 17j / 90) * e**3
        + (807 + 798j) / 2**15 * e**4
    )
    C10 = (
        4
        - (15 * (237 + 433j) / 2**12 - 58j / 15) * e
        + (3 * 1679 / 2**13 - 3205j / 2**13 - 49 / 45) * e**2
        + (3 * 631 / 2**15 + 5539j / 2**15 - 1j / 5) * e**3
        + (87 + 397j) / 2**15 * e**4
    )
    C00 = (
        -10
        + (75 * (237 + 433j) / 2**13 - 58j / 15) * e
        + (3 * 2081 / 2**13 - 2297j / 2**13 + 1 / 45) * e**2
        - (5 * 907j / 2**13 - 7j / 9 + 3723 / 2**14) * e**3
        - ((347 + 148j) / 2**12 - 1 / 20) * e**4
    )
    return C11, C01, C10, C00


def _neumann_side_published(kh: float):
    """Published Neumann-side coefficients (real, even powers only)."""
    e = kh
    C11 = 1 + (163 / 2**14 + 1 / 15) * e**2 + 99 / 2**15 * e**4
    C01 = 2 + (163 / 2**13 + 1 / 30) * e**2 - 35 / 2**16 * e**4
    C10 = 4 + (163 / 2**12 + 1 / 15) * e**2 - 35 / 2**15 * e**4
    C00 = -10 - 5 * (163 / 2**13 - 41 / 75) * e**2 + (425 / 2**14 - 3 / 20) * e**4
    return C11, C01, C10, C00


def side_values(bc: str, kh: float):
    """Canonical 6-point values (C11, C01, C10, C00) for a side kind."""
    if kh < 0:
        raise ValueError("kh must be nonnegative")
    if bc == "impedance":
        return _impedance_side_published(kh)
    if bc == "neumann":
        return _neumann_side_published(kh)
    raise ValueError(f"no side stencil for boundary kind {bc!r}")


def side_footprint(side: int):
    """Grid offsets of the 6-point stencil on a boundary side."""
    s = SIDE_INWARD[side]
    if side in _X_SIDES:
        return tuple((a, t) for a in (0, s) for t in (-1, 0, 1))
    return tuple((t, a) for a in (0, s) for t in (-1, 0, 1))


def boundary_stencil(side: int, bc: str, kh: float) -> StencilWeights:
    """6-point stencil on side Gamma_i for a Neumann or impedance condition."""
    if side not in SIDE_INWARD:
        raise ValueError(f"unknown side {side!r}")
    C11, C01, C10, C00 = side_values(bc, kh)
    offsets = side_footprint(side)
    coeffs = np.empty(6, dtype=complex)
    for i, off in enumerate(offsets):
        a, t = (off if side in _X_SIDES else off[::-1])
        coeffs[i] = ((C00, C01), (C10, C11))[abs(a)][abs(t)]
    return StencilWeights(offsets, coeffs, 1)


def boundary_rhs(side: int, bc: str, k: float, h: float) -> RhsWeightTable:
    """Source and boundary-data weight tables for a side row.

    The four sides share one construction: kernels are evaluated at the
    signed offsets (normal, tangential), the x/y kernel arguments and the
    f-index order are swapped on the horizontal sides, and the data table
    carries the sign of the inward normal step.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    st = boundary_stencil(side, bc, k * h)
    sgn = -SIDE_INWARD[side]
    horizontal = side not in _X_SIDES
    f_weights = {}
    g_weights = {}
    for m, n in lambda_set(6):
        acc = 0.0
        for i, off in enumerate(st.footprint):
            a, t = (off if not horizontal else off[::-1])
            km, kn = (n, m) if horizontal else (m, n)
            acc += st.coeffs[i] * h_kernel(KERNEL_LEVEL, km, kn, k, a * h, t * h)
        f_weights[(m, n)] = acc / h
    for n in range(KERNEL_LEVEL):
        acc = 0.0
        for i, off in enumerate(st.footprint):
            a, t = (off if not horizontal else off[::-1])
            acc += st.coeffs[i] * g_kernel(KERNEL_LEVEL, 1, n, k, a * h, t * h)
        g_weights[n] = sgn * acc / h
    return RhsWeightTable(f_weights, {side: g_weights})


def corner_values(bc_pair: tuple, kh: float):
    """Canonical 4-point values (C11, C01, C10, C00) for a corner bc pair.

    The pair is ordered (vertical-side kind, horizontal-side kind).  The two
    published pairs are hard-coded; the remaining non-Dirichlet pairs come
    from the derivation pipeline (cached per kh grid) in ``derive``.
    """
    if kh < 0:
        raise ValueError("kh must be nonnegative")
    if bc_pair == ("impedance", "neumann"):
        return _corner_impedance_neumann(kh)
    if bc_pair == ("neumann", "impedance"):
        C11, C01, C10, C00 = _corner_impedance_neumann(kh)
        return C11, C10, C01, C00
    if bc_pair == ("impedance", "impedance"):
        return _corner_impedance_impedance(kh)
    if bc_pair == ("neumann", "neumann"):
        from .derive import derived_corner_values

        return derived_corner_values(bc_pair, kh)
    raise ValueError(f"unsupported corner pair {bc_pair!r}")


def _corner_impedance_neumann(kh: float):
    """Published corner values: impedance on the vertical side, Neumann on
    the horizontal side (sixth consistency order)."""
    e = kh
    C11 = (
        1
        - (15 * (112 + 219j) / 2**13 - 16j / 15) * e
        + ((961 - 419j) / 2**12 - 16 / 45) * e**2
        + (721 + 282j) / 2**15 * e**3
        - (181 + 51j) / 2**15 * e**4
    )
    C01 = (
        2
        - (15 * (112 + 219j) / 2**12 - 29j / 15) * e
        + (3187 / 2**13 - 5 * 67j / 2**11 - 11 / 18) * e**2
        + ((1059 + 4899j) / 2**15 - 17j / 90) * e**3
        + (507 + 606j) / 2**15 * e**4
    )
    C10 = (
        2
        - (15 * (112 + 219j) / 2**12 - 29j / 15) * e
        + (3187 / 2**13 - 5 * 67j / 2**11 - 49 / 90) * e**2
        + (3 * 1341j / 2**15 - 1j / 10 + 611 / 2**15) * e**3
        + (-208 + 105j) / 2**15 * e**4
    )
    C00 = (
        -5
        + (75 * (112 + 219j) / 2**13 - 29j / 15) * e
        + ((1559 - 1522j) / 2**13 + 1 / 90) * e**2
        - (3759 / 2**15 + 4239j / 2**14 - 7j / 18) * e**3
        - ((775 + 324j) / 2**15 - 1 / 40) * e**4
    )
    return C11, C01, C10, C00


def _corner_impedance_impedance(kh: float):
    """Published corner values: impedance on both sides (seventh order).

    The tangential neighbors share one coefficient (C01 = C10)."""
    e = kh
    C11 = (
        1
        - (3 * 293 / 2**13 - (5 / 47) * 16381j / 2**11 - (2 / 47) * 3467j / 315) * e
        - (5339j / (5 * 2**15) + 111547 / (141 * 2**11) + 100 / 1269) * e**2
        - (3 + 898j) / 2**14 * e**3
        - (1 / 20) * (1220 + 1281j) / 2**15 * e**4
    )
    C10 = (
        2
        - (3 * 293 / 2**12 - (5 / 47) * 16381j / 2**10 - (2 / 47) * 3973j / 315) * e
        - (1823j / (5 * 2**14) + 15601 / (141 * 2**8) + 10979 / 88830) * e**2
        + (25 / 2**13 - (1 / 47) * 3089j / (3 * 2**8) - (1 / 47) * 2581j / 1890) * e**3
        + (903j / (5 * 2**15) + 36461 / (47 * 2**15) - 79 / 29610) * e**4
    )
    C00 = (
        -5
        + ((4 / 47) * 16501j / 315 - (25 / 47) * 16381j / 2**11 + 15 * 293 / 2**13) * e
        - (92849j / (5 * 2**15) + 1113127 / (141 * 2**11) - (23 / 10) * 3151 / 8883) * e**2
        - ((1 / 47) * 16691j / 945 - (5 / 47) * 165463j / (6 * 2**12) + 5 * 539 / 2**14) * e**3
        + (28811j / (5 * 2**17) + 1342939 / (141 * 2**15) - 2321 / (40 * 8883)) * e**4
    )
    return C11, C10, C10, C00


def corner_footprint(corner: str):
    sx, sy = CORNER_SIGNS[corner]
    return tuple((a * sx, b * sy) for a in (0, 1) for b in (0, 1))


def corner_stencil(corner: str, bc_pair: tuple, kh: float) -> StencilWeights:
    """4-point corner stencil; bc_pair = (vertical side kind, horizontal)."""
    if corner not in CORNER_SIGNS:
        raise ValueError(f"unknown corner {corner!r}")
    if "dirichlet" in bc_pair:
        raise ValueError("Dirichlet corners are eliminated, not discretized")
    C11, C01, C10, C00 = corner_values(bc_pair, kh)
    offsets = corner_footprint(corner)
    coeffs = np.empty(4, dtype=complex)
    for i, (a, b) in enumerate(offsets):
        coeffs[i] = ((C00, C01), (C10, C11))[abs(a)][abs(b)]
    return StencilWeights(offsets, coeffs, 1)


def corner_split(corner: str, bc_pair: tuple, kh: float):
    """The (c, c_tilde) split of the corner coefficients.

    The x-direction expansion covers the two nodes at the corner's own y
    level (b = 0) and the y-direction expansion the two nodes one step in;
    the stencil coefficient at each node is the sum of its two parts, of
    which one is identically zero.
    """
    st = corner_stencil(corner, bc_pair, kh)
    c = {off: st.coeffs[i] for i, off in enumerate(st.footprint) if off[1] == 0}
    ct = {off: st.coeffs[i] for i, off in enumerate(st.footprint) if off[1] != 0}
    return c, ct


@lru_cache(maxsize=64)
def corner_rhs(corner: str, bc_pair: tuple, k: float, h: float) -> RhsWeightTable:
    """Source and two-sided boundary-data weight tables for a corner row."""
    from .derive import corner_tables

    sx, sy = CORNER_SIGNS[corner]
    c, ct = corner_split(corner, bc_pair, k * h)
    f_w, gx_w, gy_w = corner_tables(c, ct, bc_pair, sx, sy, k, h)
    x_side = SIDE_LEFT if sx > 0 else SIDE_RIGHT
    y_side = SIDE_BOTTOM if sy > 0 else SIDE_TOP
    return RhsWeightTable(f_w, {x_side: gx_w, y_side: gy_w})
