"""Interface curves, grid-point classification, and projection onto the curve.

A curve is given both implicitly (level set, for point classification) and
parametrically with derivative jets (for base points, transmission systems,
and jump data).  The level set is positive outside the inclusion; stencil
points with a nonpositive value belong to the inside/on-curve set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .jets import Jet


@dataclass(frozen=True)
class InterfaceCurve:
    """Closed interface with level set and parametric jets.

    ``psi(x, y)`` is vectorized and positive on the outer region; ``jets``
    maps (t, order) to the coordinate jets (r, s) of the parametrization.
    """

    psi: object
    jets: object
    period: float = 2 * math.pi

    def point(self, t: float):
        r, s = self.jets(t, 1)
        return complex(r.coef[0]).real, complex(s.coef[0]).real

    def tangent_speed(self, t: float) -> float:
        r, s = self.jets(t, 1)
        return float(np.hypot(complex(r.coef[1]).real, complex(s.coef[1]).real))


def circle(radius: float = 0.3) -> InterfaceCurve:
    def psi(x, y):
        return x * x + y * y - radius * radius

    def jets(t, order):
        tj = Jet.variable(t, order)
        s, c = tj.sincos()
        return radius * c, radius * s

    return InterfaceCurve(psi, jets)


def ellipse(rx: float = 1.0, ry: float = 0.5) -> InterfaceCurve:
    def psi(x, y):
        return (x / rx) ** 2 + (y / ry) ** 2 - 1.0

    def jets(t, order):
        tj = Jet.variable(t, order)
        s, c = tj.sincos()
        return rx * c, ry * s

    return InterfaceCurve(psi, jets)


def star(base: float = 0.2, amp: float = 0.05, lobes: int = 8) -> InterfaceCurve:
    """Flower-shaped curve with radius base + amp*sin(lobes*t)."""

    def psi(x, y):
        th = np.arctan2(y, x)
        rho = base + amp * np.sin(lobes * th)
        return x * x + y * y - rho * rho

    def jets(t, order):
        tj = Jet.variable(t, order)
        s, c = tj.sincos()
        rho = base + amp * (lobes * tj).sin()
        return rho * c, rho * s

    return InterfaceCurve(psi, jets)


# curves of the four interface experiments, with the names the experiment
# configuration files use
CURVES = {
    "five-star": star(0.2, 0.05, 8),
    "eight-star": star(0.2, 0.08, 5),
    "ellipse": ellipse(),
    "circle": circle(0.3),
}


@dataclass(frozen=True)
class BasePoint:
    """On-curve expansion point owned by one irregular grid point."""

    x_star: float
    y_star: float
    t_star: float
    v0: float
    w0: float
    owner: tuple


class GeometryError(RuntimeError):
    pass


_OFFSETS9 = [(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)]


@dataclass(frozen=True)
class PointClassification:
    """Per-node region labels and footprint splits of the irregular points.

    ``region`` holds +1 (all nine points outside), -1 (all inside/on-curve)
    or 0 (irregular) for interior nodes; boundary nodes are labeled by the
    side they belong to, never by the interface (the curve must stay clear
    of boundary footprints).
    """

    region: np.ndarray
    splits: dict  # (i, j) -> (d_plus tuple, d_minus tuple)

    @property
    def irregular(self):
        return tuple(self.splits)


def classify(grid, curve: InterfaceCurve) -> PointClassification:
    """Label every interior node by how the curve splits its 9-point set."""
    X, Y = np.meshgrid(grid.xs, grid.ys, indexing="ij")
    inside = np.asarray(curve.psi(X, Y)) <= 0
    n1, n2 = grid.N1, grid.N2
    pos_count = np.zeros((n1 + 1, n2 + 1), dtype=np.int8)
    for a, b in _OFFSETS9:
        sl = inside[1 + a : n1 + a, 1 + b : n2 + b]
        pos_count[1:n1, 1:n2] += ~sl
    region = np.zeros((n1 + 1, n2 + 1), dtype=np.int8)
    region[1:n1, 1:n2] = np.where(
        pos_count[1:n1, 1:n2] == 9, 1, np.where(pos_count[1:n1, 1:n2] == 0, -1, 0)
    )
    splits = {}
    for i, j in zip(*np.nonzero(region[1:n1, 1:n2] == 0)):
        i, j = int(i) + 1, int(j) + 1
        if i < 2 or i > n1 - 2 or j < 2 or j > n2 - 2:
            raise GeometryError(
                f"interface crosses a boundary-adjacent footprint at node ({i}, {j})"
            )
        dp, dm = [], []
        for a, b in _OFFSETS9:
            (dm if inside[i + a, j + b] else dp).append((a, b))
        splits[(i, j)] = (tuple(dp), tuple(dm))
    # boundary stencils must not straddle the curve
    edge = np.zeros_like(inside)
    edge[[0, 1, n1 - 1, n1], :] = True
    edge[:, [0, 1, n2 - 1, n2]] = True
    if inside[edge].any() and not inside[edge].all():
        raise GeometryError("interface touches the boundary stencil band")
    return PointClassification(region, splits)


def project(point, curve: InterfaceCurve, h: float, owner=None, seeds: int = 720) -> BasePoint:
    """Orthogonal projection of a grid point onto the curve.

    Newton iteration on the stationarity equation of the squared distance,
    seeded from the best of ``seeds`` uniform parameter samples; re-seeded
    from the next-nearest samples if the result leaves the open cell around
    the owner.
    """
    x, y = point
    ts = np.linspace(0.0, curve.period, seeds, endpoint=False)
    pts = np.array([curve.point(t) for t in ts])
    d2 = (pts[:, 0] - x) ** 2 + (pts[:, 1] - y) ** 2
    order = np.argsort(d2)

    def newton(t0):
        t = t0
        for _ in range(50):
            r, s = curve.jets(t, 2)
            rd, sd = r.derivs(), s.derivs()
            phi = (x - rd[0]) * rd[1] + (y - sd[0]) * sd[1]
            dphi = -rd[1] ** 2 - sd[1] ** 2 + (x - rd[0]) * rd[2] + (y - sd[0]) * sd[2]
            step = (phi / dphi).real
            t -= step
            if abs(step) < 1e-13:
                break
        r, s = curve.jets(t, 1)
        rd, sd = r.derivs(), s.derivs()
        resid = abs((x - rd[0]) * rd[1] + (y - sd[0]) * sd[1])
        speed2 = abs(rd[1]) ** 2 + abs(sd[1]) ** 2
        return t, rd[0].real, sd[0].real, resid, speed2

    for cand in order[:5]:
        t, xs, ys, resid, speed2 = newton(ts[cand])
        v0, w0 = (x - xs) / h, (y - ys) / h
        if resid <= 1e-12 * speed2 and abs(v0) < 1 and abs(w0) < 1:
            return BasePoint(xs, ys, t % curve.period, v0, w0, owner)
    raise GeometryError(f"projection of {point} onto the interface failed")


def normal_sign(curve: InterfaceCurve, t: float, probe: float) -> int:
    """Sign making (s', -r')/speed point toward the positive level set."""
    r, s = curve.jets(t, 1)
    rd, sd = r.derivs(), s.derivs()
    speed = np.hypot(abs(rd[1]), abs(sd[1]))
    nx, ny = (sd[1] / speed).real, (-rd[1] / speed).real
    val = curve.psi(rd[0].real + probe * nx, sd[0].real + probe * ny)
    if val == 0:
        raise GeometryError("degenerate normal probe on the interface")
    return 1 if val > 0 else -1


@dataclass(frozen=True)
class JumpData:
    """Scaled parametric derivatives of the two jump data functions.

    ``g[p]`` is the p-th Taylor coefficient of the value jump along the
    parametrization; ``g_gamma[p]`` that of the flux jump multiplied by the
    arc-length factor.
    """

    g: np.ndarray
    g_gamma: np.ndarray


def jump_coefficients(g_jet, g_gamma_jet, curve: InterfaceCurve, t_star: float, M: int) -> JumpData:
    """Jump-data coefficient arrays at a base point, orders M and M-1."""
    g = g_jet(t_star, M).coef.copy()
    r, s = curve.jets(t_star, M + 1)
    rp, sp = r.derivative(), s.derivative()
    speed = (rp * rp + sp * sp).sqrt()
    gg = (g_gamma_jet(t_star, M) * Jet(speed.coef[: M + 1])).coef[:M].copy()
    return JumpData(g, gg)
