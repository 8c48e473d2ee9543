"""Boundary-only short-time approximants.

At short times (t << (x - c)^2) the field released from a sharp edge at c
depends only on the one-sided jet of psi(y, 0) at c. For a packet on
[a, b] the right edge enters with sign +1 and the left edge with sign -1
(int_a^b = int_{-inf}^b - int_{-inf}^a); several slits just add more edges.
All functions are vectorised over ``x``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .complexfn import SQRT_I
from .errors import DomainError, InvalidParameterError
from .oracle import WaveField
from .packets import LEFT, RIGHT, BoundaryJet

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class BoundaryPoint:
    position: float
    sign: int
    jet: BoundaryJet

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidParameterError("sign", "must be +1 or -1")


def _jet(obj):
    return obj.jet if isinstance(obj, BoundaryPoint) else obj


def _check(x, t, positions):
    if not (t > 0):
        raise DomainError(f"t must be > 0, got {t!r}")
    x = np.asarray(x, dtype=float)
    for c in positions:
        if np.any(x == c):
            raise DomainError(f"x coincides with the boundary at {c}")
    return x


def _out(v):
    return v[()] if np.ndim(v) == 0 else v


def validity_ratio(x, t, positions):
    """t / min_j (x - x_j)^2; small values mean the series is trustworthy."""
    x = np.asarray(x, dtype=float)
    dist2 = np.min([(x - c) ** 2 for c in positions], axis=0)
    return _out(t / dist2)


def short_time_single(jet, x, t, order=0):
    """Series in t^{1/2}/(x - c) for the field released from one edge at c.

    order 0:  t^{1/2}/X d0
    order 1:  - 2i t^{3/2}/X^3 (d0 + X d1)
    order 2:  - 4 t^{5/2}/X^5 (3 (d0 + X d1) + X^2 d2)
    all times sqrt(i/pi) exp(i X^2 / 4t), with X = x - c.
    """
    if order not in (0, 1, 2):
        raise InvalidParameterError("order", "series order must be 0, 1 or 2")
    jet = _jet(jet)
    c = jet.position
    x = _check(x, t, [c])
    X = x - c
    d0, d1, d2 = jet[0], jet[1], jet[2]
    s = math.sqrt(t) / X * d0
    if order >= 1:
        s = s - 2j * t**1.5 / X**3 * (d0 + X * d1)
    if order >= 2:
        s = s - 4.0 * t**2.5 / X**5 * (3.0 * (d0 + X * d1) + X * X * d2)
    return _out(SQRT_I / SQRT_PI * np.exp(1j * X * X / (4.0 * t)) * s)


def _edge_term(x, t, c, d0):
    return np.exp(1j * (x - c) ** 2 / (4.0 * t)) / (x - c) * d0


def two_boundary_amplitude(left, right, x, t):
    """Leading-order field of a packet on [a, b] outside its support."""
    ja, jb = _jet(left), _jet(right)
    a, b = ja.position, jb.position
    x = _check(x, t, [a, b])
    amp = _edge_term(x, t, b, jb[0]) - _edge_term(x, t, a, ja[0])
    return _out(SQRT_I * math.sqrt(t / math.pi) * amp)


def _interference_phase(x, t, a, b):
    return (x - 0.5 * (a + b)) * (a - b) / (2.0 * t)


def two_boundary_density(left, right, x, t):
    """|psi|^2 from two edges: two 1/X^2 envelopes plus the fringe term."""
    ja, jb = _jet(left), _jet(right)
    a, b = ja.position, jb.position
    x = _check(x, t, [a, b])
    da, db = ja[0], jb[0]
    cross = np.exp(1j * _interference_phase(x, t, a, b)) / ((x - b) * (x - a)) * db * np.conj(da)
    dens = abs(db) ** 2 / (x - b) ** 2 + abs(da) ** 2 / (x - a) ** 2 - 2.0 * cross.real
    return _out(t / math.pi * dens)


def two_boundary_derivative_density(left, right, x, t):
    """|psi|^2 from two edges where the packet vanishes (slope-driven, ~ t^3)."""
    ja, jb = _jet(left), _jet(right)
    if abs(ja[0]) > 1e-12 or abs(jb[0]) > 1e-12:
        raise DomainError("derivative density requires psi = 0 at both boundaries")
    a, b = ja.position, jb.position
    x = _check(x, t, [a, b])
    da, db = ja[1], jb[1]
    cross = np.exp(1j * _interference_phase(x, t, a, b)) / ((x - b) ** 2 * (x - a) ** 2) * db * np.conj(da)
    dens = abs(db) ** 2 / (x - b) ** 4 + abs(da) ** 2 / (x - a) ** 4 - 2.0 * cross.real
    return _out(4.0 * t**3 / math.pi * dens)


def check_sign_pattern(points):
    pos = [pt.position for pt in points]
    if any(p1 >= p2 for p1, p2 in zip(pos, pos[1:])):
        raise InvalidParameterError("points", "boundary positions must be strictly increasing")
    n = len(points)
    for j, pt in enumerate(points):
        want = 1 if (n - 1 - j) % 2 == 0 else -1
        if pt.sign != want:
            raise InvalidParameterError(
                "points", "signs must alternate with +1 at the rightmost edge (right edges +1, left edges -1)")


def multi_boundary_amplitude(points, x, t):
    """Leading-order field from N ordered edges (e.g. both edges of two slits)."""
    points = list(points)
    if not points:
        raise InvalidParameterError("points", "need at least one boundary")
    check_sign_pattern(points)
    x = _check(x, t, [pt.position for pt in points])
    amp = sum(pt.sign * _edge_term(x, t, pt.position, pt.jet[0]) for pt in points)
    return _out(SQRT_I * math.sqrt(t / math.pi) * amp)


def boundary_points(packet, depth=2):
    """Signed boundary points of a packet, in increasing position."""
    pts = []
    if not packet.half_line:
        pts.append(BoundaryPoint(packet.a, -1, packet.boundary_jet(LEFT, depth)))
    pts.append(BoundaryPoint(packet.b, 1, packet.boundary_jet(RIGHT, depth)))
    return pts


def series_amplitude(points, x, t, order=0):
    """Signed sum of single-edge series over all boundary points."""
    points = list(points)
    check_sign_pattern(points)
    return sum(pt.sign * short_time_single(pt.jet, x, t, order) for pt in points)


def series_field(packet, grid, t, order=0):
    pts = boundary_points(packet, depth=2)
    grid = np.asarray(grid, dtype=float)
    vals = np.asarray(series_amplitude(pts, grid, t, order), dtype=complex).reshape(grid.shape)
    return WaveField(grid, t, vals, f"series-{order}", 0.0)
