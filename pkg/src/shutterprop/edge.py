"""Smooth (tanh) edges versus the sharp step, and where they look alike.

The smooth edge [1 - tanh(x/xi)]/2 evolves as the step solution plus

    int i [ (xi/4) cosech(pi k xi / 2) - 1/(2 pi k) ] e^{ikx - ik^2 t} dk,

whose bracket is odd, regular at k = 0 and tends to -1/(2 pi k). Folding
k -> -k gives int_0^inf -2 f(k) sin(kx) e^{-ik^2 t} dk; beyond the
stationary point the path is turned onto k = K + s e^{-i pi/4}, where the
integrand decays like a Gaussian.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from .complexfn import SQRT_I, erfc_c
from .errors import DomainError, NonConvergenceError
from .oracle import WaveField, panel_nodes, sum_panels

HBAR = constants.hbar
_OMEGA = complex(math.sqrt(0.5), -math.sqrt(0.5))
_PHASE_PER_PANEL = 0.5 * math.pi


@dataclass(frozen=True)
class RegimeWindow:
    lower: float
    upper: float
    units: str = "dimensionless-position"

    def __post_init__(self):
        if self.lower < 0:
            raise ValueError("window lower bound must be >= 0")

    @property
    def empty(self):
        return not self.upper > self.lower

    def classify(self, value):
        """'below', 'in' or 'above' for each value."""
        v = np.asarray(value, dtype=float)
        out = np.where(v < self.lower, "below", np.where(v > self.upper, "above", "in"))
        return out[()] if out.ndim == 0 else out


def _positive(name, v):
    if not (v > 0) or not math.isfinite(v):
        raise DomainError(f"{name} must be finite and > 0, got {v!r}")


def propagate_step(x, t):
    """Released step theta(-x): 0.5 erfc(x / (2 sqrt(it)))."""
    _positive("t", t)
    x = np.asarray(x, dtype=float)
    out = 0.5 * erfc_c(x / (2.0 * math.sqrt(t) * SQRT_I))
    return out


def _bracket(k, xi):
    """(xi/4) cosech(pi k xi/2) - 1/(2 pi k) for Re k >= 0, complex ok."""
    k = np.asarray(k)
    u = 0.5 * math.pi * xi * k
    small = np.abs(u) < 0.1
    us = np.where(small, u, 0.1)
    ul = np.where(small, 1.0, u)
    u2 = us * us
    series = us * (-1.0 / 6 + u2 * (7.0 / 360 + u2 * (-31.0 / 15120 + u2 * 127.0 / 604800)))
    e = np.exp(-ul)
    large = 2.0 * e / (1.0 - e * e) - 1.0 / ul
    return 0.25 * xi * np.where(small, series, large)


def _k_breaks(x, t, xi, K, refine):
    # the bracket varies on a k-scale ~ 1/xi
    cushion = abs(x) + xi + 1.0
    total = K * K * t + cushion * K
    n = max(1, math.ceil(total / _PHASE_PER_PANEL)) * refine
    phi = np.linspace(0.0, total, n + 1)
    k = 2.0 * phi / (cushion + np.sqrt(cushion * cushion + 4.0 * t * phi))
    k[-1] = K
    return k


def _correction_once(x, t, xi, refine):
    K = abs(x) / (2 * t) + 10.0 / math.sqrt(t)

    def f(k):
        # -2 sin(kx) e^{-ik^2 t}, exponents combined so the ray cannot overflow
        chirp = -1j * k * k * t
        return 1j * _bracket(k, xi) * (np.exp(chirp + 1j * k * x) - np.exp(chirp - 1j * k * x))

    real_part = sum_panels(_k_breaks(x, t, xi, K, refine), f)

    # tail on k = K + s e^{-i pi/4}: |integrand| ~ exp(-t s^2 - (sqrt2 t K - |x|/sqrt2) s)
    rate = math.sqrt(2.0) * t * K - abs(x) / math.sqrt(2.0)
    s_end = (-rate + math.sqrt(rate * rate + 4 * t * 45.0)) / (2 * t)
    h = min(1.0 / rate, 1.0 / math.sqrt(t)) / refine
    breaks = np.arange(0.0, s_end + h, h)
    tail = _OMEGA * sum_panels(breaks, lambda s: f(K + s * _OMEGA))
    return real_part + tail


def _direct_once(x, t, xi, K0, refine):
    """0.5 - (xi/2) int_0^K0 cosech(pi k xi/2) sin(kx) e^{-ik^2 t} dk.

    Unregularised form; cheap whenever cosech has died out (k ~ 40/xi)
    before the stationary point x/2t is reached.
    """
    c = 0.5 * math.pi * xi

    def f(k):
        u = c * k
        # sin(kx)/sinh(u), finite at k = 0
        ratio = x * np.sinc(k * x / math.pi) / (c * np.sinc(1j * u / math.pi).real)
        return -0.5 * xi * ratio * np.exp(-1j * k * k * t)

    return 0.5 + sum_panels(_k_breaks(x, t, xi, K0, refine), f)


def _converge(fn, what, x, t, tol, max_doublings):
    prev = cur = fn(1)
    refine = 1
    for _ in range(max_doublings):
        refine *= 2
        cur = fn(refine)
        err = abs(cur - prev)
        if err <= max(tol, tol * abs(cur)):
            return cur, err
        prev = cur
    raise NonConvergenceError(f"{what} did not converge at x={x}, t={t}", (prev, cur))


def tanh_correction(x, t, xi, tol=1e-10, max_doublings=4):
    """psi_tanh(x, t) - psi_step(x, t) and its estimated error."""
    _positive("t", t)
    _positive("xi", xi)
    x = float(x)
    K0 = 40.0 / xi
    if K0 < abs(x) / (2 * t) + 10.0 / math.sqrt(t):
        val, err = _converge(lambda r: _direct_once(x, t, xi, K0, r), "tanh-edge integral", x, t, tol,
                             max_doublings)
        return val - complex(propagate_step(x, t)), err
    return _converge(lambda r: _correction_once(x, t, xi, r), "tanh-edge integral", x, t, tol, max_doublings)


def propagate_tanh(x, t, xi, full_output=False):
    """Released smooth edge [1 - tanh(x/xi)]/2 at (x, t)."""
    corr, err = tanh_correction(x, t, xi)
    val = complex(propagate_step(x, t)) + corr
    return (val, err) if full_output else val


def tanh_field(grid, t, xi):
    grid = np.asarray(grid, dtype=float)
    vals, errs = zip(*(propagate_tanh(xv, t, xi, full_output=True) for xv in grid))
    return WaveField(grid, t, np.array(vals), "edge-regularized", float(max(errs)))


def leading_difference(x, t, xi):
    """Leading small-xi term of psi_tanh - psi_step.

    -(pi/48) xi^2 int ik e^{ikx - ik^2 t} dk, done as the x-derivative of the
    Gaussian integral sqrt(pi/(it)) e^{ix^2/4t}.
    """
    _positive("t", t)
    _positive("xi", xi)
    x = np.asarray(x, dtype=float)
    gauss = math.sqrt(math.pi / t) / SQRT_I * np.exp(1j * x * x / (4.0 * t))
    out = -(math.pi / 48.0) * xi * xi * gauss * (1j * x / (2.0 * t))
    return out[()] if out.ndim == 0 else out


def regime_window_position(t, xi):
    """(sqrt(t), t/xi): where a smooth edge still looks like a sharp one."""
    _positive("t", t)
    _positive("xi", xi)
    return RegimeWindow(math.sqrt(t), t / xi, "dimensionless-position")


def physical_window(mass_kg, distance_m, edge_width_m):
    """Time window 2 m xi x / hbar << t << 2 m x^2 / hbar, in seconds."""
    for name, v in (("mass_kg", mass_kg), ("distance_m", distance_m), ("edge_width_m", edge_width_m)):
        _positive(name, v)
    if not edge_width_m < distance_m:
        raise DomainError("edge width must be smaller than the distance to the trap")
    scale = 2.0 * mass_kg / HBAR
    return RegimeWindow(scale * edge_width_m * distance_m, scale * distance_m**2, "seconds")
