"""Reference propagators for the free Schroedinger equation (hbar = 2m = 1).

Three independent routes to psi(x, t > 0):

* :func:`propagate_quadrature` -- the Green-function integral over the
  support, composite Gauss-Legendre with panels sized by the kernel phase.
* :func:`propagate_spectral` -- the mode integral int g(k) e^{ikx - ik^2 t} dk,
  evaluated per support edge along the steepest-descent line in k.
* :func:`exact_boundary_form` -- differences of shifted Moshinsky functions.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .complexfn import SQRT_I, moshinsky
from .errors import DomainError, NonConvergenceError, PaddingError, UnsupportedKindError

PRODUCERS = ("quadrature", "spectral", "exact-boundary", "series-0", "series-1", "series-2",
             "edge-regularized")

_GL_ORDER = 10
_PHASE_PER_PANEL = 0.5 * math.pi
_MAX_NODES = 40_000_000
_CHUNK = 1_000_000
# e^{-i pi/4}: direction of the steepest-descent line in k
_OMEGA = complex(math.sqrt(0.5), -math.sqrt(0.5))


@dataclass
class WaveField:
    grid: np.ndarray
    t: float
    values: np.ndarray
    producer: str
    error_estimate: float = 0.0

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=complex)
        if self.grid.ndim != 1 or self.grid.shape != self.values.shape:
            raise ValueError("grid and values must be 1-D arrays of equal length")
        if self.grid.size > 1 and not np.all(np.diff(self.grid) > 0):
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("non-finite field values")
        if not (self.t > 0):
            raise ValueError("t must be > 0")
        if self.producer not in PRODUCERS:
            raise ValueError(f"unknown producer {self.producer!r}")
        if not self.error_estimate >= 0:
            raise ValueError("error_estimate must be >= 0")

    @property
    def density(self):
        return np.abs(self.values) ** 2


@lru_cache(maxsize=None)
def gauss_legendre(n):
    return np.polynomial.legendre.leggauss(n)


def panel_nodes(breaks, order=_GL_ORDER):
    """Gauss-Legendre nodes and weights on consecutive panels."""
    x, w = gauss_legendre(order)
    breaks = np.asarray(breaks)
    half = 0.5 * (breaks[1:] - breaks[:-1])
    mid = 0.5 * (breaks[1:] + breaks[:-1])
    nodes = mid[:, None] + half[:, None] * x[None, :]
    weights = half[:, None] * w[None, :]
    return nodes.ravel(), weights.ravel()


def kernel(u, t, literal=False):
    """Free propagator (4 pi i t)^{-1/2} exp(i u^2 / 4t).

    ``literal=True`` drops the sqrt(i) in the prefactor, i.e. uses
    1/(2 sqrt(pi t)); kept only so tests can show that choice is wrong.
    """
    pref = 1.0 / (2.0 * math.sqrt(math.pi * t))
    if not literal:
        pref = pref / SQRT_I
    return pref * np.exp(1j * (u * u) / (4.0 * t))


def _check_t(t):
    if not (t > 0) or not math.isfinite(t):
        raise DomainError(f"t must be finite and > 0, got {t!r}")


def _phase_breaks(lo, hi, x, t, cushion, refine):
    """Panel breakpoints on [lo, hi] with equal increments of the bound
    Phi(d) = d^2/4t + cushion*d on the accumulated phase, d = |y - x|."""

    def seg(d0, d1):
        p0 = d0 * d0 / (4 * t) + cushion * d0
        p1 = d1 * d1 / (4 * t) + cushion * d1
        n = max(1, math.ceil((p1 - p0) / _PHASE_PER_PANEL)) * refine
        phi = np.linspace(p0, p1, n + 1)
        d = 2.0 * phi / (cushion + np.sqrt(cushion * cushion + phi / t))
        d[0], d[-1] = d0, d1
        return d

    if lo < x < hi:
        left = x - seg(0.0, x - lo)[::-1]
        right = x + seg(0.0, hi - x)
        out = np.concatenate([left, right[1:]])
    elif x >= hi:
        out = x - seg(x - hi, x - lo)[::-1]
    else:
        out = x + seg(lo - x, hi - x)
    out[0], out[-1] = lo, hi
    return out


def sum_panels(breaks, f):
    """Ordered left-to-right sum of f over Gauss-Legendre panels."""
    total = 0j
    per_chunk = max(1, _CHUNK // _GL_ORDER)
    for start in range(0, len(breaks) - 1, per_chunk):
        y, w = panel_nodes(breaks[start:start + per_chunk + 1])
        total += np.sum(f(y) * w)
    return total


def _ray_tail(p, x, t, L, literal, refine):
    """int_{-inf}^{-L} K(x - y) psi(y) dy along y = -L - s e^{i pi/4}, s >= 0.

    On this ray the kernel decays like exp(-(s^2 + sqrt2 (x+L) s) / 4t), so
    the non-decaying half-line tail becomes an ordinary smooth integral.
    """
    rot = SQRT_I
    a_rate = math.sqrt(2.0) * (x + L) / (4 * t)
    grow = p.k_max / math.sqrt(2.0)
    decay = a_rate - grow
    # first s at which the integrand has dropped by e^{-45}
    qa = 1.0 / (4 * t)
    s_end = (-decay + math.sqrt(decay * decay + 4 * qa * 45.0)) / (2 * qa)
    h = min(1.0 / a_rate, math.sqrt(t)) / refine
    geo = [0.0]
    s = h / 2.0**12
    while s < h:
        geo.append(s)
        s *= 2.0
    breaks = np.concatenate([geo, np.arange(h, s_end + h, h)])

    def f(s):
        y = -L - s * rot
        return kernel(x - y, t, literal) * p.evaluate(y)

    return rot * sum_panels(breaks, f)


def _quad_once(p, x, t, literal, refine):
    cushion = p.k_max + 1.0
    if p.half_line:
        L = abs(x) + 40.0 * math.sqrt(t)
        # ray decay must beat the growth of the modes off the real axis
        L = max(L, 4.0 * t * (p.k_max + 1.0) - x, -p.b + 1.0)
        lo = -L
    else:
        lo = p.a
    breaks = _phase_breaks(lo, p.b, x, t, cushion, refine)
    if breaks.size * _GL_ORDER > _MAX_NODES:
        raise NonConvergenceError(f"panel budget exceeded at x={x}, t={t}")
    val = sum_panels(breaks, lambda y: kernel(x - y, t, literal) * p.evaluate(y))
    if p.half_line:
        val += _ray_tail(p, x, t, -lo, literal, refine)
    return val


def propagate_quadrature(p, x, t, tol=1e-9, full_output=False, literal_kernel=False, max_doublings=4):
    """psi(x, t) = int_support K(x - y, t) psi(y, 0) dy by composite quadrature.

    Panels are sized so the kernel phase advances by at most pi/2 per panel,
    then the panel count is doubled until two successive estimates agree to
    ``max(tol, tol*|value|)``. With ``full_output`` returns
    ``(value, error_estimate)``.
    """
    _check_t(t)
    if p.kind == "tanh-edge":
        raise UnsupportedKindError("use shutterprop.edge.propagate_tanh for tanh edges")
    x = float(x)
    prev = cur = _quad_once(p, x, t, literal_kernel, 1)
    refine = 1
    for _ in range(max_doublings):
        refine *= 2
        cur = _quad_once(p, x, t, literal_kernel, refine)
        err = abs(cur - prev)
        if err <= max(tol, tol * abs(cur)):
            return (cur, err) if full_output else cur
        prev = cur
    raise NonConvergenceError(f"quadrature did not converge at x={x}, t={t}", (prev, cur))


def quadrature_field(p, grid, t, tol=1e-9):
    grid = np.asarray(grid, dtype=float)
    vals, errs = zip(*(propagate_quadrature(p, xv, t, tol=tol, full_output=True) for xv in grid))
    return WaveField(grid, t, np.array(vals), "quadrature", float(max(errs)))


# --- spectral route -------------------------------------------------------

def _sd_integral(beta):
    """I(beta) = int_0^inf exp(-beta u^2) / (1 + i u^2) du, with an error estimate."""
    u_max = 7.0 / math.sqrt(beta)
    breaks = list(np.arange(0.0, min(2.0, u_max), 0.5)) + [min(2.0, u_max)]
    while breaks[-1] < u_max:
        breaks.append(min(2.0 * breaks[-1], u_max))
    breaks = np.array(breaks)

    def quad(order):
        u, w = panel_nodes(breaks, order)
        return np.sum(np.exp(-beta * u * u) / (1.0 + 1j * u * u) * w)

    hi = quad(24)
    return hi, abs(hi - quad(16))


def _edge_mode_term(x, t, c, q):
    """Spectral propagation of e^{iqy} restricted to y < c (one edge, one mode).

    The k-contour is moved onto k* + s e^{-i pi/4} with k* = (x-c)/2t; the
    pole of the half-line transform at k = q contributes the transmitted
    plane wave when it is crossed. Pairing s with -s leaves
    J = 2 sign(delta) I(t delta^2), delta = k* - q.
    """
    d = x - c
    delta = d / (2 * t) - q
    if delta == 0.0:
        line, err, resid = 0j, 0.0, 0.5
    else:
        val, err = _sd_integral(t * delta * delta)
        line = 2.0 * math.copysign(1.0, delta) * val
        err *= 2.0
        resid = 1.0 if delta < 0 else 0.0
    pref = 1j / (2 * math.pi) * np.exp(1j * q * c) * _OMEGA * np.exp(1j * d * d / (4 * t))
    out = pref * line + resid * np.exp(1j * (q * x - q * q * t))
    return out, err / (2 * math.pi)


def _spectral_point(p, x, t):
    total, err = 0j, 0.0
    for c, sign in p.edges():
        for amp, q in p.modes:
            v, e = _edge_mode_term(x, t, c, q)
            total += sign * amp * v
            err += abs(amp) * e
    return total, err


def evolve_periodic(values, dx, t):
    """Exact evolution of a periodic sampled field by the mode phases e^{-ik^2 t}."""
    values = np.asarray(values, dtype=complex)
    k = 2.0 * math.pi * np.fft.fftfreq(values.size, d=dx)
    return np.fft.ifft(np.fft.fft(values) * np.exp(-1j * k * k * t))


def _spectral_sampled(p, grid, t, eps=1e-9):
    grid = np.asarray(grid, dtype=float)
    xs, _ = p.samples
    h_pkt = xs[1] - xs[0]
    if grid.size > 1:
        step = grid[1] - grid[0]
        if not np.allclose(np.diff(grid), step, rtol=1e-9, atol=0):
            raise DomainError("spectral propagation of sampled packets needs a uniform grid")
        m = max(1, math.ceil(step / h_pkt))
        h = step / m
    else:
        h = h_pkt
    origin = grid[0]
    lo = min(grid[0], p.a)
    hi = max(grid[-1], p.b)
    width = p.b - p.a
    k_eff = p.k_max
    pad = 4.0 * width + 2.0 * k_eff * t + 8.0 * math.sqrt(t * math.log(1.0 / eps))
    n_lo = math.ceil((origin - (lo - pad)) / h)
    n_hi = math.ceil((hi + pad - origin) / h)
    n = n_lo + n_hi
    nodes = origin + h * (np.arange(n) - n_lo)
    psi = evolve_periodic(p.evaluate(nodes), h, t)
    band = max(1, int(0.25 * pad / h))
    leak = max(np.max(np.abs(psi[:band])), np.max(np.abs(psi[-band:])))
    if leak > eps * max(1.0, np.max(np.abs(psi))):
        raise PaddingError(f"amplitude {leak:.3g} reaches the periodic seam (bound {eps:g})")
    idx = n_lo + np.rint((grid - origin) / h).astype(int)
    return WaveField(grid, t, psi[idx], "spectral", float(leak))


def propagate_spectral(p, grid, t):
    """Field on ``grid`` at time ``t`` from the evolved Fourier modes.

    Exponential-sum packets (constant, bridges, plane-wave sums, including
    half-lines) use the contour-deformed mode integral, which is exact up to
    quadrature error. Sampled packets are evolved on a padded periodic domain
    by FFT; a :class:`PaddingError` is raised if amplitude reaches the seam.
    """
    _check_t(t)
    if p.kind == "tanh-edge":
        raise UnsupportedKindError("use shutterprop.edge.propagate_tanh for tanh edges")
    if p.kind == "sampled":
        return _spectral_sampled(p, grid, t)
    grid = np.asarray(grid, dtype=float)
    vals = np.empty(grid.shape, dtype=complex)
    err = 0.0
    for i, xv in enumerate(grid):
        vals[i], e = _spectral_point(p, float(xv), t)
        err = max(err, e)
    return WaveField(grid, t, vals, "spectral", err)


def exact_boundary_form(p, x, t):
    """Closed form sum_n c_n [M(x; k_n, b) - M(x; k_n, a)] for plane-wave sums.

    M is the shifted Moshinsky function; a half-line packet has only the b
    term. Vectorised over ``x``.
    """
    _check_t(t)
    if not p.is_exponential:
        raise UnsupportedKindError(f"exact boundary form needs a plane-wave sum, not {p.kind!r}")
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape, dtype=complex)
    for c, q in p.modes:
        for edge, sign in p.edges():
            out += sign * c * moshinsky(x, q, t, edge)
    return out[()] if out.ndim == 0 else out


def exact_field(p, grid, t):
    grid = np.asarray(grid, dtype=float)
    return WaveField(grid, t, exact_boundary_form(p, grid, t), "exact-boundary", 0.0)
