"""Initial wavefunctions with sharp support edges.

A packet lives on ``[a, b]`` (``a`` may be ``-inf`` for a half-line) and is
zero outside. Analytic kinds are stored as finite sums of plane waves
``sum_n c_n exp(i q_n y)``; this one representation gives closed-form
boundary jets, Fourier transforms and (in ``oracle``) exact propagation.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DepthUnsupportedError, InvalidParameterError, UnsupportedKindError

KINDS = ("constant", "cosine-bridge", "sine-bridge", "plane-wave-sum", "tanh-edge", "sampled")
LEFT = "left"
RIGHT = "right"

_MAX_ANALYTIC_DEPTH = 4
_MAX_SAMPLED_DEPTH = 2


@dataclass(frozen=True)
class BoundaryJet:
    """One-sided value and derivatives d_0..d_D at a support edge."""

    position: float
    side: str
    values: tuple

    @property
    def depth(self):
        return len(self.values) - 1

    def __getitem__(self, j):
        return self.values[j] if j < len(self.values) else 0j


@dataclass(frozen=True, eq=False)
class Packet:
    kind: str
    a: float
    b: float
    modes: tuple = ()
    xi: float | None = None
    samples: tuple | None = None
    label: str = ""
    _spline: object = field(default=None, repr=False, compare=False)

    @property
    def half_line(self):
        return math.isinf(self.a)

    @property
    def is_exponential(self):
        return self.kind in ("constant", "cosine-bridge", "sine-bridge", "plane-wave-sum")

    @property
    def k_max(self):
        """Largest local wavenumber of the interior profile (for panel sizing)."""
        if self.is_exponential:
            return max((abs(q) for _, q in self.modes), default=0.0)
        if self.kind == "sampled":
            xs, vals = self.samples
            h = xs[1] - xs[0]
            d = np.abs(np.diff(vals)) / np.maximum(np.abs(vals[:-1]) + np.abs(vals[1:]), 1e-300)
            # local oscillation estimate, capped at the Nyquist wavenumber
            return float(min(np.pi / h, 4.0 * np.max(d) / h + 1.0))
        return 1.0 / self.xi

    def evaluate(self, y):
        """psi(y, 0). Accepts complex ``y`` for the exponential kinds."""
        y = np.asarray(y)
        if self.is_exponential:
            out = np.zeros(y.shape, dtype=complex)
            for c, q in self.modes:
                out += c * np.exp(1j * q * y)
            if not np.iscomplexobj(y):
                out = np.where((y >= self.a) & (y <= self.b), out, 0.0)
            return out
        if self.kind == "tanh-edge":
            return 0.5 * (1.0 - np.tanh(y / self.xi)) + 0j
        yr = np.asarray(y, dtype=float)
        inside = (yr >= self.a) & (yr <= self.b)
        re, im = self._spline
        yc = np.clip(yr, self.a, self.b)
        return np.where(inside, re(yc) + 1j * im(yc), 0.0)

    __call__ = evaluate

    def boundary_jet(self, side, depth=2):
        return boundary_jet(self, side, depth)

    def edges(self):
        """(position, sign) pairs: +1 at the right edge, -1 at the left edge."""
        out = [] if self.half_line else [(self.a, -1)]
        out.append((self.b, +1))
        return out


def _require(cond, fieldname, message):
    if not cond:
        raise InvalidParameterError(fieldname, message)


def _check_support(a, b, allow_half_line=False):
    _require(not math.isnan(a) and not math.isnan(b), "a", "support bounds must be numbers")
    _require(math.isfinite(b), "b", "right edge must be finite")
    if math.isinf(a):
        _require(allow_half_line and a < 0, "a", "half-line support only for constant and plane-wave-sum")
    _require(a < b, "a", f"need a < b, got a={a}, b={b}")


def make_packet(kind, **params):
    """Build a :class:`Packet` of the given ``kind``.

    Parameters by kind::

        constant        a, b, amplitude=1          (a may be -inf)
        cosine-bridge   a, b, n (int >= 1), amplitude=1
        sine-bridge     a, b, n (int >= 1), amplitude=1
        plane-wave-sum  a, b, modes=[(c, k), ...]  (a may be -inf)
        tanh-edge       xi > 0
        sampled         x (uniform grid, >= 9 points), values
    """
    label = params.pop("label", "")
    if kind not in KINDS:
        raise InvalidParameterError("kind", f"unknown packet kind {kind!r}")

    if kind == "tanh-edge":
        xi = float(params.get("xi", float("nan")))
        _require(xi > 0 and math.isfinite(xi), "xi", "edge width must be > 0")
        return Packet(kind, -math.inf, math.inf, xi=xi, label=label or f"tanh-edge xi={xi:g}")

    if kind == "sampled":
        return _make_sampled(params.get("x"), params.get("values"), label)

    a = float(params.get("a", float("nan")))
    b = float(params.get("b", float("nan")))
    amp = complex(params.get("amplitude", 1.0))
    _require(np.isfinite(amp), "amplitude", "must be finite")

    if kind == "constant":
        _check_support(a, b, allow_half_line=True)
        modes = ((amp, 0.0),)
    elif kind == "plane-wave-sum":
        _check_support(a, b, allow_half_line=True)
        raw = params.get("modes", ())
        try:
            modes = tuple((complex(c), float(q)) for c, q in raw)
        except (TypeError, ValueError):
            raise InvalidParameterError("modes", "expected (coefficient, wavenumber) pairs") from None
        _require(all(np.isfinite(c) and math.isfinite(q) for c, q in modes), "modes", "must be finite")
    else:
        _check_support(a, b)
        n = params.get("n")
        _require(isinstance(n, (int, np.integer)) and not isinstance(n, bool) and n >= 1,
                 "n", "oscillation count must be an integer >= 1")
        width = b - a
        if kind == "cosine-bridge":
            kap = 2.0 * math.pi * n / width
            modes = ((0.5 * amp * np.exp(-1j * kap * a), kap), (0.5 * amp * np.exp(1j * kap * a), -kap))
        else:
            kap = math.pi * n / width
            modes = ((amp / 2j * np.exp(-1j * kap * a), kap), (-amp / 2j * np.exp(1j * kap * a), -kap))
        label = label or f"{kind} n={n}"
    return Packet(kind, a, b, modes=modes, label=label or kind)


def _make_sampled(x, values, label=""):
    _require(x is not None and values is not None, "x", "sampled packets need x and values")
    xs = np.asarray(x, dtype=float)
    vals = np.asarray(values, dtype=complex)
    _require(xs.ndim == 1 and xs.shape == vals.shape, "values", "x and values must be 1-D and equal length")
    _require(xs.size >= 9, "x", "need at least 9 samples")
    _require(np.all(np.isfinite(xs)) and np.all(np.isfinite(vals)), "values", "samples must be finite")
    dx = np.diff(xs)
    _require(np.all(dx > 0), "x", "positions must be strictly increasing")
    h = (xs[-1] - xs[0]) / (xs.size - 1)
    _require(np.all(np.abs(dx - h) <= 1e-6 * h), "x", "grid must be uniform to 1 part in 1e6")
    spline = (CubicSpline(xs, vals.real), CubicSpline(xs, vals.imag))
    return Packet("sampled", float(xs[0]), float(xs[-1]), samples=(xs, vals),
                  label=label or "sampled", _spline=spline)


def load_sampled(path, label=None):
    """Read a sampled packet from a 2/3-column text file (x, re[, im])."""
    text = Path(path).read_text()
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) not in (2, 3):
            raise InvalidParameterError("samples", f"line {lineno}: expected 2 or 3 columns")
        try:
            rows.append([float(p) for p in parts] + [0.0] * (3 - len(parts)))
        except ValueError:
            raise InvalidParameterError("samples", f"line {lineno}: not a number") from None
    if not rows:
        raise InvalidParameterError("samples", "file has no data rows")
    arr = np.array(rows)
    return _make_sampled(arr[:, 0], arr[:, 1] + 1j * arr[:, 2], label or Path(path).name)


def fd_weights(offsets, order):
    """Finite-difference weights for the ``order``-th derivative at offset 0."""
    offsets = np.asarray(offsets, dtype=float)
    m = offsets.size
    powers = np.arange(m)
    vander = offsets[None, :] ** powers[:, None]
    rhs = np.zeros(m)
    rhs[order] = math.factorial(order)
    return np.linalg.solve(vander, rhs)


def boundary_jet(p, side, depth=2):
    """One-sided derivatives of psi(y, 0) at the ``side`` edge, from inside."""
    if side not in (LEFT, RIGHT):
        raise InvalidParameterError("side", f"expected {LEFT!r} or {RIGHT!r}")
    if p.kind == "tanh-edge":
        raise UnsupportedKindError("tanh-edge packets have no sharp boundary")
    if side == LEFT and p.half_line:
        raise InvalidParameterError("side", "half-line packet has no left edge")
    c = p.a if side == LEFT else p.b

    if p.is_exponential:
        if depth > _MAX_ANALYTIC_DEPTH:
            raise DepthUnsupportedError(f"depth {depth} > {_MAX_ANALYTIC_DEPTH} for analytic packets")
        vals = tuple(
            complex(sum(cn * (1j * q) ** j * np.exp(1j * q * c) for cn, q in p.modes))
            for j in range(depth + 1)
        )
        return BoundaryJet(c, side, vals)

    if depth > _MAX_SAMPLED_DEPTH:
        raise DepthUnsupportedError(f"depth {depth} > {_MAX_SAMPLED_DEPTH} for sampled packets")
    xs, ys = p.samples
    h = xs[1] - xs[0]
    npts = depth + 5  # stencil order npts - j >= depth + 2 for every j <= depth
    if side == LEFT:
        idx = np.arange(npts)
        offs = idx.astype(float)
    else:
        idx = np.arange(xs.size - 1, xs.size - 1 - npts, -1)
        offs = -np.arange(npts, dtype=float)
    vals = [complex(ys[idx[0]])]
    for j in range(1, depth + 1):
        w = fd_weights(offs, j)
        vals.append(complex(np.dot(w, ys[idx])) / h**j)
    return BoundaryJet(c, side, tuple(vals))


def spectrum(p, k):
    """g(k) = (2 pi)^{-1} int psi(y, 0) exp(-iky) dy. Vectorised over ``k``."""
    k = np.asarray(k, dtype=float)
    if p.kind == "tanh-edge":
        raise UnsupportedKindError("tanh-edge spectrum is a distribution; see shutterprop.edge")
    if p.half_line:
        raise UnsupportedKindError("half-line packets have no ordinary Fourier transform")
    if p.is_exponential:
        out = np.zeros(k.shape, dtype=complex)
        a, b = p.a, p.b
        for c, q in p.modes:
            dq = q - k
            out += c * np.exp(1j * dq * 0.5 * (a + b)) * (b - a) * np.sinc(dq * (b - a) / (2.0 * math.pi))
        out /= 2.0 * math.pi
        return out[()] if out.ndim == 0 else out
    return _sampled_spectrum(p, k)


def _sampled_spectrum(p, k):
    xs, _ = p.samples
    nodes, weights = np.polynomial.legendre.leggauss(8)
    lo, hi = xs[:-1], xs[1:]
    half = 0.5 * (hi - lo)
    y = (0.5 * (hi + lo))[:, None] + half[:, None] * nodes[None, :]
    wts = (half[:, None] * weights[None, :]).ravel()
    y = y.ravel()
    f = p.evaluate(y) * wts
    kk = np.atleast_1d(k)
    out = np.array([np.sum(f * np.exp(-1j * kv * y)) for kv in kk]) / (2.0 * math.pi)
    return out[0] if np.ndim(k) == 0 else out.reshape(k.shape)
