"""Fringe measurements on sampled density curves."""

import math

import numpy as np
from scipy.signal import find_peaks

from .errors import TooFewFringesError


def local_minima(x, y):
    """Positions of interior local minima, refined by a parabola through
    the three samples around each one."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    idx, _ = find_peaks(-y)
    out = []
    for i in idx:
        y0, y1, y2 = y[i - 1], y[i], y[i + 1]
        denom = y0 - 2 * y1 + y2
        shift = 0.5 * (y0 - y2) / denom if denom > 0 else 0.0
        out.append(x[i] + shift * (x[i + 1] - x[i]))
    return np.array(out)


def fringe_period(x, density, min_count=3):
    """Mean spacing of successive density minima."""
    mins = local_minima(x, density)
    if mins.size < min_count:
        raise TooFewFringesError(f"found {mins.size} density minima, need at least {min_count}")
    return float(np.mean(np.diff(mins))), mins


def spectral_peaks(x, density, rel_height=0.05, pad=16):
    """Angular spatial frequencies (rad per unit x) of the density's fringes.

    The slow 1/x^2 envelope is removed by multiplying by x^2; a Hann window
    and zero padding keep the peak positions sharp.
    """
    x = np.asarray(x, dtype=float)
    dx = x[1] - x[0]
    y = np.asarray(density, dtype=float) * x * x
    y = (y - y.mean()) * np.hanning(y.size)
    nfft = pad * y.size
    spec = np.abs(np.fft.rfft(y, nfft))
    freq = 2.0 * math.pi * np.fft.rfftfreq(nfft, dx)
    # ignore the residual envelope near zero frequency
    lowcut = 4.0 * 2.0 * math.pi / (x[-1] - x[0])
    spec[freq < lowcut] = 0.0
    idx, _ = find_peaks(spec, height=rel_height * spec.max())
    return freq[idx], spec[idx]


def predicted_frequencies(positions, t):
    """Distinct pairwise separations / 2t."""
    pos = sorted(positions)
    seps = {round(q - p, 12) for i, p in enumerate(pos) for q in pos[i + 1:]}
    return np.array(sorted(s / (2.0 * t) for s in seps))


def match_peaks(predicted, measured, rel_tol=0.05):
    """For each predicted frequency: (predicted, nearest measured, relative error, ok)."""
    rows = []
    measured = np.asarray(measured)
    for f in predicted:
        if measured.size == 0:
            rows.append((f, math.nan, math.inf, False))
            continue
        m = measured[np.argmin(np.abs(measured - f))]
        err = abs(m - f) / f
        rows.append((f, float(m), err, err <= rel_tol))
    return rows
