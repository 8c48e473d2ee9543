"""Complex error functions and the Moshinsky shutter function.

Units are hbar = 2m = 1, so the free evolution of a plane wave e^{iky}
is e^{iky - ik^2 t}.

The Faddeeva function and complex erfc are evaluated through
``scipy.special`` (the Faddeeva package algorithms: continued fractions
for large |z|, Taylor/Chebyshev regions otherwise), which already handles
the region switching and reflection into stable quadrants.
"""

import math

import numpy as np
from scipy import special

from .errors import DomainError

SQRT_PI = math.sqrt(math.pi)
# principal branch of sqrt(i)
SQRT_I = complex(math.sqrt(0.5), math.sqrt(0.5))


def _check_finite(z):
    if not np.all(np.isfinite(z)):
        raise DomainError("argument must be finite")


def erfc_c(z):
    """Complementary error function of a complex argument."""
    _check_finite(z)
    out = special.erfc(np.asarray(z, dtype=complex))
    return out[()] if out.ndim == 0 else out


def faddeeva_w(z):
    """w(z) = exp(-z^2) erfc(-iz), evaluated without forming the product."""
    _check_finite(z)
    out = special.wofz(np.asarray(z, dtype=complex))
    return out[()] if out.ndim == 0 else out


def w_asymptotic(z, m_max):
    """Large-argument series of w(z) truncated after ``m_max`` terms.

    Returns (i / (sqrt(pi) z)) * sum_{m=0}^{m_max} (2m-1)!! / (2 z^2)^m.
    The series is asymptotic, so it is refused for |z| <= 2 instead of
    quietly returning garbage. It represents w only where exp(-z^2) is
    negligible, i.e. away from the lower half plane.
    """
    z = complex(z)
    _check_finite(z)
    if m_max < 0:
        raise DomainError("m_max must be >= 0")
    if abs(z) <= 2.0:
        raise DomainError(f"|z| = {abs(z):g} <= 2: asymptotic series not usable, use faddeeva_w")
    inv = 1.0 / (2.0 * z * z)
    term = 1.0 + 0j
    total = term
    for m in range(1, m_max + 1):
        term *= (2 * m - 1) * inv
        total += term
    return 1j / (SQRT_PI * z) * total


def moshinsky(x, k, t, c=0.0):
    """Free evolution of e^{iky} restricted to y < c.

    ``0.5 * exp(ikx - ik^2 t) * erfc((x - c - 2kt) / (2 sqrt(it)))`` with
    sqrt(it) = sqrt(t) e^{i pi/4}. Vectorised over ``x``.
    """
    if not t > 0:
        raise DomainError(f"t must be > 0, got {t!r}")
    x = np.asarray(x, dtype=float)
    arg = (x - c - 2.0 * k * t) / (2.0 * math.sqrt(t) * SQRT_I)
    phase = np.exp(1j * (k * x - k * k * t))
    out = 0.5 * phase * erfc_c(arg)
    return out[()] if np.ndim(out) == 0 else out
