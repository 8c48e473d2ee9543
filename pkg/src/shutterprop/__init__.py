"""Free propagation of sharply bounded wave packets.

Units are hbar = 2m = 1 throughout, so the free equation is
i psi_t = -psi_xx.
"""

from .complexfn import erfc_c, faddeeva_w, moshinsky, w_asymptotic
from .errors import (DepthUnsupportedError, DomainError, InvalidParameterError, JetMismatchError,
                     NonConvergenceError, PaddingError, TooFewFringesError, UnsupportedKindError)
from .packets import BoundaryJet, Packet, boundary_jet, load_sampled, make_packet, spectrum
from .oracle import (WaveField, exact_boundary_form, propagate_quadrature, propagate_spectral,
                     quadrature_field, exact_field)
from .boundary import (BoundaryPoint, boundary_points, multi_boundary_amplitude, series_amplitude, series_field,
                       short_time_single, two_boundary_amplitude, two_boundary_density,
                       two_boundary_derivative_density, validity_ratio)
from .edge import (RegimeWindow, leading_difference, physical_window, propagate_step, propagate_tanh,
                   regime_window_position)

__version__ = "0.1.0"
