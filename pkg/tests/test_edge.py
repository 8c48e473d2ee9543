import cmath
import math

import numpy as np
import pytest
from scipy import constants

from shutterprop.boundary import short_time_single
from shutterprop.edge import (RegimeWindow, leading_difference, physical_window, propagate_step, propagate_tanh,
                              regime_window_position, tanh_correction, tanh_field)
from shutterprop.errors import DomainError, NonConvergenceError
from shutterprop.oracle import propagate_quadrature
from shutterprop.packets import RIGHT, BoundaryJet, make_packet

RB87_KG = 1.443e-25


def test_step_at_origin():
    assert propagate_step(0.0, 0.37) == 0.5


def test_step_far_behind_edge():
    # the edge term sqrt(t/pi)/|x| decays algebraically, it is not 1e-10 small at x = -50
    x, t = -50.0, 0.1
    dev = abs(propagate_step(x, t) - 1)
    assert dev == pytest.approx(math.sqrt(t / math.pi) / abs(x), rel=1e-3)
    assert abs(propagate_step(-50.0, 1e-18) - 1) <= 1e-10


def test_step_matches_quadrature():
    p = make_packet("constant", a=-math.inf, b=0.0)
    assert abs(propagate_step(5.0, 0.1) - propagate_quadrature(p, 5.0, 0.1)) <= 1e-7
    # explicit finite cutoff at -60: the missing tail is another edge term of size sqrt(t/pi)/65
    cut = make_packet("constant", a=-60.0, b=0.0)
    assert abs(propagate_step(5.0, 0.1) - propagate_quadrature(cut, 5.0, 0.1)) <= 1.1 * math.sqrt(0.1 / math.pi) / 65


def test_step_tail_matches_order_zero():
    jet = BoundaryJet(0.0, RIGHT, (1,))
    for x, t in [(10.0, 0.1), (20.0, 0.5)]:
        step = abs(propagate_step(x, t)) ** 2
        assert step == pytest.approx(t / math.pi / x**2, rel=3 * t / x**2)
        assert step == pytest.approx(abs(short_time_single(jet, x, t, 0)) ** 2, rel=3 * t / x**2)


def test_step_rejects_bad_time():
    with pytest.raises(DomainError):
        propagate_step(1.0, 0.0)


def test_tanh_narrow_edge_is_a_step():
    assert abs(propagate_tanh(2.0, 0.5, 1e-3) - propagate_step(2.0, 0.5)) <= 1e-4


def test_tanh_short_time_is_initial_profile():
    val = propagate_tanh(-1.0, 1e-6, 0.2)
    assert abs(val - 0.5 * (1 - math.tanh(-5))) <= 1e-4
    assert abs(val - 0.9999546) <= 1e-4


@pytest.mark.parametrize("t,xi", [(0.1, 0.2), (1.0, 0.05), (3.0, 0.5)])
def test_tanh_centre_stays_half(t, xi):
    assert abs(propagate_tanh(0.0, t, xi) - 0.5) <= 1e-8


@pytest.mark.parametrize("x", [0.3, 1.7, 4.0, 9.0])
def test_tanh_antisymmetry(x):
    t, xi = 0.8, 0.2
    assert abs((propagate_tanh(x, t, xi) + propagate_tanh(-x, t, xi)).real - 1) <= 1e-8


def test_tanh_against_direct_quadrature():
    # the smooth initial profile can be integrated against the kernel directly
    # once it is written as a step plus a rapidly decaying odd remainder
    from shutterprop.oracle import kernel, panel_nodes
    xi, t, x = 0.3, 0.4, 1.5
    y, w = panel_nodes(np.linspace(-6, 6, 2401), 10)
    remainder = 0.5 * (1 - np.tanh(y / xi)) - (y < 0)
    direct = propagate_step(x, t) + np.sum(w * kernel(x - y, t) * remainder)
    assert abs(propagate_tanh(x, t, xi) - direct) <= 1e-8


def test_tanh_correction_error_estimate():
    val, err = tanh_correction(2.0, 0.5, 0.1)
    assert 0 <= err <= 1e-8
    with pytest.raises(NonConvergenceError):
        tanh_correction(2.0, 0.5, 0.1, tol=1e-300, max_doublings=0)


def test_tanh_field():
    wf = tanh_field(np.linspace(0.5, 3, 6), 1.0, 0.2)
    assert wf.producer == "edge-regularized"
    assert wf.values.shape == (6,) and wf.error_estimate >= 0


def test_xi_to_zero_is_second_order():
    x, t = 2.0, 0.5
    xis = np.array([0.1, 0.05, 0.025])
    diffs = [abs(tanh_correction(x, t, xi)[0]) for xi in xis]
    slope = np.polyfit(np.log(xis), np.log(diffs), 1)[0]
    assert abs(slope - 2) <= 0.2


def test_leading_difference_at_origin():
    assert leading_difference(0.0, 0.5, 0.1) == 0


def test_leading_difference_ratio():
    x, t = 2.0, 0.5
    errs = []
    for xi in (0.05, 0.025):
        ratio = tanh_correction(x, t, xi)[0] / leading_difference(x, t, xi)
        errs.append(abs(ratio - 1))
    assert errs[0] <= 0.05
    assert 2.5 <= errs[0] / errs[1] <= 5.5


def test_leading_difference_is_gaussian_derivative():
    # closed form equals -(pi/48) xi^2 d/dx [sqrt(pi/(it)) e^{ix^2/4t}]
    x, t, xi, h = 1.3, 0.7, 0.1, 1e-5
    g = lambda u: cmath.sqrt(math.pi / (1j * t)) * cmath.exp(1j * u * u / (4 * t))
    fd = (g(x + h) - g(x - h)) / (2 * h)
    assert leading_difference(x, t, xi) == pytest.approx(-(math.pi / 48) * xi**2 * fd, rel=1e-8)


@pytest.mark.parametrize("t,xi,lo,hi", [(0.04, 0.2, 0.2, 0.2), (1.0, 0.2, 1.0, 5.0), (0.25, 0.01, 0.5, 25.0)])
def test_regime_window(t, xi, lo, hi):
    w = regime_window_position(t, xi)
    assert (w.lower, w.upper) == pytest.approx((lo, hi), rel=1e-14)
    assert w.units == "dimensionless-position"


def test_empty_window_is_reported():
    assert regime_window_position(0.04, 0.2).empty
    assert regime_window_position(0.01, 0.2).empty
    assert not regime_window_position(1.0, 0.2).empty


def test_window_classification():
    w = RegimeWindow(1.0, 5.0)
    assert list(w.classify([0.5, 1.0, 3.0, 5.0, 7.0])) == ["below", "in", "in", "in", "above"]
    with pytest.raises(ValueError):
        RegimeWindow(-1.0, 2.0)


def test_physical_window_rubidium():
    w = physical_window(RB87_KG, 1e-3, 2e-5)
    assert w.units == "seconds"
    assert w.upper == pytest.approx(2.74e3, rel=0.01)
    assert w.lower == pytest.approx(54.7, rel=0.01)
    assert w.upper == pytest.approx(2 * RB87_KG * 1e-6 / constants.hbar, rel=1e-14)


def test_physical_window_opens_at_zero_for_sharp_edges():
    assert physical_window(RB87_KG, 1e-3, 1e-15).lower < 1e-8


@pytest.mark.parametrize("args", [(RB87_KG, 1e-3, 1e-3), (RB87_KG, 1e-3, 2e-3), (0.0, 1e-3, 1e-5),
                                  (RB87_KG, -1.0, 1e-5), (RB87_KG, 1e-3, 0.0)])
def test_physical_window_domain(args):
    with pytest.raises(DomainError):
        physical_window(*args)


def test_edge_regime_far_field():
    # beyond 3 x_max the smooth edge has suppressed the fringes the sharp edge predicts
    jet = BoundaryJet(0.0, RIGHT, (1,))
    for x in (15.0, 18.0):
        tanh = abs(propagate_tanh(x, 1.0, 0.2))
        approx = abs(short_time_single(jet, x, 1.0, 0))
        assert abs(tanh - approx) / approx > 0.3
