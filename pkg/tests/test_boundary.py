import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shutterprop.boundary import (BoundaryPoint, boundary_points, check_sign_pattern, multi_boundary_amplitude,
                                  series_amplitude, series_field, short_time_single, two_boundary_amplitude,
                                  two_boundary_density, two_boundary_derivative_density, validity_ratio)
from shutterprop.errors import DomainError, InvalidParameterError
from shutterprop.oracle import exact_boundary_form, propagate_quadrature
from shutterprop.packets import LEFT, RIGHT, BoundaryJet, make_packet


def point(pos, sign, *jet):
    return BoundaryPoint(pos, sign, BoundaryJet(pos, RIGHT if sign > 0 else LEFT, tuple(complex(v) for v in jet)))


def test_order_zero_magnitude():
    jet = BoundaryJet(0.0, RIGHT, (1, 0, 0))
    assert abs(short_time_single(jet, 10.0, 0.01, 0)) == pytest.approx(0.0056418958354775628, rel=1e-14)


def test_order_one_with_vanishing_value():
    jet = BoundaryJet(0.0, RIGHT, (0, 1, 0))
    t, X = 0.01, 10.0
    val = short_time_single(jet, X, t, 1)
    assert abs(val) == pytest.approx(1.12838e-5, rel=1e-5)
    assert abs(val) == pytest.approx(2 * t**1.5 / (math.sqrt(math.pi) * X**2), rel=1e-14)


@pytest.mark.parametrize("order", [0, 1, 2])
def test_zero_jet(order):
    jet = BoundaryJet(3.0, RIGHT, (0, 0, 0))
    assert short_time_single(jet, np.array([5.0, -1.0]), 0.1, order).tolist() == [0, 0]


def test_shift_invariance():
    j0 = BoundaryJet(0.0, RIGHT, (1 - 1j, 0.3, 2j))
    j1 = BoundaryJet(2.5, RIGHT, (1 - 1j, 0.3, 2j))
    for order in (0, 1, 2):
        assert short_time_single(j0, 7.0, 0.2, order) == pytest.approx(short_time_single(j1, 9.5, 0.2, order))


def test_series_domain_errors():
    jet = BoundaryJet(1.0, RIGHT, (1,))
    with pytest.raises(DomainError):
        short_time_single(jet, 1.0, 0.1)
    with pytest.raises(DomainError):
        short_time_single(jet, 2.0, 0.0)
    with pytest.raises(InvalidParameterError):
        short_time_single(jet, 2.0, 0.1, order=3)


def test_t_growth_laws():
    x = 10.0
    j0 = BoundaryJet(0.0, RIGHT, (1, 0, 0))
    j1 = BoundaryJet(0.0, RIGHT, (0, 1, 0))
    for t in (0.01, 0.04):
        assert abs(short_time_single(j0, x, 4 * t, 0)) / abs(short_time_single(j0, x, t, 0)) == pytest.approx(2.0)
        assert abs(short_time_single(j1, x, 4 * t, 1)) / abs(short_time_single(j1, x, t, 1)) == pytest.approx(8.0)


def test_two_boundary_reduces_to_single_edge():
    left, right = point(-1, -1, 0), point(1, 1, 0.7j)
    x = np.linspace(3, 9, 7)
    np.testing.assert_allclose(two_boundary_amplitude(left, right, x, 0.05),
                               short_time_single(right.jet, x, 0.05, 0), rtol=1e-14)


def test_two_boundary_is_signed_sum():
    left, right = point(-1, -1, 1), point(1, 1, 1)
    got = two_boundary_amplitude(left, right, 10.0, 0.05)
    want = short_time_single(right.jet, 10.0, 0.05, 0) - short_time_single(left.jet, 10.0, 0.05, 0)
    assert got == pytest.approx(want, rel=1e-14)


def test_two_boundary_against_oracle():
    p = make_packet("constant", a=-1, b=1)
    left, right = boundary_points(p)
    approx = abs(two_boundary_amplitude(left, right, 10.0, 0.05)) ** 2
    exact = abs(propagate_quadrature(p, 10.0, 0.05)) ** 2
    assert abs(approx - exact) / exact <= 0.03


def test_density_single_term():
    left, right = point(-1, -1, 0), point(1, 1, 2)
    assert two_boundary_density(left, right, 6.0, 0.1) == pytest.approx(0.1 / math.pi * 4 / 25, rel=1e-14)


@settings(max_examples=100, deadline=None)
@given(st.floats(2, 30), st.floats(1e-3, 1.0), st.complex_numbers(max_magnitude=3), st.complex_numbers(max_magnitude=3),
       st.floats(-1.5, 1.0))
def test_density_is_squared_amplitude(x, t, da, db, a):
    left, right = point(a, -1, da), point(1.5, 1, db)
    amp = two_boundary_amplitude(left, right, x, t)
    dens = two_boundary_density(left, right, x, t)
    scale = t / math.pi * (abs(da) / (x - a) + abs(db) / (x - 1.5)) ** 2
    # exp(i X^2/4t) carries rounding proportional to the phase itself
    tol = 1e-12 + 1e-15 * x * x / (4 * t)
    assert abs(dens - abs(amp) ** 2) <= tol * max(scale, 1e-300)


@settings(max_examples=100, deadline=None)
@given(st.floats(-50, 50), st.floats(1e-3, 10), st.floats(-5, 5), st.floats(0.01, 5))
def test_interference_phase_identity(x, t, a, width):
    b = a + width
    direct = ((x - b) ** 2 - (x - a) ** 2) / (4 * t)
    assert (x - (a + b) / 2) * (a - b) / (2 * t) == pytest.approx(direct, rel=1e-12, abs=1e-9)


def test_fringe_period():
    from shutterprop.analysis import fringe_period
    left, right = point(-1, -1, 1), point(1, 1, 1)
    x = np.linspace(9, 11, 2001)
    period, _ = fringe_period(x, two_boundary_density(left, right, x, 0.05))
    assert period == pytest.approx(4 * math.pi * 0.05 / 2, rel=1e-3)


def test_derivative_density_single_term():
    left, right = point(-1, -1, 0, 0), point(1, 1, 0, 1.5)
    val = two_boundary_derivative_density(left, right, 5.0, 0.1)
    assert val == pytest.approx(4 * 0.1**3 / math.pi * 2.25 / 4**4, rel=1e-14)


def test_derivative_density_requires_vanishing_value():
    left, right = point(-1, -1, 0.1, 1), point(1, 1, 0, 1)
    with pytest.raises(DomainError):
        two_boundary_derivative_density(left, right, 5.0, 0.1)


def test_derivative_density_against_oracle():
    p = make_packet("sine-bridge", a=-1, b=1, n=1)
    left, right = boundary_points(p)
    approx = two_boundary_derivative_density(left, right, 12.0, 0.05)
    exact = abs(propagate_quadrature(p, 12.0, 0.05)) ** 2
    assert abs(approx - exact) / exact <= 0.05


def test_derivative_density_matches_order_one_series():
    # the order-1 sum also carries d0-free pieces of relative size t/x^2
    p = make_packet("sine-bridge", a=-1, b=1, n=1)
    left, right = boundary_points(p)
    t = 0.05
    for x in (10.0, 15.0):
        assert t / x**2 <= 1e-3
        dens = two_boundary_derivative_density(left, right, x, t)
        series = abs(series_amplitude([left, right], x, t, 1)) ** 2
        assert abs(dens - series) / series <= 10 * t / (x - 1) ** 2


def test_multi_boundary_two_points():
    left, right = point(-1, -1, 1 + 1j), point(1, 1, 0.5)
    x = np.linspace(4, 8, 5)
    np.testing.assert_allclose(multi_boundary_amplitude([left, right], x, 0.1),
                               two_boundary_amplitude(left, right, x, 0.1), rtol=1e-15)


def test_multi_boundary_with_dark_slit():
    pts = [point(-2, -1, 1), point(-1, 1, 1), point(1, -1, 0), point(2, 1, 0)]
    x = np.linspace(8, 30, 23)
    np.testing.assert_allclose(multi_boundary_amplitude(pts, x, 0.05),
                               two_boundary_amplitude(pts[0], pts[1], x, 0.05), rtol=1e-14)


def test_multi_boundary_matches_two_slit_oracle():
    pts = [point(-2, -1, 1), point(-1, 1, 1), point(1, -1, 1), point(2, 1, 1)]
    x = np.linspace(10, 30, 41)
    t = 0.05
    exact = (exact_boundary_form(make_packet("constant", a=-2, b=-1), x, t)
             + exact_boundary_form(make_packet("constant", a=1, b=2), x, t))
    approx = multi_boundary_amplitude(pts, x, t)
    assert np.max(np.abs(np.abs(approx) ** 2 - np.abs(exact) ** 2)) <= 1e-3 * np.max(np.abs(exact) ** 2)


def test_sign_pattern_checks():
    good = [point(-2, -1, 1), point(-1, 1, 1), point(1, -1, 1), point(2, 1, 1)]
    check_sign_pattern(good)
    with pytest.raises(InvalidParameterError):
        check_sign_pattern([point(-2, 1, 1), point(-1, -1, 1)])
    with pytest.raises(InvalidParameterError):
        check_sign_pattern([point(1, -1, 1), point(1, 1, 1)])
    with pytest.raises(InvalidParameterError):
        BoundaryPoint(0.0, 0, BoundaryJet(0.0, RIGHT, (1,)))
    with pytest.raises(DomainError):
        multi_boundary_amplitude(good, 2.0, 0.1)


def test_validity_ratio():
    assert validity_ratio(10.0, 0.05, [-1.0, 1.0]) == pytest.approx(0.05 / 81)
    np.testing.assert_allclose(validity_ratio(np.array([3.0, -4.0]), 1.0, [-1.0, 1.0]), [0.25, 1 / 9])


def exact_half_line(x, t):
    modes = [(1.0, 0.7), (0.5j, -1.3)]
    p = make_packet("plane-wave-sum", a=-math.inf, b=0.0, modes=modes)
    return p, exact_boundary_form(p, x, t)


def test_order_improvement_ladder():
    for x in (10.0, 12.0, 15.0):
        for t in (0.2, 0.5, 1.0):
            assert t / x**2 <= 1e-2
            p, ref = exact_half_line(x, t)
            errs = [abs(series_field(p, [x], t, n).values[0] - ref) for n in (0, 1, 2)]
            assert errs[0] > errs[1] > errs[2]


def test_order_zero_error_halves_with_t():
    rels = []
    for t in (0.08, 0.04, 0.02):
        p, ref = exact_half_line(10.0, t)
        rels.append(abs(series_field(p, [10.0], t, 0).values[0] - ref) / abs(ref))
    for r1, r2 in zip(rels, rels[1:]):
        assert 1.6 <= r1 / r2 <= 2.4


def test_universality_of_order_zero():
    p = make_packet("constant", a=-1, b=1)
    q = make_packet("cosine-bridge", a=-1, b=1, n=2)
    x = np.linspace(10, 20, 11)
    pa, pb = boundary_points(p), boundary_points(q)
    np.testing.assert_array_equal(two_boundary_amplitude(pa[0], pa[1], x, 0.05),
                                  two_boundary_amplitude(pb[0], pb[1], x, 0.05))


def test_series_field_producer():
    p = make_packet("constant", a=-1, b=1)
    wf = series_field(p, np.linspace(5, 20, 64), 0.05, 0)
    assert wf.producer == "series-0" and wf.values.shape == (64,)
    left, right = boundary_points(p)
    np.testing.assert_allclose(wf.density, two_boundary_density(left, right, wf.grid, 0.05), rtol=1e-11)


def test_half_line_edge_phase():
    # single edge at c: prefactor sqrt(i/pi) with the principal root
    jet = BoundaryJet(0.0, RIGHT, (1,))
    val = short_time_single(jet, 4.0, 0.25, 0)
    assert val == pytest.approx(cmath.sqrt(1j / math.pi) * cmath.exp(1j * 16) * 0.5 / 4, rel=1e-14)
