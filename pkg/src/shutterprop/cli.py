"""``shutterprop`` command line front end.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 boundary-jet mismatch.
"""

import argparse
import csv
import math
import sys
from pathlib import Path

import numpy as np

from . import analysis, boundary, edge, oracle
from .config import ConfigError, load_config
from .errors import (DomainError, InvalidParameterError, JetMismatchError, NonConvergenceError,
                     PaddingError, TooFewFringesError, UnsupportedKindError)
from .packets import LEFT, RIGHT, BoundaryJet, load_sampled, make_packet

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_JET = 0, 2, 3, 4

METHODS = ("quadrature", "spectral", "exact-boundary", "series-0", "series-1", "series-2")
SELF_CHECK_TOL = 1e-7
JET_TOL = 1e-9


def fmt(v):
    if isinstance(v, str):
        return v
    return "%.16e" % v


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def _pick(values, i, key):
    if len(values) == 1:
        return values[0]
    if i >= len(values):
        raise ConfigError(key, f"needs one entry per packet ({i + 1} or more)")
    return values[i]


def build_packets(cfg):
    kinds = cfg.texts("packet")
    if not kinds:
        raise ConfigError("packet", "missing packet kind")
    out = []
    for i, kind in enumerate(kinds):
        try:
            if kind == "sampled":
                out.append(load_sampled(cfg.path("samples")))
                continue
            params = {}
            if kind == "tanh-edge":
                params["xi"] = cfg.number("xi")
            else:
                params["a"] = _pick(cfg.floats("a"), i, "a")
                params["b"] = _pick(cfg.floats("b"), i, "b")
                params["amplitude"] = _pick(cfg.floats("amplitude", "1"), i, "amplitude")
                if kind in ("cosine-bridge", "sine-bridge"):
                    params["n"] = _pick(cfg.ints("n"), i, "n")
                if kind == "plane-wave-sum":
                    params["modes"] = cfg.modes()
            out.append(make_packet(kind, **params))
        except InvalidParameterError as exc:
            key = {"kind": "packet", "modes": "k_modes", "x": "samples", "values": "samples"}.get(exc.field, exc.field)
            raise ConfigError(key, str(exc)) from None
    return out


def _output(cfg, args, default):
    if args.output:
        return Path(args.output)
    return cfg.path("output") if cfg.has("output") else Path(default)


def field_for(packet, method, grid, t):
    if method == "quadrature":
        return oracle.quadrature_field(packet, grid, t)
    if method == "spectral":
        return oracle.propagate_spectral(packet, grid, t)
    if method == "exact-boundary":
        return oracle.exact_field(packet, grid, t)
    return boundary.series_field(packet, grid, t, int(method[-1]))


def cmd_propagate(cfg, args):
    packets = build_packets(cfg)
    if len(packets) != 1:
        raise ConfigError("packet", "propagate takes exactly one packet")
    p = packets[0]
    if p.kind == "tanh-edge":
        raise ConfigError("packet", "tanh-edge packets are handled by the edge-compare command")
    method = cfg.text("method", "quadrature")
    if method == "series":
        (order,) = cfg.ints("order", "0")
        if order not in (0, 1, 2):
            raise ConfigError("order", "series order must be 0, 1 or 2")
        method = f"series-{order}"
    elif "order" in cfg.raw:
        raise ConfigError("order", "only used with method = series")
    if method not in METHODS:
        raise ConfigError("method", f"expected one of {', '.join(METHODS)}")
    grid = cfg.grid()
    times = cfg.times()
    edges = [c for c, _ in p.edges()]
    rows = []
    for t in times:
        try:
            wf = field_for(p, method, grid, t)
        except UnsupportedKindError as exc:
            raise ConfigError("method", str(exc)) from None
        except DomainError as exc:
            raise ConfigError("x_start", str(exc)) from None
        if args.self_check and method in ("quadrature", "spectral"):
            other = field_for(p, "spectral" if method == "quadrature" else "quadrature", grid, t)
            gap = float(np.max(np.abs(other.values - wf.values)))
            if gap > SELF_CHECK_TOL:
                raise NonConvergenceError(f"self-check failed at t={t}: quadrature/spectral gap {gap:.3g}")
        ratio = boundary.validity_ratio(grid, t, edges)
        for xv, v, r in zip(grid, wf.values, np.atleast_1d(ratio)):
            rows.append((xv, t, v.real, v.imag, abs(v) ** 2, method, r, wf.error_estimate))
    out = _output(cfg, args, "propagate.csv")
    write_csv(out, ["x", "t", "re", "im", "abs2", "method", "validity_ratio", "error_estimate"], rows)
    print(f"wrote {len(rows)} rows to {out}")


def check_jets(p1, p2, mode):
    """Raise JetMismatchError unless the packets share the jets ``mode`` needs."""
    if (p1.a, p1.b) != (p2.a, p2.b):
        raise ConfigError("a", "packets must share the same support")
    orders = (0,) if mode == "value" else (0, 1)
    for side in (LEFT, RIGHT):
        j1, j2 = p1.boundary_jet(side, 2), p2.boundary_jet(side, 2)
        for order in orders:
            scale = max(1.0, abs(j1[order]), abs(j2[order]))
            if abs(j1[order] - j2[order]) > JET_TOL * scale:
                raise JetMismatchError(
                    order, f"{side} boundary derivative order {order} differs: {j1[order]:.6g} vs {j2[order]:.6g}")
        if mode == "derivative" and (abs(j1[0]) > 1e-12 or abs(j2[0]) > 1e-12):
            raise JetMismatchError(0, f"{side} boundary: derivative mode needs psi = 0 at the edges")


def exact_values(p, grid, t):
    if p.is_exponential:
        return oracle.exact_boundary_form(p, grid, t)
    return oracle.quadrature_field(p, grid, t).values


def compare_interiors(p1, p2, mode, grid, t):
    """Rows of decay-compensated exact densities for two packets and the
    boundary-only prediction; the difference is normalised by the curve peak."""
    power = 2 if mode == "value" else 4
    comp = grid**power
    u = np.abs(exact_values(p1, grid, t)) ** 2 * comp
    v = np.abs(exact_values(p2, grid, t)) ** 2 * comp
    left, right = boundary.boundary_points(p1, depth=2)
    if mode == "value":
        s = boundary.two_boundary_density(left, right, grid, t) * comp
    else:
        s = boundary.two_boundary_derivative_density(left, right, grid, t) * comp
    rel = np.abs(u - v) / np.max(u)
    return u, v, s, rel


def cmd_compare_interiors(cfg, args):
    packets = build_packets(cfg)
    if len(packets) != 2:
        raise ConfigError("packet", "compare-interiors needs exactly two packets")
    mode = cfg.text("mode", "value")
    if mode not in ("value", "derivative"):
        raise ConfigError("mode", "expected 'value' or 'derivative'")
    p1, p2 = packets
    if p1.half_line or p2.half_line or not (p1.is_exponential or p1.kind == "sampled"):
        raise ConfigError("packet", "compare-interiors needs two bounded packets")
    check_jets(p1, p2, mode)
    grid = cfg.grid()
    rows = []
    worst = 0.0
    for t in cfg.times():
        try:
            u, v, s, rel = compare_interiors(p1, p2, mode, grid, t)
        except DomainError as exc:
            raise ConfigError("x_start", str(exc)) from None
        worst = max(worst, float(rel.max()))
        rows.extend(zip(grid, [t] * grid.size, u, v, s, rel))
    power = 2 if mode == "value" else 4
    out = _output(cfg, args, "compare_interiors.csv")
    write_csv(out, ["x", "t", f"abs2_x{power}_1", f"abs2_x{power}_2", f"series_x{power}", "rel_diff"], rows)
    print(f"{p1.label} vs {p2.label} ({mode} mode): max relative difference {worst:.4g}; wrote {out}")


def cmd_edge_compare(cfg, args):
    xi = cfg.number("xi")
    if not xi > 0:
        raise ConfigError("xi", "must be > 0")
    grid = cfg.grid()
    if grid[0] <= 0:
        raise ConfigError("x_start", "edge comparison needs x > 0 (ahead of the edge)")
    jet = BoundaryJet(0.0, RIGHT, (1.0 + 0j, 0j, 0j))
    rows = []
    for t in cfg.times():
        win = edge.regime_window_position(t, xi)
        approx = np.abs(boundary.short_time_single(jet, grid, t, 0))
        step = np.abs(edge.propagate_step(grid, t))
        tanh = np.abs(edge.tanh_field(grid, t, xi).values)
        for xv, a, s, ap, reg in zip(grid, tanh, step, approx, win.classify(grid)):
            rows.append((xv, t, a, s, ap, reg, win.lower, win.upper))
        print(f"t={t:g} xi={xi:g}: x_min={win.lower:.6g} x_max={win.upper:.6g}"
              + (" (empty window)" if win.empty else ""))
    out = _output(cfg, args, "edge_compare.csv")
    write_csv(out, ["x", "t", "abs_tanh", "abs_step", "abs_approx", "region", "x_min", "x_max"], rows)
    print(f"wrote {out}")


def fringe_points(cfg):
    lefts = cfg.floats("a")
    rights = cfg.floats("b")
    if len(lefts) != len(rights):
        raise ConfigError("b", "need as many right edges as left edges")
    amps = cfg.floats("amplitude", "1")
    pts = []
    for i, (a, b) in enumerate(zip(lefts, rights)):
        if not a < b:
            raise ConfigError("a", f"slit {i}: need a < b")
        amp = _pick(amps, i, "amplitude")
        if math.isfinite(a):
            pts.append(boundary.BoundaryPoint(a, -1, BoundaryJet(a, LEFT, (complex(amp), 0j, 0j))))
        pts.append(boundary.BoundaryPoint(b, 1, BoundaryJet(b, RIGHT, (complex(amp), 0j, 0j))))
    pos = [pt.position for pt in pts]
    if any(p >= q for p, q in zip(pos, pos[1:])):
        raise ConfigError("a", "slits must be ordered and non-overlapping")
    return pts, lefts, rights, amps


def fringe_density(cfg, grid, t):
    pts, lefts, rights, amps = fringe_points(cfg)
    method = cfg.text("method", "exact-boundary")
    if method == "series-0":
        amp = boundary.multi_boundary_amplitude(pts, grid, t)
    elif method == "exact-boundary":
        amp = sum(oracle.exact_boundary_form(make_packet("constant", a=a, b=b, amplitude=_pick(amps, i, "amplitude")),
                                             grid, t)
                  for i, (a, b) in enumerate(zip(lefts, rights)))
    else:
        raise ConfigError("method", "fringe supports 'exact-boundary' or 'series-0'")
    return np.abs(amp) ** 2, [pt.position for pt in pts]


def cmd_fringe(cfg, args):
    grid = cfg.grid()
    times = cfg.times()
    rows = []
    summaries = []
    for t in times:
        try:
            dens, positions = fringe_density(cfg, grid, t)
        except DomainError as exc:
            raise ConfigError("x_start", str(exc)) from None
        rows.extend(zip(grid, [t] * grid.size, dens))
        period, _ = analysis.fringe_period(grid, dens)
        peaks, _ = analysis.spectral_peaks(grid, dens)
        predicted = analysis.predicted_frequencies(positions, t)
        matches = analysis.match_peaks(predicted, peaks)
        summaries.append(
            f"t={t:g} period={period:.6g} predicted_period={2 * math.pi / predicted[-1]:.6g} "
            + " ".join(f"peak[{f:.6g}]={m:.6g}" for f, m, _, _ in matches))
    out = _output(cfg, args, "fringe.csv")
    write_csv(out, ["x", "t", "density"], rows)
    for line in summaries:
        print(line)


def cmd_window(args):
    try:
        win = edge.physical_window(args.mass_kg, args.distance_m, args.edge_width_m)
    except DomainError as exc:
        raise ConfigError("edge-width-m", str(exc)) from None
    print(f"t_min = {win.lower:.4g} s, t_max = {win.upper:.4g} s "
          f"(t_min = 2 m xi x / hbar, t_max = 2 m x^2 / hbar, hbar = {edge.HBAR:.10g} J s)")


COMMANDS = {
    "propagate": cmd_propagate,
    "compare-interiors": cmd_compare_interiors,
    "edge-compare": cmd_edge_compare,
    "fringe": cmd_fringe,
}


HELP = {
    "propagate": "evolve a packet on an x grid (quadrature, spectral or series)",
    "compare-interiors": "compare two packets that share boundary jets",
    "edge-compare": "tanh edge against the sharp step and its approximant",
    "fringe": "fringe period and beat frequencies of slit sources",
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value experiment file")
    common.add_argument("--output", help="override the CSV output path")
    common.add_argument("--self-check", action="store_true",
                        help="cross-check quadrature against spectral (propagate)")
    parser = argparse.ArgumentParser(prog="shutterprop", parents=[common],
                                     description="Free propagation of sharply bounded wave packets.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in HELP.items():
        sub.add_parser(name, parents=[common], help=text)
    win = sub.add_parser("window", parents=[common], help="physical validity window in seconds")
    win.add_argument("--mass-kg", type=float, required=True)
    win.add_argument("--distance-m", type=float, required=True)
    win.add_argument("--edge-width-m", type=float, required=True)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "window":
            cmd_window(args)
            return EXIT_OK
        if not args.config:
            raise ConfigError("config", "--config is required")
        COMMANDS[args.command](load_config(args.config), args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except JetMismatchError as exc:
        print(f"jet mismatch: {exc}", file=sys.stderr)
        return EXIT_JET
    except (NonConvergenceError, PaddingError, TooFewFringesError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
