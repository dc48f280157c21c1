"""Command-line front end: sweeps, density tables, critical report, ED cross-check.

    tfim-entanglement sweep --x-min -2 --x-max 2 --steps 81 --sizes 10,20,inf --out fig2.csv
    tfim-entanglement density --x-values 0.8,0.9,1.0 --steps 201 --format json
    tfim-entanglement critical
    tfim-entanglement oracle --sizes 2,4,6 --x-values 0.2,0.5

Exit codes: 0 ok, 2 configuration error, 3 numerical failure,
4 oracle disagreement.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .criticality import (Method, Side, StencilError, divergence_exponent,
                          epsilon_derivative, jump_estimate)
from .ed import SpinHamiltonian, energy_cross_check, ground_state, species_entropy_ed
from .entanglement import INFINITE, epsilon_finite, epsilon_infinite, g_of_p
from .model import Parity

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_ORACLE = 0, 2, 3, 4
ORACLE_TOL = 1e-9
ORACLE_X_MAX = 0.95


class ConfigError(ValueError):
    pass


def parse_size(token):
    if isinstance(token, str):
        token = token.strip().lower()
        if token in ("inf", "infinite", "infinity"):
            return INFINITE
        try:
            token = int(token)
        except ValueError:
            raise ConfigError(f"bad size {token!r}") from None
    if token == INFINITE:
        return INFINITE
    if isinstance(token, bool) or int(token) != token or token < 2 or token % 2:
        raise ConfigError(f"size must be an even integer >= 2 or 'inf', got {token!r}")
    return int(token)


def size_label(size):
    return "inf" if size == INFINITE else str(size)


def _split(text, conv):
    if isinstance(text, (list, tuple)):
        return [conv(t) for t in text]
    return [conv(t) for t in str(text).split(",") if t.strip()]


@dataclass
class SweepConfig:
    x_min: float = -2.0
    x_max: float = 2.0
    x_steps: int = 81
    sizes: list = field(default_factory=lambda: [10, 20, INFINITE])
    sector: Parity = Parity.EVEN
    quad_tol: float = 1e-8
    derivative_step: float = 1e-4
    output_path: str = None
    format: str = "csv"
    d1: bool = True
    d2: bool = False
    refine_critical: bool = True
    jobs: int = 1

    def __post_init__(self):
        try:
            self.x_min, self.x_max = float(self.x_min), float(self.x_max)
            self.x_steps = int(self.x_steps)
            self.quad_tol = float(self.quad_tol)
            self.derivative_step = float(self.derivative_step)
            self.sector = Parity(self.sector)
            self.jobs = int(self.jobs)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        self.sizes = _split(self.sizes, parse_size)
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ConfigError("x range must be finite")
        # a degenerate range [a, a] is a single sample
        if self.x_min > self.x_max:
            raise ConfigError("x_min must not exceed x_max")
        if self.x_steps < 2:
            raise ConfigError("x_steps must be >= 2")
        if not self.sizes:
            raise ConfigError("at least one size is required")
        if self.quad_tol <= 0 or self.derivative_step <= 0:
            raise ConfigError("quad_tol and derivative_step must be positive")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    def x_grid(self):
        if self.x_min == self.x_max:
            return np.array([self.x_min])
        xs = np.linspace(self.x_min, self.x_max, self.x_steps)
        if self.refine_critical:
            extra = []
            for c in (-1.0, 1.0):
                if self.x_min < c < self.x_max:
                    d = np.geomspace(0.05, 1e-3, 5)
                    extra.extend([c, *(c - d), *(c + d)])
            extra = [e for e in extra if self.x_min <= e <= self.x_max]
            xs = np.unique(np.concatenate([xs, extra]))
        return xs


def _derivative_side(x, step):
    # stencils near |x| = 1 point away from the kink
    a = abs(x)
    if abs(a - 1.0) >= 2 * step:
        return Side.CENTRAL
    if a < 1:
        return Side.RIGHT if x < 0 else Side.LEFT
    return Side.LEFT if x < 0 else Side.RIGHT


def _sweep_row(job):
    x, size, cfg = job
    if size == INFINITE:
        eps = epsilon_infinite(x, cfg.quad_tol).epsilon
    else:
        eps = epsilon_finite(x, size, cfg.sector).epsilon
    row = {"x": float(x), "size": size_label(size), "epsilon": eps,
           "eps_d1": None, "eps_d2": None, "deriv_side": ""}
    if cfg.d1 or cfg.d2:
        side = _derivative_side(x, cfg.derivative_step)
        row["deriv_side"] = side.value
        for order, key, on in ((1, "eps_d1", cfg.d1), (2, "eps_d2", cfg.d2)):
            if on:
                row[key] = epsilon_derivative(x, order, cfg.derivative_step, side,
                                              cfg.quad_tol, size=size)
    return row


def _run(fn, jobs, workers):
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=4))


def cmd_sweep(config: SweepConfig):
    """Rows of (x, size, epsilon[, derivatives]), size-major then x ascending."""
    xs = config.x_grid()
    jobs = [(float(x), size, config) for size in config.sizes for x in xs]
    return _run(_sweep_row, jobs, config.jobs)


def cmd_density(x_list, p_steps: int):
    """Integrated eigenvalue density g(p, x) on a uniform p grid over [0, 1]."""
    if p_steps < 2:
        raise ConfigError("p_steps must be >= 2")
    p = np.linspace(0.0, 1.0, p_steps)
    rows = []
    for x in x_list:
        g = g_of_p(p, float(x))
        rows.extend({"p": float(pi), "x": float(x), "g": float(gi)} for pi, gi in zip(p, g))
    return rows


def cmd_critical(step: float = 1e-4, quad_tol: float = 1e-8):
    closed = jump_estimate(Method.CLOSED_FORM_INTEGRAL, step, quad_tol)
    limit = jump_estimate(Method.NUMERIC_LIMIT, step, quad_tol)
    div = divergence_exponent(step=step, quad_tol=quad_tol)
    flat = {str(x): epsilon_derivative(x, 1, step, Side.CENTRAL, quad_tol) for x in (1.1, 1.5, 2.0)}
    return {
        "jump_closed_form": closed.jump_value,
        "jump_numeric_limit": limit.jump_value,
        "left_derivative_closed_form": closed.jump_left_derivative,
        "left_derivative_numeric_limit": limit.jump_left_derivative,
        "right_derivative": closed.right_derivative,
        "method_gap": abs(closed.jump_value - limit.jump_value),
        "derivative_above_critical": flat,
        "divergence_exponent": div.divergence_exponent,
        "fit_window": list(div.fit_window),
        "fit_residual": div.fit_residual,
        "fit_points": [list(p) for p in div.fit_points],
    }


def cmd_oracle(n_list, x_list):
    """ED versus mode-sum entropy and energy.  Returns (rows, agreed)."""
    rows, agreed = [], True
    for n in n_list:
        if not 2 <= n <= 12 or n % 2:
            raise ConfigError(f"oracle sizes must be even and <= 12, got {n}")
        for x in x_list:
            gs = ground_state(SpinHamiltonian(n, float(x), 1.0))
            eps_ed = species_entropy_ed(gs)
            eps_modes = epsilon_finite(x, n).epsilon
            diff = abs(eps_ed - eps_modes)
            rows.append({"n": n, "x": float(x), "eps_modes": eps_modes, "eps_ed": eps_ed,
                         "abs_diff": diff, "energy_rel_diff": energy_cross_check(x, n)})
            if abs(x) <= ORACLE_X_MAX and diff > ORACLE_TOL:
                agreed = False
    return rows, agreed


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def render(rows, fmt):
    if fmt == "json":
        return json.dumps(rows, indent=1, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        writer.writerow(rows[0].keys())
        for r in rows:
            writer.writerow(_fmt(v) for v in r.values())
    return buf.getvalue()


def write_output(text, path):
    """Write atomically: a failed run never leaves a partial file behind."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _build_parser():
    parser = argparse.ArgumentParser(prog="tfim-entanglement", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON file with option defaults")
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--out", dest="output_path", help="output file (default: stdout)")
        p.add_argument("--quad-tol", dest="quad_tol", type=float)
        p.add_argument("--step", dest="derivative_step", type=float)

    p = sub.add_parser("sweep", help="eps(x) for several chain lengths")
    common(p)
    p.add_argument("--x-min", dest="x_min", type=float)
    p.add_argument("--x-max", dest="x_max", type=float)
    p.add_argument("--steps", dest="x_steps", type=int)
    p.add_argument("--sizes", help="comma-separated even sizes and/or 'inf'")
    p.add_argument("--sector", choices=[s.value for s in Parity])
    p.add_argument("--d1", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--d2", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--refine-critical", dest="refine_critical",
                   action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--jobs", type=int)

    p = sub.add_parser("density", help="integrated eigenvalue density g(p, x)")
    common(p)
    p.add_argument("--x-values", dest="x_values", default=None)
    p.add_argument("--steps", dest="p_steps", type=int)

    p = sub.add_parser("critical", help="jump of eps' and exponent of eps'' at x = 1")
    common(p)

    p = sub.add_parser("oracle", help="exact diagonalization cross-check")
    common(p)
    p.add_argument("--sizes", default=None)
    p.add_argument("--x-values", dest="x_values", default=None)
    return parser


def _layered(args):
    """Built-in defaults < --config file < explicit flags."""
    opts = {}
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        opts.update(loaded)
    opts.update({k: v for k, v in vars(args).items()
                 if v is not None and k not in ("config", "command")})
    return opts


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        opts = _layered(args)
        fmt = opts.get("format", "csv")
        out = opts.get("output_path")
        if args.command == "sweep":
            known = {f.name for f in dataclasses.fields(SweepConfig)}
            unknown = set(opts) - known
            if unknown:
                raise ConfigError(f"unknown options: {sorted(unknown)}")
            cfg = SweepConfig(**opts)
            write_output(render(cmd_sweep(cfg), cfg.format), cfg.output_path)
        elif args.command == "density":
            xs = _split(opts.get("x_values", [0.8, 0.9, 1.0, 3.0]), float)
            rows = cmd_density(xs, int(opts.get("p_steps", 101)))
            write_output(render(rows, fmt), out)
        elif args.command == "critical":
            report = cmd_critical(float(opts.get("derivative_step", 1e-4)),
                                  float(opts.get("quad_tol", 1e-8)))
            write_output(json.dumps(report, indent=1) + "\n", out)
        elif args.command == "oracle":
            ns = _split(opts.get("sizes", [2, 4, 6, 8, 10]), int)
            xs = _split(opts.get("x_values", [-0.9, -0.5, -0.2, 0.2, 0.5, 0.9]), float)
            rows, agreed = cmd_oracle(ns, xs)
            write_output(render(rows, fmt), out)
            if not agreed:
                print(f"oracle disagreement above {ORACLE_TOL:g} for |x| <= {ORACLE_X_MAX}",
                      file=sys.stderr)
                return EXIT_ORACLE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ArithmeticError, StencilError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
