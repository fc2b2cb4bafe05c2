"""Command-line front end emitting plot-ready data.

Every output starts with the run manifest, so a file records exactly how to
regenerate itself.  Exit status: 0 success, 1 failed check, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field

from . import __version__
from .flash import composite_bit_energy_curve
from .montecarlo import empirical_capacity, mmse_variances, simulate_mmse
from .optimize import SweepGrid, min_bit_energy, min_bit_energy_vs_m, sweep_bit_energy
from .peak_pilot import PeakPilotConfig, min_bit_energy_peak, sweep_peak_bit_energy
from .specfun import DEFAULT_QUAD_ORDER, expected_log1p_exp
from .training import (
    ChannelConfig,
    capacity_lower_bound,
    capacity_point,
    optimal_pilot_fraction,
    pilot_power_unconstrained,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2
TABLE1_M = (50, 100, 200, 500, 1000, 10_000)
VALIDATE_C_RANGE = (1e-6, 3.0)


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    parameters: dict = field(default_factory=dict)
    quad_order: int = DEFAULT_QUAD_ORDER
    seed: int | None = None
    tool_version: str = __version__

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    def header(self) -> str:
        return f"# manifest: {self.to_json()}\n"


def fmt(x) -> str:
    """10 significant digits, locale independent."""
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(float(f"{x:.10g}")) if math.isfinite(x) else "nan"


def write_csv(out: io.TextIOBase, manifest: RunManifest, columns, rows) -> None:
    out.write(manifest.header())
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(fmt(v) for v in row) + "\n")


def write_json(out, manifest: RunManifest, payload: dict) -> None:
    doc = {"manifest": asdict(manifest), **payload}
    out.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")


def _snr_value(x: float, unit: str) -> float:
    return 10.0 ** (x / 10.0) if unit == "db" else x


def _grid(args) -> SweepGrid:
    return SweepGrid(
        _snr_value(args.snr_min, args.snr_unit),
        _snr_value(args.snr_max, args.snr_unit),
        args.points,
        "log" if args.log else "linear",
    )


def _grid_params(args) -> dict:
    return {
        "snr_min": args.snr_min,
        "snr_max": args.snr_max,
        "snr_unit": args.snr_unit,
        "points": args.points,
        "spacing": "log" if args.log else "linear",
    }


def cmd_bitenergy_sweep(args, out) -> int:
    grid = _grid(args)
    pts = sweep_bit_energy(args.m, grid, args.quad_order)
    manifest = RunManifest("sweep", {"m": args.m, **_grid_params(args)}, args.quad_order)
    columns = ("snr", "rate_nats_per_symbol", "eb_n0_db")
    rows = [(p.snr, p.rate_nats, p.bit_energy_db) for p in pts]
    _emit(args, out, manifest, columns, rows)
    return EXIT_OK


def cmd_flash_curve(args, out) -> int:
    pts = composite_bit_energy_curve(args.m, _grid(args).values(), args.quad_order)
    manifest = RunManifest("flash", {"m": args.m, **_grid_params(args)}, args.quad_order)
    rows = [(p.snr, p.duty_cycle, p.bit_energy_db) for p in pts]
    _emit(args, out, manifest, ("snr", "nu", "eb_n0_db"), rows)
    return EXIT_OK


def cmd_peak_sweep(args, out) -> int:
    cfg = PeakPilotConfig(args.m, args.kappa)
    pts = sweep_peak_bit_energy(cfg, _grid(args), args.quad_order)
    manifest = RunManifest("peak", {"m": args.m, "kappa": args.kappa, **_grid_params(args)}, args.quad_order)
    rows = [(p.snr, l, p.rate_nats, p.bit_energy_db) for p, l in pts]
    _emit(args, out, manifest, ("snr", "n_pilots", "rate_nats_per_symbol", "eb_n0_db"), rows)
    return EXIT_OK


def cmd_min_vs_m(args, out) -> int:
    pairs = min_bit_energy_vs_m(args.m, args.quad_order)
    manifest = RunManifest("minvsm", {"m": list(args.m)}, args.quad_order)
    _emit(args, out, manifest, ("inv_m", "eb_min_db"), pairs)
    return EXIT_OK


def cmd_point(args, out) -> int:
    if args.snr is not None:
        cfg = ChannelConfig.from_snr(args.m, _snr_value(args.snr, args.snr_unit))
    else:
        cfg = ChannelConfig(args.m, args.gamma_sq, args.n0, args.p)
    alloc = optimal_pilot_fraction(cfg)
    pt = capacity_point(cfg.m, cfg.snr, args.quad_order)
    manifest = RunManifest(
        "point",
        {"m": cfg.m, "gamma_sq": cfg.gamma_sq, "n0": cfg.n0, "p": cfg.p},
        args.quad_order,
    )
    columns = ("snr", "delta", "pilot_power", "data_power_per_symbol", "rate_nats_per_symbol", "eb_n0_db")
    row = (cfg.snr, alloc.delta, pilot_power_unconstrained(cfg), alloc.data_power_per_symbol,
           pt.rate_nats, pt.bit_energy_db)
    _emit(args, out, manifest, columns, [row])
    return EXIT_OK


def cmd_table1(args, out) -> int:
    manifest = RunManifest("table1", {"kappa": args.kappa, "m": list(args.m)}, args.quad_order)
    columns = ("m", "eb_min_db_peak", "n_pilots", "snr_star", "eb_min_db_unconstrained")
    rows, failed = [], False
    for m in args.m:
        unconstrained = min_bit_energy(m, args.quad_order).eb_min_db
        try:
            res = min_bit_energy_peak(PeakPilotConfig(m, args.kappa), args.quad_order)
        except ValueError:
            failed = True
            rows.append((m, "infeasible", "infeasible", "infeasible", unconstrained))
            continue
        rows.append((m, res.eb_min_db, res.l_star, res.snr_star, unconstrained))

    if args.format == "text":
        out.write(manifest.header())
        widths = (7, 15, 9, 9, 24)
        out.write("  ".join(c.rjust(w) for c, w in zip(columns, widths)) + "\n")
        for m, eb, l, snr, eb_u in rows:
            cells = (str(m),) + tuple(
                v if isinstance(v, str) else s.format(v)
                for v, s in ((eb, "{:.3f}"), (l, "{}"), (snr, "{:.2f}"), (eb_u, "{:.3f}"))
            )
            out.write("  ".join(c.rjust(w) for c, w in zip(cells, widths)) + "\n")
    else:
        _emit(args, out, manifest, columns, rows)
    if failed:
        print("error: kappa leaves no admissible pilot count for some m (kappa >= m)", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def run_validation(seed: int, n_samples: int, n_blocks: int, quad_order: int) -> list[dict]:
    """Quadrature, Monte Carlo and MMSE cross-checks as a list of check records."""
    checks = []

    def add(name, tolerance, observed, ok):
        checks.append({"name": name, "tolerance": tolerance, "observed": observed, "pass": bool(ok)})

    # gains reached by f(snr) for snr up to about 3; order-96 Gauss-Laguerre
    # loses 1e-8 accuracy beyond c ~ 5 (log(1+cx) bends at x ~ 1/c)
    lo, hi = math.log10(VALIDATE_C_RANGE[0]), math.log10(VALIDATE_C_RANGE[1])
    grid = [10.0 ** (lo + (hi - lo) * k / 49) for k in range(50)]
    diff = max(abs(expected_log1p_exp(c, "quadrature", quad_order) - expected_log1p_exp(c, "closed_form"))
               for c in grid)
    add("quadrature_vs_closed_form_max_abs", 1e-8, diff, diff <= 1e-8)

    mean, se = empirical_capacity(10, 0.8, n_samples, seed)
    z = abs(mean - capacity_lower_bound(10, 0.8, quad_order)) / se
    add("monte_carlo_capacity_m10_snr0.8_z", 3.0, z, z <= 3.0)

    cfg = ChannelConfig(m=10)
    rep = simulate_mmse(cfg, pilot_energy=cfg.n0 / cfg.gamma_sq, n_blocks=n_blocks, seed=seed)
    z_hat, z_til = rep.z_scores()
    add("mmse_var_hhat_z", 4.0, abs(z_hat), abs(z_hat) <= 4.0)
    add("mmse_var_htilde_z", 4.0, abs(z_til), abs(z_til) <= 4.0)
    band = 4.0 / math.sqrt(n_blocks)
    add("mmse_estimate_error_correlation", band, rep.correlation, rep.correlation <= band)
    a_hat, a_til = mmse_variances(cfg.gamma_sq, cfg.n0, cfg.n0 / cfg.gamma_sq)
    gap = abs(a_hat + a_til - cfg.gamma_sq)
    add("mmse_variance_sum_identity", 0.0, gap, gap == 0.0)
    return checks


def cmd_validate(args, out) -> int:
    checks = run_validation(args.seed, args.n_samples, args.n_blocks, args.quad_order)
    manifest = RunManifest(
        "validate", {"n_samples": args.n_samples, "n_blocks": args.n_blocks}, args.quad_order, args.seed
    )
    write_json(out, manifest, {"checks": checks, "seed": args.seed, "version": __version__})
    return EXIT_OK if all(c["pass"] for c in checks) else EXIT_CHECK_FAILED


def _emit(args, out, manifest, columns, rows) -> None:
    if args.format == "json":
        records = [dict(zip(columns, r)) for r in rows]
        write_json(out, manifest, {"columns": list(columns), "rows": records})
    elif args.format == "text":
        out.write(manifest.header())
        out.write("  ".join(f"{c:>22}" for c in columns) + "\n")
        for r in rows:
            out.write("  ".join(f"{fmt(v):>22}" for v in r) + "\n")
    else:
        write_csv(out, manifest, columns, rows)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pilot-energy", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt_default="csv"):
        p.add_argument("--quad-order", type=int, default=DEFAULT_QUAD_ORDER)
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json", "text"), default=fmt_default)

    def grid(p, lo, hi, n):
        p.add_argument("--snr-min", type=float, default=lo)
        p.add_argument("--snr-max", type=float, default=hi)
        p.add_argument("--points", type=int, default=n)
        p.add_argument("--log", action="store_true", help="log-spaced grid (default linear)")
        p.add_argument("--snr-unit", choices=("linear", "db"), default="linear")

    p = sub.add_parser("sweep", help="bit energy vs SNR for one block length")
    p.add_argument("--m", type=int, required=True)
    grid(p, 0.01, 10.0, 200)
    common(p)
    p.set_defaults(func=cmd_bitenergy_sweep)

    p = sub.add_parser("flash", help="composite flash / non-flash bit energy curve")
    p.add_argument("--m", type=int, required=True)
    grid(p, 0.01, 10.0, 200)
    common(p)
    p.set_defaults(func=cmd_flash_curve)

    p = sub.add_parser("peak", help="bit energy and pilot count vs SNR under a pilot peak limit")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kappa", type=float, default=10.0)
    grid(p, 0.01, 10.0, 200)
    common(p)
    p.set_defaults(func=cmd_peak_sweep)

    p = sub.add_parser("minvsm", help="minimum bit energy vs 1/m")
    p.add_argument("--m", type=int, nargs="+", default=[3, 5, 10, 20, 50, 100, 200, 1000, 10_000])
    common(p)
    p.set_defaults(func=cmd_min_vs_m)

    p = sub.add_parser("point", help="allocation, rate and bit energy at one operating point")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--snr", type=float)
    p.add_argument("--snr-unit", choices=("linear", "db"), default="linear")
    p.add_argument("--gamma-sq", type=float, default=1.0)
    p.add_argument("--n0", type=float, default=1.0)
    p.add_argument("--p", type=float, default=1.0)
    common(p)
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("table1", help="minimum bit energy with and without a pilot peak limit")
    p.add_argument("--kappa", type=float, default=10.0)
    p.add_argument("--m", type=int, nargs="+", default=list(TABLE1_M))
    common(p, fmt_default="text")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("validate", help="run quadrature, Monte Carlo and MMSE cross-checks")
    p.add_argument("--seed", type=int, default=20080101)
    p.add_argument("--n-samples", type=_positive_int, default=1_000_000)
    p.add_argument("--n-blocks", type=_positive_int, default=100_000)
    common(p, fmt_default="json")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "validate" and args.seed < 0:
            raise UsageError("seed must be an unsigned integer")
        buf = io.StringIO()
        status = args.func(args, buf)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, TypeError) as exc:
        print(f"error: {str(exc).splitlines()[0]}", file=sys.stderr)
        return EXIT_USAGE

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return status


if __name__ == "__main__":
    sys.exit(main())
