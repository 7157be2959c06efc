#!/usr/bin/env python3
"""
Stable Coverage Toolkit - Main Entry Point
Coverage probability of cellular networks whose BS density follows a totally
skewed alpha-stable law, and the fitting / self-similarity analysis of real
deployments
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

import numpy as np
from dotenv import load_dotenv

from src.analytic import ANALYTIC_MODES, MODE_R_INF, MODE_UPPER, WindowLimit, evaluate
from src.csv_io import load_deployment, resolve_output, save_deployment, write_curve, write_json
from src.errors import ConfigError, DomainError, EstimationError, NumericalError
from src.fitting import fit_report, fit_stable, grid_density
from src.montecarlo import empirical_coverage, sample_deployment, simulate_coverage
from src.run_config import RunConfig
from src.selfsim import METHODS, MIN_RINGS, hurst_multi_origin

MODE_SIMULATE = 'simulate'
COVERAGE_MODES = ANALYTIC_MODES + (MODE_SIMULATE,)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

# flag destinations that override RunConfig keys of the same name
OVERRIDE_KEYS = ('alpha', 'sigma', 'mu', 'delta', 'zeta', 'n0', 'hurst', 'zoom', 'radius_r',
                 'thresholds_db', 'lambda_hppp', 'realizations', 'drops_per_realization',
                 'max_points', 'drops', 'drop_margin', 'cell_side', 'ring_width', 'n_rings',
                 'origins', 'seed', 'threads', 'allow_alpha_one')


def build_config(args: argparse.Namespace, **forced) -> RunConfig:
    """Defaults file (or --config) merged with the flags that were given"""
    overrides = {key: getattr(args, key, None) for key in OVERRIDE_KEYS}
    for key, value in forced.items():
        if overrides.get(key) is None:
            overrides[key] = value
    config = RunConfig.load(args.config, overrides)
    if getattr(args, 'no_margin', False):
        config.drop_margin = None
    return config


def cmd_coverage(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    print(f"📈 Coverage ({args.mode}) at {len(cfg.thresholds_db)} thresholds...")

    if args.mode == MODE_SIMULATE:
        curve = simulate_coverage(cfg.sim_config(), cfg.thresholds_db)
    else:
        limit = WindowLimit.R_INFINITE if args.mode in (MODE_R_INF, MODE_UPPER) else None
        curve = evaluate(args.mode, cfg.query(limit), cfg.threads, cfg.lambda_hppp)
    curve.meta['config'] = cfg.describe()

    out = resolve_output(args.out or f"data/coverage_{args.mode}.csv")
    write_curve(curve, out)
    for t_db, p_c in curve.points:
        print(f"   T = {t_db:6.1f} dB   p_c = {p_c:.4f}")
    print(f"💾 Saved curve to {out}")
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    dep = load_deployment(args.deployment, geo=args.geo)
    print(f"📊 Fitting densities of {dep.count} BSs on {cfg.cell_side:g} m cells...")

    field = grid_density(dep, cfg.cell_side)
    result = fit_stable(field)
    report = fit_report(result, field)
    report['source'] = args.deployment

    out = resolve_output(args.out or 'data/fit_report.json')
    write_json(report, out)
    s = result.stable
    print(f"   stable: alpha={s.alpha:.4f} beta={s.beta:g} sigma={s.sigma:.4g} mu={s.mu:.4g}")
    print(f"   poisson: lambda={result.poisson_lambda:.4g}")
    print(f"💾 Saved report to {out}")
    return EXIT_OK


def hurst_report(report, ring_width: float, n_rings: int) -> Dict[str, Any]:
    per_origin = []
    for origin, est in zip(report.origins, report.estimates):
        per_origin.append({
            'origin': list(origin),
            'h': est.h,
            'r2': est.r2,
            'raw_slope': est.raw_slope,
            'low_confidence': est.low_confidence,
            'points': [list(p) for p in est.points],
        })
    return {
        'method': report.method,
        'ring_width_m': ring_width,
        'n_rings': n_rings,
        'mean': report.mean,
        'std': report.std,
        'origins': per_origin,
    }


def cmd_hurst(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    if cfg.n_rings < MIN_RINGS:
        raise ConfigError(f"n_rings must be >= {MIN_RINGS}, got {cfg.n_rings}")
    dep = load_deployment(args.deployment, geo=args.geo)
    print(f"🔍 Hurst ({args.method}) from {cfg.origins} origins, {cfg.n_rings} rings of {cfg.ring_width:g} m...")

    rng = np.random.default_rng(cfg.seed)
    report = hurst_multi_origin(dep, cfg.ring_width, cfg.n_rings, cfg.origins, args.method, rng)
    out = resolve_output(args.out or 'data/hurst_report.json')
    write_json(hurst_report(report, cfg.ring_width, cfg.n_rings), out)
    print(f"   H = {report.mean:.3f} ± {report.std:.3f}")
    print(f"💾 Saved report to {out}")
    return EXIT_OK


def cmd_empirical(args: argparse.Namespace) -> int:
    # no-noise default for measured deployments
    cfg = build_config(args, n0=0.0)
    dep = load_deployment(args.deployment, geo=args.geo)
    print(f"📡 Dropping {cfg.drops} users over {dep.count} BSs...")

    rng = np.random.default_rng(cfg.seed)
    curve = empirical_coverage(dep, cfg.channel(), cfg.drops, cfg.thresholds_db, rng,
                               drop_margin=cfg.drop_margin, threads=cfg.threads)
    curve.meta['config'] = cfg.describe()
    curve.meta['source'] = args.deployment

    out = resolve_output(args.out or 'data/coverage_empirical.csv')
    write_curve(curve, out)
    for t_db, p_c in curve.points:
        print(f"   T = {t_db:6.1f} dB   p_c = {p_c:.4f}")
    print(f"💾 Saved curve to {out}")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    dep = sample_deployment(cfg.sim_config(), np.random.default_rng(cfg.seed))
    out = resolve_output(args.out or 'data/deployment.csv')
    try:
        save_deployment(dep, out)
    except OSError as e:
        raise ConfigError(f"cannot write {out}: {e}") from e
    print(f"💾 Saved {dep.count} BSs to {out}")
    return EXIT_OK


def _add_model_flags(parser: argparse.ArgumentParser):
    group = parser.add_argument_group('model parameters (override the config file)')
    group.add_argument('--alpha', type=float, help='stable characteristic exponent')
    group.add_argument('--sigma', type=float, help='stable scale (BS/m^2)')
    group.add_argument('--mu', type=float, help='stable location (BS/m^2)')
    group.add_argument('--delta', type=float, help='pathloss exponent')
    group.add_argument('--zeta', type=float, help='Rayleigh fading rate')
    group.add_argument('--n0', type=float, help='noise power')
    group.add_argument('--hurst', type=float, help='Hurst parameter H')
    group.add_argument('--zoom', type=float, help='zoom factor a')
    group.add_argument('--radius-r', dest='radius_r', type=float, help='inner radius R (m)')
    group.add_argument('--thresholds', dest='thresholds_db', type=float, nargs='*',
                       help='SINR thresholds in dB')


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, help='random seed (default: from config)')
    common.add_argument('--config', type=str, help='JSON config (default: config/defaults.json)')
    common.add_argument('--out', type=str, help='output file')
    common.add_argument('--threads', type=int, help='worker processes')
    common.add_argument('--allow-alpha-one', dest='allow_alpha_one', action='store_true',
                        default=None, help='enable the alpha = 1 formulas')
    common.add_argument('--verbose', action='store_true', help='debug logging')

    parser = argparse.ArgumentParser(description='Stable Coverage Toolkit')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('coverage', parents=[common], help='coverage probability curve')
    p.add_argument('--mode', choices=COVERAGE_MODES, default=ANALYTIC_MODES[0])
    p.add_argument('--lambda-hppp', dest='lambda_hppp', type=float,
                   help='HPPP density for --mode hppp (default: mu)')
    p.add_argument('--realizations', type=int, help='Monte Carlo realizations')
    p.add_argument('--drops-per-realization', dest='drops_per_realization', type=int)
    p.add_argument('--max-points', dest='max_points', type=int,
                   help='nearest points per region simulated exactly')
    _add_model_flags(p)
    p.set_defaults(handler=cmd_coverage)

    p = sub.add_parser('fit', parents=[common], help='fit stable and Poisson densities')
    p.add_argument('deployment', help='deployment CSV (x_m,y_m)')
    p.add_argument('--cell-side', dest='cell_side', type=float, help='grid cell side (m)')
    p.add_argument('--geo', action='store_true', help='input is lon,lat')
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser('hurst', parents=[common], help='Hurst parameter of radial counts')
    p.add_argument('deployment', help='deployment CSV (x_m,y_m)')
    p.add_argument('--ring-width', dest='ring_width', type=float, help='ring width (m)')
    p.add_argument('--n-rings', dest='n_rings', type=int)
    p.add_argument('--origins', type=int)
    p.add_argument('--method', choices=METHODS, default='RS')
    p.add_argument('--geo', action='store_true', help='input is lon,lat')
    p.set_defaults(handler=cmd_hurst)

    p = sub.add_parser('empirical', parents=[common], help='coverage over a fixed deployment')
    p.add_argument('deployment', help='deployment CSV (x_m,y_m)')
    p.add_argument('--drops', type=int, help='user drops (default: 100000)')
    p.add_argument('--drop-margin', dest='drop_margin', type=float,
                   help='central share of the region users fall in')
    p.add_argument('--no-margin', dest='no_margin', action='store_true',
                   help='drop users over the full region')
    p.add_argument('--delta', type=float, help='pathloss exponent')
    p.add_argument('--zeta', type=float, help='Rayleigh fading rate')
    p.add_argument('--n0', type=float, help='noise power (default: 0)')
    p.add_argument('--thresholds', dest='thresholds_db', type=float, nargs='*')
    p.add_argument('--geo', action='store_true', help='input is lon,lat')
    p.set_defaults(handler=cmd_empirical)

    p = sub.add_parser('gen', parents=[common], help='sample a synthetic deployment')
    p.add_argument('--max-points', dest='max_points', type=int)
    _add_model_flags(p)
    p.set_defaults(handler=cmd_gen)
    return parser


def _fail(kind: str, message: str, code: int) -> int:
    print(f"error: {kind}: {message}", file=sys.stderr)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        return args.handler(args)
    except (ConfigError, EstimationError) as e:
        return _fail('config', str(e), EXIT_USAGE)
    except DomainError as e:
        return _fail('domain', str(e), EXIT_USAGE)
    except NumericalError as e:
        return _fail('numerical', str(e), EXIT_NUMERICAL)
    except OSError as e:
        return _fail('io', str(e), EXIT_USAGE)


if __name__ == '__main__':
    sys.exit(main())
