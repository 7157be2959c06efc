#!/usr/bin/env python3
"""
Experiment batch: coverage table for the default network (analytic, HPPP and
Monte Carlo) plus the parameter sensitivity sweeps, written under data/
"""

import argparse
import logging
import os
import sys
from dataclasses import replace

import numpy as np
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from src.analytic import (
    MODE_A_INF,
    MODE_R_INF,
    MODE_THM2,
    MODE_UPPER,
    coverage_hppp,
    coverage_thm2,
    evaluate,
    sweep,
)
from src.csv_io import resolve_output, write_curve, write_json
from src.errors import StableCoverageError
from src.montecarlo import simulate_coverage
from src.run_config import RunConfig
from src.stable import SelfSimParams

TABLE_THRESHOLDS = (-10.0, 0.0, 10.0)
SWEEP_THRESHOLDS = tuple(np.linspace(-10.0, 20.0, 13))

# (zoom, hurst) columns of the coverage table
TABLE_COLUMNS = ((2.0, 0.9), (20.0, 0.9), (200.0, 0.9), (2.0, 0.1), (2.0, 0.5))

SWEEPS = {
    'mu': (0.05, 0.25, 1.25),
    'sigma': (0.025, 0.25, 2.5),
    'alpha': (0.3, 0.6, 0.9),
    'radius_r': (10.0, 40.0, 160.0),
    'delta': (3.0, 4.0, 5.0),
    'n0': (0.0, 1.0, 10.0),
}


def table_rows(cfg: RunConfig, threads: int):
    """Analytic coverage for every (a, H) column plus the HPPP baseline"""
    query = replace(cfg.query(), thresholds_db=TABLE_THRESHOLDS)
    rows = {}
    for zoom, hurst in TABLE_COLUMNS:
        window = replace(query.window, selfsim=SelfSimParams(hurst=hurst, zoom=zoom))
        curve = coverage_thm2(replace(query, window=window), threads)
        rows[f"a={zoom:g},H={hurst:g}"] = curve.values
        print(f"   a={zoom:<5g} H={hurst:<4g} " + "  ".join(f"{p:.4f}" for p in curve.values))

    lam = cfg.lambda_hppp if cfg.lambda_hppp is not None else cfg.mu
    hppp = coverage_hppp(lam, cfg.channel(), TABLE_THRESHOLDS, threads)
    rows['hppp'] = hppp.values
    print("   HPPP            " + "  ".join(f"{p:.4f}" for p in hppp.values))
    return rows


def run_reproduction(realizations: int, threads: int, skip_mc: bool):
    """Main function for the experiment batch"""

    print("=" * 60)
    print("🚀 Stable coverage experiment batch")
    print("=" * 60)

    try:
        cfg = RunConfig.load(overrides={'realizations': realizations, 'threads': threads})
        out_dir = resolve_output('data')
        os.makedirs(out_dir, exist_ok=True)

        # Step 1: analytic coverage table
        print("\n📈 Step 1: Analytic coverage table (T = -10 / 0 / 10 dB)...")
        rows = table_rows(cfg, threads)
        write_json({'thresholds_db': list(TABLE_THRESHOLDS), 'columns': rows},
                   os.path.join(out_dir, 'coverage_table.json'))
        print("✅ Saved coverage_table.json")

        # Step 2: Monte Carlo cross-check
        if skip_mc:
            print("\n⚠️  Step 2: Monte Carlo skipped")
        else:
            print(f"\n🎲 Step 2: Monte Carlo with {cfg.realizations} realizations...")
            curve = simulate_coverage(cfg.sim_config(), TABLE_THRESHOLDS)
            write_curve(curve, os.path.join(out_dir, 'coverage_simulate.csv'))
            print("   MC              " + "  ".join(f"{p:.4f}" for p in curve.values))
            print("✅ Saved coverage_simulate.csv")

        # Step 3: limits and the upper bound on a finer grid
        print("\n📐 Step 3: Limit models and upper bound...")
        base = replace(cfg.query(), thresholds_db=SWEEP_THRESHOLDS)
        for mode in (MODE_THM2, MODE_A_INF, MODE_R_INF, MODE_UPPER):
            curve = evaluate(mode, base, threads)
            write_curve(curve, os.path.join(out_dir, f"curve_{mode}.csv"))
        print("✅ Saved limit curves")

        # Step 4: parameter sweeps
        print("\n🔧 Step 4: Parameter sweeps...")
        for parameter, values in SWEEPS.items():
            curves = sweep(MODE_THM2, base, parameter, values, threads)
            for value, curve in curves.items():
                write_curve(curve, os.path.join(out_dir, f"sweep_{parameter}_{value:g}.csv"))
            print(f"   {parameter}: {len(curves)} curves")
        print("✅ Saved sweeps")

        print("\n" + "=" * 60)
        print("✅ Experiment batch completed successfully!")
        print("=" * 60)
        return 0

    except StableCoverageError as e:
        print(f"\n❌ Error in experiment batch: {e}")
        return 3


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description='Run the coverage experiment batch')
    parser.add_argument('--realizations', type=int, default=15000)
    parser.add_argument('--threads', type=int, default=1)
    parser.add_argument('--skip-mc', action='store_true', help='skip the Monte Carlo step')
    parser.add_argument('--verbose', action='store_true')
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    sys.exit(run_reproduction(args.realizations, args.threads, args.skip_mc))
