#!/usr/bin/env python3
"""Decision study: retired-silicon stack vs new monolithic part across grid mixes.

For each duty preset, sweeps the renewable fraction of the grid and records
when the new device's lower operating power pays back its extra embodied
carbon. Writes one CSV and one SVG per preset, plus the cumulative-carbon
curve pair at the chosen spotlight fraction.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from refresh_carbon import report
from refresh_carbon.catalog import load_catalog, default_catalog_path
from refresh_carbon.lifecycle import analyze, resolve_options, sample_curve, sweep
from refresh_carbon.model import (
    DUTY_PRESETS,
    DeploymentScenario,
    GridProfile,
    SystemOption,
)
from refresh_carbon.plots import render_curves_svg, render_sweep_svg


def parse_args():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--opt0", default="refresh_4x_zcu102", help="incumbent id")
    p.add_argument("--opt1", default="vmk180", help="candidate id")
    p.add_argument("--grid-base", type=float, default=400.0, help="gCO2e/kWh")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--max-renewables", type=float, default=0.95)
    p.add_argument("--spotlight", type=float, default=0.9,
                   help="renewable fraction for the curve plot")
    p.add_argument("--horizon", type=float, default=10.0)
    p.add_argument("--out-dir", default="results/renewables")
    return p.parse_args()


def main():
    args = parse_args()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    catalog = load_catalog(default_catalog_path())
    opt0 = SystemOption(args.opt0, catalog.resolve_option(args.opt0))
    opt1 = SystemOption(args.opt1, catalog.resolve_option(args.opt1))
    fractions = [
        i * args.max_renewables / (args.steps - 1) for i in range(args.steps)
    ]

    for preset in sorted(DUTY_PRESETS):
        scenario = DeploymentScenario(
            grid=GridProfile(args.grid_base, 0.0),
            duty=DUTY_PRESETS[preset],
            horizon_years=args.horizon,
        )
        result = sweep(opt0, opt1, scenario, "renewable_fraction", fractions)
        payload = report.sweep_payload(result)
        (out_dir / f"sweep_{preset}.csv").write_text(report.sweep_to_csv(payload))
        (out_dir / f"sweep_{preset}.svg").write_text(render_sweep_svg(result))
        print(f"{preset}: wrote sweep_{preset}.csv and .svg", file=sys.stderr)

    spotlight = DeploymentScenario(
        grid=GridProfile(args.grid_base, args.spotlight),
        duty=DUTY_PRESETS["case1"],
        horizon_years=args.horizon,
    )
    r0, r1 = resolve_options(opt0, opt1, spotlight)
    result = analyze(r0, r1, spotlight)
    curves = (
        sample_curve(r0, spotlight, args.horizon, 200),
        sample_curve(r1, spotlight, args.horizon, 200),
    )
    marker = None
    if result.t_indifference_years is not None:
        t = result.t_indifference_years
        marker = (t, result.e0_kg + result.rate0_kg_per_year * t)
    (out_dir / "curves_spotlight.svg").write_text(render_curves_svg(curves, marker))

    print(f"outputs in {out_dir}/")
    if result.t_indifference_years is None:
        print(f"at {args.spotlight:.0%} renewables {args.opt1} never pays back")
    else:
        print(
            f"at {args.spotlight:.0%} renewables {args.opt1} pays back vs "
            f"{args.opt0} after {result.t_indifference_years:.3f} years"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
