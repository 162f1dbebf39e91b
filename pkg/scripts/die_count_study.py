#!/usr/bin/env python3
"""How stack width changes the verdict on keeping retired silicon in service.

Re-runs the comparison with 1..N dies on the interposer, at several grid
mixes. More dies buy throughput but burn more power, so the new monolithic
part pays back faster against wide stacks. One CSV per renewable fraction.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from refresh_carbon import report
from refresh_carbon.catalog import load_catalog, default_catalog_path
from refresh_carbon.lifecycle import sweep
from refresh_carbon.model import (
    DUTY_PRESETS,
    DeploymentScenario,
    GridProfile,
    SystemOption,
)


def parse_args():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--composition", default="refresh_4x_zcu102")
    p.add_argument("--opt1", default="vmk180", help="candidate id")
    p.add_argument("--max-dies", type=int, default=8)
    p.add_argument("--duty", default="case3", choices=sorted(DUTY_PRESETS))
    p.add_argument("--grid-base", type=float, default=400.0)
    p.add_argument("--renewables", type=float, nargs="+", default=[0.0, 0.5, 0.9])
    p.add_argument("--out-dir", default="results/die_count")
    return p.parse_args()


def main():
    args = parse_args()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    catalog = load_catalog(default_catalog_path())
    composition = catalog.compositions[args.composition]
    opt0 = SystemOption(args.composition, catalog.resolve_option(args.composition))
    opt1 = SystemOption(args.opt1, catalog.resolve_option(args.opt1))
    counts = [float(n) for n in range(1, args.max_dies + 1)]

    for renewables in args.renewables:
        scenario = DeploymentScenario(
            grid=GridProfile(args.grid_base, renewables),
            duty=DUTY_PRESETS[args.duty],
        )
        result = sweep(
            opt0,
            opt1,
            scenario,
            "die_count",
            counts,
            composition=composition,
            composition_option=0,
        )
        name = f"die_count_r{int(round(renewables * 100)):02d}.csv"
        (out_dir / name).write_text(report.sweep_to_csv(report.sweep_payload(result)))
        defined = [r for r in result.rows if r.t_indifference_years is not None]
        if defined:
            first = defined[0]
            print(
                f"r={renewables:.2f}: {args.opt1} starts paying back at "
                f"{int(first.value)} dies (t={first.t_indifference_years:.2f} y)",
                file=sys.stderr,
            )
        else:
            print(f"r={renewables:.2f}: {args.opt1} never pays back", file=sys.stderr)

    print(f"outputs in {out_dir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
