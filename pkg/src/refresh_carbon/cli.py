"""Command-line front end.

Subcommands: analyze, sweep, plot, compose, lca-reference, serve. Exit
codes are 0 for success, 1 for any usage or input error, and 2 when an
analysis completes but the options never reach indifference (rates are
still printed). json and csv output keep full float precision and are
byte-deterministic; human output rounds to 6 significant digits.

The catalog defaults to the bundled fixture and can be redirected with
--catalog or the REFRESH_CATALOG environment variable.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import report
from .catalog import DEFAULT_GRID, Catalog, default_catalog_path, load_catalog, load_grid
from .composer import Composition, InterposerSpec, compose
from .errors import RefreshError, UnknownId
from .lifecycle import SWEEP_PARAMETERS, analyze, resolve_options, sample_curve, sweep
from .model import (
    DUTY_PRESETS,
    ComparisonMode,
    DeploymentScenario,
    DutyCycle,
    GridProfile,
    SystemOption,
)
from .plots import render_curves_svg, render_sweep_svg

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default, which would collide
    # with the no-indifference-point exit code
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common_flags(p: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
    p.add_argument("--catalog", metavar="PATH", help="catalog JSON file (default: bundled fixture)")
    p.add_argument("--format", choices=formats, default="human", help="output format")


def _add_option_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--opt0", required=True, metavar="ID", help="incumbent option: device or composition id")
    p.add_argument("--opt1", required=True, metavar="ID", help="candidate option: device or composition id")


def _add_scenario_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--duty", choices=sorted(DUTY_PRESETS), default="case1", help="duty-cycle preset")
    p.add_argument("--r-sleep", type=float, metavar="F", help="override preset sleep ratio")
    p.add_argument("--r-active", type=float, metavar="F", help="override preset active-when-awake ratio")
    p.add_argument("--grid-file", metavar="PATH", help="grid profile JSON file")
    p.add_argument("--grid-base", type=float, metavar="G", help="base grid intensity in gCO2e/kWh")
    p.add_argument("--renewables", type=float, metavar="F", help="renewable fraction of the grid mix")
    p.add_argument(
        "--renewable-intensity", type=float, metavar="G", help="renewable source intensity in gCO2e/kWh"
    )
    p.add_argument(
        "--mode",
        choices=[m.value for m in ComparisonMode],
        default=ComparisonMode.EQUAL_TIME.value,
        help="normalize options by deployment time or by delivered work",
    )
    p.add_argument("--horizon", type=float, default=10.0, metavar="YEARS", help="study horizon")


def _load_catalog(args: argparse.Namespace) -> Catalog:
    path = Path(args.catalog) if args.catalog else default_catalog_path()
    return load_catalog(path)


def _build_scenario(args: argparse.Namespace) -> DeploymentScenario:
    duty = DUTY_PRESETS[args.duty]
    if args.r_sleep is not None:
        duty = replace(duty, r_sleep=args.r_sleep)
    if args.r_active is not None:
        duty = replace(duty, r_active=args.r_active)

    grid = load_grid(args.grid_file) if args.grid_file else DEFAULT_GRID
    overrides = {}
    if args.grid_base is not None:
        overrides["base_intensity_g_per_kwh"] = args.grid_base
    if args.renewables is not None:
        overrides["renewable_fraction"] = args.renewables
    if args.renewable_intensity is not None:
        overrides["renewable_intensity_g_per_kwh"] = args.renewable_intensity
    if overrides:
        grid = replace(grid, **overrides)

    return DeploymentScenario(
        grid=grid,
        duty=duty,
        comparison_mode=ComparisonMode(args.mode),
        horizon_years=args.horizon,
    )


def _build_options(catalog: Catalog, args: argparse.Namespace) -> tuple[SystemOption, SystemOption]:
    return (
        SystemOption(label=args.opt0, device=catalog.resolve_option(args.opt0)),
        SystemOption(label=args.opt1, device=catalog.resolve_option(args.opt1)),
    )


def cmd_analyze(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args)
    scenario = _build_scenario(args)
    opt0, opt1 = _build_options(catalog, args)
    payload = report.analysis_payload(opt0, opt1, scenario)
    if args.format == "json":
        sys.stdout.write(report.to_json(payload))
    elif args.format == "csv":
        sys.stdout.write(report.analysis_to_csv(payload))
    else:
        sys.stdout.write(report.analysis_to_human(payload))
    return 2 if payload["t_indifference_years"] is None else 0


def _sweep_values(args: argparse.Namespace) -> list[float]:
    if args.lo is None or args.hi is None or args.steps is None:
        raise RefreshError("sweeping needs --from, --to, and --steps")
    if args.steps < 1:
        raise RefreshError("--steps must be >= 1")
    if not args.lo < args.hi:
        raise RefreshError("--from must be strictly less than --to")
    return np.linspace(args.lo, args.hi, args.steps).tolist()


def _run_sweep(catalog: Catalog, args: argparse.Namespace):
    scenario = _build_scenario(args)
    opt0, opt1 = _build_options(catalog, args)
    kwargs = {}
    if args.param == "die_count":
        # rebuild whichever option is composition-backed, preferring opt1
        if args.opt1 in catalog.compositions:
            kwargs = {"composition": catalog.compositions[args.opt1], "composition_option": 1}
        elif args.opt0 in catalog.compositions:
            kwargs = {"composition": catalog.compositions[args.opt0], "composition_option": 0}
        else:
            raise RefreshError("die_count sweeps need a composition id as --opt0 or --opt1")
    return sweep(opt0, opt1, scenario, args.param, _sweep_values(args), **kwargs)


def cmd_sweep(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args)
    payload = report.sweep_payload(_run_sweep(catalog, args))
    if args.format == "json":
        sys.stdout.write(report.to_json(payload))
    elif args.format == "csv":
        sys.stdout.write(report.sweep_to_csv(payload))
    else:
        sys.stdout.write(report.sweep_to_human(payload))
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args)
    if args.param is not None:
        svg = render_sweep_svg(_run_sweep(catalog, args))
    else:
        scenario = _build_scenario(args)
        opt0, opt1 = resolve_options(*_build_options(catalog, args), scenario)
        result = analyze(opt0, opt1, scenario)
        curves = [
            sample_curve(opt, scenario, scenario.horizon_years, args.samples)
            for opt in (opt0, opt1)
        ]
        crossover = None
        if result.t_indifference_years is not None:
            t_cross = result.t_indifference_years
            crossover = (t_cross, result.e0_kg + result.rate0_kg_per_year * t_cross)
        svg = render_curves_svg(curves, crossover)
    try:
        Path(args.output).write_text(svg, encoding="utf-8")
    except OSError as exc:
        raise RefreshError(f"cannot write {args.output}: {exc}") from exc
    print(f"wrote {args.output}")
    return 0


def _parse_die_spec(spec: str) -> tuple[str, int]:
    name, sep, suffix = spec.rpartition("x")
    if sep and name and suffix.isdigit():
        return name, int(suffix)
    return spec, 1


def cmd_compose(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args)
    dies = []
    for spec in args.dies.split(","):
        die_id, count = _parse_die_spec(spec.strip())
        if die_id not in catalog.devices:
            raise UnknownId("device", die_id)
        dies.append((catalog.devices[die_id], count))

    if args.interposer is not None:
        if args.interposer not in catalog.interposers:
            raise UnknownId("interposer", args.interposer)
        interposer = catalog.interposers[args.interposer]
    else:
        interposer = InterposerSpec(embodied_kgco2e=0.0, sdll_efficiency=1.0)
    overrides = {}
    if args.efficiency is not None:
        overrides["sdll_efficiency"] = args.efficiency
    if args.embodied is not None:
        overrides["embodied_kgco2e"] = args.embodied
    if args.overhead is not None:
        overrides["power_overhead_watts"] = args.overhead
    if args.capacity is not None:
        overrides["sdll_capacity"] = args.capacity
    if overrides:
        interposer = replace(interposer, **overrides)

    lifetime = args.lifetime if args.lifetime is not None else max(d.lifetime_years for d, _ in dies)
    composition = Composition(
        dies=tuple(dies),
        interposer=interposer,
        lifetime_years=lifetime,
        residual_embodied_fraction=args.residual,
        sdll_required=args.required,
    )
    payload = report.device_payload(compose(composition))
    if args.format == "json":
        sys.stdout.write(report.to_json(payload))
    elif args.format == "csv":
        sys.stdout.write(report.device_to_csv(payload))
    else:
        sys.stdout.write(report.device_to_human(payload))
    return 0


def cmd_lca_reference(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args)
    rows = report.lca_payload(catalog.lca_reference)
    if args.format == "json":
        sys.stdout.write(report.to_json(rows))
    elif args.format == "csv":
        sys.stdout.write(report.lca_to_csv(rows))
    else:
        sys.stdout.write(report.lca_to_human(rows))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import socket

    import uvicorn

    from .service import create_app

    catalog = _load_catalog(args)
    app = create_app(catalog, cors_origin=args.cors_origin)

    # bind before handing off so an occupied port is an exit-1 error here,
    # not a log line swallowed inside the server loop
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((args.host, args.port))
    except OSError as exc:
        sock.close()
        raise RefreshError(f"cannot bind {args.host}:{args.port}: {exc}") from exc

    config = uvicorn.Config(app, log_level="warning")
    uvicorn.Server(config).run(sockets=[sock])
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="refresh-carbon", description=__doc__.splitlines()[0])
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = subparsers.add_parser("analyze", help="indifference and break-even times for two options")
    _add_option_flags(p)
    _add_scenario_flags(p)
    _add_common_flags(p, ("human", "json", "csv"))
    p.set_defaults(handler=cmd_analyze)

    p = subparsers.add_parser("sweep", help="re-run the comparison across one varying parameter")
    _add_option_flags(p)
    _add_scenario_flags(p)
    p.add_argument("--param", required=True, choices=SWEEP_PARAMETERS)
    p.add_argument("--from", dest="lo", type=float, required=True, metavar="F")
    p.add_argument("--to", dest="hi", type=float, required=True, metavar="F")
    p.add_argument("--steps", type=int, required=True, metavar="N")
    _add_common_flags(p, ("human", "json", "csv"))
    p.set_defaults(handler=cmd_sweep)

    p = subparsers.add_parser("plot", help="emit an SVG of carbon curves or a sweep line")
    _add_option_flags(p)
    _add_scenario_flags(p)
    p.add_argument("--param", choices=SWEEP_PARAMETERS, help="sweep this parameter instead of plotting curves")
    p.add_argument("--from", dest="lo", type=float, metavar="F")
    p.add_argument("--to", dest="hi", type=float, metavar="F")
    p.add_argument("--steps", type=int, metavar="N")
    p.add_argument("--samples", type=int, default=200, help="points per curve")
    p.add_argument("-o", "--output", required=True, metavar="FILE.svg")
    _add_common_flags(p, ("svg",))
    p.set_defaults(handler=cmd_plot, format="svg")

    p = subparsers.add_parser("compose", help="flatten dies + interposer into one device profile")
    p.add_argument("--dies", required=True, metavar="ID[xN][,ID[xN]...]", help="die list, e.g. zcu102x4")
    p.add_argument("--interposer", metavar="ID", help="interposer id (default: perfect zero-cost interposer)")
    p.add_argument("--efficiency", type=float, metavar="F", help="override interposer sdll_efficiency")
    p.add_argument("--embodied", type=float, metavar="KG", help="override interposer embodied carbon")
    p.add_argument("--overhead", type=float, metavar="W", help="override interposer power overhead")
    p.add_argument("--capacity", type=int, metavar="N", help="override interposer link capacity")
    p.add_argument("--residual", type=float, default=0.0, metavar="F", help="residual die embodied fraction")
    p.add_argument("--lifetime", type=float, metavar="YEARS", help="composed lifetime (default: max die lifetime)")
    p.add_argument("--required", type=int, metavar="N", help="inter-die links the composition needs")
    _add_common_flags(p, ("human", "json", "csv"))
    p.set_defaults(handler=cmd_compose)

    p = subparsers.add_parser("lca-reference", help="published lifecycle-carbon splits for common products")
    _add_common_flags(p, ("human", "json", "csv"))
    p.set_defaults(handler=cmd_lca_reference)

    p = subparsers.add_parser("serve", help="run the HTTP analysis service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8033)
    p.add_argument("--cors-origin", metavar="ORIGIN", help="allow this origin for browser clients")
    p.add_argument("--catalog", metavar="PATH", help="catalog JSON file (default: bundled fixture)")
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits on bad flags and on --help; report the code instead
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (RefreshError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
