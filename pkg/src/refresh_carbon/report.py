"""Payload builders and formatters shared by the CLI and the HTTP service.

Both front ends funnel through analysis_payload/sweep_payload, so a CLI
json report and an /api/v1/analyze response for the same inputs carry
bit-identical numbers; neither side recomputes anything. Formatting rules:
human output rounds to 6 significant digits, json and csv keep full
precision (shortest round-trip float repr), and None renders as "none" for
humans and an empty cell in csv.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Sequence

from .catalog import Catalog, LcaBreakdown
from .lifecycle import analyze, resolve_options, sample_curve
from .model import (
    DeploymentScenario,
    DeviceProfile,
    SystemOption,
    effective_intensity,
    state_fractions,
)

__all__ = [
    "device_payload",
    "analysis_payload",
    "sweep_payload",
    "catalog_payload",
    "lca_payload",
    "to_json",
    "analysis_to_csv",
    "sweep_to_csv",
    "analysis_to_human",
    "sweep_to_human",
    "device_to_human",
    "device_to_csv",
    "lca_to_csv",
    "lca_to_human",
]


def _human(value: float | None) -> str:
    if value is None:
        return "none"
    return format(value, ".6g")


def _cell(value: Any) -> Any:
    return "" if value is None else value


def _years(value: float | None) -> str:
    return "none" if value is None else f"{_human(value)} years"


def device_payload(device: DeviceProfile) -> dict[str, Any]:
    return {
        "id": device.id,
        "display_name": device.display_name,
        "tech_node_nm": device.tech_node_nm,
        "unit_work_latency_ns": device.unit_work_latency_ns,
        "parallel_units": device.parallel_units,
        "power": {
            "p_dynamic": device.power.p_dynamic,
            "p_static": device.power.p_static,
            "p_sleep": device.power.p_sleep,
        },
        "embodied_kgco2e": device.embodied_kgco2e,
        "lifetime_years": device.lifetime_years,
    }


def _option_payload(option: SystemOption, scenario: DeploymentScenario) -> dict[str, Any]:
    duty = option.effective_duty(scenario)
    f_active, f_idle, f_sleep = state_fractions(duty)
    return {
        "label": option.label,
        "device": device_payload(option.device),
        "duty": {
            "r_sleep": duty.r_sleep,
            "r_active": duty.r_active,
            "f_active": f_active,
            "f_idle": f_idle,
            "f_sleep": f_sleep,
        },
    }


def _curve_payload(curve) -> dict[str, Any]:
    return {
        "option_label": curve.option_label,
        "includes_upfront": curve.includes_upfront,
        "samples": [[t, v] for t, v in curve.samples],
    }


def analysis_payload(
    opt0: SystemOption,
    opt1: SystemOption,
    scenario: DeploymentScenario,
    include_curves: bool = False,
    curve_samples: int = 200,
) -> dict[str, Any]:
    """Complete analysis result with resolved-input echo and optional curves."""
    opt0, opt1 = resolve_options(opt0, opt1, scenario)
    result = analyze(opt0, opt1, scenario)
    payload: dict[str, Any] = {
        "t_indifference_years": result.t_indifference_years,
        "t_breakeven_years": result.t_breakeven_years,
        "rate0_kg_per_year": result.rate0_kg_per_year,
        "rate1_kg_per_year": result.rate1_kg_per_year,
        "o0_kg_per_year": result.o0_kg_per_year,
        "o1_kg_per_year": result.o1_kg_per_year,
        "e0_kg": result.e0_kg,
        "e1_kg": result.e1_kg,
        "resolved": {
            "option0": _option_payload(opt0, scenario),
            "option1": _option_payload(opt1, scenario),
            "grid": {
                "base_intensity_g_per_kwh": scenario.grid.base_intensity_g_per_kwh,
                "renewable_fraction": scenario.grid.renewable_fraction,
                "renewable_intensity_g_per_kwh": scenario.grid.renewable_intensity_g_per_kwh,
                "effective_intensity_g_per_kwh": effective_intensity(scenario.grid),
            },
            "comparison_mode": scenario.comparison_mode.value,
            "horizon_years": scenario.horizon_years,
        },
    }
    if include_curves:
        payload["curves"] = [
            _curve_payload(sample_curve(opt, scenario, scenario.horizon_years, curve_samples))
            for opt in (opt0, opt1)
        ]
    return payload


def sweep_payload(sweep) -> dict[str, Any]:
    return {
        "parameter_name": sweep.parameter_name,
        "rows": [
            {
                "value": row.value,
                "t_indifference_years": row.t_indifference_years,
                "t_breakeven_years": row.t_breakeven_years,
                "error": row.error,
            }
            for row in sweep.rows
        ],
    }


def catalog_payload(catalog: Catalog) -> dict[str, Any]:
    """Catalog listing with stable id ordering, for the service and CLI."""
    compositions = {}
    for comp_id in sorted(catalog.compositions):
        comp = catalog.compositions[comp_id]
        composed = catalog.resolve_option(comp_id)
        compositions[comp_id] = {
            "id": comp_id,
            "display_name": composed.display_name,
            "dies": [{"device": die.id, "count": count} for die, count in comp.dies],
            "residual_embodied_fraction": comp.residual_embodied_fraction,
            "lifetime_years": comp.lifetime_years,
            "sdll_required": comp.sdll_required,
            "composed": device_payload(composed),
        }
    return {
        "devices": {
            device_id: device_payload(catalog.devices[device_id])
            for device_id in sorted(catalog.devices)
        },
        "interposers": {
            interposer_id: {
                "id": interposer_id,
                "embodied_kgco2e": spec.embodied_kgco2e,
                "sdll_efficiency": spec.sdll_efficiency,
                "power_overhead_watts": spec.power_overhead_watts,
                "sdll_capacity": spec.sdll_capacity,
            }
            for interposer_id, spec in sorted(catalog.interposers.items())
        },
        "compositions": compositions,
        "lca_reference": lca_payload(catalog.lca_reference),
    }


def lca_payload(rows: Sequence[LcaBreakdown]) -> list[dict[str, Any]]:
    return [
        {
            "product": row.product,
            "manufacturing_pct": row.manufacturing_pct,
            "operational_pct": row.operational_pct,
            "supply_chain_pct": row.supply_chain_pct,
            "disposal_pct": row.disposal_pct,
        }
        for row in rows
    ]


def to_json(payload: Any) -> str:
    return json.dumps(payload, indent=2) + "\n"


_ANALYSIS_SCALARS = (
    "t_indifference_years",
    "t_breakeven_years",
    "rate0_kg_per_year",
    "rate1_kg_per_year",
    "o0_kg_per_year",
    "o1_kg_per_year",
    "e0_kg",
    "e1_kg",
)


def analysis_to_csv(payload: dict[str, Any]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key in _ANALYSIS_SCALARS:
        writer.writerow([key, _cell(payload[key])])
    grid = payload["resolved"]["grid"]
    for key, value in grid.items():
        writer.writerow([f"grid.{key}", value])
    for side in ("option0", "option1"):
        duty = payload["resolved"][side]["duty"]
        writer.writerow([f"{side}.device_id", payload["resolved"][side]["device"]["id"]])
        for key, value in duty.items():
            writer.writerow([f"{side}.duty.{key}", value])
    writer.writerow(["comparison_mode", payload["resolved"]["comparison_mode"]])
    writer.writerow(["horizon_years", payload["resolved"]["horizon_years"]])
    return out.getvalue()


def sweep_to_csv(payload: dict[str, Any]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([payload["parameter_name"], "t_indifference_years", "t_breakeven_years", "error"])
    for row in payload["rows"]:
        writer.writerow(
            [
                row["value"],
                _cell(row["t_indifference_years"]),
                _cell(row["t_breakeven_years"]),
                _cell(row["error"]),
            ]
        )
    return out.getvalue()


def analysis_to_human(payload: dict[str, Any]) -> str:
    resolved = payload["resolved"]
    lines = [
        f"option 0: {resolved['option0']['label']} ({resolved['option0']['device']['id']})",
        f"option 1: {resolved['option1']['label']} ({resolved['option1']['device']['id']})",
        f"mode: {resolved['comparison_mode']}, horizon {_human(resolved['horizon_years'])} y",
        (
            f"grid: {_human(resolved['grid']['effective_intensity_g_per_kwh'])} gCO2e/kWh effective "
            f"({_human(resolved['grid']['renewable_fraction'])} renewable)"
        ),
        "",
        f"indifference time: {_years(payload['t_indifference_years'])}",
        f"break-even time:   {_years(payload['t_breakeven_years'])}",
        "",
        "                     option 0      option 1",
        (
            f"embodied (kg):       {_human(payload['e0_kg']):<13} {_human(payload['e1_kg'])}"
        ),
        (
            f"operational (kg/y):  {_human(payload['o0_kg_per_year']):<13} {_human(payload['o1_kg_per_year'])}"
        ),
        (
            f"total rate (kg/y):   {_human(payload['rate0_kg_per_year']):<13} {_human(payload['rate1_kg_per_year'])}"
        ),
    ]
    if payload["t_indifference_years"] is None:
        lines.append("")
        lines.append("no indifference point: option 1 never recoups its embodied carbon")
    return "\n".join(lines) + "\n"


def sweep_to_human(payload: dict[str, Any]) -> str:
    name = payload["parameter_name"]
    width = max(len(name), 12)
    lines = [f"{name:<{width}}  t_indifference_y  t_breakeven_y"]
    for row in payload["rows"]:
        if row["error"] is not None:
            lines.append(f"{_human(row['value']):<{width}}  error: {row['error']}")
        else:
            lines.append(
                f"{_human(row['value']):<{width}}  "
                f"{_human(row['t_indifference_years']):<16}  "
                f"{_human(row['t_breakeven_years'])}"
            )
    return "\n".join(lines) + "\n"


def device_to_human(payload: dict[str, Any]) -> str:
    power = payload["power"]
    lines = [
        f"{payload['id']}: {payload['display_name']}",
        f"tech node:        {_human(payload['tech_node_nm'])} nm",
        f"unit latency:     {_human(payload['unit_work_latency_ns'])} ns x {payload['parallel_units']} unit(s)",
        f"power (W):        dynamic {_human(power['p_dynamic'])}, static {_human(power['p_static'])}, sleep {_human(power['p_sleep'])}",
        f"embodied:         {_human(payload['embodied_kgco2e'])} kg",
        f"lifetime:         {_human(payload['lifetime_years'])} years",
    ]
    return "\n".join(lines) + "\n"


def device_to_csv(payload: dict[str, Any]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key, value in payload.items():
        if key == "power":
            for rail, watts in value.items():
                writer.writerow([f"power.{rail}", watts])
        else:
            writer.writerow([key, value])
    return out.getvalue()


def lca_to_csv(rows: list[dict[str, Any]]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["product", "manufacturing_pct", "operational_pct", "supply_chain_pct", "disposal_pct"])
    for row in rows:
        writer.writerow(
            [
                row["product"],
                row["manufacturing_pct"],
                row["operational_pct"],
                row["supply_chain_pct"],
                row["disposal_pct"],
            ]
        )
    return out.getvalue()


def lca_to_human(rows: list[dict[str, Any]]) -> str:
    width = max(len(row["product"]) for row in rows)
    lines = [f"{'product':<{width}}  manufacturing  operational  supply chain  disposal"]
    for row in rows:
        lines.append(
            f"{row['product']:<{width}}  "
            f"{_human(row['manufacturing_pct']):>13}  "
            f"{_human(row['operational_pct']):>11}  "
            f"{_human(row['supply_chain_pct']):>12}  "
            f"{_human(row['disposal_pct']):>8}"
        )
    return "\n".join(lines) + "\n"
