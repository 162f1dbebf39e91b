"""Shared builders for tests.

make_option crafts a device whose annual operational carbon under
REFERENCE_SCENARIO is (within a few ulp) a chosen number of kg/yr, so
lifecycle tests can pin closed-form anchors without reverse-engineering
power values by hand: at 1000 gCO2e/kWh and a fully active duty cycle,
O = 8.76 * p_dynamic.
"""

from __future__ import annotations

from refresh_carbon.model import (
    DeploymentScenario,
    DeviceProfile,
    DutyCycle,
    GridProfile,
    PowerProfile,
    SystemOption,
)

REFERENCE_GRID = GridProfile(base_intensity_g_per_kwh=1000.0, renewable_fraction=0.0)
FULL_ACTIVE = DutyCycle(r_sleep=0.0, r_active=1.0)
REFERENCE_SCENARIO = DeploymentScenario(grid=REFERENCE_GRID, duty=FULL_ACTIVE)


def make_device(
    device_id: str = "dev",
    o_kg_per_year: float = 10.0,
    embodied: float = 100.0,
    lifetime: float = 10.0,
    latency_ns: float = 10.0,
    parallel_units: int = 1,
) -> DeviceProfile:
    return DeviceProfile(
        id=device_id,
        display_name=device_id,
        tech_node_nm=16.0,
        unit_work_latency_ns=latency_ns,
        power=PowerProfile(p_dynamic=o_kg_per_year / 8.76, p_static=0.0, p_sleep=0.0),
        embodied_kgco2e=embodied,
        lifetime_years=lifetime,
        parallel_units=parallel_units,
    )


def make_option(
    label: str,
    o_kg_per_year: float,
    embodied: float,
    lifetime: float,
    latency_ns: float = 10.0,
) -> SystemOption:
    return SystemOption(
        label=label,
        device=make_device(label, o_kg_per_year, embodied, lifetime, latency_ns),
    )
