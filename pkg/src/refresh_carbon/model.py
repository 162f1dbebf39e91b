"""Domain types and the power/energy/carbon arithmetic built on them.

Everything here is an immutable value or a pure function. A device plus a
duty cycle plus a grid is enough to compute average power, annual
operational carbon, and annual delivered work; lifecycle comparisons are
layered on top in :mod:`refresh_carbon.lifecycle`.

Unit conventions: power in watts, energy intensity in gCO2e/kWh, carbon
masses in kgCO2e, time in years unless a field name says otherwise. A year
is 8760 hours / 31,536,000 seconds; no leap handling.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DomainError

HOURS_PER_YEAR = 8760
SECONDS_PER_YEAR = 31_536_000

__all__ = [
    "HOURS_PER_YEAR",
    "SECONDS_PER_YEAR",
    "ComparisonMode",
    "PowerProfile",
    "DeviceProfile",
    "DutyCycle",
    "DUTY_PRESETS",
    "GridProfile",
    "DeploymentScenario",
    "SystemOption",
    "state_fractions",
    "effective_intensity",
    "average_power",
    "annual_operational_carbon",
    "annual_work",
]


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


@dataclass(frozen=True)
class PowerProfile:
    """Per-state power draw in watts.

    Active draw is p_dynamic + p_static, idle draw is p_static alone, and
    sleep draw is p_sleep (0 unless a measurement says otherwise).
    """

    p_dynamic: float
    p_static: float
    p_sleep: float = 0.0

    def __post_init__(self) -> None:
        _require(self.p_dynamic >= 0, "p_dynamic must be >= 0")
        _require(self.p_static >= 0, "p_static must be >= 0")
        _require(self.p_sleep >= 0, "p_sleep must be >= 0")
        _require(
            self.p_sleep <= self.p_static + self.p_dynamic,
            "p_sleep cannot exceed active power (p_dynamic + p_static)",
        )

    @property
    def p_active(self) -> float:
        return self.p_dynamic + self.p_static


@dataclass(frozen=True)
class DeviceProfile:
    """A deployable accelerator.

    unit_work_latency_ns is the time to finish one unit of work of the
    reference kernel; comparisons across devices assume the same kernel.
    embodied_kgco2e covers manufacturing before first use, and
    lifetime_years is the service life over which replacement manufacturing
    is amortized.
    """

    id: str
    display_name: str
    tech_node_nm: float
    unit_work_latency_ns: float
    power: PowerProfile
    embodied_kgco2e: float
    lifetime_years: float
    parallel_units: int = 1

    def __post_init__(self) -> None:
        _require(bool(self.id), "id must be non-empty")
        _require(self.tech_node_nm > 0, "tech_node_nm must be > 0")
        _require(self.unit_work_latency_ns > 0, "unit_work_latency_ns must be > 0")
        _require(self.embodied_kgco2e >= 0, "embodied_kgco2e must be >= 0")
        _require(self.lifetime_years > 0, "lifetime_years must be > 0")
        _require(
            isinstance(self.parallel_units, int) and self.parallel_units >= 1,
            "parallel_units must be an integer >= 1",
        )


@dataclass(frozen=True)
class DutyCycle:
    """Service-time split controlled by two ratios.

    r_sleep is the fraction of total time spent asleep. r_active is the
    fraction of the remaining awake time spent computing, so raising
    r_sleep shrinks both awake states proportionally.
    """

    r_sleep: float
    r_active: float

    def __post_init__(self) -> None:
        _require(0.0 <= self.r_sleep <= 1.0, "r_sleep must be in [0, 1]")
        _require(0.0 <= self.r_active <= 1.0, "r_active must be in [0, 1]")

    @property
    def f_active(self) -> float:
        return state_fractions(self)[0]

    @property
    def f_idle(self) -> float:
        return state_fractions(self)[1]

    @property
    def f_sleep(self) -> float:
        return state_fractions(self)[2]


DUTY_PRESETS: dict[str, DutyCycle] = {
    "case1": DutyCycle(r_sleep=0.25, r_active=0.25),
    "case2": DutyCycle(r_sleep=0.50, r_active=0.50),
    "case3": DutyCycle(r_sleep=0.25, r_active=0.75),
}


@dataclass(frozen=True)
class GridProfile:
    """Electricity carbon intensity with renewable penetration."""

    base_intensity_g_per_kwh: float
    renewable_fraction: float
    renewable_intensity_g_per_kwh: float = 0.0

    def __post_init__(self) -> None:
        _require(self.base_intensity_g_per_kwh >= 0, "base_intensity_g_per_kwh must be >= 0")
        _require(0.0 <= self.renewable_fraction <= 1.0, "renewable_fraction must be in [0, 1]")
        _require(self.renewable_intensity_g_per_kwh >= 0, "renewable_intensity_g_per_kwh must be >= 0")


class ComparisonMode(str, enum.Enum):
    """How two options are normalized before comparing carbon."""

    EQUAL_TIME = "equal-time"
    EQUAL_WORK = "equal-work"


@dataclass(frozen=True)
class DeploymentScenario:
    """Grid, duty cycle, comparison mode, and study horizon for an analysis."""

    grid: GridProfile
    duty: DutyCycle
    comparison_mode: ComparisonMode = ComparisonMode.EQUAL_TIME
    horizon_years: float = 10.0

    def __post_init__(self) -> None:
        _require(self.horizon_years > 0, "horizon_years must be > 0")


@dataclass(frozen=True)
class SystemOption:
    """A labeled candidate in a two-way comparison.

    duty_override, when set, replaces the scenario duty for this option;
    equal-work normalization stores its adjusted duty here.
    """

    label: str
    device: DeviceProfile
    duty_override: DutyCycle | None = None

    def effective_duty(self, scenario: DeploymentScenario) -> DutyCycle:
        return self.duty_override if self.duty_override is not None else scenario.duty


def state_fractions(duty: DutyCycle) -> tuple[float, float, float]:
    """Split total service time into (f_active, f_idle, f_sleep).

    f_active = r_active * (1 - r_sleep) and f_idle = (1 - r_active) *
    (1 - r_sleep); the three fractions sum to exactly 1.0.
    """
    f_sleep = duty.r_sleep
    awake = 1.0 - duty.r_sleep
    f_active = duty.r_active * awake
    f_idle = awake - f_active
    # f_idle absorbs the rounding residual so the sum is exactly 1.0
    for _ in range(3):
        residual = 1.0 - ((f_active + f_idle) + f_sleep)
        if residual == 0.0:
            break
        f_idle = max(f_idle + residual, 0.0)
    return f_active, f_idle, f_sleep


def effective_intensity(grid: GridProfile) -> float:
    """Carbon intensity in gCO2e/kWh after mixing in renewables."""
    r = grid.renewable_fraction
    raw = (1.0 - r) * grid.base_intensity_g_per_kwh + r * grid.renewable_intensity_g_per_kwh
    lo = min(grid.base_intensity_g_per_kwh, grid.renewable_intensity_g_per_kwh)
    hi = max(grid.base_intensity_g_per_kwh, grid.renewable_intensity_g_per_kwh)
    # clamp rounding spill so the mix never leaves the [lo, hi] interval
    return min(max(raw, lo), hi)


def average_power(device: DeviceProfile, duty: DutyCycle) -> float:
    """Duty-weighted power draw in watts.

    Each device is charged its own static power while idle; sleep is
    charged at p_sleep.
    """
    f_active, f_idle, f_sleep = state_fractions(duty)
    p = device.power
    return f_active * (p.p_dynamic + p.p_static) + f_idle * p.p_static + f_sleep * p.p_sleep


def annual_operational_carbon(device: DeviceProfile, scenario: DeploymentScenario) -> float:
    """Operational carbon in kgCO2e emitted per year of service."""
    kwh_per_year = average_power(device, scenario.duty) / 1000.0 * HOURS_PER_YEAR
    grams_per_year = kwh_per_year * effective_intensity(scenario.grid)
    return grams_per_year / 1000.0


def annual_work(device: DeviceProfile, duty: DutyCycle) -> float:
    """Work units delivered per year under the given duty cycle."""
    awake_rate = (1.0 - duty.r_sleep) * (
        SECONDS_PER_YEAR * 1e9 * device.parallel_units / device.unit_work_latency_ns
    )
    # r_active scales a shared awake-rate term, so duty cycles that differ
    # only in r_active keep float-exact work ratios on every device
    return duty.r_active * awake_rate
