"""Indifference and break-even analysis over cumulative-carbon curves.

Each option accrues lifecycle carbon along a linear curve

    C_i(t) = E_i * [upfront] + (O_i + E_i / L_i) * t

where E_i is embodied carbon (kg), O_i annual operational carbon (kg/yr),
L_i the service lifetime (yr), and [upfront] is 1 when the purchase is
charged at t = 0. Replacement manufacturing is amortized as the continuous
stream E_i / L_i per year rather than as discrete re-purchases; the
crossover oracle offers a discrete mode for sensitivity studies, which
converges to the continuous answer as horizons grow.

With both upfronts included the curves cross at

    t_indifference = (E_1 - E_0) / ((O_0 + E_0/L_0) - (O_1 + E_1/L_1))

and with option 0's upfront treated as sunk (the incumbent is already
paid for) the crossing moves to

    t_breakeven = E_1 / (same denominator).

This is the unique linear-curve reading that reproduces both closed forms:
the numerators differ only in which upfront terms survive the subtraction,
and the shared denominator is the annual rate gap. A non-positive
denominator means option 1 never recoups its embodied premium, reported as
the "no indifference point" outcome (None), never an exception or an
infinity sentinel. crossover_scan never touches the closed forms; it
locates crossings by brute-force grid evaluation of the curves so it can
serve as an independent oracle.

By convention option 1 is the higher-embodied candidate (typically the
newly manufactured device) and option 0 the incumbent or recomposed one.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from .composer import Composition, compose
from .errors import DomainError, InfeasibleDutyCycle
from .model import (
    ComparisonMode,
    DeploymentScenario,
    DutyCycle,
    SystemOption,
    annual_operational_carbon,
    state_fractions,
)

log = logging.getLogger(__name__)

SWEEP_PARAMETERS = ("renewable_fraction", "r_active", "r_sleep", "die_count")

__all__ = [
    "SWEEP_PARAMETERS",
    "LifecycleResult",
    "CarbonCurve",
    "SweepRow",
    "SweepResult",
    "operational_rate",
    "total_rate",
    "indifference_time",
    "breakeven_time",
    "cumulative_carbon",
    "crossover_scan",
    "equal_work_adjust",
    "resolve_options",
    "analyze",
    "sample_curve",
    "sweep",
]


@dataclass(frozen=True)
class LifecycleResult:
    """Closed-form comparison outcome for one option pair."""

    t_indifference_years: float | None
    t_breakeven_years: float | None
    rate0_kg_per_year: float
    rate1_kg_per_year: float
    o0_kg_per_year: float
    o1_kg_per_year: float
    e0_kg: float
    e1_kg: float

    def __post_init__(self) -> None:
        both = self.t_indifference_years is not None and self.t_breakeven_years is not None
        if both and self.e0_kg >= 0 and self.t_breakeven_years < self.t_indifference_years:
            raise DomainError("t_breakeven must be >= t_indifference when e0 >= 0")


@dataclass(frozen=True)
class CarbonCurve:
    """Sampled cumulative-carbon curve for one option."""

    option_label: str
    samples: tuple[tuple[float, float], ...]
    includes_upfront: bool

    def __post_init__(self) -> None:
        ts = [t for t, _ in self.samples]
        cs = [c for _, c in self.samples]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise DomainError("curve sample times must be strictly increasing")
        if any(b < a for a, b in zip(cs, cs[1:])):
            raise DomainError("cumulative carbon must be non-decreasing")


@dataclass(frozen=True)
class SweepRow:
    """One sweep evaluation; error is set instead of times when the row failed."""

    value: float
    t_indifference_years: float | None
    t_breakeven_years: float | None
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    """Ordered sweep rows for one parameter."""

    parameter_name: str
    rows: tuple[SweepRow, ...]

    def __post_init__(self) -> None:
        values = [row.value for row in self.rows]
        if any(b <= a for a, b in zip(values, values[1:])):
            raise DomainError("sweep parameter values must be strictly increasing")


def operational_rate(option: SystemOption, scenario: DeploymentScenario) -> float:
    """Annual operational carbon in kg/yr under the option's effective duty."""
    duty = option.effective_duty(scenario)
    return annual_operational_carbon(option.device, replace(scenario, duty=duty))


def total_rate(option: SystemOption, scenario: DeploymentScenario) -> float:
    """Annual carbon rate O + E/L in kg/yr, including amortized replacement."""
    device = option.device
    return operational_rate(option, scenario) + device.embodied_kgco2e / device.lifetime_years


def _rate_gap(opt0: SystemOption, opt1: SystemOption, scenario: DeploymentScenario) -> float:
    return total_rate(opt0, scenario) - total_rate(opt1, scenario)


def indifference_time(
    opt0: SystemOption, opt1: SystemOption, scenario: DeploymentScenario
) -> float | None:
    """Years until both options have emitted equal cumulative carbon.

    None when the denominator (rate gap) is not positive: option 1 then
    never recoups its embodied premium, and parallel or diverging curves
    never meet. Identical embodied carbon crosses at 0. A cheaper-upfront
    option 1 that also wins on rate dominates immediately, reported as 0
    with a logged diagnostic.
    """
    e0 = opt0.device.embodied_kgco2e
    e1 = opt1.device.embodied_kgco2e
    if e1 == e0:
        return 0.0
    gap = _rate_gap(opt0, opt1, scenario)
    if gap <= 0.0:
        return None
    if e1 < e0:
        log.warning(
            "option 1 dominates immediately: lower embodied (%.6g vs %.6g kg) and lower rate",
            e1,
            e0,
        )
        return 0.0
    return (e1 - e0) / gap


def breakeven_time(
    opt0: SystemOption, opt1: SystemOption, scenario: DeploymentScenario
) -> float | None:
    """Years until option 1 recoups its full embodied carbon.

    Option 0's upfront is treated as sunk. None when the rate gap is not
    positive.
    """
    gap = _rate_gap(opt0, opt1, scenario)
    if gap <= 0.0:
        return None
    return opt1.device.embodied_kgco2e / gap


def cumulative_carbon(
    option: SystemOption,
    scenario: DeploymentScenario,
    t: float,
    include_upfront: bool = True,
) -> float:
    """Cumulative kgCO2e after t years of service."""
    if t < 0:
        raise DomainError("t must be >= 0")
    upfront = option.device.embodied_kgco2e if include_upfront else 0.0
    return upfront + total_rate(option, scenario) * t


def crossover_scan(
    opt0: SystemOption,
    opt1: SystemOption,
    scenario: DeploymentScenario,
    t_max: float | None = None,
    dt: float = 1e-4,
    *,
    replacement: Literal["continuous", "discrete"] = "continuous",
) -> float | None:
    """Brute-force crossover of the two cumulative-carbon curves.

    Evaluates both curves (upfronts included) on a uniform time grid and
    returns the linearly interpolated crossing of the first bracketing
    interval, or 0 when the curves already meet at t = 0, or None when no
    crossing occurs within [0, t_max]. Defaults: t_max = 4x the longer
    lifetime, dt = 1e-4 years. replacement="discrete" charges embodied
    carbon as re-purchases at t = L, 2L, ... instead of a continuous
    amortization stream.
    """
    if t_max is None:
        t_max = 4.0 * max(opt0.device.lifetime_years, opt1.device.lifetime_years)
    if t_max <= 0:
        raise DomainError("t_max must be > 0")
    if not 0 < dt <= t_max:
        raise DomainError("dt must satisfy 0 < dt <= t_max")
    steps = int(math.floor(t_max / dt)) + 1
    t = np.arange(steps) * dt

    def curve(option: SystemOption) -> np.ndarray:
        device = option.device
        if replacement == "discrete":
            o = operational_rate(option, scenario)
            purchases = 1.0 + np.floor(t / device.lifetime_years)
            return device.embodied_kgco2e * purchases + o * t
        return device.embodied_kgco2e + total_rate(option, scenario) * t

    diff = curve(opt1) - curve(opt0)
    if diff[0] <= 0.0:
        return 0.0
    below = np.nonzero(diff <= 0.0)[0]
    if below.size == 0:
        return None
    k = int(below[0])
    # linear interpolation inside the first bracketing interval
    span = diff[k - 1] - diff[k]
    if span == 0.0:
        return float(t[k - 1])
    return float(t[k - 1] + dt * diff[k - 1] / span)


def equal_work_adjust(
    base: SystemOption, target: SystemOption, duty: DutyCycle
) -> DutyCycle:
    """Duty cycle for target that delivers base's annual work.

    Keeps r_sleep and scales f_active by the throughput ratio
    (base parallel_units/latency over target parallel_units/latency).
    Raises InfeasibleDutyCycle when the required active fraction exceeds
    the awake budget 1 - r_sleep.
    """
    tp_base = base.device.parallel_units / base.device.unit_work_latency_ns
    tp_target = target.device.parallel_units / target.device.unit_work_latency_ns
    ratio = tp_base / tp_target
    if ratio == 1.0:
        return duty
    f_active, _, _ = state_fractions(duty)
    required = f_active * ratio
    awake = 1.0 - duty.r_sleep
    if required > awake:
        raise InfeasibleDutyCycle(required, awake)
    if awake == 0.0:
        return duty
    return DutyCycle(r_sleep=duty.r_sleep, r_active=min(required / awake, 1.0))


def resolve_options(
    opt0: SystemOption, opt1: SystemOption, scenario: DeploymentScenario
) -> tuple[SystemOption, SystemOption]:
    """Apply the comparison mode, returning options ready to rate.

    equal-work mode treats option 0 as the reference workload and stores
    the adjusted duty on option 1 (overwriting any prior override there);
    equal-time mode returns the options unchanged.
    """
    if scenario.comparison_mode is not ComparisonMode.EQUAL_WORK:
        return opt0, opt1
    adjusted = equal_work_adjust(opt0, opt1, opt0.effective_duty(scenario))
    return opt0, replace(opt1, duty_override=adjusted)


def analyze(
    opt0: SystemOption, opt1: SystemOption, scenario: DeploymentScenario
) -> LifecycleResult:
    """Full closed-form comparison after comparison-mode resolution."""
    opt0, opt1 = resolve_options(opt0, opt1, scenario)
    return LifecycleResult(
        t_indifference_years=indifference_time(opt0, opt1, scenario),
        t_breakeven_years=breakeven_time(opt0, opt1, scenario),
        rate0_kg_per_year=total_rate(opt0, scenario),
        rate1_kg_per_year=total_rate(opt1, scenario),
        o0_kg_per_year=operational_rate(opt0, scenario),
        o1_kg_per_year=operational_rate(opt1, scenario),
        e0_kg=opt0.device.embodied_kgco2e,
        e1_kg=opt1.device.embodied_kgco2e,
    )


def sample_curve(
    option: SystemOption,
    scenario: DeploymentScenario,
    t_max: float,
    samples: int,
    include_upfront: bool = True,
) -> CarbonCurve:
    """Uniformly sampled cumulative-carbon curve over [0, t_max]."""
    if samples < 2:
        raise DomainError("samples must be >= 2")
    if t_max <= 0:
        raise DomainError("t_max must be > 0")
    t = np.linspace(0.0, t_max, samples)
    upfront = option.device.embodied_kgco2e if include_upfront else 0.0
    values = upfront + total_rate(option, scenario) * t
    return CarbonCurve(
        option_label=option.label,
        samples=tuple(zip(t.tolist(), values.tolist())),
        includes_upfront=include_upfront,
    )


def _substituted(
    opt0: SystemOption,
    opt1: SystemOption,
    scenario: DeploymentScenario,
    parameter: str,
    value: float,
    composition: Composition | None,
    composition_option: int,
) -> tuple[SystemOption, SystemOption, DeploymentScenario]:
    if parameter == "renewable_fraction":
        grid = replace(scenario.grid, renewable_fraction=value)
        return opt0, opt1, replace(scenario, grid=grid)
    if parameter == "r_active":
        return opt0, opt1, replace(scenario, duty=replace(scenario.duty, r_active=value))
    if parameter == "r_sleep":
        return opt0, opt1, replace(scenario, duty=replace(scenario.duty, r_sleep=value))
    # die_count: rebuild the composed option with every die entry at `value`
    if value != int(value) or value < 1:
        raise DomainError("die_count values must be integers >= 1")
    count = int(value)
    assert composition is not None
    rebuilt = compose(replace(composition, dies=tuple((die, count) for die, _ in composition.dies)))
    if composition_option == 0:
        return replace(opt0, device=rebuilt), opt1, scenario
    return opt0, replace(opt1, device=rebuilt), scenario


def sweep(
    opt0: SystemOption,
    opt1: SystemOption,
    scenario: DeploymentScenario,
    parameter: str,
    values: list[float] | tuple[float, ...],
    *,
    composition: Composition | None = None,
    composition_option: int = 1,
) -> SweepResult:
    """Re-run the closed-form comparison across one varying parameter.

    Rows keep input order; a value that violates its domain (or makes
    equal-work resolution infeasible) produces a row-level error marker
    instead of aborting the sweep. die_count sweeps need the Composition
    that produced the swept option (composition_option selects which side
    is rebuilt, default option 1).
    """
    if parameter not in SWEEP_PARAMETERS:
        raise DomainError(f"unknown sweep parameter {parameter!r}; expected one of {SWEEP_PARAMETERS}")
    if any(b <= a for a, b in zip(values, list(values)[1:])):
        raise DomainError("sweep values must be strictly ascending")
    if parameter == "die_count" and composition is None:
        raise DomainError("die_count sweeps require the composition that builds the swept option")
    if composition_option not in (0, 1):
        raise DomainError("composition_option must be 0 or 1")

    rows: list[SweepRow] = []
    for value in values:
        try:
            s_opt0, s_opt1, s_scenario = _substituted(
                opt0, opt1, scenario, parameter, value, composition, composition_option
            )
            result = analyze(s_opt0, s_opt1, s_scenario)
        except (DomainError, InfeasibleDutyCycle) as exc:
            rows.append(SweepRow(value=value, t_indifference_years=None, t_breakeven_years=None, error=str(exc)))
            continue
        rows.append(
            SweepRow(
                value=value,
                t_indifference_years=result.t_indifference_years,
                t_breakeven_years=result.t_breakeven_years,
            )
        )
    return SweepResult(parameter_name=parameter, rows=tuple(rows))
