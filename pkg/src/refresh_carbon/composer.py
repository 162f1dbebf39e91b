"""Parametric composition of retired dies into a single logical device.

A composition places one or more previously packaged dies on an interposer
and routes inter-die traffic over SDLLs (super duper long lines: links that
reuse the existing package I/O pins). The model is deliberately coarse:

- Throughput adds across dies and is derated by a single scalar,
  sdll_efficiency, covering all inter-die communication cost. The result
  is exposed as a one-unit device whose unit_work_latency_ns is the
  reciprocal of the aggregate throughput.
- Power rails sum component-wise; the interposer's own draw lands on the
  static rail (it is powered whenever the assembly is awake).
- Embodied carbon counts the interposer and packaging as new manufacturing
  plus a residual fraction of each die's original embodied carbon. Dies
  pulled from retired systems carry residual 0 (their manufacturing is
  already amortized); freshly made dies would carry 1.

Embodied carbon is independent of sdll_efficiency by construction: the
performance and embodied axes never interact. A composition of one die at
count 1 through a perfect zero-cost interposer (efficiency 1, zero power
overhead, zero interposer embodied, residual 1, matching lifetime) is the
identity and returns the die profile unchanged.

No placement, per-link routing, or load-balancing model is attempted;
heterogeneous die lists are allowed and combine purely additively.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyComposition, SdllBudgetExceeded
from .model import DeviceProfile, PowerProfile, _require

__all__ = [
    "InterposerSpec",
    "Composition",
    "validate_composition",
    "compose",
]


@dataclass(frozen=True)
class InterposerSpec:
    """Interposer and packaging parameters shared by a composition."""

    embodied_kgco2e: float
    sdll_efficiency: float
    power_overhead_watts: float = 0.0
    sdll_capacity: int | None = None

    def __post_init__(self) -> None:
        _require(self.embodied_kgco2e >= 0, "embodied_kgco2e must be >= 0")
        _require(0 < self.sdll_efficiency <= 1, "sdll_efficiency must be in (0, 1]")
        _require(self.power_overhead_watts >= 0, "power_overhead_watts must be >= 0")
        if self.sdll_capacity is not None:
            _require(
                isinstance(self.sdll_capacity, int) and self.sdll_capacity > 0,
                "sdll_capacity must be a positive integer",
            )


@dataclass(frozen=True)
class Composition:
    """Recipe for one composed device: dies, counts, interposer, bookkeeping."""

    dies: tuple[tuple[DeviceProfile, int], ...]
    interposer: InterposerSpec
    lifetime_years: float
    residual_embodied_fraction: float = 0.0
    sdll_required: int | None = None

    def __post_init__(self) -> None:
        if len(self.dies) == 0:
            raise EmptyComposition("composition must contain at least one die")
        for die, count in self.dies:
            _require(isinstance(die, DeviceProfile), "dies entries must pair a device profile with a count")
            _require(isinstance(count, int) and count >= 1, "die counts must be integers >= 1")
        _require(
            0 <= self.residual_embodied_fraction <= 1,
            "residual_embodied_fraction must be in [0, 1]",
        )
        _require(self.lifetime_years > 0, "lifetime_years must be > 0")
        if self.sdll_required is not None:
            _require(
                isinstance(self.sdll_required, int) and self.sdll_required > 0,
                "sdll_required must be a positive integer",
            )


def validate_composition(c: Composition) -> None:
    """Check the SDLL budget; no-op when either side of it is unspecified."""
    required = c.sdll_required
    capacity = c.interposer.sdll_capacity
    if required is None or capacity is None:
        return
    if required > capacity:
        raise SdllBudgetExceeded(required, capacity)


def _is_identity(c: Composition) -> bool:
    if len(c.dies) != 1:
        return False
    die, count = c.dies[0]
    return (
        count == 1
        and c.interposer.sdll_efficiency == 1.0
        and c.interposer.embodied_kgco2e == 0.0
        and c.interposer.power_overhead_watts == 0.0
        and c.residual_embodied_fraction == 1.0
        and c.lifetime_years == die.lifetime_years
    )


def compose(
    c: Composition,
    *,
    id: str | None = None,
    display_name: str | None = None,
) -> DeviceProfile:
    """Flatten a composition into a single device profile.

    The optional id and display_name override the generated ones (catalog
    loading names composed devices after their catalog key). The identity
    composition returns the input die itself unless an override forces a
    rename.
    """
    validate_composition(c)
    if _is_identity(c) and id is None and display_name is None:
        return c.dies[0][0]

    throughput_per_ns = c.interposer.sdll_efficiency * sum(
        count * die.parallel_units / die.unit_work_latency_ns for die, count in c.dies
    )
    p_dynamic = sum(count * die.power.p_dynamic for die, count in c.dies)
    p_static = (
        sum(count * die.power.p_static for die, count in c.dies)
        + c.interposer.power_overhead_watts
    )
    p_sleep = sum(count * die.power.p_sleep for die, count in c.dies)
    embodied = c.interposer.embodied_kgco2e + c.residual_embodied_fraction * sum(
        count * die.embodied_kgco2e for die, count in c.dies
    )

    if id is None:
        id = "composed_" + "_".join(f"{count}x_{die.id}" for die, count in c.dies)
    if display_name is None:
        display_name = " + ".join(f"{count} x {die.display_name}" for die, count in c.dies)
    return DeviceProfile(
        id=id,
        display_name=display_name,
        tech_node_nm=min(die.tech_node_nm for die, _ in c.dies),
        unit_work_latency_ns=1.0 / throughput_per_ns,
        parallel_units=1,
        power=PowerProfile(p_dynamic=p_dynamic, p_static=p_static, p_sleep=p_sleep),
        embodied_kgco2e=embodied,
        lifetime_years=c.lifetime_years,
    )
