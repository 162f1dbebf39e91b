"""Lifecycle-carbon decision toolkit for FPGA accelerators.

Compares a newly manufactured accelerator against a device recomposed from
retired dies: when does the new device's higher embodied carbon pay back
through lower operational carbon, under a given duty cycle, grid mix, and
renewable penetration? The package answers with indifference and
break-even times, cumulative-carbon curves, parameter sweeps, plots, a
CLI, and an HTTP service.
"""

from .catalog import (
    DEFAULT_GRID,
    Catalog,
    GridFetch,
    LcaBreakdown,
    bundled_catalog_path,
    bundled_grid_path,
    default_catalog_path,
    fetch_grid_intensity,
    load_catalog,
    load_grid,
    save_catalog,
)
from .composer import Composition, InterposerSpec, compose, validate_composition
from .errors import (
    CatalogError,
    DanglingReference,
    DomainError,
    EmptyComposition,
    InfeasibleDutyCycle,
    NetworkError,
    ParseError,
    RefreshError,
    RemoteSchemaError,
    SdllBudgetExceeded,
    UnknownId,
    ValidationError,
)
from .lifecycle import (
    CarbonCurve,
    LifecycleResult,
    SweepResult,
    SweepRow,
    analyze,
    breakeven_time,
    crossover_scan,
    cumulative_carbon,
    equal_work_adjust,
    indifference_time,
    resolve_options,
    sample_curve,
    sweep,
)
from .model import (
    DUTY_PRESETS,
    ComparisonMode,
    DeploymentScenario,
    DeviceProfile,
    DutyCycle,
    GridProfile,
    PowerProfile,
    SystemOption,
    annual_operational_carbon,
    annual_work,
    average_power,
    effective_intensity,
    state_fractions,
)

__version__ = "0.1.0"
