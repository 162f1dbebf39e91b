"""Catalog and grid-profile files, bundled fixtures, and the remote grid client.

Catalogs are versioned JSON documents (top-level "schema_version": 1) with
four sections: devices, interposers, compositions, and lca_reference. The
loader is strict: unknown keys are rejected so typos cannot silently drop a
field. Two annotation keys are exempt and ignored everywhere they appear:
"notes" (free-text provenance) and the top-level "synthetic_calibration"
flag marking fixtures whose embodied/lifetime numbers are calibrated rather
than measured.

Loaded values are immutable and safe to share across threads. The remote
intensity client (one GET per call, default 5 s timeout) is strictly
optional; every core path works offline from files. Its endpoint may come
from the REFRESH_GRID_ENDPOINT environment variable, and the bundled
catalog can be overridden via REFRESH_CATALOG.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

import requests

from .composer import Composition, InterposerSpec, compose, validate_composition
from .errors import (
    DanglingReference,
    DomainError,
    NetworkError,
    ParseError,
    RemoteSchemaError,
    SdllBudgetExceeded,
    UnknownId,
    ValidationError,
)
from .model import DeviceProfile, GridProfile, PowerProfile, _require

SCHEMA_VERSION = 1
CATALOG_ENV_VAR = "REFRESH_CATALOG"
GRID_ENDPOINT_ENV_VAR = "REFRESH_GRID_ENDPOINT"
DEFAULT_TIMEOUT_SECONDS = 5.0

# all-fossil reference grid used when no grid file or flags are given
DEFAULT_GRID = GridProfile(base_intensity_g_per_kwh=400.0, renewable_fraction=0.0)

_ANNOTATION_KEYS = frozenset({"notes"})

__all__ = [
    "SCHEMA_VERSION",
    "CATALOG_ENV_VAR",
    "GRID_ENDPOINT_ENV_VAR",
    "DEFAULT_GRID",
    "LcaBreakdown",
    "Catalog",
    "GridFetch",
    "load_catalog",
    "load_grid",
    "catalog_to_dict",
    "save_catalog",
    "bundled_catalog_path",
    "bundled_grid_path",
    "default_catalog_path",
    "fetch_grid_intensity",
]


@dataclass(frozen=True)
class LcaBreakdown:
    """Published lifecycle-carbon split for one product, in percent.

    Sources round their slices, so the four parts need not sum to exactly
    100; anything in [98, 103] is accepted.
    """

    product: str
    manufacturing_pct: float
    operational_pct: float
    supply_chain_pct: float
    disposal_pct: float

    def __post_init__(self) -> None:
        _require(bool(self.product), "product must be non-empty")
        for name in ("manufacturing_pct", "operational_pct", "supply_chain_pct", "disposal_pct"):
            _require(getattr(self, name) >= 0, f"{name} must be >= 0")
        total = (
            self.manufacturing_pct
            + self.operational_pct
            + self.supply_chain_pct
            + self.disposal_pct
        )
        _require(98.0 <= total <= 103.0, f"percentages sum to {total:g}, expected within [98, 103]")


@dataclass(frozen=True)
class Catalog:
    """Validated device/interposer/composition fixtures plus LCA reference rows."""

    devices: dict[str, DeviceProfile]
    interposers: dict[str, InterposerSpec]
    compositions: dict[str, Composition]
    lca_reference: tuple[LcaBreakdown, ...]

    def resolve_option(self, identifier: str) -> DeviceProfile:
        """Device profile for a device id or a composition id."""
        if identifier in self.devices:
            return self.devices[identifier]
        if identifier in self.compositions:
            return compose(self.compositions[identifier], id=identifier)
        raise UnknownId("device or composition", identifier)


@dataclass(frozen=True)
class GridFetch:
    """Grid profile plus where it came from ("remote" or "fallback")."""

    profile: GridProfile
    provenance: str


def _no_duplicate_keys(pairs: list[tuple[str, Any]]) -> dict[str, Any]:
    seen: dict[str, Any] = {}
    for key, value in pairs:
        if key in seen:
            raise ValueError(f"duplicate key {key!r}")
        seen[key] = value
    return seen


def _parse_json(path: Path) -> Any:
    text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text, object_pairs_hook=_no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc
    except ValueError as exc:
        raise ParseError(str(path), str(exc)) from exc


def _expect_mapping(value: Any, field: str) -> dict[str, Any]:
    if not isinstance(value, dict):
        raise ValidationError(field, f"expected an object, got {type(value).__name__}")
    return value


def _expect_list(value: Any, field: str) -> list[Any]:
    if not isinstance(value, list):
        raise ValidationError(field, f"expected an array, got {type(value).__name__}")
    return value


def _expect_number(value: Any, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(field, f"expected a number, got {type(value).__name__}")
    return value


def _expect_string(value: Any, field: str) -> str:
    if not isinstance(value, str):
        raise ValidationError(field, f"expected a string, got {type(value).__name__}")
    return value


def _take(obj: dict[str, Any], key: str, field: str, required: bool = True) -> Any:
    if key not in obj:
        if required:
            raise ValidationError(f"{field}.{key}", "missing required key")
        return None
    return obj.pop(key)


def _reject_unknown_keys(obj: dict[str, Any], field: str) -> None:
    leftover = set(obj) - _ANNOTATION_KEYS
    if leftover:
        raise ValidationError(f"{field}.{sorted(leftover)[0]}", "unknown key")


def _check_schema_version(obj: dict[str, Any], field: str) -> None:
    version = _take(obj, "schema_version", field)
    if version != SCHEMA_VERSION:
        raise ValidationError(f"{field}.schema_version", f"expected {SCHEMA_VERSION}, got {version!r}")


def _build(field: str, factory, /, **kwargs):
    # funnel for constructor domain checks so they surface as schema errors
    try:
        return factory(**kwargs)
    except DomainError as exc:
        raise ValidationError(field, str(exc)) from exc


def _parse_power(value: Any, field: str) -> PowerProfile:
    obj = dict(_expect_mapping(value, field))
    kwargs = {
        "p_dynamic": _expect_number(_take(obj, "p_dynamic", field), f"{field}.p_dynamic"),
        "p_static": _expect_number(_take(obj, "p_static", field), f"{field}.p_static"),
    }
    sleep = _take(obj, "p_sleep", field, required=False)
    if sleep is not None:
        kwargs["p_sleep"] = _expect_number(sleep, f"{field}.p_sleep")
    _reject_unknown_keys(obj, field)
    return _build(field, PowerProfile, **kwargs)


def _parse_device(device_id: str, value: Any, field: str) -> DeviceProfile:
    obj = dict(_expect_mapping(value, field))
    kwargs: dict[str, Any] = {
        "id": device_id,
        "display_name": _expect_string(_take(obj, "display_name", field), f"{field}.display_name"),
        "tech_node_nm": _expect_number(_take(obj, "tech_node_nm", field), f"{field}.tech_node_nm"),
        "unit_work_latency_ns": _expect_number(
            _take(obj, "unit_work_latency_ns", field), f"{field}.unit_work_latency_ns"
        ),
        "power": _parse_power(_take(obj, "power", field), f"{field}.power"),
        "embodied_kgco2e": _expect_number(_take(obj, "embodied_kgco2e", field), f"{field}.embodied_kgco2e"),
        "lifetime_years": _expect_number(_take(obj, "lifetime_years", field), f"{field}.lifetime_years"),
    }
    units = _take(obj, "parallel_units", field, required=False)
    if units is not None:
        kwargs["parallel_units"] = units
    _reject_unknown_keys(obj, field)
    return _build(field, DeviceProfile, **kwargs)


def _parse_interposer(value: Any, field: str) -> InterposerSpec:
    obj = dict(_expect_mapping(value, field))
    kwargs: dict[str, Any] = {
        "embodied_kgco2e": _expect_number(_take(obj, "embodied_kgco2e", field), f"{field}.embodied_kgco2e"),
        "sdll_efficiency": _expect_number(_take(obj, "sdll_efficiency", field), f"{field}.sdll_efficiency"),
    }
    overhead = _take(obj, "power_overhead_watts", field, required=False)
    if overhead is not None:
        kwargs["power_overhead_watts"] = _expect_number(overhead, f"{field}.power_overhead_watts")
    capacity = _take(obj, "sdll_capacity", field, required=False)
    if capacity is not None:
        kwargs["sdll_capacity"] = capacity
    _reject_unknown_keys(obj, field)
    return _build(field, InterposerSpec, **kwargs)


def _parse_composition(
    comp_id: str,
    value: Any,
    field: str,
    devices: dict[str, DeviceProfile],
    interposers: dict[str, InterposerSpec],
) -> Composition:
    obj = dict(_expect_mapping(value, field))

    dies: list[tuple[DeviceProfile, int]] = []
    for i, entry in enumerate(_expect_list(_take(obj, "dies", field), f"{field}.dies")):
        entry_field = f"{field}.dies[{i}]"
        entry_obj = dict(_expect_mapping(entry, entry_field))
        die_id = _expect_string(_take(entry_obj, "device", entry_field), f"{entry_field}.device")
        count = _take(entry_obj, "count", entry_field)
        _reject_unknown_keys(entry_obj, entry_field)
        if die_id not in devices:
            raise DanglingReference(comp_id, die_id, kind="device")
        dies.append((devices[die_id], count))

    interposer_ref = _take(obj, "interposer", field)
    if isinstance(interposer_ref, str):
        if interposer_ref not in interposers:
            raise DanglingReference(comp_id, interposer_ref, kind="interposer")
        interposer = interposers[interposer_ref]
    else:
        interposer = _parse_interposer(interposer_ref, f"{field}.interposer")

    kwargs: dict[str, Any] = {
        "dies": tuple(dies),
        "interposer": interposer,
        "lifetime_years": _expect_number(_take(obj, "lifetime_years", field), f"{field}.lifetime_years"),
    }
    residual = _take(obj, "residual_embodied_fraction", field, required=False)
    if residual is not None:
        kwargs["residual_embodied_fraction"] = _expect_number(residual, f"{field}.residual_embodied_fraction")
    required_links = _take(obj, "sdll_required", field, required=False)
    if required_links is not None:
        kwargs["sdll_required"] = required_links
    _reject_unknown_keys(obj, field)

    composition = _build(field, Composition, **kwargs)
    try:
        validate_composition(composition)
    except SdllBudgetExceeded as exc:
        raise ValidationError(f"{field}.sdll_required", str(exc)) from exc
    return composition


def _parse_lca_row(value: Any, field: str) -> LcaBreakdown:
    obj = dict(_expect_mapping(value, field))
    kwargs = {"product": _expect_string(_take(obj, "product", field), f"{field}.product")}
    for name in ("manufacturing_pct", "operational_pct", "supply_chain_pct", "disposal_pct"):
        kwargs[name] = _expect_number(_take(obj, name, field), f"{field}.{name}")
    _reject_unknown_keys(obj, field)
    return _build(field, LcaBreakdown, **kwargs)


def load_catalog(path: str | Path) -> Catalog:
    """Load and fully validate a catalog JSON file.

    Raises FileNotFoundError, ParseError (syntax), ValidationError (schema,
    with a dotted field path), or DanglingReference (composition naming an
    undefined device or interposer).
    """
    path = Path(path)
    root = dict(_expect_mapping(_parse_json(path), "$"))
    _check_schema_version(root, "$")
    root.pop("synthetic_calibration", None)

    devices: dict[str, DeviceProfile] = {}
    for device_id, value in _expect_mapping(_take(root, "devices", "$"), "devices").items():
        devices[device_id] = _parse_device(device_id, value, f"devices.{device_id}")

    interposers: dict[str, InterposerSpec] = {}
    for interposer_id, value in _expect_mapping(_take(root, "interposers", "$"), "interposers").items():
        interposers[interposer_id] = _parse_interposer(value, f"interposers.{interposer_id}")

    compositions: dict[str, Composition] = {}
    for comp_id, value in _expect_mapping(_take(root, "compositions", "$"), "compositions").items():
        compositions[comp_id] = _parse_composition(
            comp_id, value, f"compositions.{comp_id}", devices, interposers
        )

    rows = _expect_list(_take(root, "lca_reference", "$"), "lca_reference")
    lca_reference = tuple(_parse_lca_row(row, f"lca_reference[{i}]") for i, row in enumerate(rows))

    _reject_unknown_keys(root, "$")
    return Catalog(
        devices=devices,
        interposers=interposers,
        compositions=compositions,
        lca_reference=lca_reference,
    )


def load_grid(path: str | Path) -> GridProfile:
    """Load and validate a grid-profile JSON file."""
    path = Path(path)
    obj = dict(_expect_mapping(_parse_json(path), "$"))
    _check_schema_version(obj, "$")
    kwargs = {
        "base_intensity_g_per_kwh": _expect_number(
            _take(obj, "base_intensity_g_per_kwh", "$"), "base_intensity_g_per_kwh"
        ),
        "renewable_fraction": _expect_number(_take(obj, "renewable_fraction", "$"), "renewable_fraction"),
    }
    renewable = _take(obj, "renewable_intensity_g_per_kwh", "$", required=False)
    if renewable is not None:
        kwargs["renewable_intensity_g_per_kwh"] = _expect_number(renewable, "renewable_intensity_g_per_kwh")
    _reject_unknown_keys(obj, "$")
    return _build("$", GridProfile, **kwargs)


def _interposer_to_dict(spec: InterposerSpec) -> dict[str, Any]:
    out: dict[str, Any] = {
        "embodied_kgco2e": spec.embodied_kgco2e,
        "sdll_efficiency": spec.sdll_efficiency,
        "power_overhead_watts": spec.power_overhead_watts,
    }
    if spec.sdll_capacity is not None:
        out["sdll_capacity"] = spec.sdll_capacity
    return out


def catalog_to_dict(catalog: Catalog) -> dict[str, Any]:
    """Plain-JSON form of a catalog; load_catalog(save_catalog(c)) == c."""
    devices = {
        device_id: {
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
        for device_id, device in catalog.devices.items()
    }

    compositions: dict[str, Any] = {}
    for comp_id, comp in catalog.compositions.items():
        interposer_ids = [
            interposer_id
            for interposer_id, spec in catalog.interposers.items()
            if spec == comp.interposer
        ]
        entry: dict[str, Any] = {
            "dies": [{"device": die.id, "count": count} for die, count in comp.dies],
            "interposer": interposer_ids[0] if interposer_ids else _interposer_to_dict(comp.interposer),
            "residual_embodied_fraction": comp.residual_embodied_fraction,
            "lifetime_years": comp.lifetime_years,
        }
        if comp.sdll_required is not None:
            entry["sdll_required"] = comp.sdll_required
        compositions[comp_id] = entry

    return {
        "schema_version": SCHEMA_VERSION,
        "devices": devices,
        "interposers": {
            interposer_id: _interposer_to_dict(spec)
            for interposer_id, spec in catalog.interposers.items()
        },
        "compositions": compositions,
        "lca_reference": [
            {
                "product": row.product,
                "manufacturing_pct": row.manufacturing_pct,
                "operational_pct": row.operational_pct,
                "supply_chain_pct": row.supply_chain_pct,
                "disposal_pct": row.disposal_pct,
            }
            for row in catalog.lca_reference
        ],
    }


def save_catalog(catalog: Catalog, path: str | Path) -> None:
    """Write a catalog back out as schema-version-1 JSON."""
    Path(path).write_text(json.dumps(catalog_to_dict(catalog), indent=2) + "\n", encoding="utf-8")


def bundled_catalog_path() -> Path:
    """Path of the catalog fixture shipped inside the package."""
    return Path(str(resources.files(__package__).joinpath("data/catalog.json")))


def bundled_grid_path(name: str) -> Path:
    """Path of a named grid fixture shipped inside the package."""
    return Path(str(resources.files(__package__).joinpath(f"data/grids/{name}.json")))


def default_catalog_path() -> Path:
    """REFRESH_CATALOG override when set, else the bundled fixture."""
    override = os.environ.get(CATALOG_ENV_VAR)
    return Path(override) if override else bundled_catalog_path()


def fetch_grid_intensity(
    endpoint: str | None,
    region: str,
    fallback: str | Path | None = None,
    timeout: float = DEFAULT_TIMEOUT_SECONDS,
) -> GridFetch:
    """Fetch a grid profile from GET {endpoint}/v1/intensity?region={region}.

    The response must be a JSON object carrying intensity_g_per_kwh and
    renewable_fraction. On network or response-shape failure the fallback
    file is loaded instead (provenance "fallback"); without a fallback the
    NetworkError or RemoteSchemaError propagates. A None endpoint falls
    back to the REFRESH_GRID_ENDPOINT environment variable.
    """
    if endpoint is None:
        endpoint = os.environ.get(GRID_ENDPOINT_ENV_VAR)
    if not endpoint:
        raise DomainError(
            f"no grid endpoint given and {GRID_ENDPOINT_ENV_VAR} is not set"
        )

    def _remote() -> GridProfile:
        url = f"{endpoint.rstrip('/')}/v1/intensity"
        try:
            response = requests.get(url, params={"region": region}, timeout=timeout)
            response.raise_for_status()
        except requests.RequestException as exc:
            raise NetworkError(endpoint, region, str(exc)) from exc
        try:
            body = response.json()
        except ValueError as exc:
            raise RemoteSchemaError(endpoint, region, "response body is not JSON") from exc
        if not isinstance(body, dict):
            raise RemoteSchemaError(endpoint, region, "response is not a JSON object")
        try:
            intensity = _expect_number(body["intensity_g_per_kwh"], "intensity_g_per_kwh")
            renewable = _expect_number(body["renewable_fraction"], "renewable_fraction")
        except (KeyError, ValidationError) as exc:
            raise RemoteSchemaError(endpoint, region, f"bad payload: {exc}") from exc
        try:
            return GridProfile(base_intensity_g_per_kwh=intensity, renewable_fraction=renewable)
        except DomainError as exc:
            raise RemoteSchemaError(endpoint, region, str(exc)) from exc

    try:
        return GridFetch(profile=_remote(), provenance="remote")
    except (NetworkError, RemoteSchemaError):
        if fallback is None:
            raise
        return GridFetch(profile=load_grid(fallback), provenance="fallback")
