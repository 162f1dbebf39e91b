"""Stateless JSON-over-HTTP facade for the analysis toolkit.

Endpoints (all under /api/v1): GET /health, GET /catalog, POST /analyze,
POST /sweep. The catalog is loaded once at app creation and never mutated,
so request handling is trivially concurrent-safe. Every error body has the
shape {"error": {"code", "message", "field"?}}; status codes: 400 for
malformed or out-of-domain inputs, 404 for unknown ids (and paths), 422
only for an infeasible equal-work adjustment. An analysis without an
indifference point is a 200 with nulls, not an error.

Options in request bodies are either a catalog id (device or composition)
or an inline composition whose dies reference catalog device ids.
"""

from __future__ import annotations

from typing import Any, Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import report
from .catalog import Catalog, default_catalog_path, load_catalog
from .composer import Composition, InterposerSpec, compose
from .errors import (
    DomainError,
    InfeasibleDutyCycle,
    RefreshError,
    SdllBudgetExceeded,
    UnknownId,
)
from .lifecycle import sweep
from .model import (
    ComparisonMode,
    DeploymentScenario,
    DutyCycle,
    GridProfile,
    SystemOption,
)

__all__ = ["create_app"]


class _Body(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GridBody(_Body):
    base_intensity_g_per_kwh: float
    renewable_fraction: float
    renewable_intensity_g_per_kwh: float = 0.0


class DutyBody(_Body):
    r_sleep: float
    r_active: float


class ScenarioBody(_Body):
    grid: GridBody
    duty: DutyBody
    comparison_mode: str = ComparisonMode.EQUAL_TIME.value
    horizon_years: float = 10.0


class InterposerBody(_Body):
    embodied_kgco2e: float
    sdll_efficiency: float
    power_overhead_watts: float = 0.0
    sdll_capacity: int | None = None


class DieBody(_Body):
    device: str
    count: int = 1


class CompositionBody(_Body):
    dies: list[DieBody]
    interposer: str | InterposerBody
    lifetime_years: float
    residual_embodied_fraction: float = 0.0
    sdll_required: int | None = None


class AnalyzeBody(_Body):
    option0: str | CompositionBody
    option1: str | CompositionBody
    scenario: ScenarioBody
    include_curves: bool = False
    curve_samples: int = Field(default=200, ge=2, le=10000)


class SweepBody(_Body):
    option0: str | CompositionBody
    option1: str | CompositionBody
    scenario: ScenarioBody
    parameter: Literal["renewable_fraction", "r_active", "r_sleep", "die_count"]
    values: list[float] = Field(min_length=1)


def _error_response(status: int, code: str, message: str, field: str | None = None) -> JSONResponse:
    body: dict[str, Any] = {"code": code, "message": message}
    if field is not None:
        body["field"] = field
    return JSONResponse(status_code=status, content={"error": body})


def _scenario_from(body: ScenarioBody) -> DeploymentScenario:
    grid = GridProfile(
        base_intensity_g_per_kwh=body.grid.base_intensity_g_per_kwh,
        renewable_fraction=body.grid.renewable_fraction,
        renewable_intensity_g_per_kwh=body.grid.renewable_intensity_g_per_kwh,
    )
    duty = DutyCycle(r_sleep=body.duty.r_sleep, r_active=body.duty.r_active)
    try:
        mode = ComparisonMode(body.comparison_mode)
    except ValueError:
        raise DomainError(
            f"comparison_mode must be one of {[m.value for m in ComparisonMode]}, got {body.comparison_mode!r}"
        ) from None
    return DeploymentScenario(grid=grid, duty=duty, comparison_mode=mode, horizon_years=body.horizon_years)


def _composition_from(body: CompositionBody, catalog: Catalog) -> Composition:
    dies = []
    for die in body.dies:
        if die.device not in catalog.devices:
            raise UnknownId("device", die.device, field="dies.device")
        dies.append((catalog.devices[die.device], die.count))
    if isinstance(body.interposer, str):
        if body.interposer not in catalog.interposers:
            raise UnknownId("interposer", body.interposer, field="interposer")
        interposer = catalog.interposers[body.interposer]
    else:
        interposer = InterposerSpec(
            embodied_kgco2e=body.interposer.embodied_kgco2e,
            sdll_efficiency=body.interposer.sdll_efficiency,
            power_overhead_watts=body.interposer.power_overhead_watts,
            sdll_capacity=body.interposer.sdll_capacity,
        )
    return Composition(
        dies=tuple(dies),
        interposer=interposer,
        lifetime_years=body.lifetime_years,
        residual_embodied_fraction=body.residual_embodied_fraction,
        sdll_required=body.sdll_required,
    )


def _option_from(spec: str | CompositionBody, catalog: Catalog, fallback_label: str) -> SystemOption:
    if isinstance(spec, str):
        return SystemOption(label=spec, device=catalog.resolve_option(spec))
    return SystemOption(label=fallback_label, device=compose(_composition_from(spec, catalog)))


def _sweep_composition(
    body: SweepBody, catalog: Catalog
) -> tuple[Composition | None, int]:
    for index, spec in ((1, body.option1), (0, body.option0)):
        if isinstance(spec, CompositionBody):
            return _composition_from(spec, catalog), index
        if spec in catalog.compositions:
            return catalog.compositions[spec], index
    return None, 1


def create_app(catalog: Catalog | None = None, cors_origin: str | None = None) -> FastAPI:
    """Build the service around one immutable catalog.

    cors_origin, when given, is allowed for cross-origin browser requests
    (the what-if dashboard's origin); the default permits none.
    """
    if catalog is None:
        catalog = load_catalog(default_catalog_path())

    app = FastAPI(title="refresh-carbon", docs_url=None, redoc_url=None, openapi_url=None)

    if cors_origin is not None:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(UnknownId)
    async def _unknown_id(request: Request, exc: UnknownId) -> JSONResponse:
        return _error_response(404, "unknown_id", str(exc), exc.field)

    @app.exception_handler(InfeasibleDutyCycle)
    async def _infeasible(request: Request, exc: InfeasibleDutyCycle) -> JSONResponse:
        return _error_response(422, "infeasible_duty_cycle", str(exc))

    @app.exception_handler(SdllBudgetExceeded)
    async def _sdll(request: Request, exc: SdllBudgetExceeded) -> JSONResponse:
        return _error_response(400, "sdll_budget_exceeded", str(exc))

    @app.exception_handler(DomainError)
    async def _domain(request: Request, exc: DomainError) -> JSONResponse:
        return _error_response(400, "domain_error", str(exc))

    @app.exception_handler(RefreshError)
    async def _refresh(request: Request, exc: RefreshError) -> JSONResponse:
        return _error_response(400, "error", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _validation(request: Request, exc: RequestValidationError) -> JSONResponse:
        errors = exc.errors()
        first = errors[0] if errors else {"msg": "invalid request", "loc": ()}
        field = ".".join(str(part) for part in first.get("loc", ()) if part != "body") or None
        return _error_response(400, "validation_error", str(first.get("msg", "invalid request")), field)

    @app.exception_handler(StarletteHTTPException)
    async def _http(request: Request, exc: StarletteHTTPException) -> JSONResponse:
        return _error_response(exc.status_code, "http_error", str(exc.detail))

    @app.get("/api/v1/health")
    async def health() -> dict[str, str]:
        return {"status": "ok"}

    @app.get("/api/v1/catalog")
    async def get_catalog() -> JSONResponse:
        return JSONResponse(content=report.catalog_payload(catalog))

    @app.post("/api/v1/analyze")
    async def analyze_endpoint(body: AnalyzeBody) -> JSONResponse:
        scenario = _scenario_from(body.scenario)
        opt0 = _option_from(body.option0, catalog, "option0")
        opt1 = _option_from(body.option1, catalog, "option1")
        payload = report.analysis_payload(
            opt0,
            opt1,
            scenario,
            include_curves=body.include_curves,
            curve_samples=body.curve_samples,
        )
        return JSONResponse(content=payload)

    @app.post("/api/v1/sweep")
    async def sweep_endpoint(body: SweepBody) -> JSONResponse:
        scenario = _scenario_from(body.scenario)
        opt0 = _option_from(body.option0, catalog, "option0")
        opt1 = _option_from(body.option1, catalog, "option1")
        kwargs: dict[str, Any] = {}
        if body.parameter == "die_count":
            composition, which = _sweep_composition(body, catalog)
            if composition is None:
                raise DomainError("die_count sweeps need a composition-backed option")
            kwargs = {"composition": composition, "composition_option": which}
        result = sweep(opt0, opt1, scenario, body.parameter, body.values, **kwargs)
        return JSONResponse(content=report.sweep_payload(result))

    return app
