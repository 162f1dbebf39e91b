import json
import socket
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

import pytest

from refresh_carbon.catalog import (
    DEFAULT_GRID,
    Catalog,
    LcaBreakdown,
    bundled_catalog_path,
    bundled_grid_path,
    catalog_to_dict,
    default_catalog_path,
    fetch_grid_intensity,
    load_catalog,
    load_grid,
    save_catalog,
)
from refresh_carbon.errors import (
    DanglingReference,
    DomainError,
    NetworkError,
    ParseError,
    RemoteSchemaError,
    UnknownId,
    ValidationError,
)
from refresh_carbon.model import GridProfile


def minimal_catalog_doc():
    return {
        "schema_version": 1,
        "devices": {
            "zcu102": {
                "display_name": "ZCU102",
                "tech_node_nm": 16,
                "unit_work_latency_ns": 4.6,
                "power": {"p_dynamic": 21.41, "p_static": 0.92},
                "embodied_kgco2e": 25.0,
                "lifetime_years": 2.0,
            }
        },
        "interposers": {
            "std": {"embodied_kgco2e": 12.0, "sdll_efficiency": 0.75}
        },
        "compositions": {
            "quad": {
                "dies": [{"device": "zcu102", "count": 4}],
                "interposer": "std",
                "lifetime_years": 6.0,
            }
        },
        "lca_reference": [
            {
                "product": "iPhone 14",
                "manufacturing_pct": 79,
                "operational_pct": 18,
                "supply_chain_pct": 2,
                "disposal_pct": 0,
            }
        ],
    }


def write_doc(tmp_path, doc, name="catalog.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def test_bundled_catalog_measured_cells(catalog):
    vc709 = catalog.devices["vc709"]
    assert vc709.unit_work_latency_ns == 6.09
    assert vc709.power.p_dynamic == 21.835
    assert vc709.power.p_static == 0.799
    assert catalog.devices["zcu102"].unit_work_latency_ns == 4.60
    assert catalog.devices["vmk180"].power.p_dynamic == 12.738


def test_bundled_catalog_lca_rows(catalog):
    by_product = {row.product: row for row in catalog.lca_reference}
    row = by_product["iPhone 14"]
    assert (row.manufacturing_pct, row.operational_pct, row.supply_chain_pct, row.disposal_pct) == (
        79,
        18,
        2,
        0,
    )


def test_resolve_option(catalog):
    assert catalog.resolve_option("zcu102") is catalog.devices["zcu102"]
    composed = catalog.resolve_option("refresh_4x_zcu102")
    assert composed.id == "refresh_4x_zcu102"
    assert composed.embodied_kgco2e == 12.0
    assert composed.lifetime_years == 6.0
    with pytest.raises(UnknownId) as excinfo:
        catalog.resolve_option("nope")
    assert excinfo.value.identifier == "nope"
    assert isinstance(excinfo.value, KeyError)


def test_round_trip(tmp_path, catalog):
    path = tmp_path / "out.json"
    save_catalog(catalog, path)
    assert load_catalog(path) == catalog


def test_round_trip_inline_interposer(tmp_path):
    doc = minimal_catalog_doc()
    doc["compositions"]["quad"]["interposer"] = {
        "embodied_kgco2e": 5.0,
        "sdll_efficiency": 0.5,
    }
    loaded = load_catalog(write_doc(tmp_path, doc))
    path = tmp_path / "roundtrip.json"
    save_catalog(loaded, path)
    assert load_catalog(path) == loaded
    serialized = catalog_to_dict(loaded)
    assert isinstance(serialized["compositions"]["quad"]["interposer"], dict)


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        load_catalog("/nonexistent/catalog.json")


def test_parse_error_location(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"schema_version": 1,,}')
    with pytest.raises(ParseError) as excinfo:
        load_catalog(path)
    assert str(path) in excinfo.value.location
    assert ":" in excinfo.value.location.removeprefix(str(path))


def test_duplicate_keys_rejected(tmp_path):
    path = tmp_path / "dup.json"
    text = json.dumps(minimal_catalog_doc())
    dup = text.replace(
        '"interposers"', '"devices": {}, "interposers"', 1
    )
    path.write_text(dup)
    with pytest.raises(ParseError) as excinfo:
        load_catalog(path)
    assert "duplicate" in str(excinfo.value)


def test_missing_field_names_path(tmp_path):
    doc = minimal_catalog_doc()
    del doc["devices"]["zcu102"]["power"]
    with pytest.raises(ValidationError) as excinfo:
        load_catalog(write_doc(tmp_path, doc))
    assert excinfo.value.field == "devices.zcu102.power"


def test_unknown_key_rejected(tmp_path):
    doc = minimal_catalog_doc()
    doc["devices"]["zcu102"]["wattage"] = 5
    with pytest.raises(ValidationError) as excinfo:
        load_catalog(write_doc(tmp_path, doc))
    assert "wattage" in excinfo.value.field


def test_annotation_keys_allowed(tmp_path):
    doc = minimal_catalog_doc()
    doc["synthetic_calibration"] = True
    doc["notes"] = "top"
    doc["devices"]["zcu102"]["notes"] = "row"
    doc["compositions"]["quad"]["notes"] = "row"
    load_catalog(write_doc(tmp_path, doc))


def test_domain_violation_reported_as_validation_error(tmp_path):
    doc = minimal_catalog_doc()
    doc["devices"]["zcu102"]["lifetime_years"] = 0
    with pytest.raises(ValidationError) as excinfo:
        load_catalog(write_doc(tmp_path, doc))
    assert "lifetime_years" in str(excinfo.value)


def test_wrong_schema_version(tmp_path):
    doc = minimal_catalog_doc()
    doc["schema_version"] = 2
    with pytest.raises(ValidationError):
        load_catalog(write_doc(tmp_path, doc))


def test_dangling_die_reference(tmp_path):
    doc = minimal_catalog_doc()
    doc["devices"] = {}
    with pytest.raises(DanglingReference) as excinfo:
        load_catalog(write_doc(tmp_path, doc))
    assert excinfo.value.owner == "quad"
    assert excinfo.value.missing == "zcu102"
    assert excinfo.value.kind == "device"


def test_dangling_interposer_reference(tmp_path):
    doc = minimal_catalog_doc()
    doc["interposers"] = {}
    with pytest.raises(DanglingReference) as excinfo:
        load_catalog(write_doc(tmp_path, doc))
    assert excinfo.value.kind == "interposer"


def test_sdll_budget_checked_at_load(tmp_path):
    doc = minimal_catalog_doc()
    doc["interposers"]["std"]["sdll_capacity"] = 100
    doc["compositions"]["quad"]["sdll_required"] = 101
    with pytest.raises(ValidationError) as excinfo:
        load_catalog(write_doc(tmp_path, doc))
    assert "sdll_required" in excinfo.value.field


def test_lca_sum_band(tmp_path):
    doc = minimal_catalog_doc()
    doc["lca_reference"][0]["manufacturing_pct"] = 10
    with pytest.raises(ValidationError):
        load_catalog(write_doc(tmp_path, doc))
    with pytest.raises(DomainError):
        LcaBreakdown("x", 50, 30, 0, 0)
    # Dell-style rounding overshoot is fine
    LcaBreakdown("Dell PowerEdge R740", 49.7, 52.5, 0, 0)


def test_load_grid_fixture():
    grid = load_grid(bundled_grid_path("grid_90pct_renewables"))
    assert grid == GridProfile(400.0, 0.9, 0.0)


def test_load_grid_defaults_and_validation(tmp_path):
    path = tmp_path / "grid.json"
    path.write_text(json.dumps({"schema_version": 1, "base_intensity_g_per_kwh": 100, "renewable_fraction": 0.2}))
    assert load_grid(path).renewable_intensity_g_per_kwh == 0.0

    path.write_text(json.dumps({"schema_version": 1, "base_intensity_g_per_kwh": 100, "renewable_fraction": 1.5}))
    with pytest.raises(ValidationError):
        load_grid(path)

    path.write_text(json.dumps({"schema_version": 1, "base_intensity_g_per_kwh": 100, "renewable_fraction": 0.2, "color": "green"}))
    with pytest.raises(ValidationError):
        load_grid(path)


def test_default_catalog_path(monkeypatch, tmp_path):
    monkeypatch.delenv("REFRESH_CATALOG", raising=False)
    assert default_catalog_path() == bundled_catalog_path()
    override = tmp_path / "other.json"
    monkeypatch.setenv("REFRESH_CATALOG", str(override))
    assert default_catalog_path() == override


def test_default_grid_constant():
    assert DEFAULT_GRID == GridProfile(400.0, 0.0, 0.0)


def test_catalog_equality_is_structural(catalog):
    reloaded = load_catalog(bundled_catalog_path())
    assert reloaded == catalog
    assert isinstance(reloaded, Catalog)


class _IntensityHandler(BaseHTTPRequestHandler):
    payload: bytes = b"{}"
    status: int = 200
    content_type: str = "application/json"
    last_query: dict = {}

    def do_GET(self):
        parsed = urlparse(self.path)
        type(self).last_query = parse_qs(parsed.query)
        if parsed.path != "/v1/intensity":
            self.send_error(404)
            return
        self.send_response(self.status)
        self.send_header("Content-Type", self.content_type)
        self.send_header("Content-Length", str(len(self.payload)))
        self.end_headers()
        self.wfile.write(self.payload)

    def log_message(self, *args):
        pass


@pytest.fixture
def intensity_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _IntensityHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}", _IntensityHandler
    server.shutdown()
    thread.join(timeout=5)


def _dead_endpoint():
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    sock.close()
    return f"http://127.0.0.1:{port}"


def test_fetch_remote_success(intensity_server):
    endpoint, handler = intensity_server
    handler.payload = json.dumps(
        {"region": "neverland", "intensity_g_per_kwh": 250, "renewable_fraction": 0.4}
    ).encode()
    handler.status = 200
    fetched = fetch_grid_intensity(endpoint, "neverland")
    assert fetched.provenance == "remote"
    assert fetched.profile == GridProfile(250.0, 0.4, 0.0)
    assert handler.last_query["region"] == ["neverland"]


def test_fetch_remote_bad_payloads(intensity_server):
    endpoint, handler = intensity_server
    handler.status = 200
    handler.payload = b"not json at all"
    with pytest.raises(RemoteSchemaError) as excinfo:
        fetch_grid_intensity(endpoint, "x")
    assert excinfo.value.endpoint == endpoint
    assert excinfo.value.region == "x"

    handler.payload = json.dumps({"intensity_g_per_kwh": 250}).encode()
    with pytest.raises(RemoteSchemaError):
        fetch_grid_intensity(endpoint, "x")

    handler.payload = json.dumps({"intensity_g_per_kwh": 250, "renewable_fraction": 1.7}).encode()
    with pytest.raises(RemoteSchemaError):
        fetch_grid_intensity(endpoint, "x")


def test_fetch_remote_http_error_is_network_error(intensity_server):
    endpoint, handler = intensity_server
    handler.status = 500
    handler.payload = b"{}"
    with pytest.raises(NetworkError):
        fetch_grid_intensity(endpoint, "x")


def test_fetch_unreachable_raises_network_error():
    with pytest.raises(NetworkError) as excinfo:
        fetch_grid_intensity(_dead_endpoint(), "x", timeout=0.5)
    assert excinfo.value.region == "x"


def test_fetch_falls_back_to_file(intensity_server):
    fallback = bundled_grid_path("grid_90pct_renewables")
    fetched = fetch_grid_intensity(_dead_endpoint(), "x", fallback=fallback, timeout=0.5)
    assert fetched.provenance == "fallback"
    assert fetched.profile == GridProfile(400.0, 0.9, 0.0)

    endpoint, handler = intensity_server
    handler.status = 200
    handler.payload = b"not json"
    fetched = fetch_grid_intensity(endpoint, "x", fallback=fallback)
    assert fetched.provenance == "fallback"


def test_fetch_endpoint_from_env(monkeypatch, intensity_server):
    endpoint, handler = intensity_server
    handler.status = 200
    handler.payload = json.dumps({"intensity_g_per_kwh": 100, "renewable_fraction": 0.0}).encode()
    monkeypatch.setenv("REFRESH_GRID_ENDPOINT", endpoint)
    fetched = fetch_grid_intensity(None, "x")
    assert fetched.profile.base_intensity_g_per_kwh == 100.0

    monkeypatch.delenv("REFRESH_GRID_ENDPOINT")
    with pytest.raises(DomainError):
        fetch_grid_intensity(None, "x")
