import xml.etree.ElementTree as ET

import pytest

from refresh_carbon.errors import DomainError
from refresh_carbon.lifecycle import (
    SweepResult,
    SweepRow,
    analyze,
    sample_curve,
    sweep,
)
from refresh_carbon.model import DeploymentScenario, DutyCycle, GridProfile
from refresh_carbon.plots import render_curves_svg, render_sweep_svg

from _support import REFERENCE_SCENARIO, make_option

_SVG_NS = "{http://www.w3.org/2000/svg}"


def _parse(svg: str) -> ET.Element:
    return ET.fromstring(svg)


def _count(root: ET.Element, tag: str) -> int:
    return len(root.findall(f".//{_SVG_NS}{tag}"))


@pytest.fixture
def crossing_pair():
    opt0 = make_option("incumbent", o_kg_per_year=50.0, embodied=100.0, lifetime=10.0)
    opt1 = make_option("candidate", o_kg_per_year=20.0, embodied=220.0, lifetime=10.0)
    return opt0, opt1


def _curves(opt0, opt1, scenario, t_max=20.0):
    return (
        sample_curve(opt0, scenario, t_max, 50),
        sample_curve(opt1, scenario, t_max, 50),
    )


def test_curves_svg_structure(crossing_pair):
    opt0, opt1 = crossing_pair
    result = analyze(opt0, opt1, REFERENCE_SCENARIO)
    t = result.t_indifference_years
    marker = (t, result.e0_kg + result.rate0_kg_per_year * t)
    svg = render_curves_svg(_curves(opt0, opt1, REFERENCE_SCENARIO), marker)
    root = _parse(svg)
    assert _count(root, "polyline") == 2
    assert _count(root, "circle") == 1
    texts = [el.text for el in root.findall(f".//{_SVG_NS}text")]
    assert any("indifference at" in (t or "") for t in texts)


def test_curves_svg_without_crossover(crossing_pair):
    opt0, opt1 = crossing_pair
    svg = render_curves_svg(_curves(opt0, opt1, REFERENCE_SCENARIO), None)
    root = _parse(svg)
    assert _count(root, "polyline") == 2
    assert _count(root, "circle") == 0
    texts = [el.text for el in root.findall(f".//{_SVG_NS}text")]
    assert any("no indifference point" in (t or "") for t in texts)


def test_curves_svg_deterministic(crossing_pair):
    opt0, opt1 = crossing_pair
    first = render_curves_svg(_curves(opt0, opt1, REFERENCE_SCENARIO), None)
    second = render_curves_svg(_curves(opt0, opt1, REFERENCE_SCENARIO), None)
    assert first == second


def test_curves_svg_escapes_labels():
    opt0 = make_option("a<b&c", o_kg_per_year=50.0, embodied=100.0, lifetime=10.0)
    opt1 = make_option("x", o_kg_per_year=20.0, embodied=220.0, lifetime=10.0)
    svg = render_curves_svg(_curves(opt0, opt1, REFERENCE_SCENARIO), None)
    root = _parse(svg)
    texts = [el.text for el in root.findall(f".//{_SVG_NS}text")]
    assert "a<b&c" in texts


def test_curves_svg_flat_curve_does_not_crash():
    sleeper = make_option("sleeper", o_kg_per_year=50.0, embodied=100.0, lifetime=10.0)
    scenario = DeploymentScenario(
        grid=GridProfile(0.0, 0.0),
        duty=DutyCycle(0.0, 1.0),
    )
    svg = render_curves_svg(
        (
            sample_curve(sleeper, scenario, 10.0, 5, include_upfront=False),
            sample_curve(sleeper, scenario, 10.0, 5, include_upfront=False),
        ),
        None,
    )
    _parse(svg)


def test_sweep_svg_vertex_count(crossing_pair, catalog):
    from refresh_carbon.model import SystemOption

    opt0 = SystemOption("refresh_4x_zcu102", catalog.resolve_option("refresh_4x_zcu102"))
    opt1 = SystemOption("vmk180", catalog.resolve_option("vmk180"))
    scenario = DeploymentScenario(
        grid=GridProfile(400.0, 0.0, 0.0),
        duty=DutyCycle(0.25, 0.25),
    )
    values = [i * 0.95 / 9 for i in range(10)]
    result = sweep(opt0, opt1, scenario, "renewable_fraction", values)
    svg = render_sweep_svg(result)
    root = _parse(svg)
    polylines = root.findall(f".//{_SVG_NS}polyline")
    assert len(polylines) == 1
    points = polylines[0].attrib["points"].split()
    assert len(points) == 10


def test_sweep_svg_skips_undefined_rows():
    result = SweepResult(
        parameter_name="renewable_fraction",
        rows=(
            SweepRow(0.0, 1.0, 2.0),
            SweepRow(0.5, None, None),
            SweepRow(0.9, 3.0, 4.0),
        ),
    )
    svg = render_sweep_svg(result)
    root = _parse(svg)
    polylines = root.findall(f".//{_SVG_NS}polyline")
    assert len(polylines) == 1
    assert len(polylines[0].attrib["points"].split()) == 2


def test_sweep_svg_all_undefined():
    result = SweepResult(
        parameter_name="renewable_fraction",
        rows=(SweepRow(0.0, None, None), SweepRow(0.9, None, None)),
    )
    svg = render_sweep_svg(result)
    root = _parse(svg)
    assert root.findall(f".//{_SVG_NS}polyline") == []
    texts = [el.text for el in root.findall(f".//{_SVG_NS}text")]
    assert any("no indifference point" in (t or "") for t in texts)


def test_curve_tuple_must_have_two_entries(crossing_pair):
    opt0, _ = crossing_pair
    curve = sample_curve(opt0, REFERENCE_SCENARIO, 10.0, 5)
    with pytest.raises(DomainError):
        render_curves_svg((curve,), None)
