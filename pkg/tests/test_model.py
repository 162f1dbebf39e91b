import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from refresh_carbon.errors import DomainError
from refresh_carbon.model import (
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
from _support import REFERENCE_SCENARIO, make_device

fractions = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


def test_power_profile_validation():
    with pytest.raises(DomainError):
        PowerProfile(p_dynamic=-1.0, p_static=0.0)
    with pytest.raises(DomainError):
        PowerProfile(p_dynamic=1.0, p_static=-0.1)
    with pytest.raises(DomainError):
        PowerProfile(p_dynamic=1.0, p_static=1.0, p_sleep=2.5)
    assert PowerProfile(3.0, 2.0).p_active == 5.0


def test_device_profile_validation():
    with pytest.raises(DomainError):
        make_device("")
    with pytest.raises(DomainError):
        make_device(latency_ns=0.0)
    with pytest.raises(DomainError):
        make_device(lifetime=0.0)
    with pytest.raises(DomainError):
        make_device(embodied=-1.0)
    with pytest.raises(DomainError):
        make_device(parallel_units=0)
    with pytest.raises(DomainError):
        DeviceProfile(
            id="d",
            display_name="d",
            tech_node_nm=16.0,
            unit_work_latency_ns=1.0,
            power=PowerProfile(1.0, 0.0),
            embodied_kgco2e=1.0,
            lifetime_years=1.0,
            parallel_units=2.0,  # type: ignore[arg-type]
        )


def test_duty_cycle_validation():
    with pytest.raises(DomainError):
        DutyCycle(r_sleep=-0.1, r_active=0.5)
    with pytest.raises(DomainError):
        DutyCycle(r_sleep=0.5, r_active=1.1)


def test_duty_presets():
    assert DUTY_PRESETS["case1"] == DutyCycle(r_sleep=0.25, r_active=0.25)
    assert DUTY_PRESETS["case2"] == DutyCycle(r_sleep=0.50, r_active=0.50)
    assert DUTY_PRESETS["case3"] == DutyCycle(r_sleep=0.25, r_active=0.75)


def test_state_fractions_anchor():
    f_active, f_idle, f_sleep = state_fractions(DutyCycle(r_sleep=0.25, r_active=0.25))
    assert f_active == 0.1875
    assert f_idle == 0.5625
    assert f_sleep == 0.25


def test_state_fractions_all_sleep():
    assert state_fractions(DutyCycle(r_sleep=1.0, r_active=0.7)) == (0.0, 0.0, 1.0)


@given(fractions, fractions)
def test_state_fractions_sum_exactly_one(r_sleep, r_active):
    duty = DutyCycle(r_sleep=r_sleep, r_active=r_active)
    f_active, f_idle, f_sleep = state_fractions(duty)
    assert f_active >= 0 and f_idle >= 0 and f_sleep >= 0
    assert (f_active + f_idle) + f_sleep == 1.0
    assert f_active == r_active * (1.0 - r_sleep)
    assert f_idle == pytest.approx((1.0 - r_active) * (1.0 - r_sleep), rel=1e-9, abs=1e-12)


def test_duty_fraction_properties():
    duty = DutyCycle(r_sleep=0.25, r_active=0.75)
    assert (duty.f_active, duty.f_idle, duty.f_sleep) == state_fractions(duty)


def test_effective_intensity_mixing():
    assert effective_intensity(GridProfile(400.0, 0.0)) == 400.0
    assert effective_intensity(GridProfile(400.0, 1.0)) == 0.0
    assert effective_intensity(GridProfile(400.0, 0.9)) == pytest.approx(40.0, rel=1e-12)
    assert effective_intensity(GridProfile(400.0, 0.5, 100.0)) == pytest.approx(250.0)


@given(
    st.floats(min_value=0.0, max_value=2000.0),
    fractions,
    st.floats(min_value=0.0, max_value=2000.0),
)
def test_effective_intensity_stays_in_mix_interval(base, r, renewable):
    value = effective_intensity(GridProfile(base, r, renewable))
    assert min(base, renewable) <= value <= max(base, renewable)


def test_grid_validation():
    with pytest.raises(DomainError):
        GridProfile(-1.0, 0.0)
    with pytest.raises(DomainError):
        GridProfile(400.0, 1.5)
    with pytest.raises(DomainError):
        GridProfile(400.0, 0.5, -2.0)


def test_average_power_anchor():
    device = DeviceProfile(
        id="zcu102",
        display_name="ZCU102",
        tech_node_nm=16.0,
        unit_work_latency_ns=4.6,
        power=PowerProfile(p_dynamic=21.41, p_static=0.92),
        embodied_kgco2e=25.0,
        lifetime_years=2.0,
    )
    avg = average_power(device, DutyCycle(r_sleep=0.25, r_active=0.25))
    assert avg == pytest.approx(4.704375, rel=1e-12)
    carbon = annual_operational_carbon(
        device,
        DeploymentScenario(grid=GridProfile(400.0, 0.9), duty=DutyCycle(0.25, 0.25)),
    )
    assert carbon == pytest.approx(1.648413, rel=1e-6)


def test_average_power_uses_sleep_rail():
    device = make_device()
    sleepy = DeviceProfile(
        id="s",
        display_name="s",
        tech_node_nm=16.0,
        unit_work_latency_ns=10.0,
        power=PowerProfile(p_dynamic=10.0, p_static=2.0, p_sleep=1.0),
        embodied_kgco2e=1.0,
        lifetime_years=1.0,
    )
    all_sleep = DutyCycle(r_sleep=1.0, r_active=0.0)
    assert average_power(sleepy, all_sleep) == 1.0
    assert average_power(device, all_sleep) == 0.0


@given(fractions, fractions, st.floats(min_value=1e-3, max_value=1e4))
def test_average_power_bounded_by_active_power(r_sleep, r_active, p_dyn):
    device = DeviceProfile(
        id="d",
        display_name="d",
        tech_node_nm=16.0,
        unit_work_latency_ns=1.0,
        power=PowerProfile(p_dynamic=p_dyn, p_static=p_dyn / 4, p_sleep=p_dyn / 100),
        embodied_kgco2e=1.0,
        lifetime_years=1.0,
    )
    avg = average_power(device, DutyCycle(r_sleep=r_sleep, r_active=r_active))
    assert 0.0 <= avg <= device.power.p_active * (1 + 1e-12)


def test_annual_work_scales_with_parallel_units():
    one = make_device("one", latency_ns=5.0, parallel_units=1)
    four = make_device("four", latency_ns=5.0, parallel_units=4)
    duty = DUTY_PRESETS["case1"]
    assert annual_work(four, duty) == 4.0 * annual_work(one, duty)


@given(st.floats(min_value=0.01, max_value=1e4))
def test_annual_work_case_ratios_exact_for_any_latency(latency_ns):
    device = make_device(latency_ns=latency_ns)
    w1 = annual_work(device, DUTY_PRESETS["case1"])
    w2 = annual_work(device, DUTY_PRESETS["case2"])
    w3 = annual_work(device, DUTY_PRESETS["case3"])
    assert w3 == 3.0 * w1
    assert 3.0 * w2 == 4.0 * w1


def test_annual_work_anchor():
    # 1 GHz of work units: latency 1 ns, fully active
    device = make_device(latency_ns=1.0)
    work = annual_work(device, DutyCycle(r_sleep=0.0, r_active=1.0))
    assert work == pytest.approx(31_536_000 * 1e9, rel=1e-15)
    assert math.isfinite(work)


def test_scenario_and_option():
    with pytest.raises(DomainError):
        DeploymentScenario(grid=REFERENCE_SCENARIO.grid, duty=REFERENCE_SCENARIO.duty, horizon_years=0.0)
    option = SystemOption(label="x", device=make_device())
    assert option.effective_duty(REFERENCE_SCENARIO) is REFERENCE_SCENARIO.duty
    override = DutyCycle(r_sleep=0.5, r_active=0.5)
    assert SystemOption("x", make_device(), override).effective_duty(REFERENCE_SCENARIO) is override


def test_comparison_mode_values():
    assert ComparisonMode("equal-time") is ComparisonMode.EQUAL_TIME
    assert ComparisonMode("equal-work") is ComparisonMode.EQUAL_WORK
    with pytest.raises(ValueError):
        ComparisonMode("equal-everything")
