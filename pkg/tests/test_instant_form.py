import pytest
import sympy as sp

from poincare_realizations.algebra import check_realization
from poincare_realizations.expr import is_zero, normalize
from poincare_realizations.instant_form import (
    build_instant_realization,
    derive_boost_pde,
    instant_form_suite,
    lagrangian_chain,
    no_interaction_certificate,
    relativistic_lagrangian,
    speed_squared,
    tr3_chart,
    wlc_residuals,
)


def test_free_realization_closes():
    r = build_instant_realization(f=0)
    report = check_realization(r.realization)
    assert report.passed()
    assert len(report.checks) == 45


def test_free_world_line_condition():
    r = build_instant_realization(f=0)
    assert wlc_residuals(r).passed()


def test_interacting_candidate_fails_closure():
    r = build_instant_realization(f=sp.Integer(1))
    report = check_realization(r.realization)
    failed = [c for c in report.checks if c.status == "fail"]
    assert failed, "f = 1 must break at least one bracket pair"


def test_boost_pde_extraction():
    extracted, displayed, report = derive_boost_pde()
    assert report.passed()
    chart = tr3_chart()
    # equality holds with one definite global sign
    matches = [
        s
        for s in (1, -1)
        if all(is_zero(e - s * d, chart) for e, d in zip(extracted, displayed))
    ]
    assert len(matches) == 1


def test_no_interaction_certificate():
    report = no_interaction_certificate()
    assert report.passed()
    ids = {c.id for c in report.checks}
    assert {"free-closure", "battery-f=1", "locus-forces-f"} <= ids
    battery = [c for c in report.checks if c.id.startswith("battery-")]
    assert len(battery) == 3
    for c in battery:
        assert c.witness is not None


def test_unique_lagrangian_chain():
    chart = tr3_chart(with_root=True)
    report = lagrangian_chain(relativistic_lagrangian(chart), chart)
    assert report.passed()


def test_wrong_lagrangians_fail_with_witness():
    chart = tr3_chart(with_root=True)
    half_v2 = speed_squared(chart) / 2
    rep = lagrangian_chain(half_v2, chart)
    assert not rep.passed()
    ode = next(c for c in rep.checks if c.id == "ode")
    assert ode.status == "fail" and ode.witness is not None
    rep2 = lagrangian_chain(1 - speed_squared(chart), chart)
    assert not rep2.passed()


def test_position_dependent_lagrangian_rejected():
    chart = tr3_chart(with_root=True)
    with pytest.raises(ValueError):
        lagrangian_chain(chart.symbol("x1") ** 2, chart)


def test_suite_default_green_and_f1_red():
    assert instant_form_suite().passed()
    assert not instant_form_suite(f="1").passed()
