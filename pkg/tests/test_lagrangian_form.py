import itertools

import pytest
import sympy as sp

from poincare_realizations.expr import is_zero, normalize
from poincare_realizations.geometry import (
    lie_bracket,
    lie_derivative,
    schouten_bracket,
)
from poincare_realizations.lagrangian_form import (
    build_connection,
    build_lagrangian_geometry,
    closed_form_bivector,
    connection_forms,
    connection_suite,
    displayed_omega,
    geometry_suite,
    lagrangian,
    lorentz_lift_fields,
    modified_translation_fields,
    tr4_chart,
    velocity_lower,
)
from poincare_realizations.mass_shell import bivector_bracket


@pytest.fixture(scope="module")
def chart():
    return tr4_chart()


def test_omega_matches_displayed(chart):
    _, omega, _, _ = build_lagrangian_geometry(chart)
    assert (omega - displayed_omega(chart)).is_zero()


def test_kernel_commutator(chart):
    _, omega, Delta, Gamma = build_lagrangian_geometry(chart)
    assert (lie_bracket(Delta, Gamma) - Gamma).is_zero()
    from poincare_realizations.geometry import contract

    assert contract(Delta, omega).is_zero()
    assert contract(Gamma, omega).is_zero()


def test_connection_projector(chart):
    A = build_connection(chart)
    assert (A.compose(A) - A).is_zero()
    _, _, Delta, Gamma = build_lagrangian_geometry(chart)
    assert A.apply(Delta).normalized().is_zero()
    assert A.apply(Gamma).normalized().is_zero()


def test_geometry_and_connection_suites_green():
    assert geometry_suite(seed=0, points=2).passed()
    assert connection_suite(seed=0, points=1).passed()


def test_bivector_bracket_table_spot_checks(chart):
    Lam = closed_form_bivector(chart)
    L = lagrangian(chart)
    x = [chart.symbol(f"x{mu}") for mu in range(4)]
    xd = [chart.symbol(f"xd{mu}") for mu in range(4)]
    # {x^m/L-normalized momenta}: {xd_r/L, xd_s/L} = 0
    p1 = normalize(xd[1] / L, chart)
    p2 = normalize(xd[2] / L, chart)
    assert is_zero(bivector_bracket(Lam, p1, p2), chart)
    # antisymmetry on a mixed pair
    val = bivector_bracket(Lam, x[1], p1)
    assert is_zero(val + bivector_bracket(Lam, p1, x[1]), chart)
    # L is a Casimir-type invariant for the momenta block: {L, xd_s/L} = 0
    assert is_zero(bivector_bracket(Lam, L, p1), chart)


def test_lorentz_lifts_preserve_bivector(chart):
    Lam = closed_form_bivector(chart)
    fields = lorentz_lift_fields(chart)
    for name in ("M01", "M12"):
        assert schouten_bracket(fields[name], Lam).is_zero(), name


def test_modified_translations_tangent_reading(chart):
    _, _, _, Gamma = build_lagrangian_geometry(chart)
    L = lagrangian(chart)
    f1 = sum(
        velocity_lower(chart, mu) * chart.symbol(f"x{mu}") for mu in range(4)
    )
    fields = modified_translation_fields(chart, reading="tangent")
    for mu in range(4):
        X = fields[f"P{mu}"]
        assert is_zero(X.apply(f1), chart), mu
        assert is_zero(X.apply(L), chart), mu
    # displayed reading preserves L but not f1
    disp = modified_translation_fields(chart, reading="displayed")
    assert is_zero(disp["P1"].apply(L), chart)
    assert not is_zero(disp["P1"].apply(f1), chart)
    with pytest.raises(ValueError):
        modified_translation_fields(chart, reading="bogus")


def test_translation_commutators_proportional_to_spray(chart):
    _, _, _, Gamma = build_lagrangian_geometry(chart)
    fields = modified_translation_fields(chart, reading="tangent")
    for mu, nu in itertools.combinations(range(4), 2):
        B = lie_bracket(fields[f"P{mu}"], fields[f"P{nu}"]).normalized()
        # each commutator is a function multiple of Gamma
        comps = B.components
        xd0 = chart.symbol("xd0")
        ratio = normalize(comps[0] / xd0, chart)
        recon = (ratio * Gamma).normalized()
        assert (B - recon).is_zero(), (mu, nu)
