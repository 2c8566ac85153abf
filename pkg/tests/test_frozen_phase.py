import random

import sympy as sp

from poincare_realizations.expr import eval_rational, is_zero
from poincare_realizations.geometry import (
    contract,
    exterior_derivative,
    lie_bracket,
    lie_derivative,
    two_form_rank,
    wedge_power,
)
from poincare_realizations.frozen_phase import (
    frozen_suite,
    induced_bracket,
    kernel_fields,
    off_shell_chart,
    poincare_fields,
    scaled_contact_form,
    timelike_point,
)


def test_kernel_fields_annihilate_dtheta():
    chart = off_shell_chart()
    theta = scaled_contact_form(chart)
    dtheta = exterior_derivative(theta)
    delta, gamma = kernel_fields(chart)
    assert contract(delta, dtheta).is_zero()
    assert contract(gamma, dtheta).is_zero()
    # and [Delta, Gamma] lies back in the kernel (it is -Gamma)
    assert (lie_bracket(delta, gamma) + gamma).is_zero()


def test_theta_invariances():
    chart = off_shell_chart()
    theta = scaled_contact_form(chart)
    delta, gamma = kernel_fields(chart)
    assert lie_derivative(delta, theta).is_zero()
    assert is_zero(contract(delta, theta), chart)
    # theta(r Gamma) = 1 for the unit-normalized evolution field
    r = chart.symbol("r")
    assert is_zero(contract(r * gamma, theta) - 1, chart)


def test_dtheta_degenerate_rank_six():
    chart = off_shell_chart()
    theta = scaled_contact_form(chart)
    dtheta = exterior_derivative(theta)
    assert wedge_power(dtheta, 4).is_zero()
    rng = random.Random(5)
    point, ext = timelike_point(rng)
    assert two_form_rank(dtheta, point, ext) == 6


def test_fields_preserve_theta_and_commute_with_kernel():
    chart = off_shell_chart()
    theta = scaled_contact_form(chart)
    delta, gamma = kernel_fields(chart)
    fields = poincare_fields(chart)
    for name in ("P0", "M12", "M01"):
        X = fields[name]
        assert lie_derivative(X, theta).is_zero(), name
        assert lie_bracket(X, delta).is_zero(), name
        assert lie_bracket(X, gamma).is_zero(), name


def test_hamiltonian_property():
    # i_X dtheta = -d(theta(X)) for a theta-preserving field
    from poincare_realizations.geometry import d_scalar

    chart = off_shell_chart()
    theta = scaled_contact_form(chart)
    dtheta = exterior_derivative(theta)
    X = poincare_fields(chart)["M01"]
    lhs = contract(X, dtheta)
    rhs = -1 * d_scalar(contract(X, theta), chart)
    assert (lhs - rhs).is_zero()


def test_induced_bracket_reproduces_structure_constants():
    chart = off_shell_chart()
    theta = scaled_contact_form(chart)
    fields = poincare_fields(chart)
    # [M01, P1] row: the induced pairing matches theta of the bracket
    val = induced_bracket(theta, fields["M01"], fields["P1"])
    expected = contract(lie_bracket(fields["M01"], fields["P1"]), theta)
    assert is_zero(val - expected, chart)


def test_frozen_suite_small_green():
    assert frozen_suite(seed=0, points=2).passed()
