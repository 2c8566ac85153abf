import random

import sympy as sp

from poincare_realizations.expr import is_zero, normalize
from poincare_realizations.geometry import lie_bracket
from poincare_realizations.mass_shell import (
    bracket_table_check,
    build_jacobi_pair,
    eleventh_generator_check,
    expected_poincare_fields,
    hamiltonian_field,
    jacobi_bracket,
    jacobi_bracket_via_volume,
    on_shell_point,
    poincare_generating_functions,
)


def test_defining_contractions():
    pair = build_jacobi_pair(1)
    assert pair.verify_defining_contractions().passed()


def test_hamiltonian_fields_match_displayed():
    pair = build_jacobi_pair(1)
    gens = poincare_generating_functions(pair.chart)
    expected = expected_poincare_fields(pair)
    for name in ("P0", "P1", "M01", "M12"):
        X, (_, scalar) = hamiltonian_field(gens[name], pair)
        assert (X - expected[name]).is_zero(), name
        # the generating functions are invariants of the evolution field
        assert scalar == 0, name


def test_bracket_is_antisymmetric_with_unit_anomaly():
    pair = build_jacobi_pair(1)
    chart = pair.chart
    f = chart.symbol("x1") * chart.symbol("p2")
    g = chart.symbol("p1")
    assert is_zero(
        jacobi_bracket(f, g, pair) + jacobi_bracket(g, f, pair), chart
    )
    # [f, 1] = -Gamma(f): the bracket is not a Poisson bracket
    anomaly = jacobi_bracket(f, sp.Integer(1), pair)
    assert is_zero(anomaly + pair.reeb.apply(f), chart)


def test_volume_route_agrees():
    pair = build_jacobi_pair(1)
    chart = pair.chart
    f = chart.symbol("x0") * chart.symbol("p1")
    g = chart.symbol("x2") + chart.symbol("p3")
    lhs = jacobi_bracket(f, g, pair)
    rhs = jacobi_bracket_via_volume(f, g, pair)
    assert is_zero(lhs - rhs, chart)


def test_bracket_table_and_eleventh_generator():
    pair = build_jacobi_pair(1)
    assert bracket_table_check(pair).passed()
    assert eleventh_generator_check(pair).passed()


def test_reeb_commutes_with_generators():
    pair = build_jacobi_pair(1)
    expected = expected_poincare_fields(pair)
    for name in ("P0", "P3", "M03", "M23"):
        assert lie_bracket(pair.reeb, expected[name]).is_zero(), name


def test_on_shell_point_satisfies_constraint():
    rng = random.Random(3)
    for m in (1, 3):
        point, ext = on_shell_point(m, rng)
        E = sp.Rational(ext["E"])
        assert E > 0
        assert E**2 == m**2 + sum(
            sp.Rational(point[f"p{i}"]) ** 2 for i in (1, 2, 3)
        )
