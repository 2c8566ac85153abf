import random

import pytest
import sympy as sp

from poincare_realizations.expr import Chart, is_zero, normalize
from poincare_realizations.geometry import (
    DifferentialForm,
    MultivectorField,
    VectorField,
    coordinate_field,
    contract,
    d_scalar,
    exterior_derivative,
    identity_tensor,
    lie_bracket,
    lie_derivative,
    multivector_from_dict,
    one_form,
    restrict_to_level_set,
    schouten_bracket,
    schouten_decomposable_oracle,
    tensor_from_covector_vector,
    two_form_rank,
    vector_field,
    wedge,
    wedge_power,
)


@pytest.fixture
def chart():
    return Chart("g", ["a", "b", "u", "v"])


def _rand_poly(chart, rng, terms=2):
    syms = chart.coordinates
    e = sp.Integer(0)
    for _ in range(terms):
        mono = sp.Integer(rng.randint(-3, 3))
        for _ in range(rng.randint(0, 2)):
            mono *= rng.choice(syms)
        e += mono
    return e


def _rand_vf(chart, rng):
    return VectorField(chart, tuple(_rand_poly(chart, rng) for _ in chart.coordinates))


def _rand_one_form(chart, rng):
    return one_form(
        chart, {c.name: _rand_poly(chart, rng) for c in chart.coordinates}
    )


def test_d_squared_zero(chart):
    rng = random.Random(7)
    for _ in range(5):
        alpha = _rand_one_form(chart, rng)
        assert exterior_derivative(exterior_derivative(alpha)).is_zero()
        f = _rand_poly(chart, rng, terms=3)
        assert exterior_derivative(d_scalar(f, chart)).is_zero()


def test_wedge_graded_commutativity(chart):
    rng = random.Random(8)
    a, b = _rand_one_form(chart, rng), _rand_one_form(chart, rng)
    assert (wedge(a, b) + wedge(b, a)).is_zero()
    two = wedge(a, b)
    assert (wedge(two, b) - wedge(b, two)).is_zero()


def test_contract_slot_convention(chart):
    # contract(X∧Y, df∧dg) = X(f)Y(g) - X(g)Y(f)
    rng = random.Random(9)
    X, Y = _rand_vf(chart, rng), _rand_vf(chart, rng)
    f, g = _rand_poly(chart, rng), _rand_poly(chart, rng)
    Lam = wedge(X, Y)
    lhs = contract(Lam, wedge(d_scalar(f, chart), d_scalar(g, chart)))
    rhs = X.apply(f) * Y.apply(g) - X.apply(g) * Y.apply(f)
    assert is_zero(lhs - rhs, chart)


def test_interior_product_left_slot(chart):
    a, b = chart.coordinates[0], chart.coordinates[1]
    alpha = wedge(d_scalar(a, chart), d_scalar(b, chart))
    X = coordinate_field(chart, "a")
    ia = contract(X, alpha)
    # i_{∂a}(da∧db) = db
    assert is_zero(ia.coefficient((1,)) - 1, chart)
    assert ia.coefficient((0,)) == 0


def test_cartan_formula_on_one_forms(chart):
    # (L_X alpha)(Y) = X(alpha(Y)) - alpha([X, Y])
    rng = random.Random(10)
    for _ in range(3):
        X, Y = _rand_vf(chart, rng), _rand_vf(chart, rng)
        alpha = _rand_one_form(chart, rng)
        lhs = contract(Y, lie_derivative(X, alpha))
        aY = contract(Y, alpha)
        rhs = X.apply(aY) - contract(lie_bracket(X, Y), alpha)
        assert is_zero(lhs - rhs, chart)


def test_lie_bracket_jacobi(chart):
    rng = random.Random(11)
    X, Y, Z = (_rand_vf(chart, rng) for _ in range(3))
    total = (
        lie_bracket(X, lie_bracket(Y, Z))
        + lie_bracket(Y, lie_bracket(Z, X))
        + lie_bracket(Z, lie_bracket(X, Y))
    )
    assert total.is_zero()


def test_lie_derivative_commutes_with_d(chart):
    rng = random.Random(12)
    X = _rand_vf(chart, rng)
    f = _rand_poly(chart, rng, terms=3)
    lhs = lie_derivative(X, d_scalar(f, chart))
    rhs = d_scalar(X.apply(f), chart)
    assert (lhs - rhs).is_zero()


def test_schouten_matches_decomposable_oracle(chart):
    rng = random.Random(13)
    for _ in range(3):
        X1, X2, Y1, Y2 = (_rand_vf(chart, rng) for _ in range(4))
        lhs = schouten_bracket(wedge(X1, X2), wedge(Y1, Y2))
        rhs = schouten_decomposable_oracle(X1, X2, Y1, Y2)
        assert (lhs - rhs).is_zero()


def test_schouten_vector_bivector_is_lie_transport(chart):
    rng = random.Random(14)
    X, Y1, Y2 = (_rand_vf(chart, rng) for _ in range(3))
    B = wedge(Y1, Y2)
    lhs = schouten_bracket(X, B)
    rhs = wedge(lie_bracket(X, Y1), Y2) + wedge(Y1, lie_bracket(X, Y2))
    assert (lhs - rhs).is_zero()
    assert (schouten_bracket(B, X) + lhs).is_zero()


def test_tensor11_projector(chart):
    alpha = one_form(chart, {"a": sp.Integer(1)})
    X = coordinate_field(chart, "a")
    P = tensor_from_covector_vector(alpha, X)
    assert (P.compose(P) - P).is_zero()
    Q = identity_tensor(chart) - P
    assert (Q.compose(Q) - Q).is_zero()
    assert Q.apply(X).is_zero()


def test_restrict_to_level_set():
    big = Chart("amb", ["x", "p"])
    x, p = big.coordinates
    constraint = p**2 - (1 + x**2)
    small = Chart("curve", ["x"], extensions=[("s", sp.sympify("1 + x**2"))])
    s = small.symbol("s")
    # X = p ∂x + x ∂p is tangent: X(p^2 - 1 - x^2) = 2px - 2xp = 0
    X = VectorField(big, (p, x))
    Xr = restrict_to_level_set(X, constraint, "p", small)
    assert Xr.components[0] == s
    bad = VectorField(big, (sp.Integer(1), sp.Integer(0)))
    with pytest.raises(ValueError):
        restrict_to_level_set(bad, constraint, "p", small)
    # covariant objects pull back without a tangency requirement:
    # dp restricts to ds = (x/s) dx
    dp = d_scalar(p, big)
    alpha = restrict_to_level_set(dp, constraint, "p", small)
    assert is_zero(alpha.coefficient((0,)) - x / s, small)


def test_two_form_rank(chart):
    a, b, u, v = chart.coordinates
    omega = wedge(d_scalar(a, chart), d_scalar(b, chart))
    pt = {"a": 0, "b": 0, "u": 0, "v": 0}
    assert two_form_rank(omega, pt) == 2
    omega4 = omega + wedge(d_scalar(u, chart), d_scalar(v, chart))
    assert two_form_rank(omega4, pt) == 4
    assert wedge_power(omega, 2).is_zero()
    assert not wedge_power(omega4, 2).is_zero()
