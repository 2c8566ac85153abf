"""Coordinate exterior calculus: forms, multivectors, and brackets.

Everything is expressed in a single global chart; forms and multivector
fields are sparse dictionaries of exact coefficients indexed by
increasing index tuples.
"""

import sympy as sp

from poincare_realizations import Chart
from poincare_realizations.geometry import (
    coordinate_field,
    contract,
    d_scalar,
    exterior_derivative,
    lie_bracket,
    lie_derivative,
    one_form,
    schouten_bracket,
    schouten_decomposable_oracle,
    vector_field,
    wedge,
)

chart = Chart("space", ["x", "y", "z"])
x, y, z = chart.coordinates

# d^2 = 0 on an arbitrary one-form
alpha = one_form(chart, {"x": x * y**2, "y": x**3 - y, "z": x * y * z})
assert exterior_derivative(exterior_derivative(alpha)).is_zero()
print("d(d alpha) = 0 for alpha = x y^2 dx + (x^3 - y) dy + xyz dz")

# interior product uses the left slot: i_X (dx ^ dy) applied to d/dx is dy
omega = wedge(d_scalar(x, chart), d_scalar(y, chart))
ia = contract(coordinate_field(chart, "x"), omega)
print("i_{d/dx}(dx ^ dy) =", dict(ia.coeffs))

# Cartan's magic formula is how lie_derivative acts on forms
X = vector_field(chart, {"x": -y, "y": x})  # the rotation field
print("L_X (dx ^ dy) is zero:", lie_derivative(X, omega).is_zero())

# The Schouten bracket extends the Lie bracket to multivectors; on
# decomposables it matches the textbook sign expansion.
X1 = vector_field(chart, {"x": x})
X2 = vector_field(chart, {"y": y})
lhs = schouten_bracket(wedge(X1, X2), wedge(X1 + X2, X2))
rhs = schouten_decomposable_oracle(X1, X2, X1 + X2, X2)
assert (lhs - rhs).is_zero()
print("Schouten bracket agrees with the decomposable oracle")

# Lie bracket Jacobi identity
Y = vector_field(chart, {"x": y**2})
Z = vector_field(chart, {"y": x * y})
total = (
    lie_bracket(X, lie_bracket(Y, Z))
    + lie_bracket(Y, lie_bracket(Z, X))
    + lie_bracket(Z, lie_bracket(X, Y))
)
assert total.is_zero()
print("Lie-bracket Jacobi identity verified on a random-ish triple")
