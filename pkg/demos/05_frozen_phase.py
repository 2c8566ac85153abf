"""The frozen reduction of off-shell phase space.

Scaling the canonical one-form by 1/sqrt(p.p) makes it homogeneous of
degree zero in the momenta; its differential then has a two-dimensional
kernel spanned by the momentum dilation Delta and the evolution field
Gamma.  All ten Poincare fields preserve theta and commute with the
kernel, so they descend to the six-dimensional quotient, where d theta
induces a symplectic structure reproducing the structure constants.
"""

import random

from poincare_realizations.expr import is_zero, to_text
from poincare_realizations.geometry import (
    contract,
    exterior_derivative,
    lie_bracket,
    lie_derivative,
    two_form_rank,
)
from poincare_realizations.frozen_phase import (
    induced_bracket,
    kernel_fields,
    off_shell_chart,
    poincare_fields,
    scaled_contact_form,
    timelike_point,
)

chart = off_shell_chart()
theta = scaled_contact_form(chart)
dtheta = exterior_derivative(theta)
delta, gamma = kernel_fields(chart)

print("i_Delta d theta = 0:", contract(delta, dtheta).is_zero())
print("i_Gamma d theta = 0:", contract(gamma, dtheta).is_zero())
print("L_Delta theta = 0:", lie_derivative(delta, theta).is_zero())
r = chart.symbol("r")
print("theta(r Gamma) = 1:", is_zero(contract(r * gamma, theta) - 1, chart))

point, ext = timelike_point(random.Random(0))
print("rank(d theta) at a timelike point:", two_form_rank(dtheta, point, ext))

fields = poincare_fields(chart)
X, Y = fields["M01"], fields["P1"]
print("boost preserves theta:", lie_derivative(X, theta).is_zero())
print("boost commutes with Delta:", lie_bracket(X, delta).is_zero())

# the induced quotient bracket evaluates d theta on two descended fields
val = induced_bracket(theta, X, Y)
print("d theta(M01, P1) =", to_text(val), " (theta of the bracket field)")
