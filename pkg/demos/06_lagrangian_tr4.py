"""The Lagrangian realization on TR^4 and Newton-Wigner positions.

With L = sqrt(xd.xd) on the timelike tangent bundle of Minkowski
space, theta_L = xd_mu dx^mu / L is degenerate along the dilation
Delta and the spray Gamma.  A projector-valued connection built from
two explicit one-forms splits these directions off and produces a
Poisson-type bivector whose canonical coordinates are the
Newton-Wigner positions Q^j = -x^j + xd^j x^0 / xd^0.
"""

import sympy as sp

from poincare_realizations.expr import is_zero, normalize, to_text
from poincare_realizations.lagrangian_form import (
    build_connection,
    build_lagrangian_geometry,
    closed_form_bivector,
    displayed_omega,
    lagrangian,
    tr4_chart,
)
from poincare_realizations.mass_shell import bivector_bracket

chart = tr4_chart()
L = lagrangian(chart)
theta, omega, Delta, Gamma = build_lagrangian_geometry(chart)

print("omega_L matches its closed form:",
      (omega - displayed_omega(chart)).is_zero())
from poincare_realizations.geometry import lie_bracket
print("[Delta, Gamma] = Gamma:",
      (lie_bracket(Delta, Gamma) - Gamma).is_zero())

A = build_connection(chart)
print("A is a projector (A^2 = A):", (A.compose(A) - A).is_zero())
print("A kills Delta and Gamma:",
      A.apply(Delta).normalized().is_zero()
      and A.apply(Gamma).normalized().is_zero())

Lam = closed_form_bivector(chart)
xs = [chart.symbol(f"x{mu}") for mu in range(4)]
xds = [chart.symbol(f"xd{mu}") for mu in range(4)]
Q1 = normalize(-xs[1] + xds[1] * xs[0] / xds[0], chart)
P1 = normalize(xds[1] / L, chart)
P2 = normalize(xds[2] / L, chart)

print("{Q^1, P^1} =", to_text(bivector_bracket(Lam, Q1, P1)))
print("{P^1, P^2} =", to_text(bivector_bracket(Lam, P1, P2)))
