"""The Newtonian realization on TR^3 and the no-interaction theorem.

Free particle dynamics (acceleration zero) realizes the full
ten-generator algebra by vector fields on position-velocity space.
Demanding that an interacting modification a_j = xd_j f(xd^2) keep the
boost commutators closed produces a PDE system whose only solution is
f = 0, and the compatible Lagrangian is then forced to be
c * sqrt(1 - xd^2).
"""

from poincare_realizations.algebra import check_realization
from poincare_realizations.expr import to_text
from poincare_realizations.instant_form import (
    build_instant_realization,
    derive_boost_pde,
    lagrangian_chain,
    relativistic_lagrangian,
    tr3_chart,
)

# 1. the free realization closes exactly on all 45 bracket pairs
free = build_instant_realization(f=0)
closure = check_realization(free.realization)
print(f"free closure: {closure.status} ({len(closure.checks)} bracket pairs)")

# 2. with a formal f(xd^2) the boost-boost bracket leaves a residual
#    whose velocity components are the obstruction PDEs
extracted, displayed, report = derive_boost_pde()
print(f"PDE extraction: {report.status}")
print("first obstruction PDE:", to_text(extracted[0]))

# 3. the unique compatible Lagrangian
chart = tr3_chart(with_root=True)
chain = lagrangian_chain(relativistic_lagrangian(chart), chart)
print(f"L = c*sqrt(1 - xd^2) compatibility chain: {chain.status}")

bad = lagrangian_chain(chart.symbol("xd1") ** 2 + chart.symbol("xd2") ** 2
                       + chart.symbol("xd3") ** 2, chart)
ode = next(c for c in bad.checks if c.id == "ode")
print(f"L = xd^2 fails the defining ODE, residual = {ode.residual}")
