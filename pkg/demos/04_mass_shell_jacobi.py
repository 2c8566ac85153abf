"""The Jacobi structure on a mass shell.

Restricting the canonical geometry of T*R^4 to the shell p.p = m^2
yields a contact-type pair (Lambda, Gamma): a bivector and an
evolution field certified by two exact contraction identities against
the volume form theta ^ (d theta)^3.  The resulting bracket
[f, g] = Lambda(df, dg) + f Gamma(g) - g Gamma(f) satisfies the Jacobi
identity but violates the Leibniz rule by a Gamma term, and the map
f -> X_f = Lambda(df, .) + f Gamma realizes the Poincare algebra with
Gamma itself as a central eleventh generator.
"""

import sympy as sp

from poincare_realizations.expr import to_text
from poincare_realizations.mass_shell import (
    build_jacobi_pair,
    eleventh_generator_check,
    hamiltonian_field,
    jacobi_bracket,
    poincare_generating_functions,
)

pair = build_jacobi_pair(1)
print("defining contractions:", pair.verify_defining_contractions().status)

gens = poincare_generating_functions(pair.chart)
print("generating functions: P0 =", to_text(gens["P0"]),
      " M12 =", to_text(gens["M12"]))

# bracket of a boost generator with a translation generator
val = jacobi_bracket(gens["M01"], gens["P0"], pair)
print("[M01, P0] =", to_text(val), " (equals P1 up to the table sign)")

# the Leibniz anomaly: [f, gh] - [f,g]h - g[f,h] = -[f,1] g h
f, g, h = gens["P1"], gens["M12"], gens["P2"]
anomaly = jacobi_bracket(f, g * h, pair) - jacobi_bracket(f, g, pair) * h \
    - g * jacobi_bracket(f, h, pair)
correction = -jacobi_bracket(f, sp.Integer(1), pair) * g * h
from poincare_realizations.expr import is_zero
assert is_zero(anomaly - correction, pair.chart)
print("Leibniz anomaly identity holds exactly")

# the Hamiltonian field of the constant 1 is Gamma, the eleventh generator
X1, _ = hamiltonian_field(sp.Integer(1), pair)
assert (X1 - pair.reeb).is_zero()
print("X_1 = Gamma;", "11x11 closure:", eleventh_generator_check(pair).status)
