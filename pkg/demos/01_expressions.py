"""Exact expression arithmetic over a chart with an adjoined square root.

The expression layer works with canonical rational forms: every
expression is reduced to a single fraction whose numerator and
denominator are polynomials in the chart symbols, with powers of any
adjoined square root reduced via its defining relation and roots
cleared from denominators.  Equality of canonical forms is a decision
procedure, not a heuristic.
"""

import sympy as sp

from poincare_realizations import Chart, is_zero, normalize, parse, to_text
from poincare_realizations.expr import diff, opaque_function

# A velocity-space chart with w = sqrt(1 - u^2) adjoined (w > 0).
chart = Chart("demo", ["u"], extensions=[("w", sp.sympify("1 - u**2"))])
u, w = chart.symbol("u"), chart.symbol("w")

print("defining relation:  w^2 =", to_text(normalize(w**2, chart)))
print("cleared denominator:  1/w =", to_text(normalize(1 / w, chart)))

# Differentiation follows the chain rule through the extension.
print("d/du w =", to_text(diff(w, "u", chart)))
assert is_zero(diff(w, "u", chart) + u / w, chart)

# The parser speaks a small ^-powered grammar and recognizes sqrt of a
# registered radicand.
e = parse("(1 - u^2)/(1 + w) + w^3/(1 - u^2)", chart)
print("parsed and normalized:", to_text(e))
assert normalize(e, chart) == e  # canonical forms are fixed points

# Opaque function symbols differentiate formally: f(u^2) -> 2u f'(u^2).
f = opaque_function("f")(u**2)
print("d/du f(u^2) =", to_text(diff(f, "u", chart)))
