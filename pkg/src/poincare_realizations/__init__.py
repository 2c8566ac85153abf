"""Exact symbolic verification of Poincare-algebra realizations.

Layers:

- :mod:`poincare_realizations.expr` — canonical rational arithmetic
  over chart symbols with quadratic algebraic extensions and opaque
  function atoms.
- :mod:`poincare_realizations.geometry` — coordinate exterior calculus:
  forms, multivectors, Lie/Schouten brackets, (1,1)-tensors, level-set
  restriction.
- :mod:`poincare_realizations.algebra` — Lie algebra structure
  constants and realization checking.
- :mod:`poincare_realizations.instant_form`,
  :mod:`poincare_realizations.mass_shell`,
  :mod:`poincare_realizations.frozen_phase`,
  :mod:`poincare_realizations.lagrangian_form` — the four verified
  constructions.
- :mod:`poincare_realizations.cli` — the ``poincare-verify`` command.
"""

from .algebra import (
    LieAlgebraSpec,
    Realization,
    check_realization,
    poincare_jk_spec,
    poincare_spec,
)
from .expr import (
    Chart,
    EvaluationError,
    ExprError,
    NormalizationError,
    ParseError,
    eval_rational,
    is_zero,
    normalize,
    opaque_function,
    parse,
    substitute,
    to_text,
)
from .geometry import (
    DifferentialForm,
    MultivectorField,
    Tensor11,
    VectorField,
    contract,
    d_scalar,
    exterior_derivative,
    lie_bracket,
    lie_derivative,
    restrict_to_level_set,
    schouten_bracket,
    wedge,
)
from .report import Report, render_json, render_report, render_text

__version__ = "0.1.0"

__all__ = [
    "Chart",
    "DifferentialForm",
    "EvaluationError",
    "ExprError",
    "LieAlgebraSpec",
    "MultivectorField",
    "NormalizationError",
    "ParseError",
    "Realization",
    "Report",
    "Tensor11",
    "VectorField",
    "check_realization",
    "contract",
    "d_scalar",
    "eval_rational",
    "exterior_derivative",
    "is_zero",
    "lie_bracket",
    "lie_derivative",
    "normalize",
    "opaque_function",
    "parse",
    "poincare_jk_spec",
    "poincare_spec",
    "render_json",
    "render_report",
    "render_text",
    "restrict_to_level_set",
    "schouten_bracket",
    "substitute",
    "to_text",
    "wedge",
]
