"""Command-line front end: suite execution, ad-hoc brackets, and
expression normalization.

Exit codes: 0 when the requested work succeeds (for ``verify``: the
report passes), 1 when a verification suite fails, 2 for usage or
parse errors.
"""

from __future__ import annotations

import argparse
import sys

import sympy as sp

from .charts import resolve_chart
from .expr import Chart, ExprError, normalize, parse, to_text
from .geometry import VectorField, lie_bracket
from .report import Report, render_report

SUITES = ("instant-form", "jacobi", "frozen", "lagrangian", "algebra", "all")


def run_suite(name: str, options: dict | None = None) -> Report:
    """Execute one verification suite (or all of them)."""
    options = dict(options or {})
    seed = int(options.get("seed", 0))
    if name == "instant-form":
        from .instant_form import instant_form_suite

        return instant_form_suite(
            f=options.get("f"), lagrangian=options.get("lagrangian"), seed=seed
        )
    if name == "jacobi":
        from .mass_shell import mass_shell_suite

        return mass_shell_suite(
            options.get("mass", 1), seed=seed, triples=int(options.get("triples", 20))
        )
    if name == "frozen":
        from .frozen_phase import frozen_suite

        return frozen_suite(seed=seed)
    if name == "lagrangian":
        from .lagrangian_form import lagrangian_suite

        return lagrangian_suite(seed=seed)
    if name == "algebra":
        from .algebra import algebra_suite

        return algebra_suite(seed=seed)
    if name == "all":
        report = Report("all", seed=seed)
        for sub in SUITES[:-1]:
            report.extend(run_suite(sub, options))
        return report
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


# ---------------------------------------------------------------------------
# vector-field literals: "xd1*@x1 + a1*@xd1"


def _split_terms(text: str) -> list[str]:
    terms = []
    depth = 0
    current = ""
    prev = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if (
            ch in "+-"
            and depth == 0
            and current.strip()
            and prev not in "*/^+-("
        ):
            terms.append(current)
            current = ""
            if ch == "+":
                continue  # the grammar has no unary plus
        current += ch
        if ch.strip():
            prev = ch
    if current.strip():
        terms.append(current)
    return terms


def parse_vector_field(text: str, chart: Chart) -> VectorField:
    """Parse a component/direction literal like ``xd1*@x1 + 2*@xd1``."""
    comps = [sp.Integer(0)] * chart.dim
    for term in _split_terms(text):
        hits = [
            (i, c.name)
            for i, c in enumerate(chart.coordinates)
            if f"@{c.name}" in term
        ]
        # longest names first so "@x1" does not also match "@x10"
        hits = [
            (i, n)
            for i, n in hits
            if not any(other != n and n in other and f"@{other}" in term
                       for _, other in hits)
        ]
        if len(hits) != 1:
            raise ExprError(
                f"each term needs exactly one direction token: {term.strip()!r}"
            )
        idx, name = hits[0]
        coeff_text = term.replace(f"@{name}", "1")
        comps[idx] += parse(coeff_text, chart)
    return VectorField(
        chart, tuple(normalize(c, chart) for c in comps)
    )


def format_vector_field(X: VectorField) -> str:
    parts = []
    for i, c in enumerate(X.components):
        if c == 0:
            continue
        parts.append(f"({to_text(c)})*@{X.chart.coordinates[i].name}")
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poincare-verify",
        description="Exact verification suites for Poincare-algebra "
        "realizations and related geometry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=SUITES)
    p_verify.add_argument("--f", help="reduced acceleration f (instant-form)")
    p_verify.add_argument("--lagrangian", help="candidate Lagrangian (instant-form)")
    p_verify.add_argument("--mass", default="1", help="rational mass (jacobi)")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--triples", type=int, default=20,
                          help="random triples for the jacobi identities")
    p_verify.add_argument("--json", action="store_true", help="emit JSON")
    p_verify.add_argument("--timings", action="store_true",
                          help="include per-check milliseconds in JSON")

    p_bracket = sub.add_parser("bracket", help="Lie bracket of two field literals")
    p_bracket.add_argument("X")
    p_bracket.add_argument("Y")
    p_bracket.add_argument("--chart", required=True)
    p_bracket.add_argument("--chart-config", help="chart config file")

    p_expr = sub.add_parser("expr", help="expression utilities")
    expr_sub = p_expr.add_subparsers(dest="expr_command", required=True)
    p_norm = expr_sub.add_parser("normalize", help="canonical form of an expression")
    p_norm.add_argument("expression")
    p_norm.add_argument("--chart", required=True)
    p_norm.add_argument("--chart-config", help="chart config file")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            options = {"seed": args.seed, "mass": args.mass, "triples": args.triples}
            if args.f is not None:
                options["f"] = args.f
            if args.lagrangian is not None:
                options["lagrangian"] = args.lagrangian
            report = run_suite(args.suite, options)
            print(
                render_report(
                    report,
                    format="json" if args.json else "text",
                    timings=args.timings,
                )
            )
            return 0 if report.passed() else 1
        if args.command == "bracket":
            chart = resolve_chart(args.chart, args.chart_config)
            X = parse_vector_field(args.X, chart)
            Y = parse_vector_field(args.Y, chart)
            print(format_vector_field(lie_bracket(X, Y)))
            return 0
        if args.command == "expr":
            chart = resolve_chart(args.chart, args.chart_config)
            print(to_text(normalize(parse(args.expression, chart), chart)))
            return 0
    except (ExprError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
