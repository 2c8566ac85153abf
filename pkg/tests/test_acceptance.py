"""Acceptance battery.

One test function per acceptance criterion; with ``pytest -v`` each
criterion therefore contributes exactly one pass/fail line.  Every
check is exact (rational/symbolic); random inputs are seeded.
"""

import itertools
import json
import random

import sympy as sp

from poincare_realizations.algebra import poincare_jk_spec, poincare_spec
from poincare_realizations.charts import builtin_charts
from poincare_realizations.cli import main, run_suite
from poincare_realizations.expr import (
    Chart,
    NormalizationError,
    diff,
    is_zero,
    normalize,
    parse,
    to_text,
)
from poincare_realizations.frozen_phase import frozen_suite
from poincare_realizations.geometry import (
    VectorField,
    d_scalar,
    exterior_derivative,
    contract,
    lie_bracket,
    lie_derivative,
    one_form,
    schouten_bracket,
    schouten_decomposable_oracle,
    wedge,
)
from poincare_realizations.instant_form import (
    build_instant_realization,
    derive_boost_pde,
    instant_form_suite,
    lagrangian_chain,
    no_interaction_certificate,
    relativistic_lagrangian,
    speed_squared,
    tr3_chart,
    wlc_residuals,
)
from poincare_realizations.lagrangian_form import lagrangian_suite
from poincare_realizations.mass_shell import mass_shell_suite
from poincare_realizations.report import render_json
from poincare_realizations.algebra import check_realization


def _emit(n: int, ok: bool, text: str):
    print(f"criterion {n:02d}: {'PASS' if ok else 'FAIL'} - {text}")
    assert ok, text


def test_criterion_01_structure_constants():
    # antisymmetry and Jacobi over all 10^3 triples, in both bases
    for spec in (poincare_spec((-1, 1, 1, 1)), poincare_jk_spec()):
        names = spec.names
        assert len(names) == 10
        for i, j in itertools.product(names, repeat=2):
            for k in names:
                assert spec.c(i, j, k) == -spec.c(j, i, k)
        count = 0
        for i, j, k in itertools.product(names, repeat=3):
            count += 1
            for n in names:
                total = sum(
                    spec.c(i, j, m) * spec.c(m, k, n)
                    + spec.c(j, k, m) * spec.c(m, i, n)
                    + spec.c(k, i, m) * spec.c(m, j, n)
                    for m in names
                )
                assert total == 0
        assert count == 1000
    _emit(1, True, "structure constants: antisymmetry + Jacobi on all 10^3 triples")


def test_criterion_02_free_instant_form():
    r = build_instant_realization(f=0)
    closure = check_realization(r.realization)
    wlc = wlc_residuals(r)
    ok = closure.passed() and len(closure.checks) == 45 and wlc.passed()
    _emit(2, ok, "f = 0: all 45 bracket pairs and both world-line families exact")


def test_criterion_03_boost_pde_extraction():
    extracted, displayed, report = derive_boost_pde()
    chart = tr3_chart()
    matches = [
        s
        for s in (1, -1)
        if all(is_zero(e - s * d, chart) for e, d in zip(extracted, displayed))
    ]
    ok = report.passed() and len(matches) == 1
    _emit(3, ok, "extracted PDE system equals the displayed one up to one global sign")


def test_criterion_04_no_interaction_certificate():
    report = no_interaction_certificate()
    battery = [c for c in report.checks if c.id.startswith("battery-")]
    ok = (
        report.passed()
        and len(battery) == 3
        and all(c.witness is not None and c.residual != "0" for c in battery)
        and any(c.id == "locus-forces-f" for c in report.checks)
    )
    _emit(4, ok, "f = 0 passes; f in {1, xd^2, 1/(1-xd^2)} fail with rational "
                 "witnesses; locus argument exact")


def test_criterion_05_unique_lagrangian():
    chart = tr3_chart(with_root=True)
    good = lagrangian_chain(relativistic_lagrangian(chart), chart)
    ok = good.passed()

    half = lagrangian_chain(speed_squared(chart) / 2, chart)
    quad = lagrangian_chain(1 - speed_squared(chart), chart)
    for rep in (half, quad):
        ode = next(c for c in rep.checks if c.id == "ode")
        ok = ok and not rep.passed() and ode.status == "fail"
        ok = ok and (ode.witness is not None or ode.residual != "0")

    # the power family c (1 - xd^2)^alpha around alpha = 1/2, realized
    # through the nested extension t^2 = w (so t = (1 - xd^2)^(1/4))
    fam_chart = tr3_chart(with_root=True)
    w = fam_chart.symbol("w")
    t = fam_chart.add_extension(w, name="t").symbol
    c = fam_chart.symbol("c")
    family = {
        sp.Rational(1, 4): c * t,
        sp.Rational(1, 2): c * w,
        sp.Rational(3, 4): c * t * w,
    }
    for alpha, L in family.items():
        rep = lagrangian_chain(L, fam_chart)
        if alpha == sp.Rational(1, 2):
            ok = ok and rep.passed()
        else:
            ok = ok and not rep.passed()
    _emit(5, ok, "only L = c*sqrt(1 - xd^2) survives the chain; "
                 "L = xd^2/2, 1 - xd^2 and alpha = 1/2 +- 1/4 all fail")


def test_criterion_06_mass_shell_two_masses():
    ok = True
    for m in (1, 3):
        rep = mass_shell_suite(m, seed=0, triples=20)
        ids = [c.id for c in rep.checks]
        jacobi = [i for i in ids if i.startswith("jacobi-identity-")]
        leibniz = [i for i in ids if i.startswith("leibniz-anomaly-")]
        ok = (
            ok
            and rep.passed()
            and len(jacobi) >= 20
            and len(leibniz) >= 20
            and "schouten-LL" in ids
            and "schouten-GL" in ids
            and "closure-11x11" in ids
        )
    _emit(6, ok, "mass shell m = 1 and m = 3: contractions, bracket table, "
                 "Schouten identities, >= 20 random triples, 11x11 closure")


def test_criterion_07_frozen_phase():
    rep = frozen_suite(seed=0, points=10)
    ids = [c.id for c in rep.checks]
    ranks = [i for i in ids if i.startswith("rank")]
    ok = rep.passed() and len(ranks) == 10
    _emit(7, ok, "frozen phase: kernel/invariance identities, rank 6 at 10 "
                 "points, all ten fields commute with Delta and Gamma")


def test_criterion_08_lagrangian_form():
    rep = lagrangian_suite(seed=0)
    ids = {c.id for c in rep.checks}
    needed_fragments = (
        "omega",         # omega_L display match
        "projector",     # A o A = A
        "QP-sign",       # recorded canonical sign
    )
    ok = rep.passed() and all(
        any(frag in i for i in ids) for frag in needed_fragments
    )
    _emit(8, ok, "Lagrangian form: omega_L, connection, bivector, bracket "
                 "tables, Lorentz invariance, Newton-Wigner, translations, frame")


def _random_scalar(chart, rng, terms=2, degree=2):
    syms = chart.coordinates
    e = sp.Integer(0)
    for _ in range(terms):
        mono = sp.Rational(rng.randint(-4, 4), rng.randint(1, 3))
        for _ in range(rng.randint(0, degree)):
            mono *= rng.choice(syms)
        e += mono
    return e


def _random_vf(chart, rng):
    return VectorField(
        chart, tuple(_random_scalar(chart, rng) for _ in chart.coordinates)
    )


def _random_rational_expr(chart, rng):
    num = _random_scalar(chart, rng, terms=3)
    den = 1 + _random_scalar(chart, rng, terms=1) ** 2
    if rng.random() < 0.4 and chart.extensions:
        num += rng.randint(-2, 2) * chart.extensions[0].symbol
    return num / den


def test_criterion_09_engine_properties():
    chart = Chart("acc", ["a", "b", "u", "v"])
    rng = random.Random(42)
    ok = True

    for _ in range(25):
        alpha = one_form(
            chart, {c.name: _random_scalar(chart, rng) for c in chart.coordinates}
        )
        ok = ok and exterior_derivative(exterior_derivative(alpha)).is_zero()

    for _ in range(25):
        X, Y = _random_vf(chart, rng), _random_vf(chart, rng)
        alpha = one_form(
            chart, {c.name: _random_scalar(chart, rng) for c in chart.coordinates}
        )
        lhs = contract(Y, lie_derivative(X, alpha))
        rhs = X.apply(contract(Y, alpha)) - contract(lie_bracket(X, Y), alpha)
        ok = ok and is_zero(lhs - rhs, chart)

    for _ in range(25):
        X, Y, Z = (_random_vf(chart, rng) for _ in range(3))
        total = (
            lie_bracket(X, lie_bracket(Y, Z))
            + lie_bracket(Y, lie_bracket(Z, X))
            + lie_bracket(Z, lie_bracket(X, Y))
        )
        ok = ok and total.is_zero()

    for _ in range(25):
        X1, X2, Y1, Y2 = (_random_vf(chart, rng) for _ in range(4))
        lhs = schouten_bracket(wedge(X1, X2), wedge(Y1, Y2))
        rhs = schouten_decomposable_oracle(X1, X2, Y1, Y2)
        ok = ok and (lhs - rhs).is_zero()

    root_chart = tr3_chart(with_root=True)
    rng2 = random.Random(43)
    idem = prod = 0
    while idem < 100 or prod < 100:
        try:
            e = normalize(_random_rational_expr(root_chart, rng2), root_chart)
            f = normalize(_random_rational_expr(root_chart, rng2), root_chart)
        except NormalizationError:
            continue
        if idem < 100:
            ok = ok and normalize(e, root_chart) == e
            idem += 1
        if prod < 100:
            x = root_chart.coordinates[0].name
            lhs = diff(e * f, x, root_chart)
            rhs = diff(e, x, root_chart) * f + e * diff(f, x, root_chart)
            ok = ok and is_zero(lhs - rhs, root_chart)
            prod += 1
    _emit(9, ok, "d^2 = 0, Cartan formula, Lie Jacobi, Schouten oracle on 25 "
                 "random inputs each; normalize idempotence and diff product "
                 "rule on 100 random expressions")


def test_criterion_10_tooling(capsys):
    ok = True

    # byte-identical same-seed JSON
    a = render_json(run_suite("algebra", {"seed": 11}))
    b = render_json(run_suite("algebra", {"seed": 11}))
    ok = ok and a == b and json.loads(a)["seed"] == 11

    # exit-code contract: 0 pass, 1 suite failure, 2 usage/parse error
    ok = ok and main(["verify", "algebra"]) == 0
    ok = ok and main(["verify", "instant-form", "--f", "1"]) == 1
    ok = ok and main(["expr", "normalize", "x1 +", "--chart", "tr3"]) == 2
    capsys.readouterr()

    # parse-print roundtrip on >= 100 random canonical expressions
    chart = tr3_chart(with_root=True)
    rng = random.Random(44)
    done = 0
    while done < 100:
        try:
            e = normalize(_random_rational_expr(chart, rng), chart)
        except NormalizationError:
            continue
        again = parse(to_text(e), chart)
        ok = ok and again == e
        done += 1
    _emit(10, ok, "same-seed JSON byte-identical; exit codes 0/1/2; "
                  "parse-print roundtrip on 100 canonical expressions")
