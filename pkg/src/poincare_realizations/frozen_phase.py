"""The frozen realization: a scale-invariant one-form on T*R^4.

Off the null cone p.p = 0 the one-form theta = p_mu dx^mu / sqrt(p.p)
has a degenerate differential whose kernel is spanned by the momentum
dilation Delta and the evolution field Gamma.  The ten Poincare fields
commute with both, so they descend to the six-dimensional symplectic
quotient -- on which nothing moves, because the dynamics itself was
quotiented out.
"""

from __future__ import annotations

import itertools
import random

import sympy as sp

from .algebra import Realization, check_realization, poincare_spec
from .expr import Chart, diff, is_zero, normalize
from .geometry import (
    VectorField,
    contract,
    d_scalar,
    exterior_derivative,
    lie_bracket,
    lie_derivative,
    one_form,
    two_form_rank,
    wedge,
    wedge_power,
)
from .report import Report

SIGNATURE = (1, -1, -1, -1)


def off_shell_chart() -> Chart:
    """T*R^4 with r = sqrt(p.p) adjoined (valid where p.p > 0)."""
    pp = sp.sympify("p0**2 - p1**2 - p2**2 - p3**2")
    return Chart(
        "offshell_tstar",
        [f"x{mu}" for mu in range(4)] + [f"p{mu}" for mu in range(4)],
        extensions=[("r", pp)],
        signature=SIGNATURE,
    )


def scaled_contact_form(chart: Chart):
    """theta = p_mu dx^mu / r, homogeneous of degree zero in p."""
    r = chart.symbol("r")
    return one_form(
        chart,
        {f"x{mu}": SIGNATURE[mu] * chart.symbol(f"p{mu}") / r for mu in range(4)},
    )


def kernel_fields(chart: Chart) -> tuple[VectorField, VectorField]:
    """Delta = p^mu d/dp^mu and Gamma = (p^mu / p.p) d/dx^mu."""
    ps = [chart.symbol(f"p{mu}") for mu in range(4)]
    pp = chart.symbol("r") ** 2
    Delta = VectorField(chart, (sp.Integer(0),) * 4 + tuple(ps))
    Gamma = VectorField(chart, tuple(p / pp for p in ps) + (sp.Integer(0),) * 4)
    return Delta, Gamma


def poincare_fields(chart: Chart) -> dict[str, VectorField]:
    """The displayed off-shell realization: Y_mu = d/dx^mu and
    X_{mu nu} = x_mu d/dx^nu - x_nu d/dx^mu + p_mu d/dp^nu - p_nu d/dp^mu."""
    fields: dict[str, VectorField] = {}
    for mu in range(4):
        comps = [sp.Integer(0)] * 8
        comps[mu] = sp.Integer(1)
        fields[f"P{mu}"] = VectorField(chart, tuple(comps))
    for mu in range(4):
        for nu in range(mu + 1, 4):
            xl = [SIGNATURE[a] * chart.symbol(f"x{a}") for a in range(4)]
            pl = [SIGNATURE[a] * chart.symbol(f"p{a}") for a in range(4)]
            comps = [sp.Integer(0)] * 8
            comps[nu] += xl[mu]
            comps[mu] -= xl[nu]
            comps[4 + nu] += pl[mu]
            comps[4 + mu] -= pl[nu]
            fields[f"M{mu}{nu}"] = VectorField(chart, tuple(comps))
    return fields


def timelike_point(rng: random.Random) -> tuple[dict, dict]:
    """A rational sample with p.p > 0 a perfect square (r rational)."""
    while True:
        p = [sp.Integer(rng.randint(-7, 7)) for _ in range(4)]
        pp = p[0] ** 2 - p[1] ** 2 - p[2] ** 2 - p[3] ** 2
        if pp <= 0:
            continue
        r = sp.sqrt(pp)
        if not r.is_Rational:
            continue
        point = {f"x{mu}": sp.Integer(rng.randint(-3, 3)) for mu in range(4)}
        point.update({f"p{mu}": p[mu] for mu in range(4)})
        return point, {"r": r}


def induced_bracket(theta, X: VectorField, Y: VectorField):
    """dtheta(X, Y) -- the quotient bracket of the functions theta(X),
    theta(Y) when both fields preserve theta."""
    dth = exterior_derivative(theta)
    return contract(wedge(X, Y), dth)


def frozen_suite(seed: int = 0, points: int = 10) -> Report:
    report = Report("frozen", seed=seed)
    chart = off_shell_chart()
    theta = scaled_contact_form(chart)
    dtheta = exterior_derivative(theta)
    Delta, Gamma = kernel_fields(chart)

    report.check(
        "kernel-Delta",
        "i_Delta d theta = 0",
        "frozen-kernel",
        contract(Delta, dtheta).normalized().is_zero(),
    )
    report.check(
        "kernel-Gamma",
        "i_Gamma d theta = 0",
        "frozen-kernel",
        contract(Gamma, dtheta).normalized().is_zero(),
    )
    report.check(
        "scale-invariance",
        "L_Delta theta = 0 (theta is p-homogeneous of degree zero)",
        "frozen-kernel",
        lie_derivative(Delta, theta).is_zero(),
    )
    report.check(
        "theta(Delta)",
        "theta(Delta) = 0",
        "frozen-kernel",
        is_zero(contract(Delta, theta), chart),
    )
    # theta(Gamma) = 1/r; the unit-normalized evolution field r*Gamma
    # pairs to exactly 1 (on a mass shell this is the theta_m/m,
    # m*Gamma_m normalization)
    report.info(
        "theta(Gamma)-raw",
        "theta(Gamma) = 1/sqrt(p.p)",
        "frozen-kernel",
        normalize(contract(Gamma, theta) - 1 / chart.symbol("r"), chart),
    )
    report.check(
        "theta(Gamma)",
        "theta(r Gamma) = 1 (unit-normalized evolution field)",
        "frozen-kernel",
        is_zero(contract(chart.symbol("r") * Gamma, theta) - 1, chart),
    )
    report.check(
        "dtheta-power-4",
        "d theta ^ d theta ^ d theta ^ d theta = 0 (rank < 8 everywhere)",
        "frozen-degeneracy",
        wedge_power(dtheta, 4).normalized().is_zero(),
    )

    # the displayed expansion of d theta carries 1/sqrt(p.p) on the
    # second term; the direct computation produces 1/(p.p)^(3/2)
    r = chart.symbol("r")
    theta0 = one_form(
        chart,
        {f"x{mu}": SIGNATURE[mu] * chart.symbol(f"p{mu}") for mu in range(4)},
    )
    pdp = one_form(
        chart,
        {f"p{mu}": SIGNATURE[mu] * chart.symbol(f"p{mu}") for mu in range(4)},
    )
    displayed = (
        sp.Integer(1) / r * exterior_derivative(theta0)
        - sp.Integer(1) / r * wedge(pdp, theta0)
    )
    corrected = (
        sp.Integer(1) / r * exterior_derivative(theta0)
        - sp.Integer(1) / r**3 * wedge(pdp, theta0)
    )
    report.info(
        "dtheta-displayed-expansion",
        "displayed d theta expansion "
        + ("matches" if (dtheta - displayed).normalized().is_zero() else "disagrees")
        + "; with 1/(p.p)^(3/2) on the cross term it "
        + ("matches" if (dtheta - corrected).normalized().is_zero() else "disagrees"),
        "frozen-degeneracy",
    )

    rng = random.Random(seed)
    for n in range(points):
        point, ext = timelike_point(rng)
        rank = two_form_rank(dtheta, point, ext)
        report.add(
            f"rank-{n}",
            "rank(d theta) = 6 at a rational point with p.p > 0",
            "frozen-degeneracy",
            rank == 6,
            sp.Integer(rank - 6),
            witness={k: str(v) for k, v in {**point, **ext}.items()},
        )

    fields = poincare_fields(chart)
    for name, X in fields.items():
        report.check(
            f"commutes-Delta-{name}",
            f"[{name}, Delta] = 0",
            "frozen-descent",
            lie_bracket(X, Delta).is_zero(),
        )
        report.check(
            f"commutes-Gamma-{name}",
            f"[{name}, Gamma] = 0",
            "frozen-descent",
            lie_bracket(X, Gamma).is_zero(),
        )
        report.check(
            f"preserves-theta-{name}",
            f"L_({name}) theta = 0",
            "frozen-descent",
            lie_derivative(X, theta).is_zero(),
        )

    spec = poincare_spec(SIGNATURE)
    closure = check_realization(Realization(spec, fields), "frozen")
    report.check(
        "closure-10x10",
        f"all {len(closure.checks)} bracket pairs close on the structure constants",
        "commutation-relations",
        closure.passed(),
    )
    for c in closure.failures():
        report.check(c.id, c.description, c.ref, False, sp.sympify(c.residual))

    # induced quotient bracket: each field is presymplectic-Hamiltonian
    # for its scale-invariant generating function theta(X), and the
    # brackets dtheta(X_i, X_j) reproduce the structure constants
    gen = {name: normalize(contract(X, theta), chart) for name, X in fields.items()}
    for name, X in fields.items():
        res = (contract(X, dtheta) + d_scalar(gen[name], chart)).normalized()
        report.check(
            f"hamiltonian-{name}",
            f"i_({name}) d theta = -d theta({name})",
            "frozen-descent",
            res.is_zero(),
        )
    for i, j in itertools.combinations(spec.names, 2):
        expected = sp.Integer(0)
        for k, c in spec.bracket_row(i, j).items():
            expected += c * gen[k]
        lhs = induced_bracket(theta, fields[i], fields[j])
        res = normalize(lhs - expected, chart)
        report.check(
            f"induced-{i}-{j}",
            f"d theta({i}, {j}) reproduces the structure constants on theta(X)",
            "frozen-descent",
            res == 0,
            res,
        )
    return report
