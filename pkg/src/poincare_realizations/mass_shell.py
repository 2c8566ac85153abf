"""Contact geometry and the Jacobi bracket on the mass shell.

The mass shell p.p = m^2 inside T*R^4 carries the contact form
theta_m = E dx^0 - p_j dx^j and a Jacobi pair (Lambda_m, Gamma_m)
obtained by restricting an ambient bivector and the evolution field.
Gamma_m is the "eleventh generator": it is central with respect to the
ten Poincare fields produced by the Hamiltonian map of the bracket.

Index convention: chart momenta are the contravariant components
p^1..p^3 with p^0 = E > 0 adjoined as a quadratic extension; the
metric is diag(+,-,-,-) so that p.p = m^2 holds with real momenta.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import sympy as sp

from .algebra import LieAlgebraSpec, Realization, check_realization, poincare_spec
from .expr import Chart, diff, eval_rational, is_zero, normalize
from .geometry import (
    DifferentialForm,
    MultivectorField,
    VectorField,
    contract,
    exterior_derivative,
    one_form,
    restrict_to_level_set,
    schouten_bracket,
    wedge,
    wedge_power,
)
from .report import Report

SIGNATURE = (1, -1, -1, -1)


def ambient_chart() -> Chart:
    """T*R^4 with contravariant momentum coordinates p^0..p^3."""
    return Chart(
        "tstar_r4",
        [f"x{mu}" for mu in range(4)] + [f"p{mu}" for mu in range(4)],
        signature=SIGNATURE,
    )


def mass_shell_chart(m) -> Chart:
    m = sp.Rational(m)
    if m <= 0:
        raise ValueError("mass must be positive")
    return Chart(
        f"massshell_m{m}",
        [f"x{mu}" for mu in range(4)] + ["p1", "p2", "p3"],
        extensions=[("E", m**2 + sp.sympify("p1**2 + p2**2 + p3**2"))],
        signature=SIGNATURE,
    )


def momentum_upper(chart: Chart, mu: int) -> sp.Expr:
    """p^mu on the mass-shell chart (p^0 = E)."""
    return chart.symbol("E") if mu == 0 else chart.symbol(f"p{mu}")


def momentum_lower(chart: Chart, mu: int) -> sp.Expr:
    return SIGNATURE[mu] * momentum_upper(chart, mu)


def position_lower(chart: Chart, mu: int) -> sp.Expr:
    return SIGNATURE[mu] * chart.symbol(f"x{mu}")


def _shell_constraint(amb: Chart, m) -> sp.Expr:
    ps = [amb.symbol(f"p{mu}") for mu in range(4)]
    return sum(SIGNATURE[mu] * ps[mu] ** 2 for mu in range(4)) - sp.Rational(m) ** 2


def theta_free(amb: Chart) -> DifferentialForm:
    """theta_0 = p_mu dx^mu on the ambient chart."""
    return one_form(
        amb,
        {f"x{mu}": SIGNATURE[mu] * amb.symbol(f"p{mu}") for mu in range(4)},
    )


def on_shell_point(m, rng: random.Random) -> tuple[dict, dict]:
    """A rational point of the shell: q = m^2 + |p|^2 a perfect square."""
    m = sp.Rational(m)
    while True:
        p = [sp.Integer(rng.randint(-6, 6)) for _ in range(3)]
        q = m**2 + sum(v**2 for v in p)
        E = sp.sqrt(q)
        if not E.is_Rational or all(v == 0 for v in p):
            continue
        point = {f"x{mu}": sp.Integer(rng.randint(-3, 3)) for mu in range(4)}
        point.update({f"p{j + 1}": p[j] for j in range(3)})
        return point, {"E": E}


def build_mass_shell(m):
    """Mass-shell chart, pulled-back contact form, and the volume form.

    Returns (chart, theta_m, volume) where volume = theta_m ^ (d theta_m)^3
    is a 7-form with a single coefficient, certified nonzero.
    """
    m = sp.Rational(m)
    if m <= 0:
        raise ValueError("mass must be positive")
    amb = ambient_chart()
    chart = mass_shell_chart(m)
    theta = restrict_to_level_set(theta_free(amb), _shell_constraint(amb, m), "p0", chart)
    volume = wedge(theta, wedge_power(exterior_derivative(theta), 3))
    coeff = normalize(volume.coefficient(tuple(range(7))), chart)
    if coeff == 0:
        raise AssertionError("contact volume coefficient vanished")
    return chart, theta, volume


@dataclass
class JacobiPair:
    chart: Chart
    mass: sp.Rational
    bivector: MultivectorField
    reeb: VectorField
    contact_form: DifferentialForm
    volume: DifferentialForm

    def verify_defining_contractions(self) -> Report:
        report = Report("jacobi")
        dth3 = wedge_power(exterior_derivative(self.contact_form), 3)
        res1 = contract(self.reeb, self.volume) - dth3
        report.check(
            "i_Gamma-volume",
            "i_Gamma (theta ^ (d theta)^3) = (d theta)^3",
            "jacobi-pair-contractions",
            res1.is_zero(),
        )
        res2 = contract(self.bivector, self.volume) - 3 * wedge(
            self.contact_form, wedge_power(exterior_derivative(self.contact_form), 2)
        )
        report.check(
            "i_Lambda-volume",
            "i_Lambda (theta ^ (d theta)^3) = 3 theta ^ (d theta)^2",
            "jacobi-pair-contractions",
            res2.is_zero(),
        )
        return report


def ambient_jacobi_fields(amb: Chart) -> tuple[MultivectorField, VectorField]:
    """The off-shell bivector Lambda and evolution field Gamma."""
    ps = [amb.symbol(f"p{mu}") for mu in range(4)]
    pp = sum(SIGNATURE[mu] * ps[mu] ** 2 for mu in range(4))
    Lam = MultivectorField(amb, 2)
    for mu in range(4):
        for nu in range(4):
            coeff = (sp.Integer(SIGNATURE[mu]) if mu == nu else sp.Integer(0)) - ps[
                mu
            ] * ps[nu] / pp
            if coeff != 0:
                Lam._add_term((4 + mu, nu), coeff)
    Gam = VectorField(
        amb, tuple(ps[mu] / pp for mu in range(4)) + (sp.Integer(0),) * 4
    )
    return Lam, Gam


def build_jacobi_pair(m) -> JacobiPair:
    """Restrict (Lambda, Gamma) to the shell and certify the pair."""
    m = sp.Rational(m)
    chart, theta, volume = build_mass_shell(m)
    amb = ambient_chart()
    constraint = _shell_constraint(amb, m)
    Lam_amb, Gam_amb = ambient_jacobi_fields(amb)
    Lam = restrict_to_level_set(Lam_amb, constraint, "p0", chart)
    Gam = restrict_to_level_set(Gam_amb, constraint, "p0", chart)
    pair = JacobiPair(chart, m, Lam, Gam, theta, volume)
    rep = pair.verify_defining_contractions()
    if not rep.passed():
        raise AssertionError("Jacobi pair failed its defining contractions")
    return pair


# ---------------------------------------------------------------------------
# the bracket and its Hamiltonian operators


def bivector_bracket(Lam: MultivectorField, f, g) -> sp.Expr:
    """Lambda(df, dg)."""
    chart = Lam.chart
    total = sp.Integer(0)
    for (i, j), c in Lam.coeffs.items():
        total += c * (
            diff(f, chart.coordinates[i], chart) * diff(g, chart.coordinates[j], chart)
            - diff(f, chart.coordinates[j], chart)
            * diff(g, chart.coordinates[i], chart)
        )
    return normalize(total, chart)


def jacobi_bracket(f, g, pair: JacobiPair) -> sp.Expr:
    """[f, g]_m = Lambda(df, dg) + f Gamma(g) - g Gamma(f)."""
    chart = pair.chart
    return normalize(
        bivector_bracket(pair.bivector, f, g)
        + f * pair.reeb.apply(g)
        - g * pair.reeb.apply(f),
        chart,
    )


def jacobi_bracket_via_volume(f, g, pair: JacobiPair) -> sp.Expr:
    """Independent route: solve [f,g] from the volume-form definition
    [f,g] vol = (f dg - g df) ^ (d theta)^3 + 3 df ^ dg ^ theta ^ (d theta)^2.

    The cross-term constant depends on how wedge powers are normalized;
    with the plain combinatorial wedge used here it must equal the
    constant in the defining contraction i_Lambda vol = 3 theta ^
    (d theta)^2, i.e. 3, so that the cross term contributes exactly
    Lambda(df, dg)."""
    from .geometry import d_scalar

    chart = pair.chart
    dth = exterior_derivative(pair.contact_form)
    df = d_scalar(f, chart)
    dg = d_scalar(g, chart)
    rhs = wedge(sp.sympify(f) * dg - sp.sympify(g) * df, wedge_power(dth, 3)) + 3 * wedge(
        wedge(df, dg), wedge(pair.contact_form, wedge_power(dth, 2))
    )
    top = tuple(range(7))
    return normalize(
        rhs.coefficient(top) / pair.volume.coefficient(top), chart
    )


def hamiltonian_field(f, pair: JacobiPair):
    """X_f = Lambda(df, .) + f Gamma and the first-order operator
    X~_f = X_f - Gamma(f) (vector part plus scalar part)."""
    chart = pair.chart
    comps = [sp.Integer(0)] * chart.dim
    for (i, j), c in pair.bivector.coeffs.items():
        dfj = diff(f, chart.coordinates[j], chart)
        dfi = diff(f, chart.coordinates[i], chart)
        if dfi != 0:
            comps[j] += c * dfi
        if dfj != 0:
            comps[i] -= c * dfj
    X = VectorField(chart, tuple(comps)) + sp.sympify(f) * pair.reeb
    scalar = normalize(-pair.reeb.apply(f), chart)
    return X.normalized(), (X.normalized(), scalar)


def poincare_generating_functions(chart: Chart) -> dict[str, sp.Expr]:
    """P_mu = p_mu and M_{mu nu} = x_mu p_nu - x_nu p_mu on the shell."""
    gens: dict[str, sp.Expr] = {}
    for mu in range(4):
        gens[f"P{mu}"] = momentum_lower(chart, mu)
    for mu in range(4):
        for nu in range(mu + 1, 4):
            gens[f"M{mu}{nu}"] = normalize(
                position_lower(chart, mu) * momentum_lower(chart, nu)
                - position_lower(chart, nu) * momentum_lower(chart, mu),
                chart,
            )
    return gens


def expected_poincare_fields(pair: JacobiPair) -> dict[str, VectorField]:
    """The displayed fields: Y_mu = d/dx^mu and
    X_{mu nu} = x_mu d/dx^nu - x_nu d/dx^mu + (momentum part)."""
    chart = pair.chart
    fields: dict[str, VectorField] = {}
    for mu in range(4):
        comps = [sp.Integer(0)] * chart.dim
        comps[mu] = sp.Integer(1)
        fields[f"P{mu}"] = VectorField(chart, tuple(comps))
    for mu in range(4):
        for nu in range(mu + 1, 4):
            comps = [sp.Integer(0)] * chart.dim
            comps[nu] += position_lower(chart, mu)
            comps[mu] -= position_lower(chart, nu)
            # momentum part restricted to the spatial coordinates p^1..p^3
            for j in range(1, 4):
                if j == nu:
                    comps[4 + j - 1] += momentum_lower(chart, mu)
                if j == mu:
                    comps[4 + j - 1] -= momentum_lower(chart, nu)
            fields[f"M{mu}{nu}"] = VectorField(
                chart, tuple(normalize(c, chart) for c in comps)
            )
    return fields


# ---------------------------------------------------------------------------
# suites


def _random_poly(chart: Chart, rng: random.Random, terms=2, degree=2) -> sp.Expr:
    syms = list(chart.coordinates)
    total = sp.Integer(0)
    for _ in range(terms):
        term = sp.Integer(rng.randint(1, 3))
        for _ in range(rng.randint(0, degree)):
            term *= rng.choice(syms)
        total += term
    return total


def bracket_table_check(pair: JacobiPair) -> Report:
    """The displayed bracket table on coordinate functions."""
    chart = pair.chart
    m2 = pair.mass**2
    report = Report("jacobi")
    xs = [chart.symbol(f"x{mu}") for mu in range(4)]
    for rho, sigma in itertools.combinations(range(4), 2):
        lhs = jacobi_bracket(xs[rho], xs[sigma], pair)
        rhs = normalize(
            (xs[rho] * momentum_upper(chart, sigma) - xs[sigma] * momentum_upper(chart, rho))
            / m2,
            chart,
        )
        report.check(
            f"[x{rho},x{sigma}]",
            f"[x^{rho}, x^{sigma}] = (x^{rho} p^{sigma} - x^{sigma} p^{rho})/m^2",
            "jacobi-bracket-table",
            is_zero(lhs - rhs, chart),
            normalize(lhs - rhs, chart),
        )
    for rho in range(4):
        for sigma in range(4):
            lhs = jacobi_bracket(momentum_upper(chart, rho), xs[sigma], pair)
            rhs = sp.Integer(SIGNATURE[rho]) if rho == sigma else sp.Integer(0)
            report.check(
                f"[p{rho},x{sigma}]",
                f"[p^{rho}, x^{sigma}] = g^({rho}{sigma})",
                "jacobi-bracket-table",
                is_zero(lhs - rhs, chart),
                normalize(lhs - rhs, chart),
            )
    for rho, sigma in itertools.combinations(range(4), 2):
        lhs = jacobi_bracket(
            momentum_upper(chart, rho), momentum_upper(chart, sigma), pair
        )
        report.check(
            f"[p{rho},p{sigma}]",
            f"[p^{rho}, p^{sigma}] = 0",
            "jacobi-bracket-table",
            is_zero(lhs, chart),
            lhs,
        )
    return report


def jacobi_identity_suite(pair: JacobiPair, seed: int = 0, triples: int = 20) -> Report:
    """Schouten identities, Jacobi identity, Leibniz anomaly, and the
    Poisson reduction on Gamma-constants."""
    chart = pair.chart
    report = Report("jacobi", seed=seed)
    rng = random.Random(seed)

    res_a = schouten_bracket(pair.bivector, pair.bivector) - 2 * wedge(
        pair.reeb, pair.bivector
    )
    report.check(
        "schouten-LL",
        "[Lambda, Lambda] = 2 Gamma ^ Lambda",
        "jacobi-identity-mechanism",
        res_a.is_zero(),
    )
    res_b = schouten_bracket(pair.reeb, pair.bivector)
    report.check(
        "schouten-GL",
        "[Gamma, Lambda] = 0",
        "jacobi-identity-mechanism",
        res_b.is_zero(),
    )

    for n in range(triples):
        f = _random_poly(chart, rng)
        g = _random_poly(chart, rng)
        h = _random_poly(chart, rng)
        jac = normalize(
            jacobi_bracket(f, jacobi_bracket(g, h, pair), pair)
            + jacobi_bracket(g, jacobi_bracket(h, f, pair), pair)
            + jacobi_bracket(h, jacobi_bracket(f, g, pair), pair),
            chart,
        )
        report.check(
            f"jacobi-identity-{n}",
            "Jacobi identity on a random polynomial triple",
            "jacobi-identity-mechanism",
            jac == 0,
            jac,
        )
    for n in range(triples):
        f = _random_poly(chart, rng)
        g = _random_poly(chart, rng)
        h = _random_poly(chart, rng)
        anomaly = normalize(
            jacobi_bracket(f, g * h, pair)
            - jacobi_bracket(f, g, pair) * h
            - g * jacobi_bracket(f, h, pair)
            + jacobi_bracket(f, sp.Integer(1), pair) * g * h,
            chart,
        )
        report.check(
            f"leibniz-anomaly-{n}",
            "[f, gh] = [f, g]h + g[f, h] - [f, 1]gh",
            "leibniz-anomaly",
            anomaly == 0,
            anomaly,
        )

    # on Gamma-constants the bracket reduces to the bivector bracket and
    # the generating functions reproduce the structure constants
    gens = poincare_generating_functions(chart)
    spec = poincare_spec(SIGNATURE)
    for name, gen in gens.items():
        res = pair.reeb.apply(gen)
        report.check(
            f"gamma-constant-{name}",
            f"L_Gamma {name} = 0",
            "constants-of-motion",
            is_zero(res, chart),
            res,
        )
    for i, j in itertools.combinations(spec.names, 2):
        expected = sp.Integer(0)
        for k, c in spec.bracket_row(i, j).items():
            expected += c * gens[k]
        lhs = jacobi_bracket(gens[i], gens[j], pair)
        res = normalize(lhs - expected, chart)
        report.check(
            f"poisson-{i}-{j}",
            f"[{i}, {j}]_m reproduces the structure constants",
            "poisson-reduction-on-constants",
            res == 0,
            res,
        )
    return report


def cross_check_volume_definition(pair: JacobiPair, seed: int = 0, pairs: int = 5) -> Report:
    """The (Lambda, Gamma) bracket agrees with the volume-form route."""
    report = Report("jacobi", seed=seed)
    rng = random.Random(seed)
    chart = pair.chart
    for n in range(pairs):
        f = _random_poly(chart, rng)
        g = _random_poly(chart, rng)
        res = normalize(
            jacobi_bracket(f, g, pair) - jacobi_bracket_via_volume(f, g, pair), chart
        )
        report.check(
            f"volume-route-{n}",
            "pair route and volume route agree on a random pair",
            "jacobi-bracket-definition",
            res == 0,
            res,
        )
    return report


def eleventh_generator_check(pair: JacobiPair) -> Report:
    """11-element closure: Poincare sub-table plus central Gamma_m."""
    chart = pair.chart
    report = Report("jacobi")
    gens = poincare_generating_functions(chart)
    fields: dict[str, VectorField] = {}
    for name, gen in gens.items():
        X, _ = hamiltonian_field(gen, pair)
        fields[name] = X

    # the Hamiltonian fields match the displayed X_{mu nu}, Y_mu
    expected = expected_poincare_fields(pair)
    for name in gens:
        res = (fields[name] - expected[name]).normalized()
        report.check(
            f"displayed-{name}",
            f"X_({name}) matches the displayed vector field",
            "eleventh-generator",
            res.is_zero(),
        )

    base_spec = poincare_spec(SIGNATURE)
    names = list(base_spec.names) + ["Z"]
    constants = {
        pairkey: dict(row) for pairkey, row in base_spec.constants.items()
    }
    spec11 = LieAlgebraSpec(names, constants)  # Z central: no new entries
    fields["Z"] = pair.reeb
    closure = check_realization(Realization(spec11, fields), "jacobi")
    report.check(
        "closure-11x11",
        f"all {len(closure.checks)} bracket pairs of the 11-generator table close",
        "eleventh-generator",
        closure.passed(),
    )
    for c in closure.failures():
        report.check(c.id, c.description, c.ref, False, sp.sympify(c.residual))
    return report


def mass_shell_suite(m, seed: int = 0, triples: int = 20) -> Report:
    """Full verification battery for one mass."""
    report = Report("jacobi", seed=seed)
    m = sp.Rational(m)
    pair = build_jacobi_pair(m)
    chart, theta, volume = pair.chart, pair.contact_form, pair.volume
    rng = random.Random(seed)
    point, ext = on_shell_point(m, rng)
    coeff = volume.coefficient(tuple(range(7)))
    value = eval_rational(coeff, point, chart, ext)
    report.add(
        "contact-volume",
        "theta ^ (d theta)^3 has a nonzero coefficient (rational witness)",
        "contact-structure",
        value != 0 and normalize(coeff, chart) != 0,
        sp.sympify(value),
        witness={k: str(v) for k, v in {**point, **ext}.items()},
    )
    report.extend(pair.verify_defining_contractions())
    # Reeb property
    report.check(
        "theta(Gamma)",
        "theta(Gamma_m) = 1",
        "reeb-field",
        is_zero(contract(pair.reeb, theta) - 1, chart),
    )
    report.check(
        "i_Gamma-dtheta",
        "i_Gamma d theta = 0",
        "reeb-field",
        contract(pair.reeb, exterior_derivative(theta)).is_zero(),
    )
    report.extend(bracket_table_check(pair))
    report.extend(jacobi_identity_suite(pair, seed=seed, triples=triples))
    report.extend(cross_check_volume_definition(pair, seed=seed))
    report.extend(eleventh_generator_check(pair))
    return report
