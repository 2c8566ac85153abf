"""Abstract Lie algebra specifications and realization checking.

A :class:`LieAlgebraSpec` stores rational structure constants and
machine-checks antisymmetry and the Jacobi identity at load time.  A
:class:`Realization` maps basis names to vector fields on a common
chart; :func:`check_realization` verifies every commutator against the
structure constants, exactly or modulo a supplied distribution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import sympy as sp

from .expr import Chart, is_zero, normalize, to_text
from .geometry import VectorField, lie_bracket, zero_vector_field
from .report import Report


class StructureConstantError(Exception):
    pass


class LieAlgebraSpec:
    """Basis names plus structure constants c^k_{ij} over Q."""

    def __init__(self, names, constants: dict):
        self.names = tuple(names)
        index = {n: i for i, n in enumerate(self.names)}
        if len(index) != len(self.names):
            raise StructureConstantError("duplicate basis names")
        self.constants: dict[tuple[str, str], dict[str, sp.Rational]] = {}
        for (i, j), row in constants.items():
            cleaned = {k: sp.Rational(v) for k, v in row.items() if v != 0}
            if cleaned:
                self.constants[(i, j)] = cleaned
        self._validate()

    @property
    def dim(self) -> int:
        return len(self.names)

    def c(self, i: str, j: str, k: str) -> sp.Rational:
        return self.constants.get((i, j), {}).get(k, sp.Rational(0))

    def bracket_row(self, i: str, j: str) -> dict[str, sp.Rational]:
        return dict(self.constants.get((i, j), {}))

    def _validate(self):
        for i, j in itertools.product(self.names, repeat=2):
            for k in self.names:
                if self.c(i, j, k) != -self.c(j, i, k):
                    raise StructureConstantError(
                        f"antisymmetry fails on ({i},{j})->{k}"
                    )
        for i, j, k in itertools.product(self.names, repeat=3):
            for n in self.names:
                total = sp.Rational(0)
                for m in self.names:
                    total += self.c(i, j, m) * self.c(m, k, n)
                    total += self.c(j, k, m) * self.c(m, i, n)
                    total += self.c(k, i, m) * self.c(m, j, n)
                if total != 0:
                    raise StructureConstantError(
                        f"Jacobi identity fails on ({i},{j},{k})->{n}"
                    )

    def change_basis(self, new_names, matrix) -> "LieAlgebraSpec":
        """New basis e'_i = Σ_a M[i][a] e_a (M exact, invertible)."""
        M = sp.Matrix([[sp.Rational(v) for v in row] for row in matrix])
        Minv = M.inv()
        n = self.dim
        constants: dict[tuple[str, str], dict[str, sp.Rational]] = {}
        for ii, jj in itertools.product(range(n), repeat=2):
            row: dict[str, sp.Rational] = {}
            for a, b in itertools.product(range(n), repeat=2):
                if M[ii, a] == 0 or M[jj, b] == 0:
                    continue
                for kk, cval in self.constants.get(
                    (self.names[a], self.names[b]), {}
                ).items():
                    c_idx = self.names.index(kk)
                    for new_k in range(n):
                        coeff = M[ii, a] * M[jj, b] * cval * Minv[c_idx, new_k]
                        if coeff != 0:
                            key = new_names[new_k]
                            row[key] = row.get(key, sp.Rational(0)) + coeff
            row = {k: v for k, v in row.items() if v != 0}
            if row:
                constants[(new_names[ii], new_names[jj])] = row
        return LieAlgebraSpec(new_names, constants)

    def serialize(self) -> str:
        """Structured text: basis line plus nonzero c^k_{ij} entries."""
        lines = ["basis: " + " ".join(self.names)]
        for (i, j) in sorted(self.constants):
            row = self.constants[(i, j)]
            terms = " ".join(f"{k}:{row[k]}" for k in sorted(row))
            lines.append(f"[{i},{j}] = {terms}")
        return "\n".join(lines)

    @classmethod
    def deserialize(cls, text: str) -> "LieAlgebraSpec":
        names: tuple[str, ...] = ()
        constants: dict = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("basis:"):
                names = tuple(line.split(":", 1)[1].split())
                continue
            head, rhs = line.split("=", 1)
            pair = head.strip().strip("[]")
            i, j = (p.strip() for p in pair.split(","))
            row = {}
            for term in rhs.split():
                k, v = term.split(":")
                row[k] = sp.Rational(v)
            constants[(i, j)] = row
        return cls(names, constants)


# ---------------------------------------------------------------------------
# the Poincare algebra


def _metric(signature) -> list[int]:
    sig = list(signature)
    if len(sig) != 4 or any(s not in (1, -1) for s in sig):
        raise ValueError("signature must be four entries of +/-1")
    return sig


_M_PAIRS = [(mu, nu) for mu in range(4) for nu in range(mu + 1, 4)]


def poincare_spec(signature=(-1, 1, 1, 1), convention: str = "paper") -> LieAlgebraSpec:
    """Structure constants of the Poincare algebra for a diagonal metric.

    Basis: P0..P3 and M01, M02, M03, M12, M13, M23 with M_{nu mu} read
    as -M_{mu nu}.  ``convention`` only affects the derived (J, K)
    relabeling in :func:`poincare_jk_spec`.
    """
    g = _metric(signature)
    names = [f"P{mu}" for mu in range(4)] + [f"M{mu}{nu}" for mu, nu in _M_PAIRS]

    def mname(mu, nu):
        if mu == nu:
            return None, 0
        if mu < nu:
            return f"M{mu}{nu}", 1
        return f"M{nu}{mu}", -1

    constants: dict[tuple[str, str], dict[str, sp.Rational]] = {}

    def add(i, j, k, v):
        if v == 0 or k is None:
            return
        row = constants.setdefault((i, j), {})
        row[k] = row.get(k, sp.Rational(0)) + v
        rowr = constants.setdefault((j, i), {})
        rowr[k] = rowr.get(k, sp.Rational(0)) - v

    for (mu, nu) in _M_PAIRS:
        M = f"M{mu}{nu}"
        for rho in range(4):
            # [M_{mu nu}, P_rho] = g_{nu rho} P_mu - g_{mu rho} P_nu
            if rho == nu:
                add(M, f"P{rho}", f"P{mu}", g[nu])
            if rho == mu:
                add(M, f"P{rho}", f"P{nu}", -g[mu])
    for (mu, nu), (rho, sigma) in itertools.combinations(_M_PAIRS, 2):
        A = f"M{mu}{nu}"
        B = f"M{rho}{sigma}"
        # [M_{mu nu}, M_{rho sigma}] =
        #   g_{nu rho} M_{mu sigma} - g_{mu rho} M_{nu sigma}
        # + g_{nu sigma} M_{rho mu} - g_{mu sigma} M_{rho nu}
        for (gidx, pair, sgn) in (
            ((nu, rho), (mu, sigma), 1),
            ((mu, rho), (nu, sigma), -1),
            ((nu, sigma), (rho, mu), 1),
            ((mu, sigma), (rho, nu), -1),
        ):
            if gidx[0] == gidx[1]:
                name, psign = mname(*pair)
                add(A, B, name, sgn * psign * g[gidx[0]])
    return LieAlgebraSpec(names, constants)


def poincare_jk_spec(
    signature=(-1, 1, 1, 1), convention: str = "paper"
) -> LieAlgebraSpec:
    """The Poincare algebra in the (P0, P1..P3, J1..J3, K1..K3) basis.

    J_l = (1/2) eps_{ljk} M_{jk} and K_j = M_{0j}; with ``convention
    = "paper"`` the signs are those under which the instant-form
    realization closes with [K1, K2] = J3.  ``convention = "opposite"``
    flips the boosts, giving [K1, K2] = -J3.
    """
    spec = poincare_spec(signature, convention)
    ksign = 1 if convention == "paper" else -1
    new_names = ["P0", "P1", "P2", "P3", "J1", "J2", "J3", "K1", "K2", "K3"]
    rows = []
    j_of = {"J1": "M23", "J2": "M13", "J3": "M12"}
    j_sign = {"J1": 1, "J2": -1, "J3": 1}  # J2 = M31 = -M13
    for name in new_names:
        row = [sp.Rational(0)] * spec.dim
        if name.startswith("P"):
            row[spec.names.index(name)] = sp.Rational(1)
        elif name.startswith("J"):
            row[spec.names.index(j_of[name])] = sp.Rational(j_sign[name])
        else:
            row[spec.names.index("M0" + name[1])] = sp.Rational(ksign)
        rows.append(row)
    return spec.change_basis(new_names, rows)


# ---------------------------------------------------------------------------
# realizations


@dataclass
class Realization:
    spec: LieAlgebraSpec
    fields: dict[str, VectorField]
    modulo: list[VectorField] = field(default_factory=list)

    def __post_init__(self):
        charts = {id(f.chart) for f in self.fields.values()}
        charts |= {id(f.chart) for f in self.modulo}
        if len(charts) > 1:
            raise ValueError("all realization fields must share one chart")
        missing = set(self.spec.names) - set(self.fields)
        if missing:
            raise ValueError(f"realization missing fields for {sorted(missing)}")

    @property
    def chart(self) -> Chart:
        return next(iter(self.fields.values())).chart


def residual_in_span(
    residual: VectorField, distribution: list[VectorField]
):
    """Exact function-field solve of  residual = Σ c_i D_i.

    Returns (True, coefficients) or (False, witness component expr).
    """
    chart = residual.chart
    k = len(distribution)
    n = chart.dim
    # augmented rows [D_1^a ... D_k^a | R^a]
    rows = [
        [normalize(D.components[a], chart) for D in distribution]
        + [normalize(residual.components[a], chart)]
        for a in range(n)
    ]
    pivots = []
    pivot_rows = set()
    for col in range(k):
        pivot = None
        for r in range(n):
            if r in pivot_rows:
                continue
            if not is_zero(rows[r][col], chart):
                pivot = r
                break
        if pivot is None:
            continue
        pivot_rows.add(pivot)
        pivots.append((col, pivot))
        pv = rows[pivot][col]
        rows[pivot] = [normalize(v / pv, chart) for v in rows[pivot]]
        for r in range(n):
            if r == pivot:
                continue
            factor = rows[r][col]
            if not is_zero(factor, chart):
                rows[r] = [
                    normalize(rv - factor * pv2, chart)
                    for rv, pv2 in zip(rows[r], rows[pivot])
                ]
    for r in range(n):
        if r in pivot_rows:
            continue
        if not is_zero(rows[r][k], chart):
            return False, rows[r][k]
    coeffs = [sp.Integer(0)] * k
    for col, r in pivots:
        coeffs[col] = rows[r][k]
    return True, coeffs


def check_realization(r: Realization, suite: str = "realization") -> Report:
    """Verify every bracket pair against the structure constants."""
    report = Report(suite)
    chart = r.chart
    names = r.spec.names
    for i, j in itertools.combinations(names, 2):
        expected = zero_vector_field(chart)
        for k, c in r.spec.bracket_row(i, j).items():
            expected = expected + c * r.fields[k]
        residual = lie_bracket(r.fields[i], r.fields[j]) - expected
        residual = residual.normalized()
        if residual.is_zero():
            report.check(f"[{i},{j}]", f"[{i},{j}] closes", "commutation-relations", True)
            continue
        if r.modulo:
            ok, value = residual_in_span(residual, r.modulo)
            if ok:
                coeff_text = ", ".join(to_text(c) for c in value)
                report.add(
                    f"[{i},{j}]",
                    f"[{i},{j}] closes modulo the distribution "
                    f"(coefficients: {coeff_text})",
                    "commutation-relations",
                    True,
                )
                continue
            report.check(
                f"[{i},{j}]",
                f"[{i},{j}] fails even modulo the distribution",
                "commutation-relations",
                False,
                value,
            )
            continue
        witness = next(
            c for c in residual.components if not is_zero(c, chart)
        )
        report.check(
            f"[{i},{j}]", f"[{i},{j}] fails to close", "commutation-relations",
            False, witness,
        )
    return report


# ---------------------------------------------------------------------------
# Lie-Poisson bracket on the dual and the elementary solution


def lie_poisson_bracket(u: dict, v: dict, spec: LieAlgebraSpec) -> dict:
    """Coefficient vector of {u^, v^} = [u, v]^ for linear functions."""
    for vec in (u, v):
        unknown = set(vec) - set(spec.names)
        if unknown:
            raise ValueError(f"unknown basis names {sorted(unknown)}")
    out: dict[str, sp.Rational] = {}
    for i, ui in u.items():
        for j, vj in v.items():
            for k, c in spec.bracket_row(i, j).items():
                out[k] = out.get(k, sp.Rational(0)) + sp.Rational(ui) * sp.Rational(vj) * c
    return {k: v for k, v in out.items() if v != 0}


def canonical_poisson_bracket(f, g, chart: Chart) -> sp.Expr:
    """{f, g} from omega = dp_mu ^ dx^mu on a (x0..x3, p0..p3) chart."""
    from .expr import diff

    total = sp.Integer(0)
    for mu in range(4):
        x = chart.symbol(f"x{mu}")
        p = chart.symbol(f"p{mu}")
        total += diff(f, p, chart) * diff(g, x, chart)
        total -= diff(f, x, chart) * diff(g, p, chart)
    return normalize(total, chart)


def elementary_generators(chart: Chart, signature=(-1, 1, 1, 1)) -> dict[str, sp.Expr]:
    """Dirac's elementary solution: P_mu = p_mu, M = x_mu p_nu - x_nu p_mu.

    The chart momenta are the covariant components p_mu; x_mu means
    g_{mu nu} x^nu.
    """
    g = _metric(signature)
    xs = [chart.symbol(f"x{mu}") for mu in range(4)]
    ps = [chart.symbol(f"p{mu}") for mu in range(4)]
    gens: dict[str, sp.Expr] = {}
    for mu in range(4):
        gens[f"P{mu}"] = ps[mu]
    for mu, nu in _M_PAIRS:
        gens[f"M{mu}{nu}"] = g[mu] * xs[mu] * ps[nu] - g[nu] * xs[nu] * ps[mu]
    return gens


def check_elementary_solution(signature=(-1, 1, 1, 1)) -> Report:
    """Poisson-map check: the canonical brackets of the elementary
    generating functions reproduce the structure constants."""
    report = Report("algebra")
    spec = poincare_spec(signature)
    chart = Chart(
        "tstar_r4_cov",
        [f"x{mu}" for mu in range(4)] + [f"p{mu}" for mu in range(4)],
        signature=signature,
    )
    gens = elementary_generators(chart, signature)
    for i, j in itertools.combinations(spec.names, 2):
        expected = sp.Integer(0)
        for k, c in spec.bracket_row(i, j).items():
            expected += c * gens[k]
        residual = normalize(
            canonical_poisson_bracket(gens[i], gens[j], chart) - expected, chart
        )
        report.check(
            f"{{{i},{j}}}",
            f"{{{i},{j}}} reproduces the structure constants",
            "lie-poisson-on-dual",
            residual == 0,
            residual,
        )
    return report


def algebra_suite(seed: int = 0) -> Report:
    """Structure-constant battery for the Poincare table."""
    report = Report("algebra", seed=seed)
    spec = poincare_spec((-1, 1, 1, 1))

    bad_anti = 0
    for i, j in itertools.product(spec.names, repeat=2):
        for k in spec.names:
            if spec.c(i, j, k) != -spec.c(j, i, k):
                bad_anti += 1
    report.check(
        "antisymmetry",
        f"c^k_(ij) = -c^k_(ji) over all {spec.dim ** 2 * spec.dim} entries",
        "commutation-relations",
        bad_anti == 0,
        sp.Integer(bad_anti),
    )
    bad_jacobi = 0
    triples = 0
    for i, j, k in itertools.product(spec.names, repeat=3):
        triples += 1
        for n in spec.names:
            total = sp.Rational(0)
            for m in spec.names:
                total += spec.c(i, j, m) * spec.c(m, k, n)
                total += spec.c(j, k, m) * spec.c(m, i, n)
                total += spec.c(k, i, m) * spec.c(m, j, n)
            if total != 0:
                bad_jacobi += 1
    report.check(
        "jacobi-identity",
        f"Jacobi identity of the table over all {triples} basis triples",
        "commutation-relations",
        bad_jacobi == 0,
        sp.Integer(bad_jacobi),
    )
    round_trip = LieAlgebraSpec.deserialize(spec.serialize())
    report.check(
        "serialize-roundtrip",
        "structure constants survive serialize/deserialize",
        "plumbing",
        round_trip.names == spec.names and round_trip.constants == spec.constants,
    )
    jk = poincare_jk_spec((-1, 1, 1, 1), "paper")
    report.info(
        "jk-basis",
        "(J, K) basis rows: [K1,K2] = "
        + str(jk.bracket_row("K1", "K2"))
        + ", [J1,J2] = "
        + str(jk.bracket_row("J1", "J2")),
        "commutation-relations",
    )
    report.extend(check_elementary_solution((-1, 1, 1, 1)))
    return report
