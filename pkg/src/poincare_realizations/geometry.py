"""Coordinate tensor calculus over a chart.

Vector fields, differential forms and multivector fields store one
exact symbolic component per (increasing) coordinate index tuple.
Everything is a pure function of immutable values; all identities are
decided by the exact zero test of :mod:`.expr`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import sympy as sp

from .expr import Chart, NormalizationError, diff, is_zero, normalize


class ChartMismatch(Exception):
    pass


class DegreeError(Exception):
    pass


def _require_same_chart(a, b):
    if a.chart is not b.chart:
        raise ChartMismatch(
            f"objects live on different charts: {a.chart.name!r} vs {b.chart.name!r}"
        )


def _sort_with_sign(indices: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``indices``; 0 on repeats."""
    if len(set(indices)) != len(indices):
        return 0, ()
    order = sorted(range(len(indices)), key=lambda i: indices[i])
    sign = 1
    perm = list(order)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign, tuple(sorted(indices))


@dataclass(frozen=True)
class VectorField:
    chart: Chart
    components: tuple[sp.Expr, ...]

    def __post_init__(self):
        if len(self.components) != self.chart.dim:
            raise ValueError("component count must equal chart dimension")

    def __add__(self, other):
        _require_same_chart(self, other)
        return VectorField(
            self.chart,
            tuple(a + b for a, b in zip(self.components, other.components)),
        )

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        return VectorField(
            self.chart, tuple(sp.sympify(scalar) * c for c in self.components)
        )

    def __neg__(self):
        return (-1) * self

    def apply(self, f) -> sp.Expr:
        """Directional derivative X(f)."""
        total = sp.Integer(0)
        for c, x in zip(self.components, self.chart.coordinates):
            total += c * diff(f, x, self.chart)
        return normalize(total, self.chart)

    def is_zero(self) -> bool:
        return all(is_zero(c, self.chart) for c in self.components)

    def normalized(self) -> "VectorField":
        return VectorField(
            self.chart, tuple(normalize(c, self.chart) for c in self.components)
        )


def zero_vector_field(chart: Chart) -> VectorField:
    return VectorField(chart, (sp.Integer(0),) * chart.dim)


def coordinate_field(chart: Chart, name: str) -> VectorField:
    """The coordinate direction ∂/∂<name>."""
    comps = [sp.Integer(0)] * chart.dim
    comps[chart.coordinate_index(name)] = sp.Integer(1)
    return VectorField(chart, tuple(comps))


def vector_field(chart: Chart, mapping: dict) -> VectorField:
    """Build a field from a {coordinate name: component} mapping."""
    comps = [sp.Integer(0)] * chart.dim
    for name, c in mapping.items():
        comps[chart.coordinate_index(name)] = sp.sympify(c)
    return VectorField(chart, tuple(comps))


class _Graded:
    """Shared container for forms and multivectors (increasing tuples)."""

    kind = "graded"

    def __init__(self, chart: Chart, degree: int, coeffs: dict | None = None):
        if degree < 0 or degree > chart.dim:
            raise DegreeError(f"degree {degree} out of range for chart {chart.name!r}")
        self.chart = chart
        self.degree = degree
        self.coeffs: dict[tuple[int, ...], sp.Expr] = {}
        for idx, c in (coeffs or {}).items():
            self._add_term(tuple(idx), sp.sympify(c))

    def _add_term(self, idx: tuple[int, ...], c):
        if len(idx) != self.degree:
            raise DegreeError("index tuple length must equal degree")
        sign, sidx = _sort_with_sign(idx)
        if sign == 0 or c == 0:
            return
        self.coeffs[sidx] = self.coeffs.get(sidx, sp.Integer(0)) + sign * c

    def coefficient(self, idx: tuple[int, ...]) -> sp.Expr:
        sign, sidx = _sort_with_sign(tuple(idx))
        if sign == 0:
            return sp.Integer(0)
        return sign * self.coeffs.get(sidx, sp.Integer(0))

    def __add__(self, other):
        _require_same_chart(self, other)
        if self.degree != other.degree or type(self) is not type(other):
            raise DegreeError("can only add objects of the same kind and degree")
        out = type(self)(self.chart, self.degree)
        for idx, c in self.coeffs.items():
            out._add_term(idx, c)
        for idx, c in other.coeffs.items():
            out._add_term(idx, c)
        return out

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        out = type(self)(self.chart, self.degree)
        s = sp.sympify(scalar)
        for idx, c in self.coeffs.items():
            out._add_term(idx, s * c)
        return out

    def __neg__(self):
        return (-1) * self

    def is_zero(self) -> bool:
        return all(is_zero(c, self.chart) for c in self.coeffs.values())

    def normalized(self):
        out = type(self)(self.chart, self.degree)
        for idx, c in self.coeffs.items():
            c = normalize(c, self.chart)
            if c != 0:
                out.coeffs[idx] = c
        return out

    def __repr__(self):
        return f"{type(self).__name__}(degree={self.degree}, terms={len(self.coeffs)})"


class DifferentialForm(_Graded):
    kind = "form"


class MultivectorField(_Graded):
    kind = "multivector"


def form_from_dict(chart: Chart, degree: int, coeffs: dict) -> DifferentialForm:
    """Coefficients keyed by coordinate-name tuples (any order, signed)."""
    out = DifferentialForm(chart, degree)
    for names, c in coeffs.items():
        idx = tuple(chart.coordinate_index(n) for n in names)
        out._add_term(idx, sp.sympify(c))
    return out


def one_form(chart: Chart, mapping: dict) -> DifferentialForm:
    return form_from_dict(chart, 1, {(k,): v for k, v in mapping.items()})


def multivector_from_dict(chart: Chart, degree: int, coeffs: dict) -> MultivectorField:
    out = MultivectorField(chart, degree)
    for names, c in coeffs.items():
        idx = tuple(chart.coordinate_index(n) for n in names)
        out._add_term(idx, sp.sympify(c))
    return out


def vector_as_multivector(X: VectorField) -> MultivectorField:
    out = MultivectorField(X.chart, 1)
    for i, c in enumerate(X.components):
        if c != 0:
            out._add_term((i,), c)
    return out


def multivector_as_vector(A: MultivectorField) -> VectorField:
    if A.degree != 1:
        raise DegreeError("only degree-1 multivectors convert to vector fields")
    comps = [sp.Integer(0)] * A.chart.dim
    for (i,), c in A.coeffs.items():
        comps[i] = c
    return VectorField(A.chart, tuple(comps))


# ---------------------------------------------------------------------------
# exterior calculus


def d_scalar(f, chart: Chart) -> DifferentialForm:
    """Differential of a scalar."""
    out = DifferentialForm(chart, 1)
    for i, x in enumerate(chart.coordinates):
        out._add_term((i,), diff(f, x, chart))
    return out


def exterior_derivative(alpha: DifferentialForm) -> DifferentialForm:
    if alpha.degree >= alpha.chart.dim:
        raise DegreeError("cannot take d of a top-degree form")
    chart = alpha.chart
    out = DifferentialForm(chart, alpha.degree + 1)
    for idx, c in alpha.coeffs.items():
        for j, x in enumerate(chart.coordinates):
            dc = diff(c, x, chart)
            if dc != 0:
                out._add_term((j,) + idx, dc)
    return out


def wedge(a, b):
    """Graded-commutative product of two forms or two multivectors."""
    _require_same_chart(a, b)
    if isinstance(a, VectorField):
        a = vector_as_multivector(a)
    if isinstance(b, VectorField):
        b = vector_as_multivector(b)
    if type(a) is not type(b):
        raise DegreeError("wedge requires two forms or two multivectors")
    if a.degree + b.degree > a.chart.dim:
        raise DegreeError("wedge degree exceeds chart dimension")
    out = type(a)(a.chart, a.degree + b.degree)
    for ia, ca in a.coeffs.items():
        for ib, cb in b.coeffs.items():
            out._add_term(ia + ib, ca * cb)
    return out


def wedge_power(a, n: int):
    if n < 1:
        raise DegreeError("wedge power needs n >= 1")
    out = a
    for _ in range(n - 1):
        out = wedge(out, a)
    return out


def contract(V, alpha: DifferentialForm):
    """Interior product of a (multi)vector with a form.

    For a vector field ``X``: ``i_X``.  For a degree-p multivector the
    p slots are filled from the left, so ``i_{X∧Y} = i_Y ∘ i_X`` and
    ``contract(Λ, df∧dg) = Λ(df, dg)`` for a bivector.  A full
    contraction (equal degrees) returns a scalar.
    """
    if isinstance(V, VectorField):
        V = vector_as_multivector(V)
    _require_same_chart(V, alpha)
    if V.degree > alpha.degree:
        raise DegreeError("multivector degree exceeds form degree")
    chart = alpha.chart
    out_degree = alpha.degree - V.degree
    out = DifferentialForm(chart, out_degree)
    for iv, cv in V.coeffs.items():
        for ia, ca in alpha.coeffs.items():
            rest = tuple(i for i in ia if i not in iv)
            if len(rest) != out_degree:
                continue
            sign, _ = _sort_with_sign(iv + rest)
            if sign == 0:
                continue
            # alpha coefficient on (iv + rest) ordering
            asign, _ = _sort_with_sign(ia)  # ia already increasing: asign == 1
            psign, _ = _sort_with_sign(iv + rest)
            out._add_term(rest, psign * cv * ca)
    if out_degree == 0:
        return normalize(out.coeffs.get((), sp.Integer(0)), chart)
    return out


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    _require_same_chart(X, Y)
    chart = X.chart
    comps = []
    for i, x in enumerate(chart.coordinates):
        comps.append(X.apply(Y.components[i]) - Y.apply(X.components[i]))
    return VectorField(chart, tuple(comps)).normalized()


def lie_derivative(X: VectorField, T):
    """Lie derivative along X of a scalar or a differential form.

    Forms use the Cartan formula ``i_X d + d i_X``.
    """
    if isinstance(T, DifferentialForm):
        _require_same_chart(X, T)
        if T.degree == 0:
            raise DegreeError("wrap scalars as plain expressions, not 0-forms")
        part1 = contract(X, exterior_derivative(T))
        inner = contract(X, T)
        if T.degree == 1:
            part2 = d_scalar(inner, X.chart)
        else:
            part2 = exterior_derivative(inner)
        return (part1 + part2).normalized()
    return X.apply(T)


# ---------------------------------------------------------------------------
# Schouten bracket (degrees <= 2)


def _lie_derivative_bivector(X: VectorField, B: MultivectorField) -> MultivectorField:
    chart = X.chart
    out = MultivectorField(chart, 2)
    for (i, j), c in B.coeffs.items():
        out._add_term((i, j), X.apply(c))
    # L_X(c ∂_a∧∂_b) picks up c[X,∂_a]∧∂_b + c ∂_a∧[X,∂_b] with
    # [X, ∂_a] = -(∂_a X^i) ∂_i
    for (a, b), c in B.coeffs.items():
        xa = chart.coordinates[a]
        xb = chart.coordinates[b]
        for i in range(chart.dim):
            d1 = diff(X.components[i], xa, chart)
            if d1 != 0:
                out._add_term((i, b), -c * d1)
            d2 = diff(X.components[i], xb, chart)
            if d2 != 0:
                out._add_term((a, i), -c * d2)
    return out


def schouten_bracket(A, B) -> MultivectorField:
    """Schouten–Nijenhuis bracket for degrees up to 2.

    Conventions are fixed so that the bracket restricts to the Lie
    bracket on vector fields, ``[X, B] = L_X B`` for a bivector ``B``,
    and on decomposables
    ``[X1∧X2, Y1∧Y2] = Σ_{a,b} (-1)^{a+b+1} [Xa, Yb] ∧ X_{3-a} ∧ Y_{3-b}``
    (the convention in which a Jacobi pair satisfies [Λ, Λ] = 2 Γ∧Λ).
    """
    if isinstance(A, VectorField):
        A = vector_as_multivector(A)
    if isinstance(B, VectorField):
        B = vector_as_multivector(B)
    _require_same_chart(A, B)
    da, db = A.degree, B.degree
    if da > 2 or db > 2:
        raise DegreeError("Schouten bracket implemented only for degrees <= 2")
    chart = A.chart
    if da == 1 and db == 1:
        return vector_as_multivector(
            lie_bracket(multivector_as_vector(A), multivector_as_vector(B))
        )
    if da == 1 and db == 2:
        return _lie_derivative_bivector(multivector_as_vector(A), B).normalized()
    if da == 2 and db == 1:
        return (-1) * _lie_derivative_bivector(multivector_as_vector(B), A).normalized()
    # bivector-bivector -> trivector
    out = MultivectorField(chart, 3)
    dim = chart.dim
    a = {}
    b = {}
    for i in range(dim):
        for j in range(dim):
            a[(i, j)] = A.coefficient((i, j))
            b[(i, j)] = B.coefficient((i, j))
    for i, j, k in itertools.combinations(range(dim), 3):
        total = sp.Integer(0)
        for l, x in enumerate(chart.coordinates):
            for (p, q, r) in ((i, j, k), (j, k, i), (k, i, j)):
                if a[(l, p)] != 0:
                    total += a[(l, p)] * diff(b[(q, r)], x, chart)
                if b[(l, p)] != 0:
                    total += b[(l, p)] * diff(a[(q, r)], x, chart)
        total = normalize(total, chart)
        if total != 0:
            out._add_term((i, j, k), total)
    return out


def schouten_decomposable_oracle(
    X1: VectorField, X2: VectorField, Y1: VectorField, Y2: VectorField
) -> MultivectorField:
    """Brute-force expansion of [X1∧X2, Y1∧Y2] into Lie brackets."""
    terms = []
    pairs = {1: (X1, X2), 2: (Y1, Y2)}
    for a in (1, 2):
        for b in (1, 2):
            sign = (-1) ** (a + b + 1)
            Xa = (X1, X2)[a - 1]
            Yb = (Y1, Y2)[b - 1]
            Xo = (X1, X2)[2 - a]
            Yo = (Y1, Y2)[2 - b]
            term = wedge(wedge(vector_as_multivector(lie_bracket(Xa, Yb)),
                               vector_as_multivector(Xo)),
                         vector_as_multivector(Yo))
            terms.append(sign * term)
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return out


# ---------------------------------------------------------------------------
# (1,1)-tensors


@dataclass(frozen=True)
class Tensor11:
    """Square matrix of components; row = output direction, column = input."""

    chart: Chart
    matrix: tuple[tuple[sp.Expr, ...], ...]

    def __post_init__(self):
        n = self.chart.dim
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise ValueError("matrix dimensions must match the chart")

    def apply(self, X: VectorField) -> VectorField:
        _require_same_chart(self, X)
        n = self.chart.dim
        comps = []
        for i in range(n):
            comps.append(
                normalize(
                    sum(self.matrix[i][j] * X.components[j] for j in range(n)),
                    self.chart,
                )
            )
        return VectorField(self.chart, tuple(comps))

    def compose(self, other: "Tensor11") -> "Tensor11":
        _require_same_chart(self, other)
        n = self.chart.dim
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                row.append(
                    normalize(
                        sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)),
                        self.chart,
                    )
                )
            rows.append(tuple(row))
        return Tensor11(self.chart, tuple(rows))

    def __sub__(self, other: "Tensor11") -> "Tensor11":
        _require_same_chart(self, other)
        return Tensor11(
            self.chart,
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.matrix, other.matrix)
            ),
        )

    def is_zero(self) -> bool:
        return all(is_zero(c, self.chart) for row in self.matrix for c in row)


def identity_tensor(chart: Chart) -> Tensor11:
    n = chart.dim
    return Tensor11(
        chart,
        tuple(
            tuple(sp.Integer(1) if i == j else sp.Integer(0) for j in range(n))
            for i in range(n)
        ),
    )


def tensor_from_covector_vector(alpha: DifferentialForm, X: VectorField) -> Tensor11:
    """The (1,1)-tensor  alpha ⊗ X."""
    if alpha.degree != 1:
        raise DegreeError("need a one-form")
    _require_same_chart(alpha, X)
    n = alpha.chart.dim
    cov = [alpha.coefficient((j,)) for j in range(n)]
    return Tensor11(
        alpha.chart,
        tuple(tuple(X.components[i] * cov[j] for j in range(n)) for i in range(n)),
    )


# ---------------------------------------------------------------------------
# tangent-bundle structure


def tangent_structure(chart: Chart):
    """Vertical endomorphism S, fiber dilation Δ, and the vertical lift.

    Requires a tangent-split chart; the lift takes a field with base
    components only and moves them to the fiber directions.
    """
    base, fiber = chart.base_fiber()
    n = len(base)
    dim = chart.dim
    rows = [[sp.Integer(0)] * dim for _ in range(dim)]
    for i in range(n):
        rows[n + i][i] = sp.Integer(1)
    S = Tensor11(chart, tuple(tuple(r) for r in rows))
    delta = VectorField(
        chart, (sp.Integer(0),) * n + tuple(fiber)
    )

    def lift(X: VectorField) -> VectorField:
        _require_same_chart(S, X)
        if any(not is_zero(c, chart) for c in X.components[n:]):
            raise ValueError("vertical lift expects a base field (zero fiber part)")
        return VectorField(chart, (sp.Integer(0),) * n + X.components[:n])

    return S, delta, lift


# ---------------------------------------------------------------------------
# level-set restriction


def restrict_to_level_set(T, constraint, solve_for: str, subchart: Chart):
    """Restrict/pull back a tensor to the level set ``constraint = 0``.

    The constraint must normalize to ``c·(y² − q)`` with ``y`` the
    solved-for coordinate and ``q`` free of ``y``; ``subchart`` must
    carry an extension symbol ``s`` with ``s² = q`` (the positive
    branch).  Covariant tensors are pulled back; contravariant ones are
    restricted after an exact tangency check.
    """
    chart = T.chart if not isinstance(T, sp.Expr) else None
    if chart is None:
        raise TypeError("restrict scalars with expr.substitute instead")
    y = chart.symbol(solve_for)
    # identify q: constraint = c*(y**2 - q)
    c2 = diff(diff(constraint, y, chart), y, chart) / 2
    c1 = substitute(diff(constraint, y, chart), {solve_for: 0}, chart)
    if is_zero(c2, chart) or not is_zero(c1, chart):
        raise ValueError("constraint is not of the form c*(y^2 - q)")
    q_ambient = normalize(-substitute(constraint, {solve_for: 0}, chart) / c2, chart)
    # translate q to the subchart and find the matching extension
    q_sub = sp.sympify(q_ambient)
    ext = None
    for cand in subchart.extensions:
        if is_zero(sp.expand(cand.radicand - q_sub), subchart):
            ext = cand
            break
    if ext is None:
        raise ValueError("subchart has no extension matching the constraint branch")
    s = ext.symbol

    names_sub = subchart.coordinate_names()
    y_index = chart.coordinate_index(solve_for)
    index_map = {}  # ambient index -> subchart index, for surviving coords
    for i, cname in enumerate(chart.coordinate_names()):
        if cname == solve_for:
            continue
        index_map[i] = subchart.coordinate_index(cname)

    def push_scalar(e):
        return normalize(sp.sympify(e).subs(y, s), subchart)

    if isinstance(T, VectorField):
        _check_tangent_vector(T, constraint, solve_for, chart)
        comps = [sp.Integer(0)] * subchart.dim
        for i, c in enumerate(T.components):
            if i == y_index:
                continue
            comps[index_map[i]] = push_scalar(c)
        return VectorField(subchart, tuple(comps))

    if isinstance(T, MultivectorField):
        _check_tangent_multivector(T, constraint, solve_for, chart)
        out = MultivectorField(subchart, T.degree)
        for idx, c in T.coeffs.items():
            if y_index in idx:
                continue
            out._add_term(tuple(index_map[i] for i in idx), push_scalar(c))
        return out

    if isinstance(T, DifferentialForm):
        # dy pulls back to ds = Σ (∂s/∂z_i) dz_i on the subchart
        ds = [diff(s, z, subchart) for z in subchart.coordinates]
        out = DifferentialForm(subchart, T.degree)
        for idx, c in T.coeffs.items():
            csub = push_scalar(c)
            # expand each index: surviving coordinate -> itself, y -> ds
            expansions = []
            for i in idx:
                if i == y_index:
                    expansions.append(
                        [(j, ds[j]) for j in range(subchart.dim) if ds[j] != 0]
                    )
                else:
                    expansions.append([(index_map[i], sp.Integer(1))])
            for combo in itertools.product(*expansions):
                jidx = tuple(j for j, _ in combo)
                weight = sp.Integer(1)
                for _, w in combo:
                    weight *= w
                out._add_term(jidx, csub * weight)
        return out.normalized()

    raise TypeError(f"cannot restrict object of type {type(T).__name__}")


def _check_tangent_vector(X: VectorField, constraint, solve_for, chart):
    val = X.apply(constraint)
    val = _on_constraint(val, constraint, solve_for, chart)
    if not is_zero(val, chart):
        raise ValueError(
            f"field is not tangent to the level set (X(constraint) = {val})"
        )


def _check_tangent_multivector(A: MultivectorField, constraint, solve_for, chart):
    dC = [diff(constraint, x, chart) for x in chart.coordinates]
    for rest in itertools.combinations(range(chart.dim), A.degree - 1):
        total = sp.Integer(0)
        for i in range(chart.dim):
            total += dC[i] * A.coefficient((i,) + rest)
        total = _on_constraint(total, constraint, solve_for, chart)
        if not is_zero(total, chart):
            raise ValueError("multivector is not tangent to the level set")


def _on_constraint(e, constraint, solve_for, chart):
    """Reduce e modulo the constraint ideal by eliminating y**2."""
    y = chart.symbol(solve_for)
    c2 = diff(diff(constraint, y, chart), y, chart) / 2
    q = normalize(-substitute(constraint, {solve_for: 0}, chart) / c2, chart)
    e = normalize(e, chart)
    num, den = sp.fraction(e)
    while True:
        new = sp.expand(num).replace(
            lambda p: p.is_Pow and p.base == y and p.exp.is_Integer and p.exp >= 2,
            lambda p: q ** (p.exp // 2) * y ** (p.exp % 2),
        )
        new = sp.expand(new)
        if new == num:
            break
        num = new
    return normalize(num / den, chart)


# ---------------------------------------------------------------------------
# rank of a two-form at a rational point


def two_form_rank(
    omega: DifferentialForm, point: dict, extension_values: dict | None = None
) -> int:
    """Rank of the skew coefficient matrix at a rational point."""
    from .expr import eval_rational

    if omega.degree != 2:
        raise DegreeError("rank check needs a two-form")
    chart = omega.chart
    n = chart.dim
    rows = [[sp.Integer(0)] * n for _ in range(n)]
    for (i, j), c in omega.coeffs.items():
        v = eval_rational(c, point, chart, extension_values)
        rows[i][j] = v
        rows[j][i] = -v
    return sp.Matrix(rows).rank()


# re-exported for callers building constraints
from .expr import substitute  # noqa: E402
