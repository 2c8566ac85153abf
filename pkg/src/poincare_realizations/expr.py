"""Exact scalar expression arithmetic over a coordinate chart.

Expressions are sympy trees built from rational constants, chart
coordinate symbols, quadratic algebraic-extension symbols (adjoined
square roots ``s`` with a defining relation ``s**2 = q`` and branch
``s > 0``) and applications of opaque function symbols together with
their formal derivatives.  All coefficient arithmetic is exact
rational; ``is_zero`` is a decision procedure, not a heuristic.

Opaque function atoms (``f(u)``, ``f'(u)``, ...) are treated as
algebraically independent transcendentals: two expressions are equal
exactly when their canonical rational forms agree atom by atom.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy as sp
from sympy.core.function import AppliedUndef

Expr = sp.Expr
Rational = sp.Rational


class ExprError(Exception):
    """Base class for expression-layer failures."""


class ParseError(ExprError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NormalizationError(ExprError):
    """Denominator vanished identically during normalization."""


class EvaluationError(ExprError):
    """Point evaluation failed (zero denominator, irrational branch, ...)."""


# ---------------------------------------------------------------------------
# opaque function symbols

class OpaqueFunction(sp.Function):
    """Base class for opaque function symbols and their formal derivatives."""


_OPAQUE_CLASSES: dict[str, type] = {}


def opaque_function(name: str) -> type:
    """Return the sympy Function class for an opaque symbol.

    Differentiating ``f(u)`` produces ``f'(u) * du``; the primed heads
    are themselves opaque functions, so arbitrary-order formal
    derivatives are supported.
    """
    cls = _OPAQUE_CLASSES.get(name)
    if cls is None:

        def fdiff(self, argindex=1):
            return opaque_function(self.func.__name__ + "'")(self.args[0])

        cls = type(name, (OpaqueFunction,), {"fdiff": fdiff})
        _OPAQUE_CLASSES[name] = cls
    return cls


def _opaque_root(name: str) -> str:
    return name.rstrip("'")


# ---------------------------------------------------------------------------
# charts


@dataclass(frozen=True)
class Extension:
    """Adjoined square root: ``symbol**2 = radicand``, ``symbol > 0``."""

    symbol: sp.Symbol
    radicand: sp.Expr


class Chart:
    """Ordered coordinate symbols plus algebraic extensions.

    ``signature`` is the diagonal Minkowski signature used by the
    geometric modules for index raising/lowering; the chart itself does
    not interpret it.  ``tangent_split=True`` declares the coordinate
    list to be (base..., fiber...) halves of a tangent bundle.
    """

    def __init__(
        self,
        name: str,
        coordinates: tuple[str, ...] | list[str],
        extensions: list[tuple[str, str | sp.Expr]] | None = None,
        signature: tuple[int, ...] | None = None,
        tangent_split: bool = False,
        functions: tuple[str, ...] | list[str] = (),
        parameters: tuple[str, ...] | list[str] = (),
    ):
        if len(set(coordinates)) != len(coordinates):
            raise ValueError("coordinate symbols must be pairwise distinct")
        self.name = name
        self.coordinates: tuple[sp.Symbol, ...] = tuple(
            sp.Symbol(c) for c in coordinates
        )
        self.parameters: tuple[sp.Symbol, ...] = tuple(
            sp.Symbol(c) for c in parameters
        )
        self.signature = tuple(signature) if signature is not None else None
        self.tangent_split = tangent_split
        if tangent_split and len(coordinates) % 2 != 0:
            raise ValueError("tangent-split chart needs an even coordinate count")
        self.functions = tuple(functions)
        self.extensions: list[Extension] = []
        for sym, radicand in extensions or []:
            self.add_extension(radicand, name=sym)

    # -- symbol table -------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    def coordinate_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.coordinates)

    def symbol(self, name: str | sp.Symbol) -> sp.Symbol:
        if isinstance(name, sp.Symbol):
            name = name.name
        for c in self.coordinates + self.parameters:
            if c.name == name:
                return c
        for e in self.extensions:
            if e.symbol.name == name:
                return e.symbol
        raise KeyError(f"unknown symbol {name!r} on chart {self.name!r}")

    def has_symbol(self, name: str) -> bool:
        try:
            self.symbol(name)
            return True
        except KeyError:
            return False

    def coordinate_index(self, name: str | sp.Symbol) -> int:
        s = self.symbol(name)
        return self.coordinates.index(s)

    def extension(self, name: str) -> Extension:
        for e in self.extensions:
            if e.symbol.name == name:
                return e
        raise KeyError(f"no extension {name!r} on chart {self.name!r}")

    def add_extension(self, radicand, name: str | None = None) -> Extension:
        """Adjoin (or reuse) a square root of ``radicand``."""
        radicand = normalize(sp.sympify(radicand), self)
        existing = self.extension_for(radicand)
        if existing is not None:
            return existing
        if name is None:
            name = f"sqrt{len(self.extensions) + 1}"
        if self.has_symbol(name):
            raise ValueError(f"symbol {name!r} already in use on chart {self.name!r}")
        ext = Extension(sp.Symbol(name, positive=True), radicand)
        self.extensions.append(ext)
        return ext

    def extension_for(self, radicand) -> Extension | None:
        for e in self.extensions:
            if is_zero(e.radicand - radicand, self):
                return e
        return None

    def base_fiber(self) -> tuple[tuple[sp.Symbol, ...], tuple[sp.Symbol, ...]]:
        if not self.tangent_split:
            raise ValueError(f"chart {self.name!r} is not a tangent-bundle chart")
        n = self.dim // 2
        return self.coordinates[:n], self.coordinates[n:]

    def __repr__(self):
        return f"Chart({self.name!r}, dim={self.dim})"


# ---------------------------------------------------------------------------
# normalization and zero testing


def _reduce_extension_powers(e: sp.Expr, chart: Chart) -> sp.Expr:
    """Rewrite every ``s**k`` (k >= 2) using ``s**2 = q``, for all extensions."""
    while True:
        new = e
        for ext in chart.extensions:
            s, q = ext.symbol, ext.radicand

            def repl(p, s=s, q=q):
                k = p.exp
                return q ** (k // 2) * s ** (k % 2)

            new = new.replace(
                lambda p, s=s: (
                    p.is_Pow
                    and p.base == s
                    and p.exp.is_Integer
                    and p.exp >= 2
                ),
                repl,
            )
        new = sp.expand(new)
        if new == e:
            return new
        e = new


def _canonicalize_opaque_args(e: sp.Expr, chart: Chart) -> sp.Expr:
    if not e.has(OpaqueFunction):
        return e
    return e.replace(
        lambda x: isinstance(x, OpaqueFunction),
        lambda x: x.func(normalize(x.args[0], chart)),
    )


def normalize(e, chart: Chart) -> sp.Expr:
    """Unique canonical form: a coprime ratio of expanded polynomials
    over Q in (coordinates, extension symbols, opaque atoms), with every
    extension symbol reduced to degree < 2 and cleared from the
    denominator.  Idempotent.
    """
    e = sp.sympify(e)
    e = _canonicalize_opaque_args(e, chart)
    e = sp.cancel(sp.together(e))
    for _ in range(4):
        num, den = sp.fraction(e)
        num = _reduce_extension_powers(sp.expand(num), chart)
        den = _reduce_extension_powers(sp.expand(den), chart)
        # clear extension symbols from the denominator via conjugates
        changed = True
        while changed:
            changed = False
            for ext in chart.extensions:
                s = ext.symbol
                if den.has(s):
                    conj = den.subs(s, -s)
                    num = _reduce_extension_powers(sp.expand(num * conj), chart)
                    den = _reduce_extension_powers(sp.expand(den * conj), chart)
                    changed = True
        if den == 0:
            raise NormalizationError("denominator reduced to zero")
        new = sp.cancel(num / den)
        if new == e:
            break
        e = new
    if e.has(sp.zoo) or e.has(sp.nan) or e.has(sp.oo):
        raise NormalizationError("division by zero during normalization")
    return e


def is_zero(e, chart: Chart) -> bool:
    """Decide equality to zero of the canonical form."""
    return normalize(e, chart) == 0


def diff(e, sym, chart: Chart) -> sp.Expr:
    """Formal partial derivative with respect to a coordinate symbol.

    The chain rule is applied through opaque functions and through
    extension symbols (``ds/dx = (dq/dx) / (2 s)`` for ``s**2 = q``),
    recursively for nested extensions.
    """
    x = chart.symbol(sym)
    e = sp.sympify(e)
    total = sp.diff(e, x)
    for ext in chart.extensions:
        partial = sp.diff(e, ext.symbol)
        if partial != 0:
            total += partial * diff(ext.radicand, x, chart) / (2 * ext.symbol)
    return normalize(total, chart)


def substitute(e, bindings: dict, chart: Chart) -> sp.Expr:
    """Simultaneous substitution followed by normalization.

    Keys are chart-symbol names (value: expression) or opaque function
    heads (value: unary template — an expression in the reserved symbol
    ``_ARG``, or a callable Expr -> Expr).  Binding a head ``f`` also
    rewrites its formal derivatives ``f'``, ``f''``, ... consistently.
    """
    e = sp.sympify(e)
    sym_map = {}
    fun_map = {}
    for key, value in bindings.items():
        if chart.has_symbol(key):
            sym_map[chart.symbol(key)] = sp.sympify(value)
        else:
            fun_map[key] = value

    if fun_map:
        placeholder = sp.Symbol("_ARG")

        def template(head_root, order):
            tpl = fun_map[head_root]
            if callable(tpl) and not isinstance(tpl, sp.Expr):
                tpl = tpl(placeholder)
            tpl = sp.sympify(tpl)
            for _ in range(order):
                tpl = sp.diff(tpl, placeholder)
            return tpl

        def repl(app):
            name = app.func.__name__
            root = _opaque_root(name)
            order = len(name) - len(root)
            return template(root, order).subs(placeholder, app.args[0])

        e = e.replace(
            lambda x: isinstance(x, OpaqueFunction)
            and _opaque_root(x.func.__name__) in fun_map,
            repl,
        )

    if sym_map:
        e = e.subs(sym_map, simultaneous=True)
    return normalize(e, chart)


def eval_rational(
    e,
    point: dict,
    chart: Chart,
    extension_values: dict | None = None,
) -> sp.Rational:
    """Exact rational value of the canonical form at a rational point.

    Every coordinate must be bound.  Extension symbols are evaluated on
    their positive branch; if the branch value is irrational the caller
    must supply it in ``extension_values`` (it is checked against the
    defining relation).
    """
    e = normalize(e, chart)
    if e.has(OpaqueFunction):
        raise EvaluationError("unresolved opaque function symbol")
    subs: dict[sp.Symbol, sp.Rational] = {}
    for c in chart.coordinates:
        if c.name not in point:
            raise EvaluationError(f"coordinate {c.name!r} unbound")
        subs[c] = sp.Rational(point[c.name])
    for c in chart.parameters:
        if c.name in point:
            subs[c] = sp.Rational(point[c.name])
        elif e.has(c):
            raise EvaluationError(f"parameter {c.name!r} unbound")
    extension_values = extension_values or {}
    # only resolve the extensions the expression actually uses (plus any
    # earlier extensions their radicands depend on)
    needed = {
        ext.symbol
        for ext in chart.extensions
        if e.has(ext.symbol) or ext.symbol.name in extension_values
    }
    for ext in reversed(chart.extensions):
        if ext.symbol in needed:
            needed |= {
                other.symbol
                for other in chart.extensions
                if ext.radicand.has(other.symbol)
            }
    for ext in chart.extensions:
        if ext.symbol not in needed:
            continue
        qv = ext.radicand.subs(subs)
        if not qv.is_Rational:
            raise EvaluationError(
                f"radicand of {ext.symbol.name!r} not rational at point"
            )
        if ext.symbol.name in extension_values:
            sv = sp.Rational(extension_values[ext.symbol.name])
            if sv**2 != qv or sv < 0:
                raise EvaluationError(
                    f"supplied value for {ext.symbol.name!r} violates its "
                    f"defining relation"
                )
        else:
            sv = sp.sqrt(qv)
            if not sv.is_Rational:
                raise EvaluationError(
                    f"extension {ext.symbol.name!r} irrational at point and "
                    f"no value supplied"
                )
        subs[ext.symbol] = sv
    num, den = sp.fraction(e)
    dv = den.subs(subs)
    if dv == 0:
        raise EvaluationError("denominator vanishes at point")
    return sp.Rational(num.subs(subs)) / sp.Rational(dv)


# ---------------------------------------------------------------------------
# parser / printer


_WHITESPACE = " \t\r\n"


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos] in _WHITESPACE:
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take_ident(self) -> str:
        start = self.pos
        ch = self.text[self.pos]
        if not (ch.isalpha() or ch == "_"):
            raise ParseError("expected identifier", start)
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]

    def take_integer(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected integer", start)
        return int(self.text[start : self.pos])

    def expect(self, ch: str):
        got = self.peek()
        if got != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1


class _Parser:
    """Recursive-descent parser for the chart expression grammar."""

    def __init__(self, text: str, chart: Chart):
        self.tok = _Tokenizer(text)
        self.chart = chart

    def parse(self) -> sp.Expr:
        e = self.expr()
        if self.tok.peek() is not None:
            raise ParseError("unexpected trailing input", self.tok.pos)
        return e

    def expr(self) -> sp.Expr:
        e = self.term()
        while self.tok.peek() in ("+", "-"):
            op = self.tok.peek()
            self.tok.pos += 1
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self) -> sp.Expr:
        e = self.unary()
        while self.tok.peek() in ("*", "/"):
            op = self.tok.peek()
            self.tok.pos += 1
            rhs = self.unary()
            if op == "*":
                e = e * rhs
            else:
                if rhs == 0:
                    raise ParseError("division by literal zero", self.tok.pos)
                e = e / rhs
        return e

    def unary(self) -> sp.Expr:
        if self.tok.peek() == "-":
            self.tok.pos += 1
            return -self.unary()
        return self.pow()

    def pow(self) -> sp.Expr:
        base = self.atom()
        if self.tok.peek() == "^":
            self.tok.pos += 1
            exp = self.exponent()
            return base**exp
        return base

    def exponent(self) -> int:
        if self.tok.peek() == "(":
            self.tok.pos += 1
            sign = 1
            if self.tok.peek() == "-":
                sign = -1
                self.tok.pos += 1
            n = self.tok.take_integer()
            self.tok.expect(")")
            return sign * n
        if self.tok.peek() == "-":
            self.tok.pos += 1
            return -self.tok.take_integer()
        return self.tok.take_integer()

    def atom(self) -> sp.Expr:
        ch = self.tok.peek()
        if ch is None:
            raise ParseError("unexpected end of input", self.tok.pos)
        if ch == "(":
            self.tok.pos += 1
            e = self.expr()
            self.tok.expect(")")
            return e
        if ch.isdigit():
            return sp.Integer(self.tok.take_integer())
        pos = self.tok.pos
        name = self.tok.take_ident()
        if self.tok.peek() == "(":
            self.tok.pos += 1
            arg = self.expr()
            self.tok.expect(")")
            if name == "sqrt":
                return self.chart.add_extension(arg).symbol
            if name in self.chart.functions:
                return opaque_function(name)(normalize(arg, self.chart))
            raise ParseError(f"unknown function {name!r}", pos)
        if self.chart.has_symbol(name):
            return self.chart.symbol(name)
        raise ParseError(f"unknown identifier {name!r}", pos)


def parse(text: str, chart: Chart) -> sp.Expr:
    """Parse an expression over a chart and return its canonical form."""
    raw = _Parser(text, chart).parse()
    try:
        return normalize(raw, chart)
    except NormalizationError as exc:
        raise ParseError(str(exc), 0) from None


def to_text(e) -> str:
    """Render an expression in the re-parseable ``^`` grammar."""
    return sp.sstr(sp.sympify(e)).replace("**", "^")
