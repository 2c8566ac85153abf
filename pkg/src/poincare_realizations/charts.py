"""Named charts and the structured-text chart config format.

Config files are line-oriented::

    name        tr3
    coordinates x1 x2 x3 xd1 xd2 xd3
    tangent-split yes
    signature   - + + +
    extension   w 1 - xd1^2 - xd2^2 - xd3^2 positive
    parameter   c
    function    f

``extension`` lines carry the adjoined symbol, its radicand polynomial
(in the grammar of :func:`poincare_realizations.expr.parse`), and the
literal word ``positive`` fixing the sign branch.
"""

from __future__ import annotations

from .expr import Chart, ExprError, parse, to_text


def builtin_charts() -> dict[str, Chart]:
    """Fresh instances of every chart the verification suites use."""
    from .frozen_phase import off_shell_chart
    from .instant_form import tr3_chart
    from .lagrangian_form import tr4_chart
    from .mass_shell import ambient_chart, mass_shell_chart

    charts = {
        "tr3": tr3_chart(),
        "tr3-root": tr3_chart(with_root=True),
        "tr4": tr4_chart(),
        "tstar_r4": ambient_chart(),
        "offshell_tstar": off_shell_chart(),
        "massshell_m1": mass_shell_chart(1),
    }
    return charts


def resolve_chart(name: str, config_path: str | None = None) -> Chart:
    if config_path is not None:
        for chart in load_chart_configs(config_path):
            if chart.name == name:
                return chart
        raise KeyError(f"chart {name!r} not found in {config_path}")
    charts = builtin_charts()
    if name not in charts:
        raise KeyError(
            f"unknown chart {name!r}; built-ins: {', '.join(sorted(charts))}"
        )
    return charts[name]


def _parse_signature(tokens: list[str]) -> tuple[int, ...]:
    out = []
    for t in tokens:
        if t in ("+", "+1", "1"):
            out.append(1)
        elif t in ("-", "-1"):
            out.append(-1)
        else:
            raise ValueError(f"bad signature entry {t!r}")
    return tuple(out)


def load_chart_configs(path: str) -> list[Chart]:
    """Parse every chart block in a config file."""
    blocks: list[list[tuple[str, str]]] = []
    current: list[tuple[str, str]] = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, rest = line.partition(" ")
            key = key.rstrip(":")
            if key == "name" and current:
                blocks.append(current)
                current = []
            current.append((key, rest.strip()))
    if current:
        blocks.append(current)
    return [_build_chart(block) for block in blocks]


def _build_chart(block: list[tuple[str, str]]) -> Chart:
    fields: dict[str, str] = {}
    extensions: list[tuple[str, str]] = []
    parameters: list[str] = []
    functions: list[str] = []
    for key, value in block:
        if key == "extension":
            extensions.append(value)
        elif key == "parameter":
            parameters.extend(value.split())
        elif key == "function":
            functions.extend(value.split())
        else:
            fields[key] = value
    if "name" not in fields or "coordinates" not in fields:
        raise ValueError("chart config needs 'name' and 'coordinates' lines")
    chart = Chart(
        fields["name"],
        fields["coordinates"].split(),
        signature=(
            _parse_signature(fields["signature"].split())
            if "signature" in fields
            else None
        ),
        tangent_split=fields.get("tangent-split", "no").lower()
        in ("yes", "true", "1"),
        parameters=tuple(parameters),
        functions=tuple(functions),
    )
    for text in extensions:
        head, _, rest = text.partition(" ")
        rest = rest.strip()
        if not rest.endswith("positive"):
            raise ValueError(
                f"extension {head!r} must end with the branch word 'positive'"
            )
        radicand_text = rest[: -len("positive")].strip()
        try:
            radicand = parse(radicand_text, chart)
        except ExprError as exc:
            raise ValueError(f"bad radicand for extension {head!r}: {exc}") from exc
        chart.add_extension(radicand, name=head)
    return chart


def serialize_chart(chart: Chart) -> str:
    lines = [
        f"name {chart.name}",
        "coordinates " + " ".join(c.name for c in chart.coordinates),
    ]
    if chart.tangent_split:
        lines.append("tangent-split yes")
    if chart.signature is not None:
        lines.append(
            "signature " + " ".join("+" if s > 0 else "-" for s in chart.signature)
        )
    for e in chart.extensions:
        lines.append(f"extension {e.symbol.name} {to_text(e.radicand)} positive")
    for p in chart.parameters:
        lines.append(f"parameter {p.name}")
    for f in chart.functions:
        lines.append(f"function {f}")
    return "\n".join(lines) + "\n"
