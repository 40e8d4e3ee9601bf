"""
Markdown rendering of report dictionaries with Jinja2.
"""

from typing import Any, Dict, List, Tuple

from jinja2 import BaseLoader, Environment

REPORT_TEMPLATE = """\
# {{ title }}

{% if scalars -%}
| Field | Value |
|---|---|
{% for key, value in scalars -%}
| {{ key }} | {{ value }} |
{% endfor %}
{% endif -%}
{% for name, section in sections -%}
## {{ name }}

| Field | Value |
|---|---|
{% for key, value in section -%}
| {{ key }} | {{ value }} |
{% endfor %}
{% endfor -%}
{% for name, columns, rows in tables -%}
## {{ name }}

| {{ columns | join(" | ") }} |
|{% for _ in columns %}---|{% endfor %}
{% for row in rows -%}
| {{ row | join(" | ") }} |
{% endfor %}
{% endfor -%}
"""

Pairs = List[Tuple[str, str]]


def _is_matrix(value: Any) -> bool:
    return isinstance(value, list) and bool(value) and isinstance(value[0], list) and bool(value[0]) \
        and isinstance(value[0][0], list)


def format_value(value: Any) -> str:
    """One table cell; matrices collapse to their shape."""
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.12g}"
    if _is_matrix(value):
        return f"{len(value)}x{len(value[0])} matrix"
    if isinstance(value, list):
        return ", ".join(format_value(v) for v in value)
    return str(value)


def _scalars(data: Dict[str, Any]) -> Pairs:
    return [
        (key, format_value(value))
        for key, value in data.items()
        if not isinstance(value, dict) and not (isinstance(value, list) and value and isinstance(value[0], dict))
    ]


class TemplateRenderer:
    """Renders report dictionaries as Markdown summaries."""

    def __init__(self):
        self.env = Environment(loader=BaseLoader(), keep_trailing_newline=True)

    def render(self, text: str, variables: Dict[str, Any]) -> str:
        """Render a template string."""
        if not text:
            return text
        return self.env.from_string(text).render(**variables)

    def render_report(self, report: Dict[str, Any]) -> str:
        """
        Summarize a report.

        Top-level scalars form the first table, nested objects become their
        own sections and lists of rows become column tables.
        """
        body = {k: v for k, v in report.items() if k not in ("schema_version", "command")}
        sections = [
            (key.replace("_", " ").title(), _scalars(value))
            for key, value in body.items()
            if isinstance(value, dict)
        ]
        tables = []
        for key, value in body.items():
            if isinstance(value, list) and value and isinstance(value[0], dict):
                columns = list(value[0].keys())
                rows = [[format_value(row.get(c)) for c in columns] for row in value]
                tables.append((key.replace("_", " ").title(), columns, rows))

        title = f"{report.get('command', 'report')} (schema {report.get('schema_version', '?')})"
        return self.render(REPORT_TEMPLATE, {
            "title": title,
            "scalars": _scalars(body),
            "sections": sections,
            "tables": tables,
        })


# Global renderer instance
renderer = TemplateRenderer()
