"""Parser for the ``name:key=value,key=[v1,v2],...`` mini-language.

The same grammar is used for state specs (``isotropic:d1=2,d2=3,p=0.4``) and
criterion specs (``theorem1:alpha=[1,0],beta=[0.5]``).  All numeric parsing is
locale-independent (plain ``int``/``float`` literals).
"""

from __future__ import annotations

__all__ = ["split_spec", "coerce_fields"]


def _split_top_level(text: str) -> list[str]:
    """Split on commas that are not inside square brackets."""
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced ']' in spec fields {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise ValueError(f"unbalanced '[' in spec fields {text!r}")
    parts.append("".join(current))
    return parts


def split_spec(text: str) -> tuple[str, dict[str, str]]:
    """Split ``name:key=value,...`` into the name and raw field strings."""
    if not isinstance(text, str) or not text.strip():
        raise ValueError("empty spec string")
    name, _, rest = text.strip().partition(":")
    name = name.strip()
    if not name:
        raise ValueError(f"spec {text!r} has no name before ':'")
    fields: dict[str, str] = {}
    if rest.strip():
        for part in _split_top_level(rest):
            key, eq, value = part.partition("=")
            key, value = key.strip(), value.strip()
            if not eq or not key or not value:
                raise ValueError(f"malformed field {part!r} in spec {text!r} (expected key=value)")
            if key in fields:
                raise ValueError(f"duplicate key {key!r} in spec {text!r}")
            fields[key] = value
    return name, fields


def _parse_vector(text: str, key: str) -> tuple[float, ...]:
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"field {key!r} expects a vector like [1,0.5], got {text!r}")
    body = text[1:-1].strip()
    if not body:
        raise ValueError(f"field {key!r} must contain at least one entry")
    try:
        return tuple(float(tok) for tok in body.split(","))
    except ValueError:
        raise ValueError(f"field {key!r} has a non-numeric entry in {text!r}") from None


def coerce_fields(name: str, fields: dict[str, str], schema: dict[str, type],
                  required: set[str] | None = None) -> dict[str, object]:
    """Validate field names against ``schema`` and convert values.

    ``schema`` maps key -> ``int``, ``float`` or ``tuple`` (a float vector).
    Unknown keys and missing required keys raise ``ValueError`` listing what
    is allowed.
    """
    allowed = ", ".join(sorted(schema))
    unknown = set(fields) - set(schema)
    if unknown:
        raise ValueError(
            f"unknown key(s) {sorted(unknown)} for '{name}' (allowed: {allowed or 'none'})"
        )
    missing = (set(schema) if required is None else required) - set(fields)
    if missing:
        raise ValueError(f"missing key(s) {sorted(missing)} for '{name}' (allowed: {allowed})")
    out: dict[str, object] = {}
    for key, raw in fields.items():
        kind = schema[key]
        try:
            if kind is tuple:
                out[key] = _parse_vector(raw, key)
            elif kind is int:
                out[key] = int(raw)
            else:
                out[key] = float(raw)
        except ValueError as err:
            raise ValueError(f"bad value for {key!r} in '{name}': {err}") from None
    return out
