"""Reader and writer for field-spec files (grammar in docs/fieldspec.md)."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import FieldSpecError
from .field import FieldSpec

REQUIRED = ("p", "f", "eisenstein_poly", "precision")
OPTIONAL = ("residue_poly", "name")


def _int_list(key, value):
    if not isinstance(value, list) or not value:
        raise FieldSpecError(f"{key}: expected a non-empty list")
    out = []
    for c in value:
        if isinstance(c, bool):
            raise FieldSpecError(f"{key}: booleans are not coefficients")
        if isinstance(c, int):
            out.append(c)
        elif key == "eisenstein_poly" and isinstance(c, list) and all(
                isinstance(x, int) and not isinstance(x, bool) for x in c):
            out.append(tuple(c))
        else:
            raise FieldSpecError(f"{key}: bad coefficient {c!r}")
    return tuple(out)


def parse_fieldspec(text: str, source: str = "<string>") -> FieldSpec:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FieldSpecError(f"{source}:{lineno}: expected 'key = value'")
        key, _, val = (s.strip() for s in line.partition("="))
        if key not in REQUIRED + OPTIONAL:
            raise FieldSpecError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise FieldSpecError(f"{source}:{lineno}: duplicate key {key!r}")
        if key == "name":
            values[key] = val
            continue
        try:
            values[key] = json.loads(val)
        except json.JSONDecodeError:
            raise FieldSpecError(f"{source}:{lineno}: cannot parse value {val!r}") from None
    missing = [k for k in REQUIRED if k not in values]
    if missing:
        raise FieldSpecError(f"{source}: missing key(s) {', '.join(missing)}")
    for k in ("p", "f", "precision"):
        if not isinstance(values[k], int) or isinstance(values[k], bool):
            raise FieldSpecError(f"{source}: {k} must be an integer")
    f = values["f"]
    if f < 1:
        raise FieldSpecError(f"{source}: f must be >= 1")
    if "residue_poly" in values:
        res = _int_list("residue_poly", values["residue_poly"])
    elif f == 1:
        res = (0, 1)
    else:
        raise FieldSpecError(f"{source}: residue_poly is required when f > 1")
    eis = _int_list("eisenstein_poly", values["eisenstein_poly"])
    return FieldSpec(values["p"], f, res, eis, values["precision"],
                     values.get("name", Path(source).stem if source != "<string>" else "K"))


def load_fieldspec(path) -> FieldSpec:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FieldSpecError(f"cannot read field spec {path}: {exc}") from None
    return parse_fieldspec(text, str(path))


def format_fieldspec(spec: FieldSpec) -> str:
    eis = [list(c) if isinstance(c, tuple) else c for c in spec.eisenstein_poly]
    return (f"name = {spec.name}\n"
            f"p = {spec.p}\nf = {spec.f}\n"
            f"residue_poly = {json.dumps(list(spec.residue_poly))}\n"
            f"eisenstein_poly = {json.dumps(eis)}\n"
            f"precision = {spec.precision}\n")
