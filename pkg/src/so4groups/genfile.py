"""Reading user-supplied generator files.

Format (JSON)::

    {"name": "G_1(3)", "field_order": 24, "cap": 2000,
     "generators": [{"l": [c1, c2, c3, c4], "r": [c1, c2, c3, c4]}, ...]}

"N" is accepted in place of "field_order"; "name" and "cap" are optional.
Each quaternion component is a scalar or a list of scalars that are summed.
A scalar is an integer, a rational string such as "-3/4", {"cos": [p, q]} for
cos(p pi / q), {"sin": [p, q]} for sin(p pi / q), {"zeta": [k, "a/b"]} for
(a/b) zeta_N^k, or a serialized cyclotomic number
{"N": n, "terms": [[power, "num", "den"], ...]} with n dividing field_order.
cos/sin need 2q to divide field_order.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .cyclo import CycloError, CycloNumber, cos_pi, root_power, sin_pi
from .group import FiniteRotationGroup, closure
from .quat import Quaternion, QuaternionError, RotationElement, make_element


class GeneratorFileError(ValueError):
    pass


def _scalar(N: int, v, where: str) -> CycloNumber:
    if isinstance(v, bool):
        raise GeneratorFileError(f"{where}: booleans are not numbers")
    if isinstance(v, int):
        return CycloNumber.rational(N, v)
    if isinstance(v, str):
        try:
            return CycloNumber.rational(N, Fraction(v))
        except (ValueError, ZeroDivisionError):
            raise GeneratorFileError(f"{where}: cannot read {v!r} as a rational") from None
    if isinstance(v, dict) and set(v) == {"N", "terms"}:
        try:
            x = CycloNumber.from_json(v)
        except (CycloError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise GeneratorFileError(f"{where}: bad cyclotomic number: {exc}") from None
        if N % x.order:
            raise GeneratorFileError(f"{where}: N = {x.order} does not divide field_order {N}")
        return x.embed(N)
    if isinstance(v, dict) and len(v) == 1:
        (key, args), = v.items()
        try:
            if key in ("cos", "sin"):
                p, q = (int(a) for a in args)
                if q == 0:
                    raise GeneratorFileError(f"{where}: zero denominator in {key}")
                return (cos_pi if key == "cos" else sin_pi)(N, p, q)
            if key == "zeta":
                k, c = args
                return root_power(N, int(k)) * Fraction(c)
        except CycloError as exc:
            raise GeneratorFileError(f"{where}: {exc}") from None
        except (TypeError, ValueError, ZeroDivisionError):
            raise GeneratorFileError(f"{where}: bad arguments for {key!r}: {args!r}") from None
    raise GeneratorFileError(f"{where}: unrecognised component {v!r}")


def _component(N: int, v, where: str) -> CycloNumber:
    if isinstance(v, list):
        total = CycloNumber.zero(N)
        for n, s in enumerate(v):
            total = total + _scalar(N, s, f"{where}[{n}]")
        return total
    return _scalar(N, v, where)


def _quaternion(N: int, data, where: str) -> Quaternion:
    if not isinstance(data, list) or len(data) != 4:
        raise GeneratorFileError(f"{where}: a quaternion is a list of 4 components")
    return Quaternion(*(_component(N, c, f"{where}[{n}]") for n, c in enumerate(data)))


def parse_generators(data: dict) -> tuple[str, list[RotationElement]]:
    if not isinstance(data, dict):
        raise GeneratorFileError("top level must be an object")
    N = data.get("field_order", data.get("N"))
    if "field_order" in data and "N" in data and data["N"] != data["field_order"]:
        raise GeneratorFileError("fields 'N' and 'field_order' disagree")
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise GeneratorFileError("field 'field_order': positive integer required")
    gens = data.get("generators")
    if not isinstance(gens, list) or not gens:
        raise GeneratorFileError("field 'generators': non-empty list required")
    out = []
    for n, g in enumerate(gens):
        where = f"generators[{n}]"
        if not isinstance(g, dict) or "l" not in g or "r" not in g:
            raise GeneratorFileError(f"{where}: needs 'l' and 'r'")
        l = _quaternion(N, g["l"], f"{where}.l")
        r = _quaternion(N, g["r"], f"{where}.r")
        try:
            out.append(make_element(l, r))
        except QuaternionError as exc:
            raise GeneratorFileError(f"{where}: {exc}") from None
    return str(data.get("name", "")), out


def load_group(path: str | Path, cap: int | None = None) -> FiniteRotationGroup:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GeneratorFileError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    name, gens = parse_generators(data)
    if cap is None and "cap" in data:
        cap = data["cap"]
        if not isinstance(cap, int) or isinstance(cap, bool) or cap < 1:
            raise GeneratorFileError("field 'cap': positive integer required")
    kwargs = {} if cap is None else {"cap": cap}
    return closure(gens, name=name or Path(path).stem, **kwargs)
