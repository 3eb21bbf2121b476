"""Reading and writing function, family and report files.

Function files come in two flavours, chosen by extension unless a format is
given: CSV with one real per line in index order, or JSON
``{"values": [...]}``.  Family files are JSON arrays of operator
descriptors (see :func:`geneo.operators.operator_from_dict`).

Reports are JSON with every float rounded to 12 significant digits, so the
same inputs always produce byte-identical output.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .core import CircularFunction, make_function
from .errors import ConstraintViolation, InvalidParameter, IoError, ParseError
from .operators import OperatorFamily, operator_from_dict

SIGNIFICANT_DIGITS = 12


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from exc


def detect_format(path, fmt=None) -> str:
    if fmt:
        return fmt
    return "json" if str(path).lower().endswith(".json") else "csv"


def parse_function_file(path, fmt=None) -> CircularFunction:
    fmt = detect_format(path, fmt)
    text = _read_text(path)
    if fmt == "json":
        return parse_function_json(text, path)
    if fmt == "csv":
        return parse_function_csv(text, path)
    raise InvalidParameter(f"unknown function file format {fmt!r}")


def parse_function_csv(text: str, path=None) -> CircularFunction:
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        field = line.strip()
        if not field:
            continue
        try:
            values.append(float(field))
        except ValueError:
            raise ParseError(f"not a real number: {field!r}", path, lineno, 1) from None
    return make_function(values)


def parse_function_json(text: str, path=None) -> CircularFunction:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, path, exc.lineno, exc.colno) from None
    if not isinstance(data, dict) or not isinstance(data.get("values"), list):
        raise ParseError('expected an object with a "values" array', path)
    values = data["values"]
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"values[{i}] is not a number: {v!r}", path)
    return make_function(values)


def write_function_file(phi: CircularFunction, path, fmt=None) -> None:
    Path(path).write_text(format_function(phi, detect_format(path, fmt)), encoding="utf-8")


def format_function(phi: CircularFunction, fmt: str = "csv") -> str:
    # repr() is the shortest string that round-trips exactly
    if fmt == "json":
        return json.dumps({"values": phi.tolist()}) + "\n"
    return "".join(f"{v!r}\n" for v in phi.tolist())


def parse_family_file(path) -> OperatorFamily:
    text = _read_text(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, path, exc.lineno, exc.colno) from None
    return parse_family(data, name=Path(path).stem, path=path)


def parse_family(data, name="family", path=None) -> OperatorFamily:
    if not isinstance(data, list):
        raise ParseError("a family file must hold a JSON array of operators", path)
    ops = []
    for index, desc in enumerate(data):
        try:
            ops.append(operator_from_dict(desc))
        except ConstraintViolation as exc:
            raise ConstraintViolation(str(exc), op_index=index) from None
        except KeyError as exc:
            raise ParseError(f"operator {index}: missing field {exc.args[0]!r}", path) from None
        except (TypeError, ValueError) as exc:
            raise ParseError(f"operator {index}: {exc}", path) from None
    return OperatorFamily(tuple(ops), name=name)


class SplitMix64:
    """SplitMix64 (Steele, Lea & Flood, 2014).

    Chosen because it is a few lines of integer arithmetic and so can be
    reproduced bit for bit in any language.  Doubles take the top 53 bits.
    """

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def next_double(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53


def generate_random_function(n: int, seed: int, amplitude: float = 1.0) -> CircularFunction:
    """``n`` samples uniform in ``[-amplitude, amplitude]`` from SplitMix64
    seeded with ``seed``: ``value = amplitude * (2 * u - 1)``."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 3:
        raise InvalidParameter(f"n must be an integer >= 3, got {n!r}")
    if not (math.isfinite(amplitude) and amplitude > 0):
        raise InvalidParameter(f"amplitude must be positive and finite, got {amplitude!r}")
    rng = SplitMix64(seed)
    return make_function([amplitude * (2.0 * rng.next_double() - 1.0) for _ in range(n)])


def round_floats(obj, digits: int = SIGNIFICANT_DIGITS):
    if isinstance(obj, float):
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, dict):
        return {k: round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, digits) for v in obj]
    return obj


def dumps_report(obj) -> str:
    return json.dumps(round_floats(obj), indent=2) + "\n"


def flatten(obj, prefix="") -> list[tuple[str, object]]:
    """Flatten nested dicts/lists to ``(dotted.key, scalar)`` rows for CSV."""
    rows = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            rows.extend(flatten(v, f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            rows.extend(flatten(v, f"{prefix}[{i}]"))
    else:
        rows.append((prefix, obj))
    return rows


def dumps_csv(obj) -> str:
    lines = ["key,value"]
    for key, value in flatten(round_floats(obj)):
        if value is None:
            value = ""
        elif isinstance(value, bool):
            value = "true" if value else "false"
        text = str(value)
        if any(c in text for c in ',"\n'):
            text = '"' + text.replace('"', '""') + '"'
        lines.append(f"{key},{text}")
    return "\n".join(lines) + "\n"
