"""Text formats for code definitions and logical-operator tables.

A code file holds ``key = value`` lines; ``#`` starts a comment::

    name = steane
    n = 7
    check_poly_x = 0,2,3,4
    check_poly_z = 0,2,3,4
    logicals = steane.logicals

Either side may instead be given as explicit rows, one ``hx_row = 1110100``
(or ``hz_row``) line per check. The ``logicals`` path is resolved relative to
the code file.

A logicals file lists one operator per line in sparse form, optionally with a
label: ``Xbar1 = X1 X11 X21``. Unlabelled lines alternate X̄_1, Z̄_1, X̄_2, ...
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .css import CssCode, build_css
from .cyclic import BinaryPolynomial, ClassicalCode
from .gf2 import BitMatrix
from .pauli import Pauli

__all__ = ["CodeFileError", "CodeSpec", "parse_code_text", "load_code", "parse_logicals_text", "load_logicals"]

_KEYS = {"name", "n", "check_poly_x", "check_poly_z", "hx_row", "hz_row", "logicals"}
_LABEL = re.compile(r"^([XZ])bar(\d+)$", re.IGNORECASE)


class CodeFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.message = message
        self.line = line
        self.path = path
        where = "".join(f"{part}:" for part in (path, line) if part is not None)
        super().__init__(f"{where} {message}" if where else message)

    def with_path(self, path: Path) -> "CodeFileError":
        return CodeFileError(self.message, self.line, str(path))


@dataclass
class CodeSpec:
    n: int
    name: str | None = None
    check_poly_x: BinaryPolynomial | None = None
    check_poly_z: BinaryPolynomial | None = None
    hx_rows: list[str] = field(default_factory=list)
    hz_rows: list[str] = field(default_factory=list)
    logicals: str | None = None
    lines: dict[str, int] = field(default_factory=dict)

    def _side(self, poly: BinaryPolynomial | None, rows: list[str], key: str) -> ClassicalCode:
        try:
            if poly is not None:
                return ClassicalCode.from_check_poly(poly, self.n)
            return ClassicalCode.from_check_matrix(BitMatrix.from_strings(rows, self.n))
        except ValueError as exc:
            raise CodeFileError(f"{key}: {exc}", self.lines.get(key)) from None

    def build(self, distances: bool = True) -> CssCode:
        cx = self._side(self.check_poly_x, self.hx_rows, "check_poly_x" if self.check_poly_x else "hx_row")
        cz = self._side(self.check_poly_z, self.hz_rows, "check_poly_z" if self.check_poly_z else "hz_row")
        if distances:
            cx.with_distance()
            cz.with_distance()
        try:
            return build_css(cx, cz, self.name)
        except ValueError as exc:
            raise CodeFileError(str(exc)) from None


def parse_code_text(text: str) -> CodeSpec:
    values: dict[str, tuple[str, int]] = {}
    rows = {"hx_row": [], "hz_row": []}
    first = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CodeFileError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (t.strip() for t in line.split("=", 1))
        if key not in _KEYS:
            raise CodeFileError(f"unknown key {key!r}", lineno)
        if key in rows:
            if not value or set(value) - {"0", "1"}:
                raise CodeFileError(f"{key} must be a 0/1 string, got {value!r}", lineno)
            rows[key].append(value)
            first.setdefault(key, lineno)
            continue
        if key in values:
            raise CodeFileError(f"duplicate key {key!r}", lineno)
        values[key] = (value, lineno)
        first[key] = lineno

    if "n" not in values:
        raise CodeFileError("missing required key 'n'")
    n_text, n_line = values["n"]
    if not n_text.isdigit() or int(n_text) < 1:
        raise CodeFileError(f"n must be a positive integer, got {n_text!r}", n_line)
    spec = CodeSpec(int(n_text), lines=first)
    if "name" in values:
        spec.name = values["name"][0]
    if "logicals" in values:
        spec.logicals = values["logicals"][0]

    for poly_key, row_key, attr in (("check_poly_x", "hx_row", "hx_rows"), ("check_poly_z", "hz_row", "hz_rows")):
        has_poly, has_rows = poly_key in values, bool(rows[row_key])
        if has_poly == has_rows:
            raise CodeFileError(f"give exactly one of {poly_key} or {row_key} lines", first.get(poly_key) or first.get(row_key))
        if has_poly:
            text_, line = values[poly_key]
            try:
                setattr(spec, poly_key, BinaryPolynomial.parse(text_))
            except ValueError as exc:
                raise CodeFileError(f"{poly_key}: {exc}", line) from None
        else:
            for r in rows[row_key]:
                if len(r) != spec.n:
                    raise CodeFileError(f"{row_key} has length {len(r)}, expected {spec.n}", first[row_key])
            setattr(spec, attr, rows[row_key])
    return spec


def parse_logicals_text(text: str, n: int) -> list[tuple[Pauli, Pauli]]:
    """Parse a logical table into ``(X̄_i, Z̄_i)`` pairs."""
    labelled: dict[tuple[str, int], Pauli] = {}
    plain: list[Pauli] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        label = None
        if "=" in line:
            head, line = (t.strip() for t in line.split("=", 1))
            m = _LABEL.match(head)
            if not m:
                raise CodeFileError(f"bad label {head!r}; expected e.g. Xbar3 or Zbar3", lineno)
            label = (m.group(1).upper(), int(m.group(2)))
        try:
            p = Pauli.from_sparse(line, n)
        except ValueError as exc:
            raise CodeFileError(str(exc), lineno) from None
        if label is None:
            plain.append(p)
        elif label in labelled:
            raise CodeFileError(f"duplicate label {label[0]}bar{label[1]}", lineno)
        else:
            labelled[label] = p
    if labelled and plain:
        raise CodeFileError("mixing labelled and unlabelled lines is not supported")
    if plain:
        if len(plain) % 2:
            raise CodeFileError("unlabelled table needs an even number of lines")
        return [(plain[i], plain[i + 1]) for i in range(0, len(plain), 2)]
    k = max((i for _, i in labelled), default=0)
    pairs = []
    for i in range(1, k + 1):
        if ("X", i) not in labelled or ("Z", i) not in labelled:
            raise CodeFileError(f"logical {i} needs both Xbar{i} and Zbar{i}")
        pairs.append((labelled[("X", i)], labelled[("Z", i)]))
    return pairs


def load_logicals(path: str | Path, n: int) -> list[tuple[Pauli, Pauli]]:
    path = Path(path)
    try:
        return parse_logicals_text(path.read_text(), n)
    except CodeFileError as exc:
        raise exc.with_path(path) from None
    except OSError as exc:
        raise CodeFileError(f"cannot read logicals file: {exc.strerror}", path=str(path)) from None


def load_code(path: str | Path, distances: bool = True) -> CssCode:
    """Build the code described by a code file, attaching its logical table if named."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CodeFileError(f"cannot read code file: {exc.strerror}", path=str(path)) from None
    try:
        spec = parse_code_text(text)
        code = spec.build(distances)
    except CodeFileError as exc:
        raise exc.with_path(path) from None
    if spec.logicals:
        code.logicals = load_logicals(path.parent / spec.logicals, code.n)
    return code
