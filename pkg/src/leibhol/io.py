"""Algebra and map files.

An algebra file is a JSON document::

    {"field": {"kind": "Q"} | {"kind": "Fp", "p": 5},
     "dim": 3,
     "brackets": [{"left": 2, "right": 2, "value": [{"index": 1, "coeff": "1"}]}],
     "labels": ["e1", "e2", "e3"]}

Indices are 1-based; coefficients are strings holding a reduced fraction
over Q or a residue in ``[0, p)`` over F_p.  Unlisted brackets are zero.
A map file is ``{"matrix": [[...], ...]}`` whose column ``j`` is the image
of the ``j``-th source basis vector.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import gcd

from .algebra import Algebra
from .fields import QQ, Field, FieldError, GF
from .iso import LinearMapValue
from .linalg import Matrix


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


def _line_col(text: str, pos: int) -> tuple:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Doc:
    """Parsed JSON plus character offsets of the pieces we validate."""

    def __init__(self, text: str):
        self.text = text
        try:
            self.data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        if not isinstance(self.data, dict):
            raise ParseError("top level must be an object", 1, 1)

    def key_pos(self, key: str) -> int:
        m = re.search(r'"%s"\s*:' % re.escape(key), self.text)
        return m.start() if m else 0

    def item_positions(self, key: str) -> list:
        """Start offsets of the elements of the array stored under ``key``."""
        dec = json.JSONDecoder()
        pos = self.key_pos(key)
        i = self.text.index(":", pos) + 1
        while self.text[i].isspace():
            i += 1
        if self.text[i] != "[":
            return []
        i += 1
        out = []
        while True:
            while self.text[i].isspace() or self.text[i] == ",":
                i += 1
            if self.text[i] == "]":
                return out
            out.append(i)
            _, i = dec.raw_decode(self.text, i)

    def fail(self, message: str, pos: int):
        raise ParseError(message, *_line_col(self.text, pos))


def parse_field(obj) -> Field:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise FieldError('field must look like {"kind": "Q"} or {"kind": "Fp", "p": 5}')
    kind = obj["kind"]
    if kind == "Q":
        return QQ
    if kind == "Fp":
        p = obj.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise FieldError("prime field needs an integer p")
        return GF(p)
    raise FieldError(f"unknown field kind {kind!r}")


def parse_coeff(fld: Field, text) -> object:
    """Strict scalar parser: reduced fractions over Q, residues in [0, p) over F_p."""
    if not isinstance(text, str):
        raise ValueError(f"coefficient must be a string, got {text!r}")
    s = text.strip()
    if fld.is_finite:
        if not re.fullmatch(r"\d+", s):
            raise ValueError(f"coefficient {text!r} is not a residue mod {fld.p}")
        v = int(s)
        if v >= fld.p:
            raise ValueError(f"coefficient {text!r} is not reduced mod {fld.p} (use {v % fld.p})")
        return v
    m = re.fullmatch(r"(-?\d+)(?:/(\d+))?", s)
    if not m:
        raise ValueError(f"coefficient {text!r} is not a rational number")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    if den == 0:
        raise ValueError(f"coefficient {text!r} has zero denominator")
    if den == 1 or gcd(num, den) != 1:
        raise ValueError(f"coefficient {text!r} is not reduced (use {Fraction(num, den)})")
    return Fraction(num, den)


def parse_algebra(text: str) -> Algebra:
    doc = _Doc(text)
    d = doc.data
    for key in ("field", "dim", "brackets"):
        if key not in d:
            raise ParseError(f"missing key {key!r}", 1, 1)
    try:
        fld = parse_field(d["field"])
    except FieldError as exc:
        doc.fail(str(exc), doc.key_pos("field"))
    n = d["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        doc.fail("dim must be a non-negative integer", doc.key_pos("dim"))
    if not isinstance(d["brackets"], list):
        doc.fail("brackets must be a list", doc.key_pos("brackets"))
    positions = doc.item_positions("brackets")
    table = {}
    for b, entry in enumerate(d["brackets"]):
        pos = positions[b] if b < len(positions) else doc.key_pos("brackets")
        if not isinstance(entry, dict) or not {"left", "right", "value"} <= set(entry):
            doc.fail("each bracket needs left, right and value", pos)
        i, j = entry["left"], entry["right"]
        for idx in (i, j):
            if not isinstance(idx, int) or isinstance(idx, bool) or not 1 <= idx <= n:
                doc.fail(f"basis index {idx!r} outside 1..{n}", pos)
        if (i, j) in table:
            doc.fail(f"bracket [{i}, {j}] listed twice", pos)
        value = {}
        if not isinstance(entry["value"], list):
            doc.fail("value must be a list of {index, coeff}", pos)
        for term in entry["value"]:
            if not isinstance(term, dict) or not {"index", "coeff"} <= set(term):
                doc.fail("value terms need index and coeff", pos)
            k = term["index"]
            if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= n:
                doc.fail(f"basis index {k!r} outside 1..{n}", pos)
            if k in value:
                doc.fail(f"index {k} repeated in bracket [{i}, {j}]", pos)
            try:
                value[k] = parse_coeff(fld, term["coeff"])
            except ValueError as exc:
                doc.fail(str(exc), pos)
        table[(i, j)] = value
    labels = d.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or not all(isinstance(s, str) for s in labels):
            doc.fail(f"labels must be a list of {n} strings", doc.key_pos("labels"))
        if len(set(labels)) != n:
            doc.fail("labels must be distinct", doc.key_pos("labels"))
    return Algebra.from_brackets(fld, n, table, labels)


def algebra_document(L: Algebra) -> dict:
    f = L.field
    brackets = []
    for i, j, v in L.nonzero_brackets():
        brackets.append({"left": i + 1, "right": j + 1,
                         "value": [{"index": k + 1, "coeff": f.format(c)} for k, c in enumerate(v) if c]})
    doc = {"field": f.to_json(), "dim": L.dim, "brackets": brackets}
    if L.labels is not None:
        doc["labels"] = list(L.labels)
    return doc


def emit_algebra(L: Algebra) -> str:
    return json.dumps(algebra_document(L), indent=2) + "\n"


def parse_map(text: str, fld: Field) -> LinearMapValue:
    doc = _Doc(text)
    rows = doc.data.get("matrix")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError('map file needs {"matrix": [[...], ...]}', 1, 1)
    width = len(rows[0])
    positions = doc.item_positions("matrix")
    out = []
    for r, row in enumerate(rows):
        if len(row) != width:
            doc.fail("rows of the matrix have different lengths", positions[r])
        try:
            out.append([parse_coeff(fld, c) for c in row])
        except ValueError as exc:
            doc.fail(str(exc), positions[r])
    return LinearMapValue(Matrix.from_rows(fld, out, width))


def emit_map(f) -> str:
    m = f.matrix if isinstance(f, LinearMapValue) else f
    return json.dumps({"matrix": m.to_strings()}) + "\n"
