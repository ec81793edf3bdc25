"""JSON documents for polyhedra.

A document carries an H-representation with integer data, a
V-representation with rational vertex coordinates written as strings,
or both.  Strings keep the rationals exact in any JSON reader; float
literals are rejected outright rather than rounded.
"""

import json
from fractions import Fraction
from typing import Optional

from .errors import IrrationalData, ParseError
from .exact import clear_denominators
from .polyhedron import Polyhedron

__all__ = [
    "parse_rational",
    "format_rational",
    "parse_document",
    "emit_document",
    "load",
    "dump",
]


def parse_rational(value, where: str) -> Fraction:
    """An exact rational from an int or a "p/q" / "p" string."""
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise IrrationalData(f"{where}: float literal {value!r}; write it as a string p/q")
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{where}: cannot read {value!r} as p/q") from None
    raise ParseError(f"{where}: expected a rational, got {type(value).__name__}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _parse_integer(value, where: str) -> int:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        raise IrrationalData(f"{where}: float literal {value!r}; only integers are allowed here")
    raise ParseError(f"{where}: expected an integer, got {type(value).__name__}")


def _int_matrix(rows, where: str) -> list[tuple[int, ...]]:
    if not isinstance(rows, list):
        raise ParseError(f"{where}: expected a list of rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ParseError(f"{where}[{i}]: expected a list")
        out.append(tuple(_parse_integer(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)))
    return out


def parse_document(doc: dict) -> Polyhedron:
    """Build the polyhedron a document describes.

    When both representations are present the H-representation wins and
    the V-representation is checked for consistency vertex by vertex.
    """
    if not isinstance(doc, dict):
        raise ParseError("document: expected a JSON object")
    hrep = doc.get("hrep")
    vrep = doc.get("vrep")
    if hrep is None and vrep is None:
        raise ParseError("document: needs hrep or vrep")
    from_h = None
    if hrep is not None:
        if not isinstance(hrep, dict) or "A" not in hrep or "b" not in hrep:
            raise ParseError("hrep: expected an object with A and b")
        A = _int_matrix(hrep["A"], "hrep.A")
        if not isinstance(hrep["b"], list):
            raise ParseError("hrep.b: expected a list")
        b = [_parse_integer(x, f"hrep.b[{i}]") for i, x in enumerate(hrep["b"])]
        if len(A) != len(b):
            raise ParseError(f"hrep: {len(A)} rows in A but {len(b)} entries in b")
        if not A:
            raise ParseError("hrep: empty system; give vrep instead")
        from_h = Polyhedron.from_hrep(A, b)
    from_v = None
    if vrep is not None:
        if not isinstance(vrep, dict):
            raise ParseError("vrep: expected an object")
        raw = vrep.get("vertices", [])
        if not isinstance(raw, list):
            raise ParseError("vrep.vertices: expected a list of rows")
        verts = []
        for i, row in enumerate(raw):
            if not isinstance(row, list):
                raise ParseError(f"vrep.vertices[{i}]: expected a list")
            verts.append(tuple(parse_rational(x, f"vrep.vertices[{i}][{j}]")
                               for j, x in enumerate(row)))
        rays = _int_matrix(vrep.get("rays", []), "vrep.rays")
        lines = _int_matrix(vrep.get("lines", []), "vrep.lines")
        if not verts and (rays or lines):
            raise ParseError("vrep: rays or lines without vertices")
        if verts:
            from_v = Polyhedron.from_vrep(verts, rays, lines)
    if from_h is not None and from_v is not None and from_h != from_v:
        raise ParseError("document: hrep and vrep describe different sets")
    result = from_h if from_h is not None else from_v
    if result is None:
        raise ParseError("vrep: no vertices given and no hrep to fall back on")
    return result


def _integer_rows(P: Polyhedron) -> tuple[list[list[int]], list[int]]:
    A: list[list[int]] = []
    b: list[int] = []
    for a, rhs in P.ineqs:
        scaled = clear_denominators(tuple(a) + (rhs,))
        A.append(list(scaled[:-1]))
        b.append(scaled[-1])
    for a, rhs in P.eqs:
        scaled = clear_denominators(tuple(a) + (rhs,))
        A.append(list(scaled[:-1]))
        b.append(scaled[-1])
        A.append([-c for c in scaled[:-1]])
        b.append(-scaled[-1])
    return A, b


def emit_document(P: Polyhedron, name: str = "",
                  metadata: Optional[dict] = None) -> dict:
    """A document for P carrying both representations.

    The empty polyhedron has no generators, so it is emitted with an
    infeasible H-representation only.
    """
    doc: dict = {}
    if name:
        doc["name"] = name
    if P.is_empty:
        doc["hrep"] = {"A": [[0] * P.n], "b": [-1]}
    else:
        A, b = _integer_rows(P)
        if not A:
            # no constraints: the whole space; encode the trivial row
            A, b = [[0] * P.n], [0]
        doc["hrep"] = {"A": A, "b": b}
        doc["vrep"] = {
            "vertices": [[format_rational(x) for x in v] for v in P.vertices],
            "rays": [list(r) for r in P.rays],
            "lines": [list(l) for l in P.lines],
        }
    if metadata:
        doc["metadata"] = metadata
    return doc


def load(source) -> Polyhedron:
    """Parse the document in a JSON file."""
    with open(source, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{source}: {exc}") from None
    return parse_document(doc)


def dump(P: Polyhedron, target, name: str = "",
         metadata: Optional[dict] = None) -> None:
    """Write the document for P to a JSON file."""
    doc = emit_document(P, name=name, metadata=metadata)
    with open(target, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
