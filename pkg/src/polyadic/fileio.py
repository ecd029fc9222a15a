"""JSON document formats for groups, polyadic groups, presentations,
and equation systems.

Group document: {"name": str?, "elements": [str], "table": [[str]]}
with table entries given by element name, rows indexed by the left
factor. Automorphism document: {"map": {str: str}} (the bare map object
is also accepted where an automorphism is expected).

Polyadic group document, derived form:
  {"group": <group doc>, "theta": <automorphism doc>, "b": str, "n": int}
and table form:
  {"elements": [str], "n": int, "table": [str]}
with the table flattened row-major over all n-tuples.

Presentation document: {"generators": [str], "relations": [[str, str]]}
where each relation is a pair of coefficient-free n-ary terms over the
generators. Its flattened image uses {"generators": [str],
"relators": [str]} with relators in the free-word syntax.

System document: {"polyadic": path, "vars": int, "equations": [str]}
with equations "lhs = rhs" in the term grammar; a "points" array of
name tuples may replace (or accompany) the equations for the verbs that
consume point sets. The path is resolved relative to the document's own
directory unless a group is supplied directly.
"""

import json
import os

from . import caps as _caps
from .core import (
    DerivedPolyadicGroup,
    TablePolyadicGroup,
    derive,
    polyadic_from_table,
    tabulate,
)
from .cover import GroupPresentation, PolyadicPresentation
from .errors import ParseError, PolyadicError
from .groups import automorphism_from_map, validate_group
from .terms import parse_equation
from .words import parse_word


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e.msg}", line=e.lineno, column=e.colno)


def _require(doc, field, where):
    if field not in doc:
        raise PolyadicError(f"{where} document is missing the field {field!r}")
    return doc[field]


def _element(g, name):
    try:
        return g.index(name)
    except KeyError:
        raise PolyadicError(f"unknown element name {name!r}") from None


def group_from_doc(doc, caps=_caps.DEFAULT):
    names = _require(doc, "elements", "group")
    rows = _require(doc, "table", "group")
    pos = {s: i for i, s in enumerate(names)}
    if len(pos) != len(names):
        raise PolyadicError("duplicate element names")
    table = []
    for row in rows:
        out = []
        for entry in row:
            if entry not in pos:
                raise PolyadicError(f"unknown element name {entry!r} in table")
            out.append(pos[entry])
        table.append(out)
    return validate_group(names, table, name=doc.get("name", "G"), caps=caps)


def group_to_doc(g):
    names = list(g.names())
    return {
        "name": getattr(g, "group_name", "G"),
        "elements": names,
        "table": [[names[g.mul(a, b)] for b in g.elements()] for a in g.elements()],
    }


def automorphism_map(doc):
    if isinstance(doc, dict) and set(doc.keys()) == {"map"}:
        doc = doc["map"]
    if not isinstance(doc, dict):
        raise PolyadicError("automorphism document must be a name-to-name map")
    return doc


def polyadic_from_doc(doc, n=None, caps=_caps.DEFAULT):
    """Build from either form; an explicit n argument overrides the
    document's arity."""
    if "group" in doc:
        g = group_from_doc(_require(doc, "group", "polyadic"), caps=caps)
        mapping = automorphism_map(_require(doc, "theta", "polyadic"))
        missing = [s for s in g.names() if s not in mapping]
        if missing:
            raise PolyadicError(f"theta map is missing {missing[0]!r}")
        theta = automorphism_from_map(g, mapping)
        b = _element(g, _require(doc, "b", "polyadic"))
        arity = n if n is not None else doc.get("n")
        if arity is None:
            raise PolyadicError("no arity: the document has no n and none was given")
        return derive(g, theta, b, int(arity), caps=caps)
    if "table" in doc:
        names = _require(doc, "elements", "polyadic")
        arity = n if n is not None else doc.get("n")
        if arity is None:
            raise PolyadicError("no arity: the document has no n and none was given")
        pos = {s: i for i, s in enumerate(names)}
        if len(pos) != len(names):
            raise PolyadicError("duplicate element names")
        flat = []
        for entry in _require(doc, "table", "polyadic"):
            if entry not in pos:
                raise PolyadicError(f"unknown element name {entry!r} in table")
            flat.append(pos[entry])
        return polyadic_from_table(names, int(arity), flat, caps=caps)
    raise PolyadicError("polyadic document needs either a group or a table field")


def polyadic_to_doc(p, caps=_caps.DEFAULT):
    if isinstance(p, DerivedPolyadicGroup):
        g = p.base
        return {
            "group": group_to_doc(g),
            "theta": {"map": {g.name(i): g.name(p.theta(i)) for i in g.elements()}},
            "b": g.name(p.b),
            "n": p.n,
        }
    if not isinstance(p, TablePolyadicGroup):
        p = tabulate(p, caps=caps)
    names = list(p.names())
    return {
        "elements": names,
        "n": p.n,
        "table": [names[v] for v in p.flat],
    }


def polyadic_presentation_from_doc(doc):
    gens = tuple(_require(doc, "generators", "presentation"))
    relations = []
    for pair in _require(doc, "relations", "presentation"):
        if len(pair) != 2:
            raise PolyadicError("each relation must be a pair of terms")
        left = parse_term_over(pair[0], gens)
        right = parse_term_over(pair[1], gens)
        relations.append((left, right))
    return PolyadicPresentation(gens, tuple(relations))


def parse_term_over(text, generators):
    from .terms import parse_term

    return parse_term(text, generators=list(generators))


def group_presentation_from_doc(doc):
    gens = tuple(_require(doc, "generators", "group presentation"))
    relators = tuple(parse_word(w) for w in _require(doc, "relators", "group presentation"))
    return GroupPresentation(gens, relators)


def group_presentation_to_doc(gp):
    return {
        "generators": list(gp.generators),
        "relators": [str(w) for w in gp.relators],
    }


def system_from_doc(doc, base_dir=".", p=None, n=None, caps=_caps.DEFAULT):
    """Resolve the group reference and parse equations and points.

    Returns (p, m, equations, points); equations and points may each be
    empty when the document omits them.
    """
    if p is None:
        ref = _require(doc, "polyadic", "system")
        path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
        p = polyadic_from_doc(load_json(path), n=n, caps=caps)
    m = int(_require(doc, "vars", "system"))
    if m < 0:
        raise PolyadicError("vars must be nonnegative")
    names = list(p.names())
    equations = tuple(
        parse_equation(s, element_names=names) for s in doc.get("equations", [])
    )
    points = tuple(
        tuple(_element_by_name(p, nm) for nm in pt) for pt in doc.get("points", [])
    )
    for pt in points:
        if len(pt) != m:
            raise PolyadicError(f"point {pt} does not have {m} coordinates")
    return p, m, equations, points


def _element_by_name(p, name):
    try:
        return p.index(name)
    except KeyError:
        raise PolyadicError(f"unknown element name {name!r}") from None


def points_to_names(p, points):
    return [[p.name(c) for c in pt] for pt in points]
