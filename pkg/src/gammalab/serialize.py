"""Loading groups, presentations, modules, forms, and resolutions from
structured text files, plus access to the bundled example inputs.

Every loader validates the document shape first and raises
:class:`~gammalab.errors.ParseError` naming the file and the offending
field; semantic validation (group axioms, action well-definedness,
resolution exactness) then runs through the same constructors the rest of
the library uses.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .abelian import AbelianPresentation
from .classify import HermitianForm
from .errors import GammaLabError, ParseError
from .groups import FiniteGroup, OrientationChar, build_group
from .intmat import IntMatrix
from .modules import ZPiModule, module_from_action
from .resolutions import Resolution

__all__ = [
    "load_document",
    "parse_group",
    "parse_presentation",
    "parse_module",
    "parse_form",
    "parse_resolution",
    "load_group",
    "load_presentation",
    "load_module",
    "load_form",
    "load_resolution",
    "bundled_names",
    "bundled_path",
    "resolve_input",
    "MIN_RESOLUTION_LENGTH",
]

MIN_RESOLUTION_LENGTH = 5


def load_document(path: str) -> dict:
    """Read a structured text file into a mapping, with diagnostics."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: not valid structured text (line {exc.lineno}, "
            f"column {exc.colno}): {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be a mapping, "
                         f"not {type(doc).__name__}")
    return doc


def _require(doc: dict, field: str, origin: str):
    if field not in doc:
        raise ParseError(f"{origin}: missing required field '{field}'")
    return doc[field]


def _as_int(value, origin: str, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{origin}: field '{field}' must be an integer, "
                         f"got {value!r}")
    return value


def _int_rows(value, origin: str, field: str,
              width: Optional[int] = None) -> List[List[int]]:
    if not isinstance(value, list):
        raise ParseError(f"{origin}: field '{field}' must be a list of rows")
    rows = []
    for index, row in enumerate(value):
        if not isinstance(row, list):
            raise ParseError(
                f"{origin}: field '{field}' row {index} is not a list")
        if width is not None and len(row) != width:
            raise ParseError(
                f"{origin}: field '{field}' row {index} has length "
                f"{len(row)}; expected {width}")
        rows.append([_as_int(entry, origin, f"{field}[{index}]")
                     for entry in row])
    return rows


def parse_group(doc: dict, origin: str = "<group>") \
        -> Tuple[FiniteGroup, Dict[str, OrientationChar]]:
    """Build a validated group and its named orientation characters.

    The character named ``trivial`` is always available, whether or not the
    document lists it.
    """
    order = _as_int(_require(doc, "order", origin), origin, "order")
    if order < 1:
        raise ParseError(f"{origin}: order must be at least 1, got {order}")
    table = _int_rows(_require(doc, "table", origin), origin, "table",
                      width=order)
    if len(table) != order:
        raise ParseError(f"{origin}: table has {len(table)} rows; "
                         f"expected {order}")
    labels = doc.get("labels")
    if labels is not None:
        if (not isinstance(labels, list)
                or not all(isinstance(l, str) for l in labels)):
            raise ParseError(f"{origin}: field 'labels' must be a list of "
                             "strings")
        if len(labels) != order:
            raise ParseError(f"{origin}: {len(labels)} labels for order "
                             f"{order}")
    group = build_group(table, labels)
    characters: Dict[str, OrientationChar] = {
        "trivial": OrientationChar.trivial(group)}
    raw_chars = doc.get("characters", {})
    if not isinstance(raw_chars, dict):
        raise ParseError(f"{origin}: field 'characters' must map names to "
                         "sign vectors")
    for name, values in raw_chars.items():
        if not isinstance(values, list) or len(values) != order:
            raise ParseError(
                f"{origin}: character '{name}' must be a list of {order} "
                "signs")
        signs = [_as_int(v, origin, f"characters['{name}']") for v in values]
        characters[name] = OrientationChar(group, signs)
    return group, characters


def parse_presentation(doc: dict,
                       origin: str = "<presentation>") -> AbelianPresentation:
    ngens = _as_int(_require(doc, "ngens", origin), origin, "ngens")
    if ngens < 0:
        raise ParseError(f"{origin}: ngens must be nonnegative, got {ngens}")
    relations = _int_rows(doc.get("relations", []), origin, "relations",
                          width=ngens)
    return AbelianPresentation.from_relation_rows(ngens, relations)


def parse_module(doc: dict, group: FiniteGroup,
                 origin: str = "<module>") -> ZPiModule:
    """A module file pairs a presentation with one action matrix per group
    element, keyed by the element index."""
    underlying = parse_presentation(doc, origin)
    n = underlying.ngens
    raw_action = _require(doc, "action", origin)
    if not isinstance(raw_action, dict):
        raise ParseError(f"{origin}: field 'action' must map element "
                         "indices to matrices")
    expected = {str(g) for g in range(group.order)}
    got = set(raw_action)
    if got != expected:
        missing = sorted(expected - got)
        extra = sorted(got - expected)
        detail = []
        if missing:
            detail.append(f"missing indices {missing}")
        if extra:
            detail.append(f"unknown indices {extra}")
        raise ParseError(f"{origin}: field 'action' must have one entry per "
                         f"group element 0..{group.order - 1}: "
                         + "; ".join(detail))
    action = []
    for g in range(group.order):
        rows = _int_rows(raw_action[str(g)], origin, f"action['{g}']",
                         width=n)
        if len(rows) != n:
            raise ParseError(
                f"{origin}: action['{g}'] has {len(rows)} rows; expected {n}")
        action.append(IntMatrix.from_rows(rows, cols=n))
    return module_from_action(group, underlying, action)


def parse_form(doc: dict, group: FiniteGroup, w: OrientationChar,
               origin: str = "<form>") -> HermitianForm:
    rank = _as_int(_require(doc, "rank", origin), origin, "rank")
    if rank < 0:
        raise ParseError(f"{origin}: rank must be nonnegative, got {rank}")
    raw_matrix = _require(doc, "matrix", origin)
    if not isinstance(raw_matrix, list) or len(raw_matrix) != rank:
        raise ParseError(f"{origin}: field 'matrix' must be a list of "
                         f"{rank} rows")
    rows = []
    for i, raw_row in enumerate(raw_matrix):
        if not isinstance(raw_row, list) or len(raw_row) != rank:
            raise ParseError(f"{origin}: matrix row {i} must have {rank} "
                             "entries")
        row = []
        for j, raw_entry in enumerate(raw_row):
            if (not isinstance(raw_entry, list)
                    or len(raw_entry) != group.order):
                raise ParseError(
                    f"{origin}: matrix entry ({i}, {j}) must be a "
                    f"coefficient vector of length {group.order}")
            row.append([_as_int(c, origin, f"matrix[{i}][{j}]")
                        for c in raw_entry])
        rows.append(row)
    return HermitianForm.from_coefficients(group, w, rows)


def parse_resolution(doc: dict, group: FiniteGroup,
                     origin: str = "<resolution>") -> Resolution:
    """A stored resolution lists free ranks and one boundary matrix per
    degree, entries being group-ring coefficient vectors.  Files must be
    long enough for every supported homology degree, and are fully
    validated (boundaries compose to zero, the complex resolves the
    integers exactly)."""
    raw_ranks = _require(doc, "ranks", origin)
    if not isinstance(raw_ranks, list) or not raw_ranks:
        raise ParseError(f"{origin}: field 'ranks' must be a nonempty list")
    ranks = [_as_int(r, origin, "ranks") for r in raw_ranks]
    if any(r < 0 for r in ranks):
        raise ParseError(f"{origin}: ranks must be nonnegative")
    raw_bounds = _require(doc, "boundaries", origin)
    if not isinstance(raw_bounds, list):
        raise ParseError(f"{origin}: field 'boundaries' must be a list")
    if len(raw_bounds) != len(ranks) - 1:
        raise ParseError(
            f"{origin}: {len(raw_bounds)} boundary matrices for "
            f"{len(ranks)} ranks; expected {len(ranks) - 1}")
    if len(raw_bounds) < MIN_RESOLUTION_LENGTH:
        raise ParseError(
            f"{origin}: resolution files must reach degree "
            f"{MIN_RESOLUTION_LENGTH} (got length {len(raw_bounds)}) so "
            "every supported homology degree is computable")
    differentials = []
    for k, raw_matrix in enumerate(raw_bounds, start=1):
        rows_expected, cols_expected = ranks[k - 1], ranks[k]
        if not isinstance(raw_matrix, list) or len(raw_matrix) != rows_expected:
            raise ParseError(
                f"{origin}: boundary {k} must have {rows_expected} rows")
        matrix = []
        for i, raw_row in enumerate(raw_matrix):
            if not isinstance(raw_row, list) or len(raw_row) != cols_expected:
                raise ParseError(
                    f"{origin}: boundary {k} row {i} must have "
                    f"{cols_expected} entries")
            row = []
            for j, raw_entry in enumerate(raw_row):
                if (not isinstance(raw_entry, list)
                        or len(raw_entry) != group.order):
                    raise ParseError(
                        f"{origin}: boundary {k} entry ({i}, {j}) must be a "
                        f"coefficient vector of length {group.order}")
                row.append(tuple(_as_int(c, origin, f"boundary {k}")
                                 for c in raw_entry))
            matrix.append(row)
        differentials.append(matrix)
    resolution = Resolution(group, ranks, differentials)
    try:
        resolution.validate(check_exactness=True)
    except GammaLabError as exc:
        raise ParseError(f"{origin}: invalid resolution: {exc}") from exc
    return resolution


def load_group(path: str) -> Tuple[FiniteGroup, Dict[str, OrientationChar]]:
    return parse_group(load_document(path), origin=path)


def load_presentation(path: str) -> AbelianPresentation:
    return parse_presentation(load_document(path), origin=path)


def load_module(path: str, group: FiniteGroup) -> ZPiModule:
    return parse_module(load_document(path), group, origin=path)


def load_form(path: str, group: FiniteGroup,
              w: OrientationChar) -> HermitianForm:
    return parse_form(load_document(path), group, w, origin=path)


def load_resolution(path: str, group: FiniteGroup) -> Resolution:
    return parse_resolution(load_document(path), group, origin=path)


def _data_root():
    return resources.files("gammalab") / "data"


def bundled_names(kind: str) -> List[str]:
    """Names of bundled inputs of a kind: 'group', 'module', or 'form'."""
    prefix = {"group": "group_", "module": "module_", "form": "form_"}[kind]
    names = []
    for entry in _data_root().iterdir():
        name = entry.name
        if name.startswith(prefix) and name.endswith(".json"):
            names.append(name[len(prefix):-len(".json")])
    return sorted(names)


def bundled_path(kind: str, name: str) -> str:
    prefix = {"group": "group_", "module": "module_", "form": "form_"}[kind]
    entry = _data_root() / f"{prefix}{name}.json"
    with resources.as_file(entry) as concrete:
        return str(concrete)


def resolve_input(kind: str, value: str) -> str:
    """Interpret a command-line input as a file path or a bundled name.

    An existing path wins; otherwise the value is looked up among the
    bundled inputs of the given kind.
    """
    if Path(value).is_file():
        return value
    names = bundled_names(kind)
    if value in names:
        return bundled_path(kind, value)
    raise ParseError(
        f"'{value}' is neither a readable file nor a bundled {kind} name; "
        f"bundled {kind}s: {', '.join(names)}")
