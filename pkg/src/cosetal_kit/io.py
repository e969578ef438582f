"""JSON file formats for monoids, relations, actions and extensions.

Wherever a monoid is referenced (the "H", "N" and "G" fields) the value may
be a fixture name, a path to a monoid file (relative to the referring file),
or an inline monoid object. Output is written with sorted keys so that a
load/save round trip is byte-stable.
"""
from __future__ import annotations

import json
from pathlib import Path

from . import fixtures
from .actions import CandidateAction
from .errors import InputError, MalformedTable
from .monoid import FiniteMonoid
from .presentation import ExtensionPresentation
from .relations import IndexedEqRel

__all__ = [
    "action_from_dict",
    "action_to_dict",
    "dumps",
    "extension_from_dict",
    "extension_to_dict",
    "load_action",
    "load_extension",
    "load_monoid",
    "load_relation",
    "monoid_from_dict",
    "monoid_ref",
    "monoid_to_dict",
    "relation_from_dict",
    "relation_to_dict",
    "resolve_monoid",
    "save",
]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save(obj, path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def _read(path) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise MalformedTable(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise MalformedTable(f"{path}: expected a JSON object")
    return data


def _field(d: dict, key: str, where: str = "object"):
    if key not in d:
        raise MalformedTable(f"{where} is missing the {key!r} field")
    return d[key]


# -- monoids -----------------------------------------------------------------


def monoid_to_dict(m: FiniteMonoid) -> dict:
    return {
        "name": m.name,
        "elements": list(m.labels),
        "identity": m.identity,
        "table": [list(r) for r in m.table],
    }


def monoid_from_dict(d: dict) -> FiniteMonoid:
    table = _field(d, "table", "monoid")
    identity = _field(d, "identity", "monoid")
    if not isinstance(identity, int) or isinstance(identity, bool):
        raise MalformedTable("identity must be an integer index")
    labels = d.get("elements")
    return FiniteMonoid.from_table(table, identity, labels, str(d.get("name", "")))


def resolve_monoid(ref, base: Path | None = None) -> FiniteMonoid:
    """A fixture name, a monoid file path, or an inline monoid object."""
    if isinstance(ref, FiniteMonoid):
        return ref
    if isinstance(ref, dict):
        return monoid_from_dict(ref)
    if not isinstance(ref, str):
        raise MalformedTable(f"cannot read a monoid from {ref!r}")
    path = Path(ref) if base is None else base / ref
    if path.is_file():
        return monoid_from_dict(_read(path))
    if fixtures.is_fixture(ref):
        return fixtures.get(ref)
    raise InputError(f"{ref!r} is neither a fixture name nor a monoid file")


def load_monoid(ref) -> FiniteMonoid:
    return resolve_monoid(ref)


def monoid_ref(m: FiniteMonoid):
    """Fixture name when the monoid is that fixture, otherwise an inline object."""
    if m.name and fixtures.is_fixture(m.name) and fixtures.get(m.name) == m:
        return m.name
    return monoid_to_dict(m)


# -- relations and actions -----------------------------------------------------


def relation_to_dict(E: IndexedEqRel) -> dict:
    return {
        "H": monoid_ref(E.H),
        "N": monoid_ref(E.N),
        "classes": {E.H.label(h): list(p) for h, p in enumerate(E.partitions)},
    }


def relation_from_dict(d: dict, base: Path | None = None) -> IndexedEqRel:
    H = resolve_monoid(_field(d, "H", "relation"), base)
    N = resolve_monoid(_field(d, "N", "relation"), base)
    classes = _field(d, "classes", "relation")
    if not isinstance(classes, dict):
        raise MalformedTable("classes must map H labels to class-id lists")
    rows = []
    for h in H.elements:
        label = H.label(h)
        if label not in classes:
            raise MalformedTable(f"relation has no classes for {label!r}")
        rows.append(classes[label])
    if set(classes) - set(H.labels):
        raise MalformedTable(f"unknown H labels in relation: {sorted(set(classes) - set(H.labels))}")
    return IndexedEqRel.from_class_ids(H, N, rows)


def load_relation(path) -> IndexedEqRel:
    return relation_from_dict(_read(path), Path(path).parent)


def action_to_dict(alpha: CandidateAction) -> dict:
    return {"H": monoid_ref(alpha.H), "N": monoid_ref(alpha.N), "table": [list(r) for r in alpha.table]}


def action_from_dict(d: dict, base: Path | None = None) -> CandidateAction:
    H = resolve_monoid(_field(d, "H", "action"), base)
    N = resolve_monoid(_field(d, "N", "action"), base)
    return CandidateAction(H, N, _field(d, "table", "action"))


def load_action(path) -> CandidateAction:
    return action_from_dict(_read(path), Path(path).parent)


# -- extensions ----------------------------------------------------------------


def extension_to_dict(ext: ExtensionPresentation, G_ref=None) -> dict:
    return {
        "N": monoid_ref(ext.N),
        "G": monoid_ref(ext.G) if G_ref is None else G_ref,
        "H": monoid_ref(ext.H),
        "k": list(ext.k.image),
        "e": list(ext.e.image),
        "s": None if ext.s is None else list(ext.s),
    }


def extension_from_dict(d: dict, base: Path | None = None) -> ExtensionPresentation:
    N = resolve_monoid(_field(d, "N", "extension"), base)
    G = resolve_monoid(_field(d, "G", "extension"), base)
    H = resolve_monoid(_field(d, "H", "extension"), base)
    k, e, s = _field(d, "k", "extension"), _field(d, "e", "extension"), d.get("s")
    for name, arr in (("k", k), ("e", e)):
        if not isinstance(arr, list):
            raise MalformedTable(f"{name} must be a list of indices")
    ext = ExtensionPresentation.from_arrays(N, G, H, k, e, s, str(d.get("name", "")))
    ext.require_homs()
    return ext


def load_extension(path) -> ExtensionPresentation:
    return extension_from_dict(_read(path), Path(path).parent)
