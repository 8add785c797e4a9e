"""JSON documents holding algebras, Hopf algebras, actions and check requests.

Scalars are strings: canonical representatives ``"0".."p-1"`` over GF(p) and
``"n"`` or ``"n/d"`` over QQ.  Tensors are stored sparsely as lists of
``[index..., scalar]`` entries in lexicographic index order, so a document
written by :func:`dumps` is canonical and round-trips byte for byte.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

import numpy as np

from .action import Action
from .algebra import Algebra
from .errors import HopfRegError, UsageError, ValidationError
from .exactla import Field
from .hopf import HopfAlgebra

FORMAT = "hopfreg-document/1"
_SCALAR = re.compile(r"-?[0-9]+(/[0-9]+)?")


class DocumentError(HopfRegError):
    """The document cannot be parsed or references something undefined."""


@dataclass
class Document:
    field: Field
    algebras: dict = field(default_factory=dict)
    hopf: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def __eq__(self, other):
        return isinstance(other, Document) and dumps(self) == dumps(other)


# encoding


def _sparse(F, arr):
    arr = np.asarray(arr)
    return [[*map(int, idx), F.format(arr[idx])] for idx in zip(*np.nonzero(arr != 0))]


def _dense(F, vec):
    return [F.format(x) for x in np.ravel(vec)]


def _algebra_name(doc, alg):
    for name, a in doc.algebras.items():
        if a is alg or a == alg:
            return name
    raise UsageError("algebra is not registered in the document")


def _hopf_name(doc, H):
    for name, h in doc.hopf.items():
        if h is H or h == H:
            return name
    raise UsageError("Hopf algebra is not registered in the document")


def to_json(doc: Document) -> dict:
    F = doc.field
    out = {"format": FORMAT, "field": repr(F), "algebras": {}, "hopf": {}, "actions": {}, "checks": []}
    for name, A in doc.algebras.items():
        out["algebras"][name] = {
            "dim": A.dim,
            "labels": list(A.labels),
            "unit": _dense(F, A.unit),
            "mult": _sparse(F, A.mult),
        }
    for name, H in doc.hopf.items():
        entry = {
            "algebra": _algebra_name(doc, H.algebra),
            "comult": _sparse(F, H.delta),
            "counit": _dense(F, H.counit),
            "antipode": _sparse(F, H.antipode),
        }
        if H.generators is not None:
            entry["generators"] = [_dense(F, g) for g in H.generators]
        out["hopf"][name] = entry
    for name, act in doc.actions.items():
        out["actions"][name] = {
            "hopf": _hopf_name(doc, act.hopf),
            "algebra": _algebra_name(doc, act.algebra),
            "act": _sparse(F, act.act),
        }
    out["checks"] = [dict(c) for c in doc.checks]
    return out


def _encode(obj, depth=0):
    """Indented JSON with sorted keys; flat lists stay on one line."""
    pad = " " * depth
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad} {json.dumps(k, ensure_ascii=False)}: {_encode(obj[k], depth + 1)}' for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and any(isinstance(x, (list, dict)) for x in obj):
        return "[\n" + ",\n".join(f"{pad} {_encode(x, depth + 1)}" for x in obj) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)


def dumps(doc: Document) -> str:
    return _encode(to_json(doc)) + "\n"


def save(doc: Document, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


# decoding


def _need(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise DocumentError(f"{where}: missing key {key!r}")
    return obj[key]


def _scalar(F, s, where):
    if not isinstance(s, str):
        raise DocumentError(f"{where}: scalars must be strings, got {s!r}")
    if not _SCALAR.fullmatch(s):
        raise DocumentError(f"{where}: bad scalar {s!r} (expected an integer or n/d)")
    try:
        return F.parse_scalar(s)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: bad scalar {s!r} ({exc})") from None


def _from_sparse(F, entries, shape, where):
    arr = F.zeros(shape)
    for entry in entries:
        if not isinstance(entry, list) or len(entry) != len(shape) + 1:
            raise DocumentError(f"{where}: entry {entry!r} must be [{len(shape)} indices, scalar]")
        idx = entry[:-1]
        if not all(isinstance(i, int) and 0 <= i < n for i, n in zip(idx, shape)):
            raise DocumentError(f"{where}: index {idx} out of range for shape {shape}")
        arr[tuple(idx)] = _scalar(F, entry[-1], where)
    return arr


def _from_dense(F, values, n, where):
    if not isinstance(values, list) or len(values) != n:
        raise DocumentError(f"{where}: expected a list of {n} scalars")
    arr = F.zeros(n)
    for i, s in enumerate(values):
        arr[i] = _scalar(F, s, where)
    return arr


def _build(where, cls, *args, **kwargs):
    try:
        return cls(*args, **kwargs)
    except UsageError as exc:
        raise DocumentError(f"{where}: {exc}") from None
    except ValidationError as exc:
        exc.args = (f"{where}: {exc}",)
        raise


def from_json(data) -> Document:
    """Build and validate a document; axiom failures raise :class:`ValidationError`."""
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    fmt = data.get("format", FORMAT)
    if fmt != FORMAT:
        raise DocumentError(f"unsupported format {fmt!r}")
    try:
        F = Field.parse(_need(data, "field", "document"))
    except UsageError as exc:
        raise DocumentError(str(exc)) from None
    doc = Document(F)
    for name, spec in sorted(data.get("algebras", {}).items()):
        where = f"algebras.{name}"
        n = _need(spec, "dim", where)
        if not isinstance(n, int) or n < 1:
            raise DocumentError(f"{where}: dim must be a positive integer")
        mult = _from_sparse(F, _need(spec, "mult", where), (n, n, n), where + ".mult")
        unit = _from_dense(F, _need(spec, "unit", where), n, where + ".unit")
        doc.algebras[name] = _build(where, Algebra, F, mult, unit, labels=spec.get("labels"), name=name)
    for name, spec in sorted(data.get("hopf", {}).items()):
        where = f"hopf.{name}"
        alg_name = _need(spec, "algebra", where)
        if alg_name not in doc.algebras:
            raise DocumentError(f"{where}: unknown algebra {alg_name!r}")
        alg = doc.algebras[alg_name]
        n = alg.dim
        comult = _from_sparse(F, _need(spec, "comult", where), (n, n, n), where + ".comult").reshape(n, n * n)
        counit = _from_dense(F, _need(spec, "counit", where), n, where + ".counit")
        antipode = _from_sparse(F, _need(spec, "antipode", where), (n, n), where + ".antipode")
        gens = spec.get("generators")
        if gens is not None:
            gens = [_from_dense(F, g, n, where + ".generators") for g in gens]
        doc.hopf[name] = _build(where, HopfAlgebra, alg, comult, counit, antipode, name=name, generators=gens)
    for name, spec in sorted(data.get("actions", {}).items()):
        where = f"actions.{name}"
        h_name = _need(spec, "hopf", where)
        a_name = _need(spec, "algebra", where)
        if h_name not in doc.hopf:
            raise DocumentError(f"{where}: unknown Hopf algebra {h_name!r}")
        if a_name not in doc.algebras:
            raise DocumentError(f"{where}: unknown algebra {a_name!r}")
        H, A = doc.hopf[h_name], doc.algebras[a_name]
        act = _from_sparse(F, _need(spec, "act", where), (H.dim, A.dim, A.dim), where + ".act")
        doc.actions[name] = _build(where, Action, H, A, act, name=name)
    checks = data.get("checks", [])
    if not isinstance(checks, list):
        raise DocumentError("checks must be a list")
    for c in checks:
        if not isinstance(c, dict) or "check" not in c or "target" not in c:
            raise DocumentError(f"check request {c!r} needs 'check' and 'target'")
        if c["target"] not in doc.actions and c["target"] not in doc.hopf:
            raise DocumentError(f"check request {c!r} names an unknown target")
        doc.checks.append(dict(c))
    return doc


def loads(text) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_json(data)


def load(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


# building documents from objects


def document_for_action(act: Action, name=None, checks=None) -> Document:
    """A document holding ``act`` with its Hopf algebra and module algebra."""
    name = name or act.name or "action"
    doc = Document(act.field)
    doc.algebras["A"] = act.algebra
    doc.algebras["H"] = act.hopf.algebra
    doc.hopf["H"] = act.hopf
    doc.actions[name] = act
    doc.checks = [{"check": c, "target": name} for c in (checks or [])]
    return doc


def document_for_hopf(H: HopfAlgebra, name="H", checks=None) -> Document:
    doc = Document(H.field)
    doc.algebras[name] = H.algebra
    doc.hopf[name] = H
    doc.checks = [{"check": c, "target": name} for c in (checks or [])]
    return doc
