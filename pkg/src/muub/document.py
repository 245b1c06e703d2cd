"""JSON collection documents.

Complex entries are ``[re, im]`` pairs written with 17 significant digits in
lowercase scientific notation, which round-trips IEEE doubles exactly.
Unknown fields are rejected.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from .errors import DocumentError, InvalidArgumentError
from .verify import MuubCollection, OperatorBasis
from .weyl import CONVENTION, check_dim, from_weyl_coefficients, roots_table

SCHEMA_VERSION = "1"


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class WeylTerm(_Strict):
    r: int
    s: int
    g: int


class ElementDoc(_Strict):
    matrix: list[list[tuple[float, float]]]
    weyl_exponents: Optional[list[WeylTerm]] = None
    z_coeffs: Optional[list[tuple[float, float]]] = None

    @field_validator("matrix")
    @classmethod
    def _finite_matrix(cls, v):
        if not all(math.isfinite(x) for row in v for pair in row for x in pair):
            raise ValueError("matrix entries must be finite")
        return v

    @field_validator("z_coeffs")
    @classmethod
    def _finite_z(cls, v):
        if v is not None and not all(math.isfinite(x) for pair in v for x in pair):
            raise ValueError("z_coeffs must be finite")
        return v


class BasisDoc(_Strict):
    label: str
    elements: list[ElementDoc]


class CollectionDocument(_Strict):
    schema_version: Literal["1"]
    convention: Optional[str] = None
    dim: int
    span_dim: int
    root_order: Optional[int] = None
    constant_C: Optional[float] = None
    bases: list[BasisDoc]


def _pair(z) -> tuple[float, float]:
    return (float(z.real), float(z.imag))


def collection_to_document(collection: MuubCollection) -> CollectionDocument:
    bases = []
    for b in collection.bases:
        elements = []
        for n, M in enumerate(b.elements):
            el = {"matrix": [[_pair(z) for z in row] for row in M]}
            if b.weyl_exponents is not None:
                el["weyl_exponents"] = [{"r": r, "s": s, "g": g} for r, s, g in b.weyl_exponents[n]]
            if b.z_coeffs is not None:
                el["z_coeffs"] = [_pair(z) for z in b.z_coeffs[n]]
            elements.append(el)
        bases.append({"label": b.label, "elements": elements})
    return CollectionDocument(
        schema_version=SCHEMA_VERSION,
        convention=CONVENTION,
        dim=collection.dim,
        span_dim=collection.span_dim,
        root_order=collection.root_order,
        constant_C=collection.constant_C,
        bases=bases,
    )


def document_to_collection(doc: CollectionDocument) -> MuubCollection:
    try:
        d = check_dim(doc.dim)
    except InvalidArgumentError as exc:
        raise DocumentError(str(exc)) from exc
    if not doc.bases:
        raise DocumentError("document contains no bases")
    bases = []
    for bdoc in doc.bases:
        if len(bdoc.elements) != doc.span_dim:
            raise DocumentError(f"basis {bdoc.label!r} has {len(bdoc.elements)} elements, span_dim is {doc.span_dim}")
        mats = []
        for el in bdoc.elements:
            m = np.array(el.matrix, dtype=float)
            if m.shape != (d, d, 2):
                raise DocumentError(f"basis {bdoc.label!r}: matrix must be {d}x{d} of [re, im] pairs")
            mats.append(m[..., 0] + 1j * m[..., 1])
        terms = None
        if any(el.weyl_exponents is not None for el in bdoc.elements):
            if any(el.weyl_exponents is None for el in bdoc.elements):
                raise DocumentError(f"basis {bdoc.label!r}: weyl_exponents must be given for all elements or none")
            if doc.root_order is None:
                raise DocumentError("weyl_exponents require root_order")
            terms = tuple(tuple((t.r, t.s, t.g) for t in el.weyl_exponents) for el in bdoc.elements)
        z = None
        if any(el.z_coeffs is not None for el in bdoc.elements):
            if any(el.z_coeffs is None or len(el.z_coeffs) != d for el in bdoc.elements):
                raise DocumentError(f"basis {bdoc.label!r}: z_coeffs must have {d} entries on every element")
            z = np.array([[complex(*p) for p in el.z_coeffs] for el in bdoc.elements])
        bases.append(OperatorBasis(np.stack(mats), label=bdoc.label, weyl_exponents=terms, z_coeffs=z))
    return MuubCollection(dim=d, bases=bases, constant_C=doc.constant_C, root_order=doc.root_order)


def terms_matrix(terms, d: int, L: int) -> np.ndarray:
    """Materialize ``m^(-1/2) sum w_L^g X^r Z^s`` from (r, s, g) terms."""
    coeffs = np.zeros((d, d), dtype=complex)
    roots = roots_table(L)
    for r, s, g in terms:
        coeffs[r % d, s % d] += roots[g % L]
    return from_weyl_coefficients(coeffs / math.sqrt(len(terms)))


def exponent_mismatches(collection: MuubCollection, eps: float) -> list[tuple[int, int, float]]:
    """(basis, element, max deviation) wherever stored exponents disagree with the matrix."""
    out = []
    for a, b in enumerate(collection.bases):
        if b.weyl_exponents is None:
            continue
        for i, terms in enumerate(b.weyl_exponents):
            dev = float(np.max(np.abs(terms_matrix(terms, collection.dim, collection.root_order) - b.elements[i])))
            if dev > eps:
                out.append((a, i, dev))
    return out


def _fmt(x: float) -> str:
    return format(x, ".16e")


def _scalar(o) -> bool:
    return o is None or isinstance(o, (bool, int, float, str))


def _inline(o) -> bool:
    if _scalar(o):
        return True
    if isinstance(o, dict):
        return all(_scalar(v) for v in o.values())
    if isinstance(o, (list, tuple)):
        return all(_scalar(v) or (isinstance(v, (list, tuple)) and all(_scalar(w) for w in v)) for v in o)
    return False


def _emit(o, indent: int = 0) -> str:
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(o, float):
        return _fmt(o)
    if _scalar(o):
        return json.dumps(o)
    if isinstance(o, dict):
        if not o:
            return "{}"
        if _inline(o):
            return "{" + ", ".join(f"{json.dumps(k)}: {_emit(v)}" for k, v in o.items()) + "}"
        items = [f"{inner}{json.dumps(k)}: {_emit(v, indent + 2)}" for k, v in o.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if not o:
        return "[]"
    if _inline(o):
        return "[" + ", ".join(_emit(v) for v in o) + "]"
    return "[\n" + ",\n".join(inner + _emit(v, indent + 2) for v in o) + "\n" + pad + "]"


def dumps_document(doc: CollectionDocument) -> str:
    return _emit(doc.model_dump(exclude_none=True)) + "\n"


def dumps_collection(collection: MuubCollection) -> str:
    return dumps_document(collection_to_document(collection))


def loads_document(text: str) -> CollectionDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from exc
    try:
        return CollectionDocument.model_validate(raw)
    except ValidationError as exc:
        raise DocumentError(f"schema violation: {exc}") from exc


def loads_collection(text: str) -> MuubCollection:
    return document_to_collection(loads_document(text))


def write_collection(collection: MuubCollection, path) -> None:
    Path(path).write_text(dumps_collection(collection))


def read_collection(path) -> MuubCollection:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return loads_collection(text)
