"""HTTP service exposing the resolution engine.

Thin orchestration only: requests carry input documents (see ``documents``),
responses carry output documents.  Status codes follow a fixed contract:
400 for invalid input documents, 422 for unusable flag combinations, 500
for internal invariant breaches.
"""

from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import __version__
from .fields import FieldError
from .posets import InvalidPoset, InvalidComplex, UnknownElement
from .sheaves import InvalidSheaf, extend_by_zero
from .resolutions import (minimal_resolution, order_complex_resolution,
                          verify_exactness, verify_minimality)
from .derived import (pushforward, oracle_star_cohomology_c,
                      oracle_order_complex_cohomology,
                      verify_multiplicity_theorem)
from . import documents as docs
from .documents import DocumentError

INPUT_ERRORS = (DocumentError, InvalidPoset, InvalidComplex, InvalidSheaf,
                UnknownElement, FieldError, KeyError)

app = FastAPI(title="sheafres", version=__version__)


class DocumentRequest(BaseModel):
    document: dict
    field: Optional[str] = None


class ResolveRequest(DocumentRequest):
    method: str = "minimal"
    max_degree: Optional[int] = None


class MultiplicitiesRequest(DocumentRequest):
    verify: bool = False


class PushforwardRequest(BaseModel):
    sheaf: dict
    map: dict
    degrees: Optional[list[int]] = None
    compact: bool = False
    field: Optional[str] = None


class CohomologyRequest(DocumentRequest):
    simplex: Optional[list] = None
    subset: Optional[list[str]] = None


def _field_override(req):
    if req.field is None:
        return None
    try:
        return docs.field_spec(req.field)
    except DocumentError as exc:
        raise HTTPException(422, str(exc)) from exc


def _input_sheaf(req):
    try:
        return docs.sheaf_from_document(req.document, _field_override(req))
    except INPUT_ERRORS as exc:
        raise HTTPException(400, str(exc)) from exc


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post("/validate")
def validate(req: DocumentRequest):
    try:
        kind, value = docs.parse_input(req.document)
        problems = []
        if kind == "sheaf":
            problems = [f"commutativity fails on triple {t}"
                        for t in value.validate()]
    except INPUT_ERRORS as exc:
        return docs.serialize_validation(False, [str(exc)])
    return docs.serialize_validation(not problems, problems)


@app.post("/resolve")
def resolve(req: ResolveRequest):
    sheaf = _input_sheaf(req)
    if req.method == "minimal":
        res = minimal_resolution(sheaf, max_len=req.max_degree)
    elif req.method == "order-complex":
        res = order_complex_resolution(sheaf)
    else:
        raise HTTPException(422, f"unknown method {req.method!r}")
    out = docs.serialize_resolution(res)
    out["certificates"] = {"exact": verify_exactness(res)[0],
                           "minimal": verify_minimality(res)
                           if res.minimal else False}
    return out


@app.post("/multiplicities")
def multiplicities(req: MultiplicitiesRequest):
    try:
        kind, _ = docs.parse_input(req.document)
    except INPUT_ERRORS as exc:
        raise HTTPException(400, str(exc)) from exc
    if req.verify and kind != "simplicial_complex":
        raise HTTPException(422, "verification against the star cohomology "
                                 "oracle requires simplicial_complex input")
    sheaf = _input_sheaf(req)
    res = minimal_resolution(sheaf)
    verified = None
    oracle = None
    if req.verify:
        complex_, include_empty = docs.parse_complex(req.document)
        if include_empty:
            raise HTTPException(422, "oracle verification does not cover "
                                     "the empty face")
        verified = verify_multiplicity_theorem(complex_, sheaf.field)
        _, faces = complex_.face_poset()
        top = complex_.dim()
        oracle = {}
        for e in sheaf.poset.elements:
            dims = oracle_star_cohomology_c(complex_, faces[e], sheaf.field)
            shift = len(faces[e]) - 1
            for j in range(top - shift + 1):
                if dims[j + shift]:
                    oracle[(j, sheaf.poset.names[e])] = dims[j + shift]
    return docs.serialize_multiplicities(res.multiplicities(), sheaf.poset,
                                         verified, oracle)


@app.post("/pushforward")
def pushforward_endpoint(req: PushforwardRequest):
    try:
        f = docs.parse_poset_map(req.map)
        sheaf = docs.sheaf_from_document(req.sheaf)
    except INPUT_ERRORS as exc:
        raise HTTPException(400, str(exc)) from exc
    if req.degrees is not None and any(j < 0 for j in req.degrees):
        raise HTTPException(422, "degrees must be nonnegative")
    if req.compact:
        if not f.simplicial:
            raise HTTPException(400, "compact pushforward requires a map "
                                     "induced by a simplicial map")
        try:
            full = extend_by_zero(sheaf, f.source)
        except (ValueError, UnknownElement) as exc:
            raise HTTPException(400, str(exc)) from exc
    else:
        if sheaf.poset.names != f.source.names:
            raise HTTPException(400, "sheaf does not live on the source of "
                                     "the map")
        full = sheaf
    res = minimal_resolution(full)
    degrees = req.degrees
    if degrees is None:
        degrees = list(range(max(len(res.terms), 1)))
    out = [(j, pushforward(res, f, j)) for j in degrees]
    for _, s in out:
        s.validate_strict()  # functoriality re-checked before emission
    return docs.serialize_pushforward(out)


@app.post("/cohomology")
def cohomology(req: CohomologyRequest):
    try:
        kind, value = docs.parse_input(req.document)
    except INPUT_ERRORS as exc:
        raise HTTPException(400, str(exc)) from exc
    field = _field_override(req) or docs.parse_field(
        req.document.get("field"))
    if kind == "simplicial_complex":
        complex_, include_empty = value
        if req.simplex is not None:
            try:
                dims = oracle_star_cohomology_c(
                    complex_, frozenset(req.simplex), field)
            except KeyError as exc:
                raise HTTPException(400, str(exc)) from exc
            return docs.serialize_cohomology(
                dims, f"compactly supported cohomology of the open star "
                      f"of {sorted(req.simplex)}")
        poset, _ = complex_.face_poset(include_empty)
        dims = oracle_order_complex_cohomology(
            poset, list(poset.elements), field)
        return docs.serialize_cohomology(dims, "order-complex cohomology")
    if kind == "poset":
        poset = value
        if req.subset is None:
            subset = list(poset.elements)
        else:
            try:
                subset = [poset.index(nm) for nm in req.subset]
            except UnknownElement as exc:
                raise HTTPException(400, f"unknown element {exc}") from exc
        try:
            dims = oracle_order_complex_cohomology(poset, subset, field)
        except ValueError as exc:
            raise HTTPException(400, str(exc)) from exc
        return docs.serialize_cohomology(dims, "order-complex cohomology")
    raise HTTPException(422, f"cohomology oracles take a poset or "
                             f"simplicial_complex document, not {kind}")
