"""Text document formats: human-writable JSON inputs, exact JSON outputs.

Input documents carry a ``kind`` (poset, simplicial_complex, sheaf,
poset_map), a field block, and a kind-specific payload.  Output documents
(resolution, multiplicities, pushforward, cohomology, validation) keep every
scalar as an exact string; serialization is canonical (sorted keys), so
identical values produce byte-identical documents.
"""

import json

from .fields import QQ, GF, FieldError
from .linalg import SparseMatrix
from .posets import (Poset, PosetMap, SimplicialComplex, InvalidPoset,
                     InvalidComplex, UnknownElement, simplicial_poset_map)
from .sheaves import Sheaf, InvalidSheaf, constant_sheaf
from .injectives import InjectiveSheaf, LabeledMatrix
from .resolutions import Resolution

INPUT_KINDS = ("poset", "simplicial_complex", "sheaf", "poset_map")


class DocumentError(ValueError):
    pass


def _require(doc, key, ctx):
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f"{ctx}: missing required key {key!r}")
    return doc[key]


# -- fields ---------------------------------------------------------------


def parse_field(obj):
    if obj is None:
        return QQ
    if isinstance(obj, str):
        obj = {"type": obj} if obj == "rational" else {"type": "mod",
                                                       "p": obj}
    t = _require(obj, "type", "field block")
    if t == "rational":
        return QQ
    if t == "mod":
        try:
            return GF(int(_require(obj, "p", "field block")))
        except (ValueError, FieldError) as exc:
            raise DocumentError(f"field block: {exc}") from exc
    raise DocumentError(f"field block: unknown type {t!r}")


def field_spec(name):
    """Field from a CLI/env spec like 'rational' or 'mod 5'."""
    name = name.strip()
    if name in ("", "rational", "QQ"):
        return QQ
    if name.startswith("mod"):
        try:
            return GF(int(name[3:].strip()))
        except (ValueError, FieldError) as exc:
            raise DocumentError(f"bad field spec {name!r}: {exc}") from exc
    raise DocumentError(f"bad field spec {name!r}")


def serialize_field(field):
    if field.characteristic == 0:
        return {"type": "rational"}
    return {"type": "mod", "p": field.characteristic}


# -- posets and complexes -------------------------------------------------


def parse_poset(payload):
    names = _require(payload, "elements", "poset")
    if not isinstance(names, list) or not all(isinstance(x, str)
                                             for x in names):
        raise DocumentError("poset: elements must be a list of names")
    idx = {nm: i for i, nm in enumerate(names)}
    if len(idx) != len(names):
        raise DocumentError("poset: element names must be distinct")
    covers = []
    for pair in _require(payload, "covers", "poset"):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise DocumentError(f"poset: bad cover entry {pair!r}")
        a, b = pair
        if a not in idx or b not in idx:
            raise DocumentError(f"poset: cover ({a!r}, {b!r}) references an "
                                "unknown element")
        covers.append((idx[a], idx[b]))
    try:
        return Poset(len(names), covers, names)
    except InvalidPoset as exc:
        raise DocumentError(f"poset: {exc}") from exc


def serialize_poset(poset):
    return {"elements": list(poset.names),
            "covers": sorted([poset.names[a], poset.names[b]]
                             for a, b in poset.covers())}


def parse_complex(payload):
    facets = _require(payload, "facets", "simplicial_complex")
    try:
        return SimplicialComplex.from_facets(
            tuple(f) for f in facets), bool(payload.get("include_empty"))
    except (InvalidComplex, TypeError) as exc:
        raise DocumentError(f"simplicial_complex: {exc}") from exc


# -- sheaves --------------------------------------------------------------


def _parse_matrix(entries, nrows, ncols, field, ctx):
    if len(entries) != nrows:
        raise DocumentError(f"{ctx}: expected {nrows} rows, "
                            f"got {len(entries)}")
    rows = []
    for r in entries:
        if len(r) != ncols:
            raise DocumentError(f"{ctx}: expected {ncols} columns")
        try:
            rows.append({j: x for j, x in
                         ((j, field.parse(str(s))) for j, s in enumerate(r))
                         if x != field.zero})
        except FieldError as exc:
            raise DocumentError(f"{ctx}: {exc}") from exc
    return SparseMatrix(nrows, ncols, rows, field)


def _serialize_dense(m):
    fld = m.field
    return [[fld.to_str(x) for x in row] for row in m.to_dense()]


def parse_sheaf(doc):
    field = parse_field(doc.get("field"))
    poset = parse_poset(_require(doc, "poset", "sheaf"))
    dim_table = _require(doc, "dims", "sheaf")
    dims = []
    for nm in poset.names:
        if nm not in dim_table:
            raise DocumentError(f"sheaf: missing dimension for {nm!r}")
        dims.append(int(dim_table[nm]))
    maps = {}
    for entry in _require(doc, "maps", "sheaf"):
        try:
            a = poset.index(_require(entry, "from", "sheaf map"))
            b = poset.index(_require(entry, "to", "sheaf map"))
        except UnknownElement as exc:
            raise DocumentError(f"sheaf: unknown element {exc} in map") \
                from exc
        ctx = f"map {poset.names[a]} -> {poset.names[b]}"
        maps[(a, b)] = _parse_matrix(_require(entry, "matrix", ctx),
                                     dims[b], dims[a], field, ctx)
    try:
        return Sheaf(poset, dims, maps, field)
    except InvalidSheaf as exc:
        raise DocumentError(f"sheaf: {exc}") from exc


def serialize_sheaf(sheaf):
    names = sheaf.poset.names
    return {"kind": "sheaf",
            "field": serialize_field(sheaf.field),
            "poset": serialize_poset(sheaf.poset),
            "dims": {names[e]: sheaf.dims[e] for e in sheaf.poset.elements},
            "maps": [{"from": names[a], "to": names[b],
                      "matrix": _serialize_dense(sheaf.cover_maps[(a, b)])}
                     for a, b in sorted(sheaf.poset.covers(),
                                        key=lambda c: (names[c[0]],
                                                       names[c[1]]))]}


def parse_input(doc):
    """Parse any input document; returns (kind, value).

    poset -> Poset, simplicial_complex -> (SimplicialComplex, include_empty),
    sheaf -> Sheaf, poset_map -> PosetMap.
    """
    kind = _require(doc, "kind", "input document")
    if kind == "poset":
        return kind, parse_poset(doc)
    if kind == "simplicial_complex":
        return kind, parse_complex(doc)
    if kind == "sheaf":
        return kind, parse_sheaf(doc)
    if kind == "poset_map":
        return kind, parse_poset_map(doc)
    raise DocumentError(f"unknown input kind {kind!r}; expected one of "
                        f"{INPUT_KINDS}")


def sheaf_from_document(doc, field=None):
    """The sheaf an input document denotes: itself for kind sheaf, the
    constant sheaf for kind poset or simplicial_complex.  ``field``
    overrides the document's field block for constant sheaves."""
    kind, value = parse_input(doc)
    if kind == "sheaf":
        return value
    if field is None:
        field = parse_field(doc.get("field"))
    if kind == "poset":
        return constant_sheaf(value, field)
    if kind == "simplicial_complex":
        complex_, include_empty = value
        poset, _ = complex_.face_poset(include_empty)
        return constant_sheaf(poset, field)
    raise DocumentError(f"a {kind} document does not denote a sheaf")


def parse_poset_map(doc):
    def side(payload, ctx):
        k = _require(payload, "kind", ctx)
        if k == "poset":
            return parse_poset(payload), None
        if k == "simplicial_complex":
            complex_, include_empty = parse_complex(payload)
            if include_empty:
                raise DocumentError(f"{ctx}: maps of face posets do not "
                                    "take the empty face")
            return complex_.face_poset()[0], complex_
        raise DocumentError(f"{ctx}: must be a poset or simplicial_complex")

    src, src_cx = side(_require(doc, "source", "poset_map"), "source")
    tgt, tgt_cx = side(_require(doc, "target", "poset_map"), "target")
    if "vertex_map" in doc:
        if src_cx is None or tgt_cx is None:
            raise DocumentError("poset_map: vertex_map requires simplicial "
                                "source and target")
        vm = {}
        for pair in doc["vertex_map"]:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise DocumentError(f"poset_map: bad vertex pair {pair!r}")
            vm[pair[0]] = pair[1]
        try:
            return simplicial_poset_map(src_cx, tgt_cx, vm)
        except (InvalidComplex, KeyError) as exc:
            raise DocumentError(f"poset_map: {exc}") from exc
    images = [None] * src.n
    for pair in _require(doc, "images", "poset_map"):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise DocumentError(f"poset_map: bad image pair {pair!r}")
        a, b = pair
        try:
            images[src.index(a)] = tgt.index(b)
        except UnknownElement as exc:
            raise DocumentError(f"poset_map: unknown element {exc}") from exc
    if any(v is None for v in images):
        raise DocumentError("poset_map: images must cover every source "
                            "element")
    try:
        return PosetMap(src, tgt, images,
                        simplicial=bool(doc.get("simplicial")))
    except InvalidPoset as exc:
        raise DocumentError(f"poset_map: {exc}") from exc


# -- resolutions ----------------------------------------------------------


def _triplets(m):
    fld = m.field
    out = []
    for i, row in enumerate(m.rows):
        for j in sorted(row):
            out.append([i, j, fld.to_str(row[j])])
    return out


def _from_triplets(entries, nrows, ncols, field, ctx):
    rows = [{} for _ in range(nrows)]
    for t in entries:
        if not (isinstance(t, list) and len(t) == 3):
            raise DocumentError(f"{ctx}: bad triplet {t!r}")
        i, j, s = t
        if not (0 <= i < nrows and 0 <= j < ncols):
            raise DocumentError(f"{ctx}: triplet ({i}, {j}) out of range")
        try:
            rows[i][j] = field.parse(str(s))
        except FieldError as exc:
            raise DocumentError(f"{ctx}: {exc}") from exc
    return SparseMatrix(nrows, ncols, rows, field)


def serialize_resolution(resolution):
    sheaf = resolution.sheaf
    names = sheaf.poset.names
    return {"kind": "resolution",
            "field": serialize_field(sheaf.field),
            "sheaf": serialize_sheaf(sheaf),
            "minimal": resolution.minimal,
            "terms": [[names[g] for g in t.generators]
                      for t in resolution.terms],
            "differentials": [_triplets(d.matrix) for d in resolution.diffs],
            "augmentation": {names[e]: _triplets(resolution.augmentation[e])
                             for e in sheaf.poset.elements},
            "summary": resolution.generator_counts()}


def parse_resolution(doc):
    if doc.get("kind") != "resolution":
        raise DocumentError("expected a resolution document")
    sheaf = parse_sheaf(_require(doc, "sheaf", "resolution"))
    poset, field = sheaf.poset, sheaf.field
    terms = []
    for labels in _require(doc, "terms", "resolution"):
        try:
            gens = tuple(poset.index(nm) for nm in labels)
        except UnknownElement as exc:
            raise DocumentError(f"resolution: unknown label {exc}") from exc
        terms.append(InjectiveSheaf(poset, gens, field))
    diff_docs = _require(doc, "differentials", "resolution")
    if len(diff_docs) != max(len(terms) - 1, 0):
        raise DocumentError("resolution: differential count does not match "
                            "term count")
    diffs = [LabeledMatrix(terms[k], terms[k + 1],
                           _from_triplets(d, len(terms[k + 1]),
                                          len(terms[k]), field,
                                          f"differential {k}"))
             for k, d in enumerate(diff_docs)]
    aug_doc = _require(doc, "augmentation", "resolution")
    aug = {}
    for e in poset.elements:
        nm = poset.names[e]
        if nm not in aug_doc:
            raise DocumentError(f"resolution: missing augmentation at {nm!r}")
        nrows = terms[0].stalk_dim(e) if terms else 0
        aug[e] = _from_triplets(aug_doc[nm], nrows, sheaf.dims[e], field,
                                f"augmentation at {nm}")
    return Resolution(sheaf, aug, terms, diffs,
                      minimal=bool(doc.get("minimal")))


# -- other outputs --------------------------------------------------------


def serialize_multiplicities(mult, poset, verified=None, oracle=None):
    """Rows are [element, degree, multiplicity]; with an ``oracle`` table
    ((degree, element name) -> expected value) each row gains the oracle
    value and a per-row pass flag."""
    rows = []
    for nm, j, m in mult.rows(poset):
        if oracle is None:
            rows.append([nm, j, m])
        else:
            expected = oracle.get((j, nm), 0)
            rows.append([nm, j, m, expected, m == expected])
    doc = {"kind": "multiplicities", "rows": rows}
    if verified is not None:
        doc["verified"] = verified
    return doc


def serialize_pushforward(sheaves_by_degree):
    """``sheaves_by_degree``: list of (degree, Sheaf)."""
    return {"kind": "pushforward",
            "degrees": [{"degree": j, "sheaf": serialize_sheaf(s)}
                        for j, s in sheaves_by_degree]}


def serialize_cohomology(dims, description):
    return {"kind": "cohomology", "dims": list(dims),
            "of": description}


def serialize_validation(valid, problems):
    return {"kind": "validation", "valid": bool(valid),
            "problems": [str(p) for p in problems]}


def dumps(doc):
    """Canonical text form: sorted keys, stable separators, one trailing
    newline.  Identical values give byte-identical output."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    return doc
