"""Derived pushforwards and independent cohomology oracles.

The degree-j derived pushforward of a resolved sheaf along a monotone map is
computed stalkwise: over each target element, take global sections of the
resolution over the preimage of its star and form kernel-modulo-image coset
bases, with induced maps obtained by projecting coset representatives and
re-expressing them.  The oracles at the bottom of the module compute the
same dimensions from simplicial cochain complexes and share nothing with the
resolution engine beyond the base linear algebra.
"""

from .fields import QQ
from .linalg import (SparseMatrix, RowSpan, kernel_basis, rank,
                     express_in_row_span)
from .sheaves import Sheaf, constant_sheaf, extend_by_zero
from .posets import OrderComplex
from .resolutions import minimal_resolution


def _section_cohomology(resolution, subset, j):
    """Coset data of the degree-j cohomology of sections over an up-closed
    set of labels: (generator positions, coset representative rows, and the
    matrix whose row span is reps + image, used to take coset coordinates).
    """
    fld = resolution.field
    terms = resolution.terms
    diffs = resolution.diffs
    if j >= len(terms):
        return (), [], SparseMatrix.zeros(0, 0, fld)
    positions = terms[j].positions_in(subset)
    n = len(positions)
    if j < len(diffs):
        out = diffs[j].eval_on(subset)
    else:
        out = SparseMatrix.zeros(0, n, fld)
    if 1 <= j:
        inc = diffs[j - 1].eval_on(subset)
    else:
        inc = SparseMatrix.zeros(n, 0, fld)
    image_rows = [dict(r) for r in inc.transpose().rows]
    span = RowSpan(fld, image_rows)
    reps = [v for v in kernel_basis(out) if span.add(v)]
    express = SparseMatrix(len(reps) + len(image_rows), n,
                           [dict(r) for r in reps] + image_rows, fld)
    return positions, reps, express


def pushforward(resolution, f, j):
    """The degree-j right derived pushforward along a monotone map, as a
    sheaf on the target poset.

    The stalk over a target element is the degree-j cohomology of sections
    over the preimage of its star; for a cover relation the preimage shrinks
    and the induced map is projection of coset representatives followed by
    re-expression in the smaller coset basis.
    """
    if j < 0:
        raise ValueError("degree must be nonnegative")
    target = f.target
    fld = resolution.field
    data = [None] * target.n
    for lam in target.elements:
        data[lam] = _section_cohomology(resolution,
                                        set(f.preimage_star(lam)), j)
    dims = [len(data[lam][1]) for lam in target.elements]
    maps = {}
    for kap, lam in target.covers():
        pos_k, reps_k, _ = data[kap]
        pos_l, _, express_l = data[lam]
        local = {p: i for i, p in enumerate(pos_l)}
        rows = [{} for _ in range(dims[lam])]
        for c, v in enumerate(reps_k):
            proj = {local[pos_k[i]]: x for i, x in v.items()
                    if pos_k[i] in local}
            coeffs = express_in_row_span(proj, express_l)
            if coeffs is None:  # a restricted cocycle is again a cocycle
                raise RuntimeError("projected representative left the "
                                   "cocycle space")
            for i, x in coeffs.items():
                if i < dims[lam]:
                    rows[i][c] = x
        maps[(kap, lam)] = SparseMatrix(dims[lam], dims[kap], rows, fld)
    return Sheaf(target, dims, maps, fld)


def compact_pushforward(sheaf, f, j, element_map=None):
    """Degree-j derived pushforward with compact supports: extend the sheaf
    by zero from its open subposet to the source of ``f``, resolve, and push
    forward.  ``f`` must be induced by a simplicial map."""
    if not getattr(f, "simplicial", False):
        raise ValueError("compact pushforward requires a map induced by a "
                         "simplicial map")
    extended = extend_by_zero(sheaf, f.source, element_map)
    return pushforward(minimal_resolution(extended), f, j)


# -- oracles --------------------------------------------------------------


def _cochain_dims(groups, deltas):
    """dim ker/im of a cochain complex given group sizes and coboundaries
    (deltas[d]: degree d -> d+1)."""
    dims = []
    prev_rank = 0
    for d, size in enumerate(groups):
        r = rank(deltas[d]) if d < len(deltas) else 0
        dims.append(size - r - prev_rank)
        prev_rank = r
    return dims


def oracle_open_cohomology_c(complex_, simplices, field=QQ):
    """Compactly supported cochain cohomology dimensions of an open union
    of simplices, one entry per degree 0..dim of the complex.

    The degree-d group is freely spanned by the d-simplices of the subset;
    signs come from the global vertex order (position of the omitted
    vertex).  Openness (closed under taking cofaces inside the complex)
    is required.
    """
    subset = {frozenset(s) for s in simplices}
    for s in subset:
        if s not in complex_.simplices:
            raise KeyError(f"{set(s)} is not a simplex of the complex")
    for s in complex_.simplices:
        if any(t < s for t in subset) and s not in subset:
            raise ValueError("subset is not open: missing a coface")
    top = complex_.dim()
    by_dim = [sorted((s for s in subset if len(s) == d + 1),
                     key=sorted) for d in range(top + 1)]
    index = [{s: i for i, s in enumerate(level)} for level in by_dim]
    deltas = []
    for d in range(top):
        rows = [{} for _ in range(len(by_dim[d + 1]))]
        for s, col in index[d].items():
            verts = sorted(s)
            for v in complex_.vertices:
                if v in s:
                    continue
                big = s | {v}
                if big in index[d + 1]:
                    pos = sorted(big).index(v)
                    val = field.neg(field.one) if pos % 2 else field.one
                    rows[index[d + 1][big]][col] = val
        deltas.append(SparseMatrix(len(by_dim[d + 1]), len(by_dim[d]),
                                   rows, field))
    return _cochain_dims([len(level) for level in by_dim], deltas)


def oracle_star_cohomology_c(complex_, sigma, field=QQ):
    """Compactly supported cohomology dimensions of the open star of a
    simplex, per degree.  Independent of the resolution machinery."""
    sigma = frozenset(sigma)
    if sigma not in complex_.simplices:
        raise KeyError(f"{set(sigma)} is not a simplex of the complex")
    star = {s for s in complex_.simplices if sigma <= s}
    return oracle_open_cohomology_c(complex_, star, field)


def oracle_order_complex_cohomology(poset, subset, field=QQ):
    """Ordinary simplicial cohomology dimensions of the order complex of an
    up-closed subset, per degree (length height+1; [0] for the empty set)."""
    if not poset.is_up_closed(subset):
        raise ValueError("subset is not up-closed")
    sub, _ = poset.induced(subset)
    if sub.n == 0:
        return [0]
    K = OrderComplex(sub, sub.height())
    deltas = []
    for d in range(len(K.chains) - 1):
        rows = [{} for _ in range(len(K.chains[d + 1]))]
        for col, ch in enumerate(K.chains[d]):
            for pos, ext in K.extensions(ch):
                val = field.neg(field.one) if pos % 2 else field.one
                rows[K.index[d + 1][ext]][col] = val
        deltas.append(SparseMatrix(len(K.chains[d + 1]), len(K.chains[d]),
                                   rows, field))
    return _cochain_dims([len(level) for level in K.chains], deltas)


def verify_multiplicity_theorem(complex_, field=QQ):
    """Check, for every simplex, that the minimal-resolution multiplicities
    of the constant sheaf equal the compactly supported star cohomology in
    the shifted degree."""
    poset, faces = complex_.face_poset()
    res = minimal_resolution(constant_sheaf(poset, field))
    mult = res.multiplicities()
    top = complex_.dim()
    for e in poset.elements:
        dims = oracle_star_cohomology_c(complex_, faces[e], field)
        shift = len(faces[e]) - 1
        for j in range(max(len(res.terms), top + 1)):
            expected = dims[j + shift] if 0 <= j + shift <= top else 0
            if mult[(j, e)] != expected:
                return False
    return True
