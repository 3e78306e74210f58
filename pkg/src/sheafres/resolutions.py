"""Construction and certification of injective resolutions.

Two constructions are provided: the inductive minimal one (injective hull,
then one orthogonal-complement step per degree) and the non-inductive one
built from the order complex, which is exact but usually far from minimal.
Both produce ``Resolution`` values that can be certified for exactness and
minimality by independent rank computations.
"""

from fractions import Fraction

from .linalg import (SparseMatrix, RowSpan, left_null_basis, rank, inverse)
from .injectives import InjectiveSheaf, LabeledMatrix, Multiplicities
from .posets import OrderComplex


class ResolutionError(RuntimeError):
    """Internal invariant breach (e.g. the length bound is exceeded)."""


class Resolution:
    """An injective resolution of a sheaf.

    ``terms[k]`` is the k-th injective sheaf, ``diffs[k]`` the labeled matrix
    from term k to term k+1 (``len(diffs) == len(terms) - 1``; the map out of
    the last term is zero).  ``augmentation[e]`` is the matrix of the
    inclusion of the resolved stalk at e into the degree-0 stalk.
    """

    def __init__(self, sheaf, augmentation, terms, diffs, minimal=False):
        if len(diffs) != max(len(terms) - 1, 0):
            raise ValueError("expected one differential between consecutive "
                             "terms")
        self.sheaf = sheaf
        self.augmentation = dict(augmentation)
        self.terms = list(terms)
        self.diffs = list(diffs)
        self.minimal = minimal

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Resolution)
                and self.sheaf == other.sheaf
                and self.augmentation == other.augmentation
                and self.terms == other.terms
                and self.diffs == other.diffs
                and self.minimal == other.minimal)

    @property
    def poset(self):
        return self.sheaf.poset

    @property
    def field(self):
        return self.sheaf.field

    def stalk_dim(self, k, e):
        if k >= len(self.terms):
            return 0
        return self.terms[k].stalk_dim(e)

    def generator_counts(self):
        return [len(t) for t in self.terms]

    def multiplicities(self):
        return Multiplicities.of_terms(self.terms)

    def star_complexity(self, e, j):
        """Generators over the star of e in degree j, divided by the star
        size; an exact rational regardless of the base field."""
        if not self.minimal:
            raise ValueError("star complexity is defined for the minimal "
                             "resolution")
        m = self.multiplicities()
        star = self.poset.star(e)
        return Fraction(sum(m[(j, t)] for t in star), len(star))


def _maximal_vector_data(sheaf):
    """Per element: maximal-vector basis W, a completion V to a full basis,
    and the projection onto the W-coordinates along span(V)."""
    data = {}
    for e in sheaf.poset.elements:
        d = sheaf.dims[e]
        W = sheaf.maximal_vectors(e)
        span = RowSpan(sheaf.field, W)
        V = []
        one = sheaf.field.one
        for i in range(d):
            unit = {i: one}
            if span.add(unit):
                V.append(unit)
        cols = V + W
        rows = [{} for _ in range(d)]
        for c, col in enumerate(cols):
            for r, x in col.items():
                rows[r][c] = x
        basis = SparseMatrix(d, d, rows, sheaf.field)
        binv = inverse(basis) if d else basis
        proj = SparseMatrix(len(W), d, [dict(binv.rows[i])
                                        for i in range(len(V), d)],
                            sheaf.field)
        data[e] = (V, W, binv, proj)
    return data


def _is_constant(sheaf):
    if any(d != 1 for d in sheaf.dims):
        return False
    ident = SparseMatrix.identity(1, sheaf.field)
    return all(m == ident for m in sheaf.cover_maps.values())


def minimal_hull(sheaf):
    """The minimal injective hull: one generator per maximal-vector basis
    element, with the augmentation assembled per element.

    Returns (I0, augmentation) with ``augmentation[e]`` expressed in the
    standard coordinates of the input stalks; the basis adapted to the
    maximal vectors is handled internally by a change of basis.
    """
    poset = sheaf.poset
    fld = sheaf.field
    if _is_constant(sheaf):
        # Generators are the maximal elements, augmentation the diagonal
        # (all-ones column) embedding.
        gens = tuple(e for e in poset.linear_extension
                     if not poset.coboundary(e))
        hull = InjectiveSheaf(poset, gens, fld)
        one = fld.one
        aug = {e: SparseMatrix(hull.stalk_dim(e), 1,
                               [{0: one} for _ in hull.positions_over(e)],
                               fld)
               for e in poset.elements}
        return hull, aug

    data = _maximal_vector_data(sheaf)
    gens = []
    copy_index = []  # which maximal basis vector a generator stands for
    for e in poset.linear_extension:
        for c in range(len(data[e][1])):
            gens.append(e)
            copy_index.append(c)
    hull = InjectiveSheaf(poset, tuple(gens), fld)

    aug = {}
    for e in poset.elements:
        V, W, binv, _ = data[e]
        d = sheaf.dims[e]
        l = len(V)
        # Propagate each complement basis vector through the star, collecting
        # its projection onto the maximal vectors at each first-visited
        # element (visit-once dictionary walk in topological order).
        contributions = []  # per column i of V: {element: projected vector}
        for v in V:
            seen = {e: v}
            u = {}
            for s in poset.star(e):
                vec = seen.get(s)
                if not vec:
                    continue
                for t in poset.coboundary(s):
                    if t in seen:
                        continue
                    img = sheaf.cover_maps[(s, t)].mul_vec(vec)
                    seen[t] = img
                    proj = data[t][3].mul_vec(img)
                    if proj:
                        u[t] = proj
            contributions.append(u)
        rows = []
        for pos in hull.positions_over(e):
            label = gens[pos]
            c = copy_index[pos]
            if label == e:
                rows.append({l + c: fld.one})
            else:
                row = {}
                for i, u in enumerate(contributions):
                    val = u.get(label, {}).get(c)
                    if val is not None:
                        row[i] = val
                rows.append(row)
        adapted = SparseMatrix(len(rows), d, rows, fld)
        aug[e] = adapted.mul(binv) if d else adapted
    return hull, aug


def resolution_step(term, prev_at, order=None):
    """One inductive step: extend the complex one degree to the right.

    ``prev_at(e)`` must return the matrix of the incoming map at e, in the
    stalk coordinates of ``term`` (the augmentation for the first step, the
    previous differential evaluated at e afterwards).  Elements are swept in
    reverse linear-extension order; at each one, orthogonal-complement rows
    that are independent from the rows already present become new generators.
    """
    poset = term.poset
    fld = term.field
    if order is None:
        order = poset.linear_extension
    elif not poset.is_linear_extension(order):
        raise ValueError("order is not a linear extension of the poset")
    new_gens = []
    new_rows = []  # global sparse rows over the generators of ``term``
    for e in reversed(order):
        cols = term.positions_over(e)
        basis = left_null_basis(prev_at(e))
        if not basis:
            continue
        local_of = {g: j for j, g in enumerate(cols)}
        span = RowSpan(fld)
        up = poset._up[e]
        for label, row in zip(new_gens, new_rows):
            if label in up:
                span.add({local_of[c]: x for c, x in row.items()})
        for b in basis:
            if span.add(b):
                new_gens.append(e)
                new_rows.append({cols[j]: x for j, x in b.items()})
    nxt = InjectiveSheaf(poset, tuple(new_gens), fld)
    eta = LabeledMatrix(term, nxt,
                        SparseMatrix(len(new_rows), len(term), new_rows, fld))
    return nxt, eta


def minimal_resolution(sheaf, max_len=None, order=None, certify=True):
    """The minimal injective resolution, by iterating ``resolution_step``
    from the minimal hull until the next term is empty.

    Terminates within height+1 steps; exceeding ``max_len`` (default
    height+2) signals an internal invariant breach, never silent truncation.
    """
    sheaf.validate_strict()
    if max_len is None:
        max_len = sheaf.poset.height() + 2
    hull, aug = minimal_hull(sheaf)
    if not hull.generators:
        res = Resolution(sheaf, aug, [], [], minimal=True)
        return res
    terms = [hull]
    diffs = []
    prev_at = aug.__getitem__
    while terms[-1].generators:
        if len(terms) > max_len:
            raise ResolutionError(
                f"resolution did not terminate within {max_len} terms")
        nxt, eta = resolution_step(terms[-1], prev_at, order)
        if not nxt.generators:
            break
        terms.append(nxt)
        diffs.append(eta)
        prev_at = eta.eval_at
    res = Resolution(sheaf, aug, terms, diffs, minimal=False)
    if certify:
        ok, failures = verify_exactness(res)
        if not ok:
            raise ResolutionError(f"produced resolution is not exact: "
                                  f"{failures[:3]}")
        if not verify_minimality(res):
            raise ResolutionError("produced resolution is not minimal")
    res.minimal = True
    return res


def order_complex_resolution(sheaf, certify=True):
    """The non-inductive resolution built from strict chains: one generator
    per (chain, stalk basis vector of the chain's top element), labeled by
    the chain's bottom element.  Exact, but not minimal in general."""
    sheaf.validate_strict()
    poset = sheaf.poset
    fld = sheaf.field
    K = OrderComplex(poset, poset.height())
    terms = []
    offsets = []  # per degree: chain -> first generator position
    for level in K.chains:
        gens = []
        off = {}
        for ch in level:
            off[ch] = len(gens)
            gens.extend([ch[0]] * sheaf.dims[ch[-1]])
        terms.append(InjectiveSheaf(poset, tuple(gens), fld))
        offsets.append(off)
    diffs = []
    for k in range(len(terms) - 1):
        rows = [{} for _ in range(len(terms[k + 1]))]
        for ch in K.chains[k]:
            src_off = offsets[k][ch]
            for pos, ext in K.extensions(ch):
                sign = -1 if pos % 2 else 1
                block = sheaf.composite_map(ch[-1], ext[-1])
                dst_off = offsets[k + 1][ext]
                for r in range(block.nrows):
                    for c, x in block.rows[r].items():
                        val = x if sign > 0 else fld.neg(x)
                        rows[dst_off + r][src_off + c] = val
        diffs.append(LabeledMatrix(
            terms[k], terms[k + 1],
            SparseMatrix(len(terms[k + 1]), len(terms[k]), rows, fld)))
    aug = {}
    for e in poset.elements:
        # Degree-0 generators over e are the single chains (t,) with t >= e,
        # in star order; stack the composites accordingly.
        rows = []
        for t in poset.star(e):
            comp = sheaf.composite_map(e, t)
            rows.extend(dict(r) for r in comp.rows)
        aug[e] = SparseMatrix(len(rows), sheaf.dims[e], rows, fld)
    while terms and not terms[-1].generators:
        terms.pop()
        if diffs:
            diffs.pop()
    res = Resolution(sheaf, aug, terms, diffs, minimal=False)
    if certify:
        ok, failures = verify_exactness(res)
        if not ok:
            raise ResolutionError(f"order-complex resolution is not exact: "
                                  f"{failures[:3]}")
    return res


def verify_exactness(resolution):
    """Check, at every element, injectivity of the augmentation and equality
    of kernels and images along the complex, by rank counting.  Returns
    (ok, failure descriptions)."""
    failures = []
    sheaf = resolution.sheaf
    for e in sheaf.poset.elements:
        name = sheaf.poset.names[e]
        mats = [resolution.augmentation[e]]
        mats += [d.eval_at(e) for d in resolution.diffs]
        last_dim = resolution.stalk_dim(len(resolution.terms) - 1, e) \
            if resolution.terms else 0
        mats.append(SparseMatrix.zeros(0, last_dim, sheaf.field))
        ranks = [rank(m) for m in mats]
        if ranks[0] != sheaf.dims[e]:
            failures.append(f"augmentation is not injective at {name}")
        for k in range(len(mats) - 1):
            if mats[k + 1].ncols != mats[k].nrows:
                failures.append(f"shape mismatch at {name}, degree {k}")
                continue
            if not mats[k + 1].mul(mats[k]).is_zero():
                failures.append(f"chain condition fails at {name}, "
                                f"degree {k}")
            elif ranks[k + 1] + ranks[k] != mats[k + 1].ncols:
                failures.append(f"not exact at {name}, degree {k}")
    return (not failures), failures


def verify_minimality(resolution):
    """Minimality check: no differential may connect two generators with
    the same label, and every maximal vector of the hull must come from the
    resolved sheaf."""
    for eta in resolution.diffs:
        dom = eta.domain.generators
        cod = eta.codomain.generators
        for i, row in enumerate(eta.matrix.rows):
            for j in row:
                if cod[i] == dom[j]:
                    return False
    if not resolution.terms:
        return True
    hull = resolution.terms[0]
    fld = resolution.field
    for e in resolution.poset.elements:
        pos = hull.positions_over(e)
        own = [i for i, g in enumerate(pos) if hull.generators[g] == e]
        if not own:
            continue
        colspan = RowSpan(fld, resolution.augmentation[e].transpose().rows)
        for i in own:
            if not colspan.contains({i: fld.one}):
                return False
    return True
