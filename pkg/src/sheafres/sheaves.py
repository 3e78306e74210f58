"""Sheaves of finite-dimensional vector spaces on a finite poset.

A sheaf stores a stalk dimension per element and an exact matrix per cover
relation; composites along longer relations are derived (first cover path in
linear-extension order) and memoized.  Functoriality is checked by
``validate``: every one-step extension of a derived composite must agree,
which implies full path-independence by induction on chain length.
"""

from .fields import QQ
from .linalg import SparseMatrix, kernel_basis


class InvalidSheaf(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class Sheaf:
    def __init__(self, poset, dims, cover_maps, field=QQ):
        if len(dims) != poset.n:
            raise InvalidSheaf(["dimension table must cover every element"])
        problems = []
        for (a, b), m in cover_maps.items():
            if (a, b) not in set(poset.covers()):
                problems.append(f"({poset.names[a]}, {poset.names[b]}) "
                                "is not a cover relation")
            elif (m.nrows, m.ncols) != (dims[b], dims[a]):
                problems.append(
                    f"map on ({poset.names[a]}, {poset.names[b]}) has shape "
                    f"{m.nrows}x{m.ncols}, expected {dims[b]}x{dims[a]}")
        for a, b in poset.covers():
            if (a, b) not in cover_maps:
                problems.append(f"missing map on cover "
                                f"({poset.names[a]}, {poset.names[b]})")
        if problems:
            raise InvalidSheaf(problems)
        self.poset = poset
        self.dims = list(dims)
        self.cover_maps = dict(cover_maps)
        self.field = field
        self._composites = {}

    def dim(self, e):
        return self.dims[e]

    def cover_map(self, a, b):
        return self.cover_maps[(a, b)]

    def composite_map(self, a, b):
        """The map F(a <= b), composed along the first cover path found in
        linear-extension order.  Identity when a == b."""
        if a == b:
            return SparseMatrix.identity(self.dims[a], self.field)
        if not self.poset.leq(a, b):
            raise ValueError(
                f"elements {self.poset.names[a]} and {self.poset.names[b]} "
                "are incomparable")
        key = (a, b)
        got = self._composites.get(key)
        if got is None:
            for t in self.poset.coboundary(a):
                if self.poset.leq(t, b):
                    got = self.composite_map(t, b).mul(self.cover_maps[(a, t)])
                    break
            self._composites[key] = got
        return got

    def validate(self):
        """Functoriality report: list of offending (a, t, g) name triples.

        Checks, for every a <= t with (t, g) a cover, that the stored or
        derived maps satisfy F(t<=g) . F(a<=t) = F(a<=g).  Empty list means
        the sheaf is valid.
        """
        bad = []
        names = self.poset.names
        for a in self.poset.elements:
            for t in self.poset.star(a):
                for g in self.poset.coboundary(t):
                    lhs = self.cover_maps[(t, g)].mul(self.composite_map(a, t))
                    if lhs != self.composite_map(a, g):
                        bad.append((names[a], names[t], names[g]))
        return bad

    def validate_strict(self):
        bad = self.validate()
        if bad:
            raise InvalidSheaf(
                [f"commutativity fails on triple {t}" for t in bad])
        return self

    def maximal_vectors(self, e):
        """Basis of the space of vectors killed by every cover map out of e,
        as sparse column vectors.  For maximal e this is the full standard
        basis."""
        cob = self.poset.coboundary(e)
        if not cob:
            one = self.field.one
            return [{i: one} for i in range(self.dims[e])]
        stacked = self.cover_maps[(e, cob[0])]
        for t in cob[1:]:
            stacked = stacked.stack(self.cover_maps[(e, t)])
        return kernel_basis(stacked)

    def maximal_dim(self, e):
        return len(self.maximal_vectors(e))

    def is_zero(self):
        return all(d == 0 for d in self.dims)

    def __eq__(self, other):
        return (isinstance(other, Sheaf)
                and self.poset.names == other.poset.names
                and set(self.poset.covers()) == set(other.poset.covers())
                and self.dims == other.dims
                and self.field == other.field
                and self.cover_maps == other.cover_maps)


class NatTrans:
    """Element-wise linear maps between sheaves on the same poset, commuting
    with every cover map."""

    def __init__(self, source, target, maps, check=True):
        if source.poset is not target.poset and \
                source.poset.names != target.poset.names:
            raise ValueError("source and target live on different posets")
        self.source = source
        self.target = target
        self.maps = list(maps)
        if check:
            bad = self.naturality_failures()
            if bad:
                raise InvalidSheaf(
                    [f"naturality fails on cover {c}" for c in bad])

    def naturality_failures(self):
        bad = []
        for a, b in self.source.poset.covers():
            lhs = self.target.cover_map(a, b).mul(self.maps[a])
            rhs = self.maps[b].mul(self.source.cover_map(a, b))
            if lhs != rhs:
                bad.append((self.source.poset.names[a],
                            self.source.poset.names[b]))
        return bad

    def __call__(self, e):
        return self.maps[e]


def constant_sheaf(poset, field=QQ):
    dims = [1] * poset.n
    ident = SparseMatrix.identity(1, field)
    maps = {c: ident for c in poset.covers()}
    return Sheaf(poset, dims, maps, field)


def zero_sheaf(poset, field=QQ):
    zero = SparseMatrix.zeros(0, 0, field)
    return Sheaf(poset, [0] * poset.n, {c: zero for c in poset.covers()},
                 field)


def restrict(sheaf, subset):
    """Restriction to an up-closed (open) subset; returns a sheaf on the
    induced subposet, names preserved."""
    if not sheaf.poset.is_up_closed(subset):
        raise ValueError("restriction requires an up-closed subset")
    sub, old = sheaf.poset.induced(subset)
    new_of = {e: i for i, e in enumerate(old)}
    dims = [sheaf.dims[e] for e in old]
    maps = {(new_of[a], new_of[b]): sheaf.cover_maps[(a, b)]
            for a, b in sheaf.poset.covers()
            if a in new_of and b in new_of}
    return Sheaf(sub, dims, maps, sheaf.field)


def extend_by_zero(sheaf, ambient, element_map=None):
    """Extension by zero of a sheaf on an open subposet to the ambient poset.

    ``element_map[i]`` is the ambient id of element i of ``sheaf.poset``;
    by default elements are matched by name.  The image must be up-closed.
    """
    if element_map is None:
        element_map = [ambient.index(nm) for nm in sheaf.poset.names]
    if len(element_map) != sheaf.poset.n:
        raise ValueError("element map must cover every element")
    if not ambient.is_up_closed(element_map):
        raise ValueError("extension by zero requires an open (up-closed) "
                         "image")
    old_of = {element_map[i]: i for i in range(sheaf.poset.n)}
    dims = [0] * ambient.n
    for amb, i in old_of.items():
        dims[amb] = sheaf.dims[i]
    maps = {}
    for a, b in ambient.covers():
        if a in old_of:  # b is in the image too, by up-closure
            maps[(a, b)] = sheaf.cover_maps[(old_of[a], old_of[b])]
        else:
            maps[(a, b)] = SparseMatrix.zeros(dims[b], dims[a], sheaf.field)
    return Sheaf(ambient, dims, maps, sheaf.field)
