"""Injective sheaves as generator tuples and maps between them as labeled
matrices.

An injective sheaf is recorded as an ordered tuple of poset elements; each
entry denotes one indecomposable summand supported on the down-set of its
label.  A natural transformation between two injective sheaves is a single
matrix whose rows and columns are labeled by the generator tuples, nonzero
only where the row label lies below the column label.
"""

from .fields import QQ
from .linalg import SparseMatrix
from .sheaves import Sheaf, NatTrans


class SupportViolation(ValueError):
    pass


class InjectiveSheaf:
    def __init__(self, poset, generators, field=QQ):
        for g in generators:
            poset._check(g)
        self.poset = poset
        self.generators = tuple(generators)
        self.field = field
        self._positions = {}

    def __len__(self):
        return len(self.generators)

    def positions_over(self, e):
        """Positions of generators whose label is >= e, in tuple order.
        These index the coordinates of the stalk at e."""
        got = self._positions.get(e)
        if got is None:
            up = self.poset._up[e]
            got = tuple(i for i, g in enumerate(self.generators) if g in up)
            self._positions[e] = got
        return got

    def positions_in(self, subset):
        """Positions of generators whose label lies in an up-closed set."""
        s = set(subset)
        return tuple(i for i, g in enumerate(self.generators) if g in s)

    def stalk_dim(self, e):
        return len(self.positions_over(e))

    def restriction_matrix(self, a, b):
        """The 0/1 projection from generators over a onto generators over b,
        for a <= b."""
        if not self.poset.leq(a, b):
            raise ValueError("restriction requires comparable elements")
        src = self.positions_over(a)
        colmap = {g: j for j, g in enumerate(src)}
        one = self.field.one
        rows = [{colmap[g]: one} for g in self.positions_over(b)]
        return SparseMatrix(len(rows), len(src), rows, self.field)

    def multiplicity(self, e):
        return sum(1 for g in self.generators if g == e)

    def as_sheaf(self):
        dims = [self.stalk_dim(e) for e in self.poset.elements]
        maps = {(a, b): self.restriction_matrix(a, b)
                for a, b in self.poset.covers()}
        return Sheaf(self.poset, dims, maps, self.field)

    def __eq__(self, other):
        return (isinstance(other, InjectiveSheaf)
                and self.poset.names == other.poset.names
                and self.generators == other.generators
                and self.field == other.field)

    def __repr__(self):
        labels = [self.poset.names[g] for g in self.generators]
        return f"InjectiveSheaf({labels})"


class LabeledMatrix:
    """A natural transformation between injective sheaves: one matrix with
    rows labeled by the codomain generators and columns by the domain
    generators.  The support condition (row label below column label) is
    enforced at construction."""

    def __init__(self, domain, codomain, matrix):
        if matrix.nrows != len(codomain) or matrix.ncols != len(domain):
            raise SupportViolation(
                f"matrix shape {matrix.nrows}x{matrix.ncols} does not match "
                f"generator tuples {len(codomain)}x{len(domain)}")
        poset = domain.poset
        for i, row in enumerate(matrix.rows):
            for j in row:
                if not poset.leq(codomain.generators[i],
                                 domain.generators[j]):
                    raise SupportViolation(
                        f"entry ({i}, {j}) violates the support condition: "
                        f"{poset.names[codomain.generators[i]]} is not below "
                        f"{poset.names[domain.generators[j]]}")
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix

    @property
    def field(self):
        return self.matrix.field

    def eval_at(self, e):
        """The linear map at element e: the submatrix of rows and columns
        whose labels lie in the star of e."""
        return self.matrix.submatrix(self.codomain.positions_over(e),
                                     self.domain.positions_over(e))

    def eval_on(self, subset):
        """Submatrix over an up-closed set of labels (the generalization of
        ``eval_at`` used by derived pushforwards)."""
        return self.matrix.submatrix(self.codomain.positions_in(subset),
                                     self.domain.positions_in(subset))

    def compose(self, other):
        """self . other as labeled matrices (other's codomain = self's
        domain)."""
        if other.codomain.generators != self.domain.generators:
            raise SupportViolation("composition labels do not match")
        return LabeledMatrix(other.domain, self.codomain,
                             self.matrix.mul(other.matrix))

    def nat_trans(self):
        """The explicit natural transformation between the underlying
        sheaves; naturality holds by the support condition."""
        maps = [self.eval_at(e) for e in self.domain.poset.elements]
        return NatTrans(self.domain.as_sheaf(), self.codomain.as_sheaf(),
                        maps)

    def __eq__(self, other):
        return (isinstance(other, LabeledMatrix)
                and self.domain == other.domain
                and self.codomain == other.codomain
                and self.matrix == other.matrix)


class Multiplicities:
    """Table (degree, element) -> number of generators with that label."""

    def __init__(self, table):
        self.table = {k: v for k, v in table.items() if v}

    @classmethod
    def of_terms(cls, terms):
        table = {}
        for j, term in enumerate(terms):
            for g in term.generators:
                table[(j, g)] = table.get((j, g), 0) + 1
        return cls(table)

    def __getitem__(self, key):
        return self.table.get(key, 0)

    def degrees(self):
        return sorted({j for j, _ in self.table})

    def rows(self, poset):
        """Sorted (element name, degree, multiplicity) rows, nonzero only."""
        return sorted((poset.names[e], j, m)
                      for (j, e), m in self.table.items())

    def __eq__(self, other):
        return isinstance(other, Multiplicities) and self.table == other.table

    def __repr__(self):
        return f"Multiplicities({self.table})"
