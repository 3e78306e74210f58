"""Shared randomized generators for the test suite.

Random sheaves are built as kernels of random natural transformations
between injective sheaves, which produces valid (functorial) sheaves by
construction; cover maps come from unique basis expressions.
"""

import random
from itertools import combinations

import pytest

from sheafres import (Poset, SimplicialComplex, InjectiveSheaf,
                      LabeledMatrix, SparseMatrix, Sheaf, QQ,
                      kernel_basis, express_in_row_span, constant_sheaf)


def random_poset(rng, n_max=10, p=0.35):
    n = rng.randint(2, n_max)
    edge = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edge[i][j] = True
    reach = [[False] * n for _ in range(n)]
    for i in reversed(range(n)):
        for j in range(i + 1, n):
            if edge[i][j]:
                reach[i][j] = True
                for k in range(j + 1, n):
                    if reach[j][k]:
                        reach[i][k] = True
    covers = [(i, j) for i in range(n) for j in range(i + 1, n)
              if edge[i][j]
              and not any(reach[i][k] and reach[k][j]
                          for k in range(i + 1, j))]
    return Poset(n, covers)


def random_injective(rng, poset, n_gens, field=QQ):
    order = {e: k for k, e in enumerate(poset.linear_extension)}
    gens = sorted((rng.randrange(poset.n) for _ in range(n_gens)),
                  key=order.__getitem__)
    return InjectiveSheaf(poset, tuple(gens), field)


def random_labeled_matrix(rng, domain, codomain, density=0.7):
    poset = domain.poset
    fld = domain.field
    rows = []
    for g in codomain.generators:
        row = {}
        for j, h in enumerate(domain.generators):
            if poset.leq(g, h) and rng.random() < density:
                v = rng.randint(-2, 2)
                if v:
                    row[j] = fld.from_int(v)
        rows.append(row)
    return LabeledMatrix(domain, codomain,
                         SparseMatrix(len(codomain), len(domain), rows, fld))


def kernel_sheaf(eta):
    """The sheaf of pointwise kernels of a map between injective sheaves."""
    poset = eta.domain.poset
    fld = eta.field
    bases = {e: kernel_basis(eta.eval_at(e)) for e in poset.elements}
    dims = [len(bases[e]) for e in poset.elements]
    maps = {}
    for a, b in poset.covers():
        restr = eta.domain.restriction_matrix(a, b)
        span = SparseMatrix(dims[b], eta.domain.stalk_dim(b),
                            [dict(v) for v in bases[b]], fld)
        rows = [{} for _ in range(dims[b])]
        for j, v in enumerate(bases[a]):
            coeffs = express_in_row_span(restr.mul_vec(v), span)
            assert coeffs is not None  # restrictions of kernel vectors stay
            for i, x in coeffs.items():
                rows[i][j] = x
        maps[(a, b)] = SparseMatrix(dims[b], dims[a], rows, fld)
    return Sheaf(poset, dims, maps, fld)


def random_sheaf(rng, poset, field=QQ, max_dim=3):
    fallback = None
    for _ in range(80):
        dom = random_injective(rng, poset, rng.randint(2, 5), field)
        cod = random_injective(rng, poset, rng.randint(1, 3), field)
        sheaf = kernel_sheaf(random_labeled_matrix(rng, dom, cod))
        if 0 < max(sheaf.dims) <= max_dim:
            if max(sheaf.dims) >= 2:
                return sheaf
            fallback = fallback or sheaf
    return fallback or constant_sheaf(poset, field)


def random_complex(rng, n_vertices=7, n_facets=None):
    verts = list(range(rng.randint(1, n_vertices)))
    if n_facets is None:
        n_facets = rng.randint(1, 6)
    facets = []
    for _ in range(n_facets):
        size = rng.randint(1, min(4, len(verts)))
        facets.append(tuple(rng.sample(verts, size)))
    return SimplicialComplex.from_facets(facets)


@pytest.fixture
def rng():
    return random.Random(177)


@pytest.fixture
def tetrahedron_boundary():
    return SimplicialComplex.from_facets(
        [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)])


@pytest.fixture
def pendant_star_complex():
    """Link of the distinguished vertex of the 3-skeleton of a 4-simplex
    with two pendant edges: the boundary of a tetrahedron on {2,3,4,5} plus
    two isolated vertices.  Its face poset with the empty face adjoined is
    the star poset used in the worked example."""
    facets = list(combinations([2, 3, 4, 5], 3)) + [(6,), (7,)]
    return SimplicialComplex.from_facets(facets)
