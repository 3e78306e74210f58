

import pytest

from sheafres import (Poset, PosetMap, SimplicialComplex, constant_sheaf,
                      restrict, minimal_resolution, pushforward,
                      compact_pushforward, simplicial_poset_map,
                      oracle_star_cohomology_c, oracle_open_cohomology_c,
                      oracle_order_complex_cohomology,
                      verify_multiplicity_theorem, rank, GF)
from conftest import random_poset, random_complex


def monotone_to_chain(rng, poset, length):
    """Random monotone map onto a chain, built along a linear extension."""
    chain = Poset(length, [(i, i + 1) for i in range(length - 1)])
    images = [0] * poset.n
    for e in poset.linear_extension:
        lo = max((images[b] for b in poset.boundary(e)), default=0)
        images[e] = rng.randint(lo, length - 1)
    return PosetMap(poset, chain, images)


def to_point(poset):
    return PosetMap(poset, Poset(1, [], ["pt"]), [0] * poset.n)


def test_identity_pushforward_is_identity(rng):
    for _ in range(5):
        P = random_poset(rng, n_max=7)
        F = constant_sheaf(P)
        res = minimal_resolution(F)
        ident = PosetMap(P, P, list(P.elements))
        R0 = pushforward(res, ident, 0)
        assert R0.dims == F.dims
        for c in P.covers():
            assert rank(R0.cover_maps[c]) == 1
        for j in (1, 2):
            assert pushforward(res, ident, j).is_zero()


def test_sphere_to_point(tetrahedron_boundary):
    P, _ = tetrahedron_boundary.face_poset()
    res = minimal_resolution(constant_sheaf(P))
    f = to_point(P)
    dims = [pushforward(res, f, j).dims[0] for j in range(3)]
    assert dims == [1, 0, 1]


def test_dimension_filtration_pushforward(tetrahedron_boundary):
    P, faces = tetrahedron_boundary.face_poset()
    chain = Poset(3, [(0, 1), (1, 2)])
    f = PosetMap(P, chain, [len(faces[e]) - 1 for e in P.elements])
    res = minimal_resolution(constant_sheaf(P))
    R0 = pushforward(res, f, 0)
    # the preimage of St 2 is the four disjoint open triangles
    assert R0.dims[2] == 4
    assert R0.dims[0] == 1  # whole sphere is connected
    for j in range(3):
        G = pushforward(res, f, j)
        assert G.validate() == []


def test_pushforward_matches_order_oracle_randomly(rng):
    for _ in range(8):
        S = random_complex(rng, n_vertices=5)
        P, _ = S.face_poset()
        f = monotone_to_chain(rng, P, rng.randint(1, 3))
        res = minimal_resolution(constant_sheaf(P))
        for lam in f.target.elements:
            expected = oracle_order_complex_cohomology(
                P, list(f.preimage_star(lam)))
            for j in range(len(expected)):
                assert pushforward(res, f, j).dims[lam] == expected[j]


def test_negative_degree_rejected(tetrahedron_boundary):
    P, _ = tetrahedron_boundary.face_poset()
    res = minimal_resolution(constant_sheaf(P))
    with pytest.raises(ValueError):
        pushforward(res, to_point(P), -1)


def test_compact_pushforward_open_star(tetrahedron_boundary):
    point = SimplicialComplex.from_facets([(0,)])
    f = simplicial_poset_map(tetrahedron_boundary, point,
                             {1: 0, 2: 0, 3: 0, 4: 0})
    src = f.source
    U = list(src.star(src.index("1")))
    FU = restrict(constant_sheaf(src), U)
    dims = [compact_pushforward(FU, f, j).dims[0] for j in range(3)]
    assert dims == [0, 0, 1]


def test_compact_pushforward_full_complex(tetrahedron_boundary):
    point = SimplicialComplex.from_facets([(0,)])
    f = simplicial_poset_map(tetrahedron_boundary, point,
                             {1: 0, 2: 0, 3: 0, 4: 0})
    F = constant_sheaf(f.source)
    dims = [compact_pushforward(F, f, j).dims[0] for j in range(3)]
    assert dims == [1, 0, 1]


def test_compact_pushforward_empty_domain(tetrahedron_boundary):
    point = SimplicialComplex.from_facets([(0,)])
    f = simplicial_poset_map(tetrahedron_boundary, point,
                             {1: 0, 2: 0, 3: 0, 4: 0})
    empty = constant_sheaf(Poset(0, []))
    for j in range(3):
        assert compact_pushforward(empty, f, j).is_zero()


def test_compact_pushforward_requires_simplicial(tetrahedron_boundary):
    P, _ = tetrahedron_boundary.face_poset()
    f = to_point(P)
    with pytest.raises(ValueError, match="simplicial"):
        compact_pushforward(constant_sheaf(P), f, 0)


# -- oracles --------------------------------------------------------------


def test_star_oracle_facet():
    S = SimplicialComplex.from_facets([(0, 1, 2)])
    dims = oracle_star_cohomology_c(S, frozenset({0, 1, 2}))
    assert dims == [0, 0, 1]
    # star of an edge in the full triangle is a half-open region: H_c = 0
    dims = oracle_star_cohomology_c(S, frozenset({0, 1}))
    assert dims == [0, 0, 0]


def test_star_oracle_vertex_of_sphere(tetrahedron_boundary):
    dims = oracle_star_cohomology_c(tetrahedron_boundary, frozenset({1}))
    assert dims == [0, 0, 1]


def test_star_oracle_unknown_simplex(tetrahedron_boundary):
    with pytest.raises(KeyError):
        oracle_star_cohomology_c(tetrahedron_boundary, frozenset({9}))


def test_open_oracle_rejects_non_open():
    S = SimplicialComplex.from_facets([(0, 1)])
    with pytest.raises(ValueError, match="open"):
        oracle_open_cohomology_c(S, [frozenset({0})])


def test_order_oracle_whole_sphere(tetrahedron_boundary):
    P, _ = tetrahedron_boundary.face_poset()
    assert oracle_order_complex_cohomology(P, list(P.elements)) == [1, 0, 1]


def test_order_oracle_stars_contractible(rng):
    for _ in range(6):
        P = random_poset(rng, n_max=7)
        for e in P.elements:
            dims = oracle_order_complex_cohomology(P, list(P.star(e)))
            assert dims[0] == 1
            assert all(d == 0 for d in dims[1:])


def test_order_oracle_two_points():
    P = Poset(3, [(0, 1), (0, 2)])
    assert oracle_order_complex_cohomology(P, [1, 2])[0] == 2
    with pytest.raises(ValueError):
        oracle_order_complex_cohomology(P, [0])


def test_order_oracle_empty_subset():
    P = Poset(2, [(0, 1)])
    assert oracle_order_complex_cohomology(P, [])[0] == 0


def test_multiplicity_theorem_small(tetrahedron_boundary):
    assert verify_multiplicity_theorem(tetrahedron_boundary)
    S = SimplicialComplex.from_facets([(0, 1), (1, 2), (0, 2)])  # circle
    assert verify_multiplicity_theorem(S)
    assert verify_multiplicity_theorem(S, GF(3))
