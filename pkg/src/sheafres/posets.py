"""Finite posets, simplicial complexes, order complexes, and monotone maps.

Elements of a poset are dense integer ids with optional string names; all
caches (reachability, stars, a fixed linear extension) are built eagerly at
construction, after which the poset is immutable.
"""

import heapq
from itertools import combinations


class InvalidPoset(ValueError):
    pass


class UnknownElement(KeyError):
    pass


class Poset:
    """A finite poset given by its cover relations (transitive reduction)."""

    def __init__(self, n, covers, names=None):
        self.n = n
        if names is None:
            names = [str(i) for i in range(n)]
        if len(names) != n or len(set(names)) != n:
            raise InvalidPoset("names must be distinct, one per element")
        self.names = list(names)
        self._index = {nm: i for i, nm in enumerate(names)}
        cov = set()
        for a, b in covers:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise InvalidPoset(f"bad cover pair ({a}, {b})")
            cov.add((a, b))
        self._coboundary = [[] for _ in range(n)]
        self._boundary = [[] for _ in range(n)]
        for a, b in sorted(cov):
            self._coboundary[a].append(b)
            self._boundary[b].append(a)
        self.linear_extension = self._topological_order()
        self._up = self._reachability()
        self._check_reduction(cov)
        order_pos = {e: k for k, e in enumerate(self.linear_extension)}
        self._star = [tuple(sorted(self._up[i], key=order_pos.__getitem__))
                      for i in range(n)]

    def _topological_order(self):
        indeg = [len(self._boundary[i]) for i in range(self.n)]
        heap = [i for i in range(self.n) if indeg[i] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for w in self._coboundary[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
        if len(order) != self.n:
            raise InvalidPoset("cover relations contain a cycle")
        return order

    def _reachability(self):
        up = [None] * self.n
        for v in reversed(self.linear_extension):
            s = {v}
            for w in self._coboundary[v]:
                s |= up[w]
            up[v] = frozenset(s)
        return up

    def _check_reduction(self, cov):
        for a, b in cov:
            for w in self._coboundary[a]:
                if w != b and b in self._up[w]:
                    raise InvalidPoset(
                        f"cover ({self.names[a]}, {self.names[b]}) is not a "
                        f"cover: {self.names[w]} lies strictly between")

    # -- basic queries ----------------------------------------------------

    @property
    def elements(self):
        return range(self.n)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElement(name) from None

    def _check(self, e):
        if not (isinstance(e, int) and 0 <= e < self.n):
            raise UnknownElement(e)

    def leq(self, a, b):
        return b in self._up[a]

    def star(self, e):
        """All elements >= e, ordered by the linear extension (e first)."""
        self._check(e)
        return self._star[e]

    def boundary(self, e):
        self._check(e)
        return tuple(self._boundary[e])

    def coboundary(self, e):
        self._check(e)
        return tuple(self._coboundary[e])

    def maximal_elements(self):
        return tuple(e for e in range(self.n) if not self._coboundary[e])

    def height(self):
        h = [0] * self.n
        for v in self.linear_extension:
            for w in self._coboundary[v]:
                h[w] = max(h[w], h[v] + 1)
        return max(h, default=0)

    def covers(self):
        return tuple((a, b) for a in range(self.n)
                     for b in self._coboundary[a])

    def is_up_closed(self, subset):
        s = set(subset)
        return all(w in s for v in s for w in self._coboundary[v])

    def is_linear_extension(self, order):
        if sorted(order) != list(range(self.n)):
            return False
        pos = {e: k for k, e in enumerate(order)}
        return all(pos[a] < pos[b] for a, b in self.covers())

    def induced(self, subset):
        """Subposet on ``subset``; returns (poset, old ids of new elements).

        For up- or down-closed subsets the covers of the subposet are exactly
        the ambient covers with both ends inside.
        """
        old = sorted(set(subset))
        for e in old:
            self._check(e)
        new_of = {e: i for i, e in enumerate(old)}
        covers = [(new_of[a], new_of[b]) for a, b in self.covers()
                  if a in new_of and b in new_of]
        sub = Poset(len(old), covers, [self.names[e] for e in old])
        return sub, old


class PosetMap:
    """A monotone (Alexandrov-continuous) map between posets."""

    def __init__(self, source, target, images, simplicial=False):
        if len(images) != source.n:
            raise InvalidPoset("image table must cover every source element")
        for v in images:
            target._check(v)
        for a, b in source.covers():
            if not target.leq(images[a], images[b]):
                raise InvalidPoset(
                    f"map is not monotone on cover "
                    f"({source.names[a]}, {source.names[b]})")
        self.source = source
        self.target = target
        self.images = list(images)
        self.simplicial = simplicial

    def __call__(self, e):
        self.source._check(e)
        return self.images[e]

    def preimage_star(self, lam):
        """{s in source : f(s) >= lam}, an open set of the source."""
        self.target._check(lam)
        up = self.target._up[lam]
        return tuple(e for e in self.source.elements if self.images[e] in up)


class InvalidComplex(ValueError):
    pass


def simplex_name(simplex):
    if not simplex:
        return "empty"
    return ",".join(str(v) for v in sorted(simplex))


class SimplicialComplex:
    """An abstract simplicial complex on hashable, sortable vertices."""

    def __init__(self, simplices):
        simps = {frozenset(s) for s in simplices}
        simps.discard(frozenset())
        for s in simps:
            for k in range(1, len(s)):
                for face in combinations(sorted(s), k):
                    if frozenset(face) not in simps:
                        raise InvalidComplex(
                            f"missing face {set(face)} of {set(s)}")
        self.simplices = simps
        self.vertices = tuple(sorted({v for s in simps for v in s}))

    @classmethod
    def from_facets(cls, facets):
        simps = set()
        for f in facets:
            f = tuple(sorted(set(f)))
            for k in range(1, len(f) + 1):
                simps.update(frozenset(c) for c in combinations(f, k))
        return cls(simps)

    @classmethod
    def simplex_skeleton(cls, n, k):
        """The k-skeleton of the n-simplex on vertices 0..n."""
        verts = range(n + 1)
        return cls(frozenset(c) for d in range(1, k + 2)
                   for c in combinations(verts, d))

    def dim(self):
        return max((len(s) for s in self.simplices), default=0) - 1

    def __contains__(self, s):
        return frozenset(s) in self.simplices

    def __len__(self):
        return len(self.simplices)

    def sorted_simplices(self):
        return sorted(self.simplices, key=lambda s: (len(s), sorted(s)))

    def face_poset(self, include_empty=False):
        """The face poset; covers are codimension-1 inclusions.

        Returns (poset, simplices) with simplices[i] the frozenset behind
        element i (None for the empty face when included).
        """
        faces = self.sorted_simplices()
        if include_empty:
            faces = [None] + faces
        idx = {s: i for i, s in enumerate(faces) if s is not None}
        covers = []
        for i, s in enumerate(faces):
            if s is None:
                continue
            if len(s) == 1:
                if include_empty:
                    covers.append((0, i))
                continue
            for v in s:
                covers.append((idx[s - {v}], i))
        names = ["empty" if s is None else simplex_name(s) for s in faces]
        poset = Poset(len(faces), covers, names)
        return poset, faces


def simplicial_poset_map(source, target, vertex_map):
    """PosetMap between face posets induced by a simplicial vertex map.

    ``vertex_map`` sends vertices of ``source`` to vertices of ``target``;
    every image of a simplex must be a simplex of ``target``.
    """
    sp, sfaces = source.face_poset()
    tp, tfaces = target.face_poset()
    tidx = {s: i for i, s in enumerate(tfaces)}
    images = []
    for s in sfaces:
        img = frozenset(vertex_map[v] for v in s)
        if img not in tidx:
            raise InvalidComplex(f"image of {set(s)} is not a simplex")
        images.append(tidx[img])
    return PosetMap(sp, tp, images, simplicial=True)


class OrderComplex:
    """Strict chains of a poset up to a given degree, with signed incidence.

    ``chains[i]`` lists the chains with i+1 elements as tuples of element
    ids, sorted lexicographically by linear-extension position.  The sign of
    a codimension-1 pair is (-1)^position of the inserted element; this is
    the standard alternating convention and satisfies the double-composite
    identity.
    """

    def __init__(self, poset, max_degree):
        if max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        self.poset = poset
        pos = {e: k for k, e in enumerate(poset.linear_extension)}
        chains = [[(e,) for e in poset.linear_extension]]
        for _ in range(max_degree):
            nxt = []
            for ch in chains[-1]:
                last = ch[-1]
                for e in poset.star(last):
                    if e != last:
                        nxt.append(ch + (e,))
            nxt.sort(key=lambda ch: tuple(pos[e] for e in ch))
            chains.append(nxt)
        self.chains = chains
        self.index = [{ch: i for i, ch in enumerate(level)}
                      for level in chains]

    def incidence(self, small, big):
        """Signed incidence [small : big]; nonzero only when ``big`` extends
        ``small`` by one inserted element."""
        if len(big) != len(small) + 1:
            return 0
        for i in range(len(big)):
            if big[:i] + big[i + 1:] == small:
                return -1 if i % 2 else 1
        return 0

    def extensions(self, chain):
        """All (position, chain') with chain' a one-element extension."""
        out = []
        n = len(chain)
        if n >= len(self.chains):  # extension would exceed max_degree
            return out
        p = self.poset
        for i in range(n + 1):
            below = chain[i - 1] if i > 0 else None
            above = chain[i] if i < n else None
            for e in p.elements:
                if below is not None and (e == below or not p.leq(below, e)):
                    continue
                if above is not None and (e == above or not p.leq(e, above)):
                    continue
                out.append((i, chain[:i] + (e,) + chain[i:]))
        return out
