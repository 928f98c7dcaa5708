"""Finite abstract simplicial complexes and their (co)boundary matrices.

A simplex is a tuple of strictly increasing non-negative vertex ids; the
ascending order is its orientation.  The empty simplex is never stored, so
the chain group in dimension -1 is zero (unreduced homology).
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .errors import MalformedFacetError, UnknownSimplexError
from .matrix import IntegerMatrix

Simplex = tuple


def make_simplex(vertices: Iterable[int]) -> Simplex:
    """Canonical simplex from an iterable of distinct vertex ids."""
    vs = list(vertices)
    if not vs:
        raise MalformedFacetError("empty simplex is not representable")
    for v in vs:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise MalformedFacetError(f"vertex ids must be non-negative integers, got {v!r}")
    s = tuple(sorted(vs))
    if len(set(s)) != len(s):
        raise MalformedFacetError(f"duplicate vertex in {vs}")
    return s


def dim(sigma: Simplex) -> int:
    return len(sigma) - 1


def faces(sigma: Simplex) -> list[tuple[int, Simplex]]:
    """Codimension-one faces with their incidence sign, in vertex-removal order."""
    if len(sigma) < 2:
        return []
    return [((-1) ** i, sigma[:i] + sigma[i + 1:]) for i in range(len(sigma))]


def incidence(sigma: Simplex, tau: Simplex) -> int:
    """Incidence number: (-1)**i if tau is sigma without its i-th vertex, else 0."""
    if len(tau) != len(sigma) - 1:
        return 0
    # tau and sigma are sorted; find the single vertex of sigma missing from tau
    for i, v in enumerate(sigma):
        if i == len(tau) or tau[i] != v:
            return (-1) ** i if sigma[:i] + sigma[i + 1:] == tau else 0
    return 0


class SimplicialComplex:
    """Immutable downward-closed simplex family.

    ``simplices[q]`` lists the q-simplices lexicographically; ``index(sigma)``
    gives a simplex's position inside its dimension.
    """

    __slots__ = ("_by_dim", "_index", "_cofaces", "_facets")

    def __init__(self, simplices: Iterable[Simplex]):
        by_dim: dict[int, list] = {}
        for s in set(simplices):
            by_dim.setdefault(len(s) - 1, []).append(s)
        if not by_dim:
            raise MalformedFacetError("a simplicial complex must be non-empty")
        self._by_dim = {q: tuple(sorted(ss)) for q, ss in sorted(by_dim.items())}
        self._index = {s: i for ss in self._by_dim.values() for i, s in enumerate(ss)}
        for q, ss in self._by_dim.items():
            for s in ss:
                for _, f in faces(s):
                    if f not in self._index:
                        raise MalformedFacetError(f"face {f} of {s} missing: not downward closed")
        self._cofaces = None
        self._facets = None

    @property
    def dimension(self) -> int:
        return max(self._by_dim)

    def simplices(self, q: int) -> tuple:
        return self._by_dim.get(q, ())

    def __iter__(self):
        for q in self._by_dim:
            yield from self._by_dim[q]

    def __len__(self):
        return len(self._index)

    def __contains__(self, sigma) -> bool:
        return sigma in self._index

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self._by_dim == other._by_dim

    def __hash__(self):
        return hash(tuple(self._by_dim.items()))

    def __repr__(self):
        return f"SimplicialComplex(f_vector={self.f_vector()})"

    def index(self, sigma: Simplex) -> int:
        try:
            return self._index[sigma]
        except KeyError:
            raise UnknownSimplexError(f"simplex {sigma} is not in the complex") from None

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.simplices(q)) for q in range(self.dimension + 1))

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.simplices(0))

    def cofaces(self, sigma: Simplex) -> tuple[Simplex, ...]:
        """Codimension-one cofaces of ``sigma``, lexicographically ordered."""
        if self._cofaces is None:
            cof: dict = {s: [] for s in self._index}
            for s in self._index:
                for _, f in faces(s):
                    cof[f].append(s)
            self._cofaces = {s: tuple(sorted(c)) for s, c in cof.items()}
        try:
            return self._cofaces[sigma]
        except KeyError:
            raise UnknownSimplexError(f"simplex {sigma} is not in the complex") from None

    def facets(self) -> tuple[Simplex, ...]:
        """Maximal simplices, ordered by dimension then lexicographically."""
        if self._facets is None:
            self._facets = tuple(s for s in self if not self.cofaces(s))
        return self._facets


def build_complex(facets: Sequence[Iterable[int]]) -> SimplicialComplex:
    """Downward closure of a list of facets."""
    if not facets:
        raise MalformedFacetError("facet list is empty")
    closure: set = set()
    for f in facets:
        top = make_simplex(f)
        if top in closure:
            continue
        for k in range(1, len(top) + 1):
            closure.update(combinations(top, k))
    return SimplicialComplex(closure)


def edge_index(n: int) -> dict[tuple[int, int], int]:
    """Ids of the edges of K_n: position of (i, j), i < j, in lexicographic order."""
    return {e: i for i, e in enumerate(combinations(range(n), 2))}


def matching_complex(n: int) -> SimplicialComplex:
    """Matching complex of the complete graph K_n.

    Vertices are edge ids from :func:`edge_index`; simplices are sets of
    pairwise disjoint edges.
    """
    if n < 2:
        raise ValueError(f"matching complex needs n >= 2, got {n}")
    edges = list(edge_index(n))
    simplices = []

    def extend(start, chosen, used):
        simplices.append(tuple(chosen))
        for k in range(start, len(edges)):
            a, b = edges[k]
            if a in used or b in used:
                continue
            chosen.append(k)
            extend(k + 1, chosen, used | {a, b})
            chosen.pop()

    extend(0, [], frozenset())
    return SimplicialComplex(s for s in simplices if s)


def chain_boundary_matrix(K: SimplicialComplex, q: int) -> IntegerMatrix:
    """Matrix of the q-th boundary map: rows S_{q-1}, columns S_q."""
    cols = K.simplices(q)
    rows = K.simplices(q - 1)
    pos = {s: i for i, s in enumerate(rows)}
    entries = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for sign, f in faces(s):
            entries[pos[f]][j] = sign
    return IntegerMatrix(rows, cols, entries)


def cochain_coboundary_matrix(K: SimplicialComplex, q: int) -> IntegerMatrix:
    """Matrix of the q-th coboundary map C^{q-1} -> C^q: rows S_q, columns S_{q-1}."""
    rows = K.simplices(q)
    cols = K.simplices(q - 1)
    return IntegerMatrix(
        rows, cols, [[incidence(b, a) for a in cols] for b in rows]
    )
