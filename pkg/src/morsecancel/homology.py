"""Integer homology through the Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass

from .complex import SimplicialComplex, chain_boundary_matrix
from .errors import ChainLawError
from .matrix import IntegerMatrix
from .morse import morse_boundary_matrix


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple  # invariant factors in divisibility order, zeros last
    rank: int

    @property
    def invariant_factors(self) -> tuple:
        return tuple(d for d in self.diagonal if d)


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple = ()

    def to_json(self, q=None) -> dict:
        out = {"betti": self.betti, "torsion": list(self.torsion)}
        return {"q": q, **out} if q is not None else out

    def __str__(self):
        parts = ["Z"] * (self.betti > 0)
        if self.betti > 1:
            parts = [f"Z^{self.betti}"]
        parts += [f"Z_{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def smith_normal_form(M) -> SmithForm:
    """Diagonal of the Smith normal form over the integers.

    Plain elimination: the pivot is the smallest nonzero entry in absolute
    value of the remaining block, reduced until it divides its row, column,
    and the rest of the block.
    """
    A = [list(r) for r in (M.entries if isinstance(M, IntegerMatrix) else M)]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    f = A[i][t] // p
                    if f:
                        A[i] = [a - f * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    f = A[t][j] // p
                    if f:
                        for row in A:
                            row[j] -= f * row[t]
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # pivot clears its row and column; it must also divide the block
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            # a smaller remainder appeared; move it to the pivot slot
            best = min(
                [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                + [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            )
            _, i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    rank = len(diag)
    diag += [0] * (min(m, n) - rank)
    return SmithForm(tuple(diag), rank)


def homology_of_pair(d_next: IntegerMatrix, d_q: IntegerMatrix) -> HomologyGroup:
    """H_q = ker(d_q) / im(d_next), where d_next maps into the domain of d_q."""
    n = len(d_q.cols)
    if len(d_next.rows) != n:
        raise ChainLawError(
            f"d_next has {len(d_next.rows)} rows but d_q has {n} columns"
        )
    if not (d_q @ d_next).is_zero():
        raise ChainLawError("boundary of boundary is not zero")
    snf_next = smith_normal_form(d_next)
    rank_q = smith_normal_form(d_q).rank
    betti = n - rank_q - snf_next.rank
    torsion = tuple(d for d in snf_next.invariant_factors if d > 1)
    return HomologyGroup(betti, torsion)


def simplicial_homology(K: SimplicialComplex, q: int) -> HomologyGroup:
    return homology_of_pair(chain_boundary_matrix(K, q + 1), chain_boundary_matrix(K, q))


def morse_homology(K: SimplicialComplex, V, q: int) -> HomologyGroup:
    return homology_of_pair(morse_boundary_matrix(K, V, q + 1), morse_boundary_matrix(K, V, q))


def homology_from_boundaries(boundary: dict, dimension: int) -> list[HomologyGroup]:
    """H_0 .. H_dimension from a q -> boundary-matrix map."""
    return [homology_of_pair(boundary[q + 1], boundary[q]) for q in range(dimension + 1)]
