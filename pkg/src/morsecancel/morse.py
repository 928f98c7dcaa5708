"""Morse boundary and co-Morse coboundary matrices over critical cells."""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import SimplicialComplex
from .gvf import _engine, critical_simplices
from .matrix import IntegerMatrix


def morse_boundary_matrix(K: SimplicialComplex, V, q: int) -> IntegerMatrix:
    """Rows: critical (q-1)-cells; columns: critical q-cells.

    One dynamic-programming pass per column gives the weighted trajectory
    sums to every critical face at once.
    """
    eng = _engine(K, V)
    eng.require_gradient()
    rows = critical_simplices(K, eng.V, q - 1)
    cols = critical_simplices(K, eng.V, q)
    columns = []
    for beta in cols:
        agg = eng.aggregates_from(beta)
        columns.append([agg[a].weight_sum if a in agg else 0 for a in rows])
    return IntegerMatrix.from_columns(rows, cols, columns)


def morse_coboundary_matrix(K: SimplicialComplex, V, q: int) -> IntegerMatrix:
    """Rows: critical q-cells; columns: critical (q-1)-cells.

    Computed from co-trajectory sums rather than by transposing.
    """
    eng = _engine(K, V)
    eng.require_gradient()
    rows = critical_simplices(K, eng.V, q)
    cols = critical_simplices(K, eng.V, q - 1)
    columns = []
    for tau in cols:
        agg = eng.coaggregates_from(tau)
        columns.append([agg[s].weight_sum if s in agg else 0 for s in rows])
    return IntegerMatrix.from_columns(rows, cols, columns)


@dataclass
class MorseComplexData:
    critical: dict  # q -> list of critical q-simplices
    boundary: dict = field(default_factory=dict)  # q -> matrix of the q-th boundary
    coboundary: dict = field(default_factory=dict)  # q -> matrix of the q-th coboundary

    @property
    def dimension(self) -> int:
        return max(self.critical) if self.critical else -1

    def counts(self) -> dict:
        return {q: len(c) for q, c in self.critical.items()}

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * len(c) for q, c in self.critical.items())


def morse_complex(K: SimplicialComplex, V, *, coboundary=True) -> MorseComplexData:
    """All Morse matrices for q = 0 .. dim K + 1."""
    eng = _engine(K, V)
    eng.require_gradient()
    d = K.dimension
    data = MorseComplexData({q: critical_simplices(K, eng.V, q) for q in range(d + 1)})
    for q in range(d + 2):
        data.boundary[q] = morse_boundary_matrix(K, eng, q)
        if coboundary:
            data.coboundary[q] = morse_coboundary_matrix(K, eng, q)
    return data


@dataclass
class ChainLawReport:
    failures: list  # (kind, q, product matrix)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def check_chain_law(boundary: dict, coboundary: dict | None = None) -> ChainLawReport:
    """boundary[q-1] @ boundary[q] == 0 and coboundary[q] @ coboundary[q-1] == 0."""
    failures = []
    for q in sorted(boundary):
        if q - 1 in boundary:
            prod = boundary[q - 1] @ boundary[q]
            if not prod.is_zero():
                failures.append(("boundary", q, prod))
    for q in sorted(coboundary or {}):
        if q - 1 in coboundary:
            prod = coboundary[q] @ coboundary[q - 1]
            if not prod.is_zero():
                failures.append(("coboundary", q, prod))
    return ChainLawReport(failures)


def verify_chain_law(K: SimplicialComplex, V) -> ChainLawReport:
    data = morse_complex(K, V)
    return check_chain_law(data.boundary, data.coboundary)


