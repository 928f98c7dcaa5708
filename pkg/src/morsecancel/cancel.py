"""Cancelling critical pairs and updating Morse matrices without re-enumeration.

After cancelling (sigma0, tau0) the boundary matrices change only in three
dimensions:

* ``k + 1``: drop the sigma0 row;
* ``k``: entry (tau_i, sigma_j) becomes ``a_ij - a00 * a0j * ai0`` and the
  sigma0 column / tau0 row disappear;
* ``k - 1``: drop the tau0 column.

Everything else is untouched.  The coboundary updates are the transposed
versions of the same three rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import SimplicialComplex
from .errors import (
    InvalidPairError,
    NotCancellableError,
    SequencingError,
    TrajectoryOverflowError,
)
from .gvf import (
    DiscreteVectorField,
    Trajectory,
    TrajectoryEngine,
    _engine,
    critical_simplices,
)
from .matrix import IntegerMatrix
from .morse import MorseComplexData

MAX_SIMULTANEOUS = 16


@dataclass(frozen=True)
class CancellablePair:
    sigma0: tuple
    tau0: tuple
    trajectory: Trajectory
    weight: int

    @property
    def k(self) -> int:
        return len(self.sigma0) - 1


# -- finding and cancelling pairs --------------------------------------


def _unique_trajectory(eng: TrajectoryEngine, sigma0, tau0) -> Trajectory | None:
    """Walk back-pointers from tau0; valid only when exactly one path exists."""
    agg = eng.aggregates_from(sigma0)
    if tau0 not in agg or agg[tau0].path_count != 1:
        return None
    q = len(sigma0) - 1
    path = [tau0]
    node = tau0
    while node != sigma0:
        if len(node) == q:
            preds = [b for b in eng.K.cofaces(node) if b in agg and eng.V.down.get(b) != node]
        else:
            preds = [eng.V.down[node]]
        (node,) = [p for p in preds if p in agg]
        path.append(node)
    return Trajectory(tuple(reversed(path)), "q-to-(q-1)")


def find_cancellable_pairs(K: SimplicialComplex, V, k: int) -> list[CancellablePair]:
    """All critical (k, k-1) pairs joined by exactly one trajectory.

    Uniqueness is decided by the exact path count, never by the weight sum.
    """
    eng = _engine(K, V)
    eng.require_gradient()
    lower = set(critical_simplices(K, eng.V, k - 1))
    out = []
    for sigma in critical_simplices(K, eng.V, k):
        agg = eng.aggregates_from(sigma)
        for tau in sorted(t for t in agg if t in lower and agg[t].path_count == 1):
            traj = _unique_trajectory(eng, sigma, tau)
            out.append(CancellablePair(sigma, tau, traj, agg[tau].weight_sum))
    return out


def make_pair(K: SimplicialComplex, V, sigma0, tau0) -> CancellablePair:
    """Validate (sigma0, tau0) against V and attach its unique trajectory."""
    eng = _engine(K, V)
    sigma0, tau0 = tuple(sigma0), tuple(tau0)
    crit_k = critical_simplices(K, eng.V, len(sigma0) - 1)
    crit_km1 = critical_simplices(K, eng.V, len(tau0) - 1)
    if len(sigma0) != len(tau0) + 1 or sigma0 not in crit_k or tau0 not in crit_km1:
        raise InvalidPairError(
            f"({list(sigma0)}, {list(tau0)}) is not a pair of critical k- and (k-1)-cells"
        )
    agg = eng.aggregate(sigma0, tau0)
    if agg.path_count != 1:
        raise InvalidPairError(
            f"{agg.path_count} trajectories from {list(sigma0)} to {list(tau0)}; need exactly 1",
            path_count=agg.path_count,
        )
    return CancellablePair(sigma0, tau0, _unique_trajectory(eng, sigma0, tau0), agg.weight_sum)


def _reverse_pairs(traj: Trajectory):
    seq = traj.simplices
    betas = seq[0::2]
    alphas = seq[1::2]
    removed = {(alphas[i - 1], betas[i]) for i in range(1, len(betas))}
    added = {(alphas[i], betas[i]) for i in range(len(betas))}
    return removed, added


def cancel_pair(K: SimplicialComplex, V, pair: CancellablePair) -> DiscreteVectorField:
    """Flip every arrow along the pair's unique trajectory."""
    eng = _engine(K, V)
    current = make_pair(K, eng, pair.sigma0, pair.tau0)
    if current.trajectory != pair.trajectory:
        raise InvalidPairError("stale pair: its trajectory is not the current unique trajectory")
    removed, added = _reverse_pairs(current.trajectory)
    return DiscreteVectorField((eng.V.pairs - removed) | added)


def simultaneous_cancellable(K: SimplicialComplex, V, pairs, *, cap: int = MAX_SIMULTANEOUS):
    """Check that no non-identity permutation links every sigma_i to some tau_pi(i).

    Returns ``(True, None)`` if the sufficient condition holds, otherwise
    ``(False, pi)`` with one admissible non-identity permutation.
    """
    eng = _engine(K, V)
    R = [
        [len(s.sigma0) == len(t.tau0) + 1 and eng.aggregate(s.sigma0, t.tau0).path_count > 0
         for t in pairs]
        for s in pairs
    ]
    pi = find_nonidentity_permutation(R, cap=cap)
    return pi is None, pi


def find_nonidentity_permutation(R, *, cap: int = MAX_SIMULTANEOUS):
    """Depth-first search for pi != id with R[i][pi[i]] true for every i."""
    t = len(R)
    if t > cap:
        raise ValueError(f"{t} pairs exceeds the permutation search cap of {cap}")
    used = [False] * t
    pi = [0] * t

    def place(i, moved):
        if i == t:
            return moved
        for j in range(t):
            if not used[j] and R[i][j]:
                used[j] = True
                pi[i] = j
                if place(i + 1, moved or j != i):
                    return True
                used[j] = False
        return False

    return tuple(pi) if place(0, False) else None


def cancel_many(K: SimplicialComplex, V, pairs, *, one_shot: bool = False) -> DiscreteVectorField:
    """Cancel several pairs.

    By default each pair is re-validated and cancelled against the field
    produced by the previous cancellation.  With ``one_shot`` all the
    trajectories found under V are reversed at once.
    """
    eng = _engine(K, V)
    if one_shot:
        removed, added = set(), set()
        for i, p in enumerate(pairs):
            try:
                cur = make_pair(K, eng, *_ends(p))
            except InvalidPairError as exc:
                raise SequencingError(str(exc), i, p) from exc
            r, a = _reverse_pairs(cur.trajectory)
            removed |= r
            added |= a
        return DiscreteVectorField((eng.V.pairs - removed) | added)
    field_ = eng.V
    for i, p in enumerate(pairs):
        step = TrajectoryEngine(K, field_, check=False)
        s0, t0 = _ends(p)
        try:
            cur = make_pair(K, step, s0, t0)
        except InvalidPairError as exc:
            raise SequencingError(
                f"pair {i} ({list(s0)}, {list(t0)}) is not cancellable at its turn: {exc}",
                i,
                p,
            ) from exc
        field_ = cancel_pair(K, step, cur)
    return field_


def _ends(p):
    if isinstance(p, CancellablePair):
        return p.sigma0, p.tau0
    s0, t0 = p
    return tuple(s0), tuple(t0)


# -- fast matrix updates -----------------------------------------------


@dataclass
class RowOpTrace:
    """Elementary row operations on the k-th boundary matrix.

    ``ops`` holds ``("scale", row, factor)`` and ``("add", src, dst, factor)``
    (row dst += factor * row src); ``deleted`` the (row, column) removed at
    the end.
    """

    ops: list = field(default_factory=list)
    deleted: tuple = ()

    def replay(self, B: IntegerMatrix) -> IntegerMatrix:
        rows = {r: list(B.row(r)) for r in B.rows}
        for op in self.ops:
            if op[0] == "scale":
                _, r, c = op
                rows[r] = [c * x for x in rows[r]]
            else:
                _, src, dst, c = op
                rows[dst] = [x + c * y for x, y in zip(rows[dst], rows[src])]
        M = IntegerMatrix(B.rows, B.cols, [rows[r] for r in B.rows])
        row0, col0 = self.deleted
        return M.delete_row(row0).delete_col(col0)

    def lines(self) -> list[str]:
        out = []
        for op in self.ops:
            if op[0] == "scale":
                out.append(f"R[{_fmt(op[1])}] <- {op[2]} * R[{_fmt(op[1])}]")
            else:
                out.append(f"R[{_fmt(op[2])}] <- R[{_fmt(op[2])}] + ({op[3]}) * R[{_fmt(op[1])}]")
        if self.deleted:
            out.append(f"delete row {_fmt(self.deleted[0])}, column {_fmt(self.deleted[1])}")
        return out


def _fmt(label):
    return str(list(label)) if isinstance(label, tuple) else str(label)


def update_boundary_k(B: IntegerMatrix, row0, col0) -> tuple[IntegerMatrix, RowOpTrace]:
    """k-th boundary after cancelling the pair at (row0 = tau0, col0 = sigma0).

    Entry (tau_i, sigma_j) becomes a_ij - a00 * a0j * ai0, where a00 is the
    pivot; row0 and col0 are removed.
    """
    i0, j0 = B.row_index(row0), B.col_index(col0)
    a00 = B.entries[i0][j0]
    if a00 not in (1, -1):
        raise NotCancellableError(f"pivot ({_fmt(row0)}, {_fmt(col0)}) is {a00}, not +-1")
    r0 = B.entries[i0]
    trace = RowOpTrace([("scale", row0, a00)], (row0, col0))
    entries = []
    for i, row in enumerate(B.entries):
        if i == i0:
            continue
        ai0 = row[j0]
        if ai0:
            trace.ops.append(("add", row0, B.rows[i], -ai0))
            row = [a - a00 * a0 * ai0 for a, a0 in zip(row, r0)]
        entries.append(row[:j0] + row[j0 + 1:])
    rows = B.rows[:i0] + B.rows[i0 + 1:]
    cols = B.cols[:j0] + B.cols[j0 + 1:]
    return IntegerMatrix(rows, cols, entries), trace


def update_boundary_kplus1(B: IntegerMatrix, sigma0) -> IntegerMatrix:
    """(k+1)-th boundary: sigma0 is no longer a generator of the target."""
    return B.delete_row(sigma0)


def update_boundary_kminus1(B: IntegerMatrix, tau0) -> IntegerMatrix:
    """(k-1)-th boundary: restriction to chains without tau0."""
    return B.delete_col(tau0)


def update_coboundary_k(D: IntegerMatrix, sigma0, tau0) -> IntegerMatrix:
    """k-th coboundary (rows: k-cells, columns: (k-1)-cells), column-operation form."""
    j0, i0 = D.row_index(sigma0), D.col_index(tau0)
    a00 = D.entries[j0][i0]
    if a00 not in (1, -1):
        raise NotCancellableError(f"pivot ({_fmt(sigma0)}, {_fmt(tau0)}) is {a00}, not +-1")
    a0 = D.entries[j0]  # a_{0i}: coefficient of sigma0 in the coboundary of tau_i
    entries = [
        [x - a00 * a0[i] * row[i0] for i, x in enumerate(row) if i != i0]
        for j, row in enumerate(D.entries)
        if j != j0
    ]
    return IntegerMatrix(
        D.rows[:j0] + D.rows[j0 + 1:], D.cols[:i0] + D.cols[i0 + 1:], entries
    )


def update_coboundary_kplus1(D: IntegerMatrix, sigma0) -> IntegerMatrix:
    """(k+1)-th coboundary: restriction to cochains without sigma0."""
    return D.delete_col(sigma0)


def update_coboundary_kminus1(D: IntegerMatrix, tau0) -> IntegerMatrix:
    """(k-1)-th coboundary: tau0 drops out of the target."""
    return D.delete_row(tau0)


def fast_update(data: MorseComplexData, sigma0, tau0) -> MorseComplexData:
    """Morse data for the cancelled field, computed from the old matrices only."""
    k = len(sigma0) - 1
    critical = {
        q: [c for c in cells if c != sigma0 and c != tau0] for q, cells in data.critical.items()
    }
    out = MorseComplexData(critical, dict(data.boundary), dict(data.coboundary))
    if k in data.boundary:
        out.boundary[k], _ = update_boundary_k(data.boundary[k], tau0, sigma0)
    if k + 1 in data.boundary:
        out.boundary[k + 1] = update_boundary_kplus1(data.boundary[k + 1], sigma0)
    if k - 1 in data.boundary:
        out.boundary[k - 1] = update_boundary_kminus1(data.boundary[k - 1], tau0)
    if k in data.coboundary:
        out.coboundary[k] = update_coboundary_k(data.coboundary[k], sigma0, tau0)
    if k + 1 in data.coboundary:
        out.coboundary[k + 1] = update_coboundary_kplus1(data.coboundary[k + 1], sigma0)
    if k - 1 in data.coboundary:
        out.coboundary[k - 1] = update_coboundary_kminus1(data.coboundary[k - 1], tau0)
    return out


def auto_cancel(K: SimplicialComplex, V, *, max_steps: int | None = None):
    """Greedily cancel the first cancellable pair (lowest k first) until none remain.

    Returns the final field and the list of cancelled pairs in order.
    """
    field_ = V if isinstance(V, DiscreteVectorField) else _engine(K, V).V
    done = []
    while max_steps is None or len(done) < max_steps:
        eng = TrajectoryEngine(K, field_, check=False)
        pair = None
        for k in range(1, K.dimension + 1):
            try:
                found = find_cancellable_pairs(K, eng, k)
            except TrajectoryOverflowError:
                continue
            if found:
                pair = found[0]
                break
        if pair is None:
            break
        field_ = cancel_pair(K, eng, pair)
        done.append(pair)
    return field_, done
