"""Discrete vector fields, acyclicity, and weighted trajectory sums.

For each dimension q the trajectories live on a "level digraph" whose nodes
are the q- and (q-1)-simplices:

* a face edge ``beta -> alpha`` with weight ``<beta, alpha>`` for every
  codimension-one face of beta except beta's own matched partner;
* a match edge ``alpha -> beta`` with weight ``-<beta, alpha>`` for every
  pair (alpha, beta) of the field.

A trajectory is a directed path starting at a q-simplex, and its weight is
the product of the edge weights.  Acyclic fields make every level a DAG, so
weight sums and path counts come out of one dynamic-programming pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .complex import Simplex, SimplicialComplex, faces, incidence
from .errors import (
    InvalidVectorFieldError,
    NotGradientError,
    TrajectoryOverflowError,
    UnknownSimplexError,
)

DEFAULT_TRAJECTORY_LIMIT = 10**6

Pair = tuple  # (alpha, beta)


class DiscreteVectorField:
    """A partial matching on the Hasse diagram.

    Construction enforces the structural clauses (alpha is a facet of beta,
    each simplex in at most one pair).  Membership in a particular complex is
    checked by :func:`validate_dvf`.
    """

    __slots__ = ("pairs", "up", "down")

    def __init__(self, pairs: Iterable[Pair] = ()):
        pairs = {(tuple(a), tuple(b)) for a, b in pairs}
        violations = _structural_violations(pairs)
        if violations:
            raise InvalidVectorFieldError(
                "not a discrete vector field: " + "; ".join(str(v) for v in violations),
                violations,
            )
        self.pairs = frozenset(pairs)
        self.up = {a: b for a, b in pairs}
        self.down = {b: a for a, b in pairs}

    def __iter__(self):
        return iter(sorted(self.pairs, key=lambda p: (len(p[0]), p)))

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair):
        return pair in self.pairs

    def __eq__(self, other):
        return isinstance(other, DiscreteVectorField) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        return f"DiscreteVectorField({list(self)!r})"

    def is_matched(self, sigma: Simplex) -> bool:
        return sigma in self.up or sigma in self.down

    def partner(self, sigma: Simplex):
        return self.up.get(sigma, self.down.get(sigma))


@dataclass(frozen=True)
class Violation:
    clause: str
    pair: Pair | None = None
    simplex: Simplex | None = None

    def __str__(self):
        if self.clause == "subset":
            return f"{list(self.pair[0])} is not a face of {list(self.pair[1])}"
        if self.clause == "dimension":
            return f"dim {list(self.pair[1])} != dim {list(self.pair[0])} + 1"
        return f"{list(self.simplex)} occurs in more than one pair"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def _structural_violations(pairs) -> list[Violation]:
    out = []
    seen: dict = {}
    for a, b in sorted(pairs):
        if len(b) != len(a) + 1:
            out.append(Violation("dimension", (a, b)))
        elif not set(a) < set(b):
            out.append(Violation("subset", (a, b)))
        for s in (a, b):
            seen[s] = seen.get(s, 0) + 1
    out.extend(Violation("at_most_one", simplex=s) for s, c in sorted(seen.items()) if c > 1)
    return out


def validate_dvf(K: SimplicialComplex, V) -> ValidationReport:
    """Check the discrete-vector-field clauses for raw pairs or a field on K.

    Raises :class:`UnknownSimplexError` if a pair mentions a simplex outside K.
    """
    pairs = V.pairs if isinstance(V, DiscreteVectorField) else {(tuple(a), tuple(b)) for a, b in V}
    for a, b in pairs:
        for s in (a, b):
            if s not in K:
                raise UnknownSimplexError(f"pair ({list(a)}, {list(b)}) uses {list(s)}, not in the complex")
    return ValidationReport(tuple(_structural_violations(pairs)))


@dataclass(frozen=True)
class Trajectory:
    """Alternating simplex sequence.

    ``kind`` is one of ``"q-to-q"``, ``"q-to-(q-1)"`` (V-trajectories) or
    ``"co-q-to-q"``, ``"co-q-to-(q+1)"`` (co-trajectories), with q the
    dimension of the first simplex.
    """

    simplices: tuple
    kind: str

    @property
    def weight(self) -> int:
        return trajectory_weight(self.simplices, self.kind.startswith("co"))

    @property
    def source(self):
        return self.simplices[0]

    @property
    def target(self):
        return self.simplices[-1]

    def reversed(self) -> Trajectory:
        seq = self.simplices[::-1]
        same = len(seq[-1]) == len(seq[0])
        if self.kind.startswith("co"):
            return Trajectory(seq, "q-to-q" if same else "q-to-(q-1)")
        return Trajectory(seq, "co-q-to-q" if same else "co-q-to-(q+1)")

    def __len__(self):
        return len(self.simplices)

    def __str__(self):
        return " ".join(str(list(s)) for s in self.simplices)


def trajectory_weight(seq, co: bool = False) -> int:
    """Weight of a trajectory given as a plain simplex sequence.

    Computed straight from the alternating incidence products, independent
    of the level-digraph encoding.
    """
    w = 1
    if not co:
        # beta_0, alpha_1, beta_1, ..., [alpha_{r+1}]
        i = 1
        while i + 1 < len(seq):
            w *= -incidence(seq[i - 1], seq[i]) * incidence(seq[i + 1], seq[i])
            i += 2
        if len(seq) % 2 == 0:
            w *= incidence(seq[-2], seq[-1])
    else:
        # beta_0, tau_1, beta_1, ..., [tau_{r+1}]
        i = 1
        while i + 1 < len(seq):
            w *= -incidence(seq[i], seq[i - 1]) * incidence(seq[i], seq[i + 1])
            i += 2
        if len(seq) % 2 == 0:
            w *= incidence(seq[-1], seq[-2])
    return w


def is_valid_trajectory(K, V: DiscreteVectorField, seq) -> bool:
    """Check the V-trajectory definition literally on a simplex sequence."""
    if not seq or any(s not in K for s in seq):
        return False
    q = len(seq[0]) - 1
    for i, s in enumerate(seq):
        if len(s) - 1 != (q if i % 2 == 0 else q - 1):
            return False
    betas = seq[0::2]
    alphas = seq[1::2]
    # alpha_i matched to beta_i for i = 1..r
    for i in range(1, len(betas)):
        if V.up.get(alphas[i - 1]) != betas[i]:
            return False
    for i, a in enumerate(alphas):
        if not set(a) < set(betas[i]):
            return False
        if i >= 1 and a == alphas[i - 1]:
            return False
    return True


@dataclass(frozen=True)
class TrajectoryAggregate:
    weight_sum: int
    path_count: int

    def __iter__(self):
        yield self.weight_sum
        yield self.path_count


ZERO = TrajectoryAggregate(0, 0)


class TrajectoryEngine:
    """Trajectory digraphs of one (complex, field) with cached per-source sums."""

    def __init__(self, K: SimplicialComplex, V: DiscreteVectorField, *, check=True):
        if check:
            report = validate_dvf(K, V)
            if not report.ok:
                raise InvalidVectorFieldError("invalid vector field", report.violations)
        self.K = K
        self.V = V
        self._acyclic = None
        self._witness = None
        self._cache: dict = {}
        self._cocache: dict = {}

    # -- graph structure -------------------------------------------------

    def successors(self, node: Simplex, q: int) -> Iterator[tuple[Simplex, int]]:
        """Out-edges of ``node`` in the level-q digraph with their weights."""
        if len(node) == q + 1:
            partner = self.V.down.get(node)
            for sign, f in faces(node):
                if f != partner:
                    yield f, sign
        else:
            b = self.V.up.get(node)
            if b is not None:
                yield b, -incidence(b, node)

    def co_successors(self, node: Simplex, q: int) -> Iterator[tuple[Simplex, int]]:
        """Out-edges in the co-level digraph (cofaces up, matched pairs down).

        Built from coface lists, so it is an independent construction of the
        reversed level-q digraph.
        """
        if len(node) == q:
            for t in self.K.cofaces(node):
                if self.V.down.get(t) != node:
                    yield t, incidence(t, node)
        else:
            b = self.V.down.get(node)
            if b is not None:
                yield b, -incidence(node, b)

    # -- acyclicity ------------------------------------------------------

    def find_cycle(self):
        """A closed V-trajectory (beta_0, alpha_1, ..., beta_r = beta_0) or None."""
        if self._acyclic is None:
            self._witness = None
            for q in range(1, self.K.dimension + 1):
                cyc = self._cycle_in_level(q)
                if cyc is not None:
                    self._witness = Trajectory(tuple(cyc), "q-to-q")
                    break
            self._acyclic = self._witness is None
        return self._witness

    def _cycle_in_level(self, q):
        # Only matched q-simplices can sit on a cycle; walk them with colours.
        WHITE, GREY, BLACK = 0, 1, 2
        colour: dict = {}
        for start in sorted(self.V.down):
            if len(start) != q + 1 or colour.get(start, WHITE) != WHITE:
                continue
            colour[start] = GREY
            path = [start]
            stack = [iter(self._matched_steps(start, q))]
            while stack:
                for nxt, via in stack[-1]:
                    c = colour.get(nxt, WHITE)
                    if c == GREY:
                        i = path.index(nxt)
                        cyc = path[i:] + [via, nxt]
                        return cyc
                    if c == WHITE:
                        colour[nxt] = GREY
                        path.extend([via, nxt])
                        stack.append(iter(self._matched_steps(nxt, q)))
                        break
                else:
                    stack.pop()
                    colour[path[-1]] = BLACK
                    del path[-2:]
        return None

    def _matched_steps(self, beta, q):
        # beta -> alpha >-> beta' with alpha matched upward within level q
        for alpha, _ in self.successors(beta, q):
            b2 = self.V.up.get(alpha)
            if b2 is not None and len(b2) == q + 1:
                yield b2, alpha

    def require_gradient(self):
        w = self.find_cycle()
        if w is not None:
            raise NotGradientError(f"closed V-trajectory: {w}", witness=w)

    # -- dynamic programming -------------------------------------------

    def aggregates_from(self, source: Simplex) -> dict:
        """Map every node reachable from ``source`` to its TrajectoryAggregate."""
        got = self._cache.get(source)
        if got is None:
            self.require_gradient()
            self.K.index(source)
            got = _propagate(source, len(source) - 1, self.successors)
            self._cache[source] = got
        return got

    def coaggregates_from(self, source: Simplex) -> dict:
        """Co-trajectory sums from a (q-1)-simplex upward through level q."""
        got = self._cocache.get(source)
        if got is None:
            self.require_gradient()
            self.K.index(source)
            got = _propagate(source, len(source), self.co_successors)
            self._cocache[source] = got
        return got

    def aggregate(self, source: Simplex, target: Simplex) -> TrajectoryAggregate:
        return self.aggregates_from(source).get(target, ZERO)

    def coaggregate(self, source: Simplex, target: Simplex) -> TrajectoryAggregate:
        return self.coaggregates_from(source).get(target, ZERO)

    # -- enumeration -----------------------------------------------------

    def enumerate(self, source, target, limit=DEFAULT_TRAJECTORY_LIMIT) -> list[Trajectory]:
        self.require_gradient()
        q = len(source) - 1
        kind = "q-to-q" if len(target) == len(source) else "q-to-(q-1)"
        out = []
        path = [source]

        def walk(node):
            if node == target:
                out.append(Trajectory(tuple(path), kind))
                if len(out) > limit:
                    raise TrajectoryOverflowError(limit)
            for nxt, _ in self.successors(node, q):
                path.append(nxt)
                walk(nxt)
                path.pop()

        walk(source)
        out.sort(key=lambda t: t.simplices)
        return out


def _propagate(source, q, succ) -> dict:
    # topological order of the reachable sub-DAG, then push (weight, count)
    order = []
    seen = {source}
    stack = [(source, iter(list(succ(source, q))))]
    while stack:
        node, it = stack[-1]
        for nxt, _ in it:
            if nxt not in seen:
                seen.add(nxt)
                stack.append((nxt, iter(list(succ(nxt, q)))))
                break
        else:
            stack.pop()
            order.append(node)
    order.reverse()
    weight = {source: 1}
    count = {source: 1}
    for node in order:
        w, c = weight[node], count[node]
        for nxt, e in succ(node, q):
            weight[nxt] = weight.get(nxt, 0) + w * e
            count[nxt] = count.get(nxt, 0) + c
    return {n: TrajectoryAggregate(weight[n], count[n]) for n in order}


# -- module-level API ---------------------------------------------------


def _engine(K, V) -> TrajectoryEngine:
    return V if isinstance(V, TrajectoryEngine) else TrajectoryEngine(K, _as_field(V))


def _as_field(V) -> DiscreteVectorField:
    return V if isinstance(V, DiscreteVectorField) else DiscreteVectorField(V)


def is_gradient(K: SimplicialComplex, V) -> tuple[bool, Trajectory | None]:
    """(True, None) for an acyclic field, else (False, closed trajectory)."""
    w = _engine(K, V).find_cycle()
    return w is None, w


def critical_simplices(K: SimplicialComplex, V, q: int) -> list[Simplex]:
    V = _as_field(V.V if isinstance(V, TrajectoryEngine) else V)
    return [s for s in K.simplices(q) if not V.is_matched(s)]


def trajectory_aggregate(K, V, beta: Simplex, alpha: Simplex) -> TrajectoryAggregate:
    """Weight sum and number of V-trajectories from ``beta`` to ``alpha``."""
    return _engine(K, V).aggregate(beta, alpha)


def cotrajectory_aggregate(K, V, tau: Simplex, sigma: Simplex) -> TrajectoryAggregate:
    """Weight sum and number of co-V-trajectories from ``tau`` up to ``sigma``."""
    return _engine(K, V).coaggregate(tau, sigma)


def enumerate_trajectories(K, V, beta, alpha, limit=DEFAULT_TRAJECTORY_LIMIT) -> list[Trajectory]:
    if limit < 1:
        raise ValueError("limit must be >= 1")
    return _engine(K, V).enumerate(beta, alpha, limit)
