"""Seeded random complexes and greedy gradient fields (test and benchmark plumbing)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .complex import SimplicialComplex, build_complex
from .gvf import DiscreteVectorField, TrajectoryEngine


@dataclass(frozen=True)
class Instance:
    instance_id: int
    complex: SimplicialComplex
    field: DiscreteVectorField


def random_complex(rng: random.Random, max_dim=3, max_vertices=12) -> SimplicialComplex:
    """Random pure complex: a handful of facets of one dimension."""
    d = rng.randint(1, max_dim)
    n = rng.randint(d + 2, max(d + 2, max_vertices))
    pool = list(combinations(range(n), d + 1))
    m = rng.randint(1, min(len(pool), 3 * n))
    facets = rng.sample(pool, m)
    return build_complex(facets)


def greedy_gradient(K: SimplicialComplex, rng: random.Random, pair_prob=1.0) -> DiscreteVectorField:
    """Pair simplices with random free cofaces, keeping only acyclic additions.

    ``pair_prob < 1`` skips some candidates so more cells stay critical.
    """
    pairs: set = set()
    matched: set = set()
    cells = list(K)
    rng.shuffle(cells)
    for a in cells:
        if a in matched or rng.random() >= pair_prob:
            continue
        cofaces = [b for b in K.cofaces(a) if b not in matched]
        rng.shuffle(cofaces)
        for b in cofaces:
            trial = DiscreteVectorField(pairs | {(a, b)})
            if TrajectoryEngine(K, trial, check=False).find_cycle() is None:
                pairs.add((a, b))
                matched.update((a, b))
                break
    return DiscreteVectorField(pairs)


def generate_corpus(seed: int, count: int, max_dim=3, max_vertices=12) -> list[Instance]:
    """``count`` instances fully determined by ``seed``."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        K = random_complex(rng, max_dim, max_vertices)
        prob = rng.choice([1.0, 0.8, 0.6])
        out.append(Instance(i, K, greedy_gradient(K, rng, prob)))
    return out
