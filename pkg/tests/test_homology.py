import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from conftest import load_matrix
from morsecancel import (
    ChainLawError,
    DiscreteVectorField,
    HomologyGroup,
    build_complex,
    homology_of_pair,
    morse_homology,
    simplicial_homology,
    smith_normal_form,
)
from morsecancel.cancel import auto_cancel, update_coboundary_k
from morsecancel.corpus import greedy_gradient, random_complex
from morsecancel.matrix import IntegerMatrix

from oracles import determinantal_invariants

SPHERE = build_complex([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])

int_matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=1, max_size=5)
)


def sympy_factors(rows):
    D = sympy_snf(Matrix(rows), domain=ZZ)
    return tuple(sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i]))


def test_identity_and_zero():
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diagonal == (1, 1, 1)
    assert smith_normal_form([[0, 0], [0, 0], [0, 0]]).diagonal == (0, 0)
    assert smith_normal_form([]).diagonal == ()


def test_determinant_three_block():
    assert smith_normal_form([[1, -2], [2, -1]]).diagonal == (1, 3)


@settings(max_examples=150, deadline=None)
@given(int_matrices)
def test_snf_matches_determinantal_divisors(rows):
    snf = smith_normal_form(rows)
    assert snf.invariant_factors == tuple(determinantal_invariants(rows))
    factors = snf.invariant_factors
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


@settings(max_examples=100, deadline=None)
@given(int_matrices)
def test_snf_matches_sympy(rows):
    snf = smith_normal_form(rows)
    assert tuple(sorted(snf.invariant_factors)) == sympy_factors(rows)
    assert snf.rank == Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(int_matrices, st.data())
def test_snf_invariant_under_unimodular_ops(rows, data):
    m, n = len(rows), len(rows[0])
    A = [r[:] for r in rows]
    for _ in range(data.draw(st.integers(0, 6))):
        i, j = data.draw(st.integers(0, m - 1)), data.draw(st.integers(0, m - 1))
        c = data.draw(st.integers(-3, 3))
        if i != j:
            A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        else:
            A[i] = [-a for a in A[i]]
    At = [list(col) for col in zip(*A)]
    assert smith_normal_form(A).diagonal == smith_normal_form(rows).diagonal
    assert smith_normal_form(At).invariant_factors == smith_normal_form(rows).invariant_factors


def test_k7_stage_homology_from_reproduced_stage():
    D = load_matrix("k7_stages", "d2_V_transposed.json")
    W2 = update_coboundary_k(update_coboundary_k(D, "eta_8", "sigma_3"), "eta_18", "sigma_4")
    d1 = IntegerMatrix.zeros([], W2.cols)
    assert homology_of_pair(W2.transpose(), d1) == HomologyGroup(0, (3,))
    assert smith_normal_form(W2).diagonal == (1, 3)


def test_zero_maps_give_free_group():
    d_next = IntegerMatrix.zeros(["a", "b", "c"], [])
    d_q = IntegerMatrix.zeros([], ["a", "b", "c"])
    assert homology_of_pair(d_next, d_q) == HomologyGroup(3)


def test_shape_and_chain_law_errors():
    with pytest.raises(ChainLawError):
        homology_of_pair(IntegerMatrix.zeros(["a"], []), IntegerMatrix.zeros([], ["a", "b"]))
    with pytest.raises(ChainLawError):
        homology_of_pair(IntegerMatrix(["a"], ["x"], [[1]]), IntegerMatrix(["v"], ["a"], [[1]]))


def test_known_spaces():
    assert [simplicial_homology(SPHERE, q).betti for q in range(3)] == [1, 0, 1]
    assert simplicial_homology(SPHERE, 2) == HomologyGroup(1)
    ball = build_complex([[0, 1, 2, 3]])
    assert [simplicial_homology(ball, q) for q in range(4)] == [HomologyGroup(1)] + [HomologyGroup(0)] * 3
    point = build_complex([[0]])
    assert simplicial_homology(point, 0) == HomologyGroup(1)
    circle = build_complex([[0, 1], [1, 2], [0, 2]])
    assert simplicial_homology(circle, 1) == HomologyGroup(1)


def test_projective_plane_has_two_torsion():
    rp2 = build_complex([
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
        [1, 2, 4], [1, 3, 4], [1, 3, 5], [2, 3, 5], [2, 4, 5],
    ])
    assert rp2.f_vector() == (6, 15, 10)
    hs = [simplicial_homology(rp2, q) for q in range(3)]
    assert hs == [HomologyGroup(1), HomologyGroup(0, (2,)), HomologyGroup(0)]
    V = greedy_gradient(rp2, random.Random(1))
    assert [morse_homology(rp2, V, q) for q in range(3)] == hs


def test_group_formatting():
    assert str(HomologyGroup(0, (3,))) == "Z_3"
    assert str(HomologyGroup(2, (2, 4))) == "Z^2 + Z_2 + Z_4"
    assert str(HomologyGroup(0)) == "0"
    assert HomologyGroup(1, (3,)).to_json(1) == {"q": 1, "betti": 1, "torsion": [3]}


def test_empty_field_morse_equals_simplicial():
    for q in range(3):
        assert morse_homology(SPHERE, DiscreteVectorField(), q) == simplicial_homology(SPHERE, q)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_morse_homology_invariant_under_cancellation(seed):
    rng = random.Random(seed)
    K = random_complex(rng, max_dim=3, max_vertices=9)
    V = greedy_gradient(K, rng, pair_prob=0.6)
    W, _ = auto_cancel(K, V, max_steps=4)
    for q in range(K.dimension + 1):
        h = simplicial_homology(K, q)
        assert morse_homology(K, V, q) == h == morse_homology(K, W, q)
