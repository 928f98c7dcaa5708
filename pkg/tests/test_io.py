import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morsecancel import io
from morsecancel.corpus import generate_corpus, greedy_gradient, random_complex
from morsecancel.matrix import IntegerMatrix


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_complex_and_matching_round_trip(seed):
    rng = random.Random(seed)
    K = random_complex(rng)
    V = greedy_gradient(K, rng)
    assert io.complex_from_json(io.complex_to_json(K)) == K
    assert io.matching_from_json(io.matching_to_json(V)) == V


@given(
    st.lists(st.integers(-10**30, 10**30), min_size=6, max_size=6),
)
def test_matrix_round_trip_with_mixed_labels(values):
    M = IntegerMatrix([(0, 1), "eta_1"], [(2,), "s", 7], [values[:3], values[3:]])
    assert io.matrix_from_json(io.matrix_to_json(M)) == M


def test_file_round_trip(tmp_path):
    M = IntegerMatrix(["a"], ["b", "c"], [[1, -2]])
    io.dump_json(io.matrix_to_json(M), tmp_path / "m.json")
    assert io.matrix_from_json(io.load_json(tmp_path / "m.json")) == M


@pytest.mark.parametrize(
    "obj",
    [{"rows": ["a"], "cols": ["b"], "entries": [[1.5]]}, {"rows": ["a"]}, {"rows": [{}], "cols": [], "entries": [[]]}],
)
def test_bad_matrices(obj):
    with pytest.raises(ValueError):
        io.matrix_from_json(obj)


def test_bad_complex_and_matching():
    with pytest.raises(ValueError):
        io.complex_from_json({"faces": []})
    with pytest.raises(ValueError):
        io.matching_from_json({"pairs": [[[0]]]})


def test_pair_forms():
    assert io.pair_from_json({"sigma0": [2, 0], "tau0": [0]}) == ((0, 2), (0,))
    assert io.pair_from_json({"row0": "sigma_3", "col0": "eta_8"}) == ("sigma_3", "eta_8")
    with pytest.raises(ValueError):
        io.pair_from_json({"sigma0": [0, 1]})


def test_corpus_is_deterministic():
    a = generate_corpus(11, 15)
    b = generate_corpus(11, 15)
    assert [(i.complex, i.field) for i in a] == [(i.complex, i.field) for i in b]
    assert all(i.complex.dimension <= 3 and len(i.complex.vertices) <= 12 for i in a)
