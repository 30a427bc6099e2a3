from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cambrian.coxeter import CoxeterGroup, format_root, format_word, parse_root, parse_word
from cambrian.errors import GeneratorIndexError, ResourceError
from cambrian.quiver import parse_quiver


def group(name, **kw):
    return CoxeterGroup(parse_quiver(name), **kw)


def cayley_distances(W):
    """Breadth-first search over plain matrix products; independent of the descent machinery."""
    dist = {W.identity: 0}
    queue = deque([W.identity])
    while queue:
        w = queue.popleft()
        for i in range(1, W.n + 1):
            v = w * W.gen(i)
            if v not in dist:
                dist[v] = dist[w] + 1
                queue.append(v)
    return dist


@pytest.mark.parametrize("name, order", [("a2", 6), ("a3", 24), ("d4", 192)])
def test_lengths_and_descents_match_cayley_graph(name, order):
    W = group(name)
    dist = cayley_distances(W)
    assert len(dist) == order
    assert set(W.all_elements()) == set(dist)
    for w, d in dist.items():
        assert W.length(w) == d
        for i in range(1, W.n + 1):
            assert W.left_descent(w, i) == (dist[W.gen(i) * w] < d)
            assert W.right_descent(w, i) == (dist[w * W.gen(i)] < d)


def test_a2_longest_element():
    W = group("a2")
    w0 = W.from_word((1, 2, 1))
    assert w0 == W.from_word((2, 1, 2))
    assert W.inversion_set(w0) == {(1, 0), (0, 1), (1, 1)}
    assert W.left_descents(w0) == [1, 2]


def test_ball_sizes():
    W = group("a2")
    assert [len(W.enumerate_ball(k)) for k in range(5)] == [1, 3, 5, 6, 6]
    K = group("kronecker")
    assert [len(K.enumerate_ball(k)) for k in range(6)] == [2 * k + 1 for k in range(6)]
    assert len(W.all_elements()) == 6
    assert len(W.all_elements()) == 6


def test_budget_and_limits():
    W = group("w123", ball_budget=50)
    with pytest.raises(ResourceError):
        W.enumerate_ball(10)
    with pytest.raises(ResourceError):
        group("triangle").all_elements(limit=100)


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("CAMBRIAN_BALL_BUDGET", "7")
    assert group("a3").ball_budget == 7


def test_bad_generator():
    W = group("a2")
    with pytest.raises(GeneratorIndexError):
        W.gen(3)
    with pytest.raises(IndexError):
        W.from_word((0,))


def test_text_helpers():
    assert parse_word("1 3, 2") == (1, 3, 2)
    assert format_word((1, 3, 2)) == "1 3 2"
    assert parse_root(format_root((2, -1, 0))) == (2, -1, 0)


words = st.lists(st.integers(1, 3), max_size=20)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["a3", "triangle", "w123"]), words, st.data())
def test_action_preserves_form(name, word, data):
    W = group(name)
    Q = W.quiver
    w = W.from_word(word)
    vec = st.lists(st.integers(-4, 4), min_size=3, max_size=3)
    a, b = data.draw(vec), data.draw(vec)
    assert Q.form(w(a), w(b)) == Q.form(a, b)
    assert w.apply_inverse(w(a)) == tuple(a)
    assert (w * w.inverse()).is_identity


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["triangle", "w123"]), words)
def test_reduced_word_roundtrip(name, word):
    W = group(name)
    w = W.from_word(word)
    red = W.reduced_word(w)
    assert W.from_word(red) == w
    assert W.is_reduced(red)
    assert len(red) <= len(word)
    assert len(red) % 2 == len(word) % 2
    assert W.length(w) == len(W.inversion_set(w))


def test_weak_order_two_ways_on_a3():
    W = group("a3")
    els = W.all_elements()
    for u in els:
        for w in els:
            assert W.weak_leq(u, w) == W.weak_leq_by_length(u, w)
    assert not any(W.weak_lt(w, w) for w in els)


def test_parabolic_factorization_on_a3():
    W = group("a3")
    for w in W.all_elements():
        for s in range(1, 4):
            left, right = W.parabolic_factor(w, s)
            assert left * right == w
            assert s not in W.support(left)
            assert W.length(left) + W.length(right) == W.length(w)
            assert W.left_descents(right) in ([], [s])


def test_prefix_roots_of_a3_word():
    W = group("a3")
    assert W.prefix_roots((1, 2, 3)) == [(1, 0, 0), (1, 1, 0), (1, 1, 1)]
