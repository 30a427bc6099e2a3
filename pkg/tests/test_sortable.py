import pytest

from cambrian.coxeter import CoxeterGroup
from cambrian.errors import CambrianError, NotReducedError, NotSortableError
from cambrian.quiver import parse_quiver
from cambrian.sortable import (
    BOUNDED,
    DOES_NOT_EXIST,
    FOUND,
    PREINJECTIVE,
    PREPROJECTIVE,
    REGULAR,
    UNBOUNDED,
    UNKNOWN,
    antisortable,
    bounded_by_power,
    c_sortable_elements,
    fiber,
    is_bounded,
    is_c_sortable,
    is_fiber_maximal,
    is_preprojective_root,
    layer_roots,
    leftmost_word,
    pi_c,
    pi_c_oracle,
    require_sortable,
)


def group(name):
    return CoxeterGroup(parse_quiver(name))


def test_a2_sortables():
    W = group("a2")
    words = sorted(W.reduced_word(x) for x in c_sortable_elements(W))
    assert words == [(), (1,), (1, 2), (1, 2, 1), (2,)]
    assert not is_c_sortable(W, W.from_word((2, 1)))
    assert is_c_sortable(W, W.from_word((2, 1)), c=(2, 1))


@pytest.mark.parametrize("name, count", [("a2", 5), ("a3", 14), ("d4", 50)])
def test_sortable_counts(name, count):
    assert len(c_sortable_elements(group(name))) == count


def test_triangle_leftmost_word():
    W = group("triangle")
    sw = leftmost_word(W, W.from_word((1, 3, 2, 3, 1)))
    assert sw.letters == (1, 2, 3, 2, 1)
    assert sw.positions == (1, 2, 3, 5, 7)
    assert sw.blocks == [(1, 2, 3), (2,), (1,)]
    assert sw.copy_and_letter() == [(0, 1), (0, 2), (0, 3), (1, 2), (2, 1)]


def test_blocks_keep_empty_copies():
    W = group("a3")
    sw = leftmost_word(W, W.from_word((3, 2, 1)))
    assert sw.positions == (3, 5, 7)
    assert sw.blocks == [(3,), (2,), (1,)]
    assert not is_c_sortable(W, W.from_word((3, 2, 1)))


def test_pi_c_examples():
    W = group("a2")
    assert pi_c(W, W.from_word((2, 1))) == W.from_word((2,))
    assert pi_c(W, W.from_word((1, 2, 1))) == W.from_word((1, 2, 1))


@pytest.mark.parametrize("name", ["a3", "d4"])
def test_pi_c_is_an_order_preserving_retraction(name):
    W = group(name)
    els = W.all_elements()
    sortable = set(c_sortable_elements(W))
    image = {w: pi_c(W, w) for w in els}
    assert set(image.values()) == sortable
    for w in els:
        assert W.weak_leq(image[w], w)
        assert image[image[w]] == image[w]
    if name == "a3":
        for u in els:
            for w in els:
                if W.weak_leq(u, w):
                    assert W.weak_leq(image[u], image[w])


def test_pi_c_on_infinite_groups_matches_oracle_in_a_ball():
    W = group("triangle")
    candidates = [x for x in W.enumerate_ball(6) if is_c_sortable(W, x)]
    for w in W.enumerate_ball(6):
        assert pi_c(W, w) == pi_c_oracle(W, w, candidates)


def test_layer_roots():
    W = group("triangle")
    assert layer_roots(W, (1, 2, 3, 2)) == [(1, 0, 0), (1, 1, 0), (2, 1, 1), (1, 0, 1)]
    with pytest.raises(NotReducedError):
        layer_roots(W, (1, 1))


def test_root_verdicts():
    K = group("kronecker")
    assert is_preprojective_root(K, (1, 1)).kind == REGULAR
    assert is_preprojective_root(K, (3, 2)).kind == PREPROJECTIVE
    assert is_preprojective_root(K, (2, 3)).kind == PREINJECTIVE
    T = group("triangle")
    assert is_preprojective_root(T, (1, 0, 1)).kind == REGULAR
    v = is_preprojective_root(T, (4, 3, 3))
    assert v.kind == PREPROJECTIVE and v.steps == 3
    assert is_preprojective_root(T, (4, 3, 3), horizon=1).kind == UNKNOWN


def test_boundedness():
    A = group("a3")
    assert all(is_bounded(A, x).verdict == BOUNDED for x in c_sortable_elements(A))
    T = group("triangle")
    report = is_bounded(T, T.from_word((1, 2, 3, 2)))
    assert report.verdict == UNBOUNDED
    assert report.to_json()["witness"] == "(1,0,1)"
    assert is_bounded(T, T.from_word((1, 2, 3))).verdict == BOUNDED
    Ww = group("w123")
    x = Ww.from_word((1, 2, 3, 2))
    assert is_bounded(Ww, x).verdict == BOUNDED
    assert bounded_by_power(Ww, x, 5) == 3
    assert bounded_by_power(Ww, x, 2) is None


def test_antisortable():
    Ww = group("w123")
    top = antisortable(Ww, Ww.from_word((1, 2, 3, 2)))
    assert top.status == FOUND
    assert Ww.reduced_word(top.element) == (1, 2, 3, 2, 1)
    T = group("triangle")
    assert antisortable(T, T.from_word((1, 2, 3, 2))).status == DOES_NOT_EXIST
    with pytest.raises(NotSortableError):
        require_sortable(T, T.from_word((2, 1)))


def test_fibers_partition_a3():
    W = group("a3")
    seen = set()
    for x in c_sortable_elements(W):
        f = fiber(W, x)
        assert not (seen & f)
        seen |= f
        top = antisortable(W, x).element
        assert [w for w in f if is_fiber_maximal(W, w)] == [top]
    assert len(seen) == 24


def test_unbounded_fiber_needs_a_bound():
    T = group("triangle")
    x = T.from_word((1, 2, 3, 2))
    with pytest.raises(CambrianError):
        fiber(T, x)
    assert len(fiber(T, x, 7)) == 4
