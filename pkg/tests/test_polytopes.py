from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diskmoduli.errors import TooSmall
from diskmoduli.poset import is_graded, poset_f_vector, poset_isomorphic
from diskmoduli.faces import chamber_closure_poset
from diskmoduli.polytopes import (
    Bracketing,
    associahedron_poset,
    bracketings,
    catalan,
    compatible,
    cyclohedron_poset,
    intervals,
)


def test_catalan_values():
    assert [catalan(k) for k in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
    with pytest.raises(ValueError):
        catalan(-1)


@pytest.mark.parametrize("n, f", [
    (2, (1,)),
    (3, (2, 1)),
    (4, (5, 5, 1)),
    (5, (14, 21, 9, 1)),
    (6, (42, 84, 56, 14, 1)),
])
def test_associahedron_f_vectors(n, f):
    p = associahedron_poset(n)
    assert is_graded(p)
    assert poset_f_vector(p) == f


def _brute_compatible(a, b):
    sa, sb = set(range(a[0], a[1] + 1)), set(range(b[0], b[1] + 1))
    return not (sa & sb) or sa <= sb or sb <= sa


@given(st.integers(1, 9), st.integers(1, 9), st.integers(1, 9), st.integers(1, 9))
def test_compatible_matches_set_definition(i, j, k, l):
    a, b = (min(i, j), max(i, j)), (min(k, l), max(k, l))
    assert compatible(a, b) == _brute_compatible(a, b) == compatible(b, a)


@pytest.mark.parametrize("n", range(2, 7))
def test_bracketings_are_exactly_the_compatible_sets(n):
    pool = intervals(n)
    brute = {tuple(c) for r in range(len(pool) + 1) for c in combinations(pool, r)
             if all(_brute_compatible(x, y) for x, y in combinations(c, 2))}
    assert set(bracketings(n)) == brute


def test_bracketing_words_and_validation():
    assert str(Bracketing(4, frozenset({(1, 2), (1, 3)}))) == "((ab)c)d"
    assert Bracketing(4, frozenset({(1, 2), (1, 3)})).rank == 0
    with pytest.raises(ValueError):
        Bracketing(4, frozenset({(1, 2), (2, 3)}))
    with pytest.raises(ValueError):
        Bracketing(4, frozenset({(1, 4)}))
    with pytest.raises(ValueError):
        Bracketing(4, frozenset({(2, 2)}))


def test_too_small():
    with pytest.raises(TooSmall):
        associahedron_poset(1)
    with pytest.raises(TooSmall):
        cyclohedron_poset(1)


@pytest.mark.parametrize("n, f", [(3, (6, 6, 1)), (4, (20, 30, 12, 1)), (5, (70, 140, 90, 20, 1))])
def test_cyclohedra(n, f):
    p = cyclohedron_poset(n)
    assert p.meta["kind"] == "cyclohedron"
    assert poset_f_vector(p) == f


def test_cyclohedron_w2_is_a_self_glued_segment():
    p = cyclohedron_poset(2)
    assert poset_f_vector(p) == (2, 1)
    assert p.meta["self_glued"] is True


@pytest.mark.parametrize("k", [3, 4, 5])
def test_associahedron_is_the_tile_of_punctureless_disks(k):
    assert poset_isomorphic(associahedron_poset(k), chamber_closure_poset(0, k + 1))


def test_hexagon_is_not_the_pentagon():
    assert not poset_isomorphic(cyclohedron_poset(3), associahedron_poset(4))
