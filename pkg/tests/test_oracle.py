"""The package against the brute-force arc-insertion model."""
import pytest

import oracle
from diskmoduli.canon import canonical_key
from diskmoduli.enumeration import all_strata, f_vector
from diskmoduli.polytopes import associahedron_poset, catalan
from diskmoduli.poset import rank_counts

SPACES = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (0, 3), (0, 4), (0, 5), (2, 0), (3, 0),
          (3, 1), (1, 4), (2, 3), (3, 2)]


@pytest.fixture(scope="module", params=SPACES, ids=str)
def space(request):
    n, m = request.param
    return n, m, oracle.strata_by_codim(n, m)


def test_f_vector_matches_arc_insertion(space):
    n, m, levels = space
    assert [len(level) for level in levels] == f_vector(n, m)


def test_canonical_keys_biject_with_oracle_classes(space):
    n, m, levels = space
    for k, level in enumerate(levels):
        ours = {s.key for s in all_strata(n, m)[k]}
        mapped = {canonical_key(rep) for rep in level.values()}
        assert mapped == ours
        assert len(mapped) == len(level)


def test_every_orbit_member_canonicalizes_alike(space):
    n, m, levels = space
    for level in levels[:3]:
        for rep in level.values():
            keys = {canonical_key(t) for t in oracle.orbit(rep).values()}
            assert len(keys) == 1


@pytest.mark.parametrize("k", range(8))
def test_catalan_matches_ballot_sequences(k):
    assert catalan(k) == oracle.ballot_count(k)


@pytest.mark.parametrize("n", range(2, 8))
def test_associahedron_vertices_match_ballot_sequences(n):
    assert rank_counts(associahedron_poset(n))[0] == oracle.ballot_count(n - 1)


def test_catalan_recurrence():
    assert catalan(5) == sum(catalan(i) * catalan(4 - i) for i in range(5)) == 42
    assert catalan(0) == 1 and catalan(3) == 5


def test_oracle_orbits_are_nontrivial():
    from diskmoduli.trees import parse_tree
    t = parse_tree("R(i1;D(;b1,b2),b3)")
    assert len(oracle.orbit(t)) == 2
