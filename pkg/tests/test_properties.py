"""Property suites over whole spaces, including samples from Kbar(3, 4)."""
import json
from functools import lru_cache

from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from conftest import SMALL, WITH_LARGE, scrambled, strata
from diskmoduli.canon import (
    Stratum,
    canonical_key,
    canonicalize,
    flatten,
    flip,
    flip_is_identification,
    merge_bubble,
    planar_key,
)
from diskmoduli.enumeration import all_strata
from diskmoduli.factors import factor_dimension
from diskmoduli.faces import _merges
from diskmoduli.trees import (
    Disk,
    bubble_paths,
    codim_dim,
    is_valid,
    iter_bubbles,
    parse_tree,
    tree_from_obj,
    tree_to_obj,
)


@lru_cache(maxsize=None)
def _keys(n, m):
    return frozenset(s.key for level in all_strata(n, m) for s in level)


@given(scrambled(WITH_LARGE))
def test_canonical_form_is_orbit_invariant_everywhere(pair):
    s, raw = pair
    assert canonicalize(raw) == s.canonical
    assert canonicalize(s.canonical) == s.canonical


@given(strata(WITH_LARGE))
def test_flip_is_an_involution(s):
    t = s.canonical
    for path, node in iter_bubbles(t):
        if isinstance(node, Disk) and node.flat:
            assert flip(flip(t, path), path) == t
            if flip_is_identification(t, path):
                assert canonical_key(flip(t, path)) == s.key


@given(strata(WITH_LARGE))
def test_merges_land_in_the_enumeration(s):
    known = _keys(s.canonical.n, s.canonical.m)
    for path in bubble_paths(s.canonical):
        for up in merge_bubble(s.canonical, path):
            assert up.codim == s.codim - 1
            assert up.key in known


@given(strata(WITH_LARGE))
def test_face_covers_are_the_merges(s):
    via_merge = {up.key for path in bubble_paths(s.canonical)
                 for up in merge_bubble(s.canonical, path)}
    assert _merges(s.canonical) == via_merge


@given(strata(WITH_LARGE))
def test_telescoping_and_validity(s):
    t = s.canonical
    assert is_valid(t)
    assert codim_dim(t) == (s.codim, s.dim)
    assert factor_dimension(s.factors) == s.dim


@given(strata(WITH_LARGE))
def test_serialisation_round_trips(s):
    t = s.canonical
    assert parse_tree(t.encode()) == t
    assert tree_from_obj(json.loads(json.dumps(tree_to_obj(t)))) == t


@given(strata(WITH_LARGE))
def test_flattening_gives_a_chamber(s):
    room = flatten(s.canonical)
    assert Stratum.of(room).codim == 0
    assert planar_key(flatten(room)) == planar_key(room)


@settings(max_examples=60)
@given(scrambled([nm for nm in SMALL if nm[0] + nm[1] <= 5]))
def test_scrambled_trees_agree_with_the_oracle(pair):
    s, raw = pair
    assert oracle.class_key(raw) == oracle.class_key(s.canonical)
    assert oracle.stable(raw)


@settings(max_examples=30)
@given(st.sampled_from([nm for nm in SMALL if sum(map(len, all_strata(*nm))) <= 400]))
def test_distinct_keys_are_distinct_oracle_classes(nm):
    classes = {oracle.class_key(s.canonical) for level in all_strata(*nm) for s in level}
    assert len(classes) == len(_keys(*nm))
