from math import comb

import pytest

from diskmoduli.census import (
    building_set,
    class_factors,
    closed_form,
    divisor_census,
    naive_codim,
    refinement_identity,
)
from diskmoduli.errors import DegenerateSpace, TheoremHypothesis
from diskmoduli.factors import Kbar, Mreal, Ncomplex

GRID = [(n, m) for n in range(1, 4) for m in range(1, 5)]


def _triple(c):
    return c.counts["interior"], c.counts["boundary"], c.counts["mixed"]


@pytest.mark.parametrize("n, m, expected", [
    (2, 2, (1, 1, 4)),
    (1, 2, (0, 1, 0)),
    (3, 1, (4, 0, 6)),
])
def test_spot_values(n, m, expected):
    c = divisor_census(n, m)
    assert _triple(c) == expected == c.closed_form


def test_k22_divisor_list():
    # one pupil, one boundary collision and four mixed collisions: ip1 with
    # nothing on the boundary does not count, ip1 with bp1, bp2 or both does,
    # plus ip1 alone pushed to the boundary
    c = divisor_census(2, 2)
    contents = {(d.kind, d.interior, d.boundary) for d in c.classes}
    assert contents == {
        ("interior", (1, 2), ()),
        ("boundary", (), (1, 2)),
        ("mixed", (1,), ()),
        ("mixed", (1,), (1,)),
        ("mixed", (1,), (2,)),
        ("mixed", (1,), (1, 2)),
    }
    assert sum(len(d.strata) for d in c.classes) == 8


@pytest.mark.parametrize("n, m", GRID)
def test_closed_forms_and_refinement(n, m):
    c = divisor_census(n, m)
    assert _triple(c) == closed_form(n, m)
    assert c.matches
    for (kind, i, b), count in c.by_size.items():
        expected = {"interior": comb(n, i), "boundary": comb(m, b),
                    "mixed": comb(n - 1, i) * comb(m, b)}[kind]
        assert count == expected


@pytest.mark.parametrize("n, m", GRID)
def test_strata_refine_divisor_classes(n, m):
    strata, products = refinement_identity(n, m)
    assert strata == products


def test_refinement_spot_value():
    c = divisor_census(2, 2)
    products = sorted(d.expected_strata for d in c.classes)
    assert products == [1, 1, 1, 1, 2, 2]
    assert refinement_identity(2, 2) == (8, 8)


def test_class_factors():
    assert class_factors("interior", 2, 1, 2, 0) == tuple(sorted((Kbar(1, 1), Ncomplex(3))))
    assert class_factors("boundary", 1, 3, 0, 3) == tuple(sorted((Kbar(1, 1), Mreal(4))))
    assert class_factors("mixed", 2, 2, 1, 1) == tuple(sorted((Kbar(1, 2), Kbar(1, 2))))


@pytest.mark.parametrize("n, m", [(0, 4), (0, 5), (3, 0), (2, 0)])
def test_outside_the_theorem_is_flagged(n, m):
    c = divisor_census(n, m)
    assert c.flags == ["TheoremHypothesis"]
    assert c.closed_form is None and c.matches is None
    assert c.to_obj()["flags"] == ["TheoremHypothesis"]
    with pytest.raises(TheoremHypothesis):
        divisor_census(n, m, strict=True)


@pytest.mark.parametrize("n, m, size", [(2, 2, 4), (2, 1, 2), (1, 2, 0), (1, 3, 1)])
def test_building_set_sizes(n, m, size):
    assert len(building_set(n, m)) == size


def test_building_set_of_k13_is_the_triple_collision():
    (e,) = building_set(1, 3)
    assert (e.kind, e.boundary, e.grading, e.dimension) == ("boundary", (1, 2, 3), 3, 0)


def test_building_set_of_k21():
    kinds = sorted((e.kind, e.interior, e.boundary) for e in building_set(2, 1))
    assert kinds == [("interior", (1, 2), ()), ("mixed", (1,), (1,))]


@pytest.mark.parametrize("n, m", GRID + [(0, 5), (0, 6), (3, 0)])
def test_building_set_elements_have_codim_two_and_order(n, m):
    elems = building_set(n, m)
    assert all(e.naive_codim >= 2 for e in elems)
    assert all(e.naive_codim == naive_codim(e.kind, len(e.interior), len(e.boundary)) for e in elems)
    dims = [e.dimension for e in elems]
    assert dims == sorted(dims)
    gradings = [e.grading for e in building_set(n, m, order="grading")]
    assert gradings == sorted(gradings)
    assert sorted(building_set(n, m), key=repr) == sorted(building_set(n, m, order="grading"), key=repr)


def test_building_set_never_uses_the_anchor_in_mixed_collisions():
    for e in building_set(3, 3):
        if e.kind == "mixed":
            assert 3 not in e.interior


def test_building_set_errors():
    with pytest.raises(DegenerateSpace):
        building_set(0, 2)
    with pytest.raises(ValueError):
        building_set(2, 2, order="size")
