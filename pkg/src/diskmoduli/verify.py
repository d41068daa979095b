"""The acceptance suite: exact reproductions of the published counts plus
exhaustive structural checks.  Shared by ``diskmoduli verify`` and the
test suite."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb, factorial

from .canon import (
    _canon_root,
    canonicalize,
    flip,
    flip_is_identification,
    merge_bubble,
    reference_frame,
    reroot,
)
from .census import building_set, divisor_census, refinement_identity
from .enumeration import (
    all_strata,
    chamber_adjacency,
    chambers,
    euler_characteristic,
    f_vector,
    gc_paused,
)
from .errors import ModuliError
from .factors import factor_dimension
from .faces import chamber_closure_poset, face_poset
from .poset import is_graded, poset_f_vector, poset_isomorphic, rank_counts
from .polytopes import associahedron_poset, catalan, cyclohedron_poset
from .trees import BubbleTree, Disk, is_valid, iter_bubbles

CENSUS_RANGE = [(n, m) for n in range(1, 4) for m in range(1, 5)]
PROPERTY_RANGE = [(n, m) for n in range(0, 4) for m in range(0, 5) if 2 * n + m >= 3]
# exhaustive checks beyond telescoping run on spaces up to these sizes;
# the test suite covers the rest by sampling
ORBIT_LIMIT = 2500
POSET_LIMIT = 5000


@dataclass
class CheckResult:
    number: int
    title: str
    items: list = field(default_factory=list)  # (label, expected, actual)
    seconds: float = 0.0

    @property
    def passed(self):
        return bool(self.items) and all(e == a for _, e, a in self.items)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:>2}. {self.title} ({self.seconds:.2f}s)"

    def details(self):
        for label, expected, actual in self.items:
            mark = "ok" if expected == actual else "MISMATCH"
            yield f"      {mark:8} {label}: expected {expected!r}, got {actual!r}"


def _safe(fn, *args):
    try:
        return fn(*args)
    except ModuliError as err:
        return f"{err.code}: {err.message}"


def check_chambers():
    cases = {(1, 2): 1, (2, 2): 1, (1, 3): 2, (0, 4): 6, (1, 4): 6, (0, 5): 24, (2, 3): 2}
    return [(f"chambers{nm}", v, _safe(chambers, *nm)) for nm, v in cases.items()]


def check_divisors():
    items = []
    for n, m in CENSUS_RANGE:
        c = divisor_census(n, m)
        actual = tuple(c.counts[k] for k in ("interior", "boundary", "mixed"))
        items.append((f"census{(n, m)} closed form", c.closed_form, actual))
        items.append((f"census{(n, m)} (i,b) refinement", c.expected_by_size, c.by_size))
    for nm, v in {(2, 2): (1, 1, 4), (3, 1): (4, 0, 6)}.items():
        c = divisor_census(*nm)
        items.append((f"census{nm} spot value", v,
                      tuple(c.counts[k] for k in ("interior", "boundary", "mixed"))))
    return items


def check_building_set():
    cases = {(2, 2): 4, (2, 1): 2, (1, 2): 0, (1, 3): 1}
    return [(f"|building_set{nm}|", v, len(building_set(*nm))) for nm, v in cases.items()]


def check_k13():
    return [("f_vector(1,3)", [2, 6, 3], f_vector(1, 3)),
            ("euler_characteristic(1,3)", -1, _safe(euler_characteristic, 1, 3))]


def check_eye():
    return [("f_vector(2,1)", [1, 3, 1], f_vector(2, 1))]


def check_two_copies():
    items = []
    for m in (4, 5):
        _, _, comps = chamber_adjacency(0, m)
        half = factorial(m - 1) // 2
        items.append((f"component sizes of Kbar(0,{m})", [half, half], [len(c) for c in comps]))
    return items


def check_isomorphisms():
    k4 = associahedron_poset(4)
    tile05 = chamber_closure_poset(0, 5)
    tile13 = chamber_closure_poset(1, 3)
    return [
        ("tile of Kbar(0,5) isomorphic to K_4", True, poset_isomorphic(tile05, k4)),
        ("f-vector of K_4", (5, 5, 1), _safe(poset_f_vector, k4)),
        ("f-vector of tile of Kbar(0,5)", (5, 5, 1), _safe(poset_f_vector, tile05)),
        ("f-vector of tile of Kbar(1,3)", (6, 6, 1), _safe(poset_f_vector, tile13)),
    ]


def check_catalan():
    items = []
    for n in range(2, 8):
        p = associahedron_poset(n)
        items.append((f"vertices of K_{n}", comb(2 * (n - 1), n - 1) // n, rank_counts(p)[0]))
        items.append((f"catalan({n - 1})", comb(2 * (n - 1), n - 1) // n, catalan(n - 1)))
    items.append(("vertices of W_4", 20, rank_counts(cyclohedron_poset(4))[0]))
    return items


def check_refinement():
    items = []
    for n, m in CENSUS_RANGE:
        strata, products = refinement_identity(n, m)
        items.append((f"codim-1 strata of Kbar{(n, m)} vs factor chambers", products, strata))
    items.append(("codim-1 strata of Kbar(2,2)", 8, refinement_identity(2, 2)[0]))
    return items


def _key(tree):
    # rotations, flips and re-rootings of a valid tree are valid, so skip
    # the validation pass of canonical_key
    return _canon_root(reference_frame(tree), True)[0]


def _orbit_failures(s, known=None):
    """Generators of the stratum's identification that move it elsewhere,
    and merges that leave ``known`` (a set of keys) or miss codim - 1."""
    t, key, bad = s.canonical, s.key, []
    if canonicalize(t) != t:
        bad.append("not idempotent")
    if t.boundary:
        rot = BubbleTree(t.n, t.m, t.interior, t.boundary[1:] + t.boundary[:1])
        if _key(rot) != key:
            bad.append("rotation")
    for path, node in iter_bubbles(t):
        if isinstance(node, Disk) and node.flat:
            once = flip(t, path)
            if flip(once, path) != t:
                bad.append(f"flip involution at {path}")
            if flip_is_identification(t, path) and _key(once) != key:
                bad.append(f"flip at {path}")
        for up in merge_bubble(t, path):
            if up.codim != s.codim - 1:
                bad.append(f"merge codim at {path}")
            if known is not None and up.key not in known:
                bad.append(f"merge at {path} leaves the enumeration")
    if t.n == 0:
        for j, x in enumerate(t.boundary):
            if isinstance(x, Disk) and x.flat:
                r = reroot(t, j)
                if r is not None and _key(r) != key:
                    bad.append(f"re-rooting at {j}")
    return bad


def check_properties():
    items = []
    telescoping_bad = 0
    total = 0
    for n, m in PROPERTY_RANGE:
        for level in all_strata(n, m):
            for s in level:
                total += 1
                if factor_dimension(s.factors) != s.dim:
                    telescoping_bad += 1
    items.append((f"telescoping on all {total} strata with n<=3, m<=4", 0, telescoping_bad))
    for n, m in PROPERTY_RANGE:
        levels = all_strata(n, m)
        size = sum(map(len, levels))
        if size > POSET_LIMIT:
            continue
        invalid = [s.key for level in levels for s in level if not is_valid(s.canonical)]
        items.append((f"every stratum of Kbar{(n, m)} validates", [], invalid[:5]))
        p = face_poset(n, m)
        items.append((f"face_poset{(n, m)} covers step codim by 1", True, p.is_ranked()))
        if n <= 1:
            items.append((f"face_poset{(n, m)} graded", True, is_graded(p)))
        if size > ORBIT_LIMIT:
            continue
        known = {s.key for level in levels for s in level}
        bad = []
        for level in levels:
            for s in level:
                bad += [f"{s.key}: {b}" for b in _orbit_failures(s, known)]
        items.append((f"orbit, flip and merge checks on Kbar{(n, m)}", [], bad[:5]))
    return items


CHECKS = [
    (1, "chamber counts equal (m-1)!", check_chambers),
    (2, "divisor census matches closed forms and binomial refinement", check_divisors),
    (3, "building-set sizes", check_building_set),
    (4, "f-vector and Euler characteristic of Kbar(1,3)", check_k13),
    (5, "f-vector of Kbar(2,1), the eye", check_eye),
    (6, "Kbar(0,m) has two components of (m-1)!/2 chambers", check_two_copies),
    (7, "tiles: associahedron K_4 and hexagon W_3", check_isomorphisms),
    (8, "Catalan vertex counts and W_4", check_catalan),
    (9, "codim-1 strata equal sum of factor chamber products", check_refinement),
    (10, "structural property suites", check_properties),
]


def run_check(number):
    num, title, fn = CHECKS[number - 1]
    start = time.perf_counter()
    with gc_paused():
        items = fn()
    return CheckResult(num, title, items, time.perf_counter() - start)


def run_all(numbers=None):
    return [run_check(k) for k in (numbers or range(1, len(CHECKS) + 1))]
