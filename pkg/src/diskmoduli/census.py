"""Codimension-one divisors and the building set.

A codimension-one stratum has a single arc, and what the arc encloses is its
*content*: some interior particles (interior collision, a sphere bubble),
some boundary particles (boundary collision, a flat bubble) or both (mixed
collision, a punctured bubble).  Several strata share a content class; they
differ only in the cyclic and linear orders of the boundary particles.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, prod

from .enumeration import all_strata, check_space
from .errors import TheoremHypothesis
from .factors import Kbar, Mreal, Ncomplex
from .trees import BP, IP, Disk, Sphere, bubble_paths, node_at, particles

KINDS = ("interior", "boundary", "mixed")


def class_factors(kind, n, m, i, b):
    """The two factors of a divisor whose arc holds ``i`` interior and ``b``
    boundary particles."""
    if kind == "interior":
        return tuple(sorted((Kbar(n - i + 1, m), Ncomplex(i + 1))))
    if kind == "boundary":
        return tuple(sorted((Kbar(n, m - b + 1), Mreal(b + 1))))
    return tuple(sorted((Kbar(n - i, m - b + 1), Kbar(i, b + 1))))


@dataclass(frozen=True)
class DivisorClass:
    kind: str
    interior: tuple
    boundary: tuple
    factors: tuple
    strata: tuple = ()

    @property
    def size(self):
        return len(self.interior), len(self.boundary)

    @property
    def expected_strata(self):
        """Chamber count of the product of the two factors."""
        return prod(f.chambers for f in self.factors)

    def sort_key(self):
        return KINDS.index(self.kind), len(self.interior) + len(self.boundary), self.interior, self.boundary

    def to_obj(self):
        return {
            "kind": self.kind,
            "interior": list(self.interior),
            "boundary": list(self.boundary),
            "factors": [str(f) for f in self.factors],
            "strata": len(self.strata),
        }


def _content(tree):
    (path,) = bubble_paths(tree)
    node = node_at(tree, path)
    labels = particles(node)
    ips = tuple(sorted(x.index for x in labels if isinstance(x, IP)))
    bps = tuple(sorted(x.index for x in labels if isinstance(x, BP)))
    if isinstance(node, Sphere):
        return "interior", ips, bps
    if isinstance(node, Disk) and node.flat and not ips:
        return "boundary", ips, bps
    return "mixed", ips, bps


def closed_form(n, m):
    """Divisor counts ``(interior, boundary, mixed)`` for ``n, m >= 1``."""
    return 2 ** n - n - 1, 2 ** m - m - 1, 2 ** m * (2 ** (n - 1) - 1)


def expected_by_size(n, m):
    """Binomial refinement of :func:`closed_form` keyed by ``(kind, i, b)``."""
    out = {}
    for i in range(2, n + 1):
        out["interior", i, 0] = comb(n, i)
    for b in range(2, m + 1):
        out["boundary", 0, b] = comb(m, b)
    for i in range(1, n):
        for b in range(m + 1):
            out["mixed", i, b] = comb(n - 1, i) * comb(m, b)
    return out


@dataclass
class DivisorCensus:
    n: int
    m: int
    classes: list
    counts: dict
    by_size: dict
    closed_form: tuple = None
    expected_by_size: dict = None
    flags: list = field(default_factory=list)

    @property
    def matches(self):
        """Closed forms and refinements agree with enumeration (None when the
        comparison was skipped)."""
        if self.closed_form is None:
            return None
        return (tuple(self.counts[k] for k in KINDS) == self.closed_form
                and self.by_size == self.expected_by_size)

    def to_obj(self):
        return {
            "version": 1,
            "n": self.n,
            "m": self.m,
            "interior": self.counts["interior"],
            "boundary": self.counts["boundary"],
            "mixed": self.counts["mixed"],
            "total": sum(self.counts.values()),
            "closed_form": None if self.closed_form is None else dict(zip(KINDS, self.closed_form)),
            "matches": self.matches,
            "flags": list(self.flags),
            "classes": [c.to_obj() for c in self.classes],
        }


def divisor_census(n, m, strict=False):
    """Group the codimension-one strata of Kbar(n, m) by content class.

    For ``n, m >= 1`` the counts are compared with the closed forms and their
    binomial refinement.  Otherwise the enumeration is returned alone with the
    flag ``TheoremHypothesis`` (raised instead when ``strict``).
    """
    check_space(n, m)
    levels = all_strata(n, m)
    walls = levels[1] if len(levels) > 1 else ()
    grouped = {}
    for s in walls:
        kind, ips, bps = _content(s.canonical)
        grouped.setdefault((kind, ips, bps), []).append(s)
    classes = []
    for (kind, ips, bps), members in grouped.items():
        fs = class_factors(kind, n, m, len(ips), len(bps))
        for s in members:
            if s.factors != fs:
                raise AssertionError(f"{s.key} has factors {s.factors}, class says {fs}")
        classes.append(DivisorClass(kind, ips, bps, fs, tuple(s.key for s in members)))
    classes.sort(key=DivisorClass.sort_key)
    counts = Counter(c.kind for c in classes)
    counts = {k: counts.get(k, 0) for k in KINDS}
    by_size = dict(Counter((c.kind,) + c.size for c in classes))
    census = DivisorCensus(n, m, classes, counts, by_size)
    if n >= 1 and m >= 1:
        census.closed_form = closed_form(n, m)
        census.expected_by_size = expected_by_size(n, m)
    else:
        if strict:
            raise TheoremHypothesis(
                f"the divisor count formulas assume n, m >= 1; got Kbar({n},{m})")
        census.flags.append(TheoremHypothesis.code)
    return census


def refinement_identity(n, m):
    """``(codim-1 strata, sum over classes of factor chamber products)``."""
    census = divisor_census(n, m)
    return (sum(len(c.strata) for c in census.classes),
            sum(c.expected_strata for c in census.classes))


# -- building set -----------------------------------------------------------

@dataclass(frozen=True)
class BuildingSetElement:
    kind: str
    interior: tuple
    boundary: tuple
    grading: int
    naive_codim: int
    dimension: int

    def to_obj(self):
        return {
            "kind": self.kind,
            "interior": list(self.interior),
            "boundary": list(self.boundary),
            "grading": self.grading,
            "naive_codim": self.naive_codim,
            "dimension": self.dimension,
        }


def naive_codim(kind, i, b):
    if kind == "interior":
        return 2 * (i - 1)
    if kind == "boundary":
        return b - 1
    return 2 * i + b - 1


def _stable_outside(kind, n, m, i, b):
    # the complement of the arc must still be a stable root
    if kind == "interior":
        return 2 * (n - i + 1) + m >= 3
    if kind == "boundary":
        return 2 * n + m - b + 1 >= 3
    return 2 * (n - i) + m - b + 1 >= 3


def building_set(n, m, order="dimension"):
    """Single-arc collision loci of naive codimension at least two.

    ``order="dimension"`` lists them by increasing dimension, the order in
    which they are blown up, breaking ties by grading ``2i+b`` and labels;
    ``order="grading"`` sorts by grading first.
    """
    check_space(n, m)
    if order not in ("dimension", "grading"):
        raise ValueError(f"unknown order {order!r}")
    top = 2 * n + m - 3
    interior = range(1, n + 1)
    free = range(1, n)
    bnd = range(1, m + 1)
    candidates = []
    for i in range(2, n + 1):
        candidates += [("interior", ips, ()) for ips in combinations(interior, i)]
    for b in range(3, m + 1):
        for bps in combinations(bnd, b):
            # with no interior particle an arc and its complement are the same
            # locus; keep the side holding at most one of bp1, bp2, bp3
            if n == 0 and len({1, 2, 3} & set(bps)) >= 2:
                continue
            candidates.append(("boundary", (), bps))
    for i in range(1, n):
        for b in range(m + 1):
            if (i, b) == (1, 0):
                continue
            candidates += [("mixed", ips, bps)
                           for ips in combinations(free, i) for bps in combinations(bnd, b)]
    out = []
    for kind, ips, bps in candidates:
        i, b = len(ips), len(bps)
        c = naive_codim(kind, i, b)
        if c < 2 or not _stable_outside(kind, n, m, i, b):
            continue
        out.append(BuildingSetElement(kind, ips, bps, 2 * i + b, c, top - c))
    if order == "dimension":
        out.sort(key=lambda e: (e.dimension, e.grading, KINDS.index(e.kind), e.interior, e.boundary))
    else:
        out.sort(key=lambda e: (e.grading, e.dimension, KINDS.index(e.kind), e.interior, e.boundary))
    return out
