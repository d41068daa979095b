"""Exhaustive enumeration of strata of Kbar(n, m).

Trees are built bottom-up from label sets: every sub-collection is produced
directly in canonical form (unordered parts sorted, flat sequences in their
least orientation), so the only deduplication left at the top is the root
rotation.  Closed-form counts elsewhere in the package are checked against
these lists rather than used to produce them.
"""
from __future__ import annotations

import gc
import os
from collections import defaultdict
from contextlib import contextmanager
from functools import lru_cache
from itertools import combinations
from math import factorial

from .canon import REFERENCE, Stratum, merge_bubble
from .errors import (
    CapExceeded,
    ChamberMismatch,
    CodimOutOfRange,
    DegenerateSpace,
    UnsupportedM0,
    UnsupportedN,
)
from .trees import BP, IP, BubbleTree, Disk, Sphere, bubble_paths, particles

DEFAULT_CAP = 1_000_000
CAP_ENV = "DISKMODULI_MAX_TREES"


@contextmanager
def gc_paused():
    """Suspend the cyclic collector.  Trees are acyclic, so collections
    during a large enumeration only rescan live objects."""
    was = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was:
            gc.enable()


def default_cap():
    value = os.environ.get(CAP_ENV)
    return int(value) if value else DEFAULT_CAP


def check_space(n, m):
    if n < 0 or m < 0 or 2 * n + m < 3:
        raise DegenerateSpace(f"Kbar({n},{m}) needs n, m >= 0 and 2n+m >= 3")


def _subsets(items):
    items = sorted(items)
    for r in range(len(items) + 1):
        for combo in combinations(items, r):
            yield frozenset(combo)


def _set_partitions(labels):
    labels = sorted(labels)
    if not labels:
        yield []
        return
    first, rest = labels[0], labels[1:]
    for others in _subsets(rest):
        block = frozenset((first,)) | others
        for tail in _set_partitions(set(rest) - others):
            yield [block] + tail


class _Builder:
    """Memoized generators of canonical items keyed by label sets.

    Items are ``(encoding, node)`` pairs; ``count`` tallies every node built
    so runaway cases stop at ``cap``.
    """

    def __init__(self, n, m, cap):
        self.n, self.m, self.cap = n, m, cap
        self.count = 0
        self._interior = {}
        self._collections = {}
        self._boundary = {}
        self._sequences = {}
        self._label_cache = {}

    def _tick(self, k=1):
        self.count += k
        if self.count > self.cap:
            raise CapExceeded(
                f"enumerating Kbar({self.n},{self.m}) exceeded {self.cap} generated "
                f"trees; raise the cap with {CAP_ENV} or --cap")

    def interior_items(self, labels):
        if labels not in self._interior:
            if len(labels) == 1:
                (x,) = labels
                out = [(x.encode(), x)]
            else:
                out = []
                for coll in self.collections(labels, proper=True):
                    if len(coll) >= 2:
                        out.append(("S(" + ",".join(e for e, _ in coll) + ")",
                                    Sphere(tuple(c for _, c in coll))))
                self._tick(len(out))
            self._interior[labels] = out
        return self._interior[labels]

    def collections(self, labels, proper=False):
        """Unordered collections of interior items covering ``labels``; with
        ``proper`` only those of two or more items."""
        if (labels, proper) not in self._collections:
            out = []
            for blocks in _set_partitions(labels):
                if proper and len(blocks) < 2:
                    continue
                partial = [()]
                for block in blocks:
                    partial = [p + (item,) for p in partial for item in self.interior_items(block)]
                out.extend(tuple(sorted(p)) for p in partial)
            self._collections[labels, proper] = out
        return self._collections[labels, proper]

    def boundary_items(self, labels):
        """Boundary items (particle or disk bubble) covering ``labels``."""
        if labels not in self._boundary:
            inner_labels = frozenset(x for x in labels if isinstance(x, IP))
            if not inner_labels and len(labels) == 1:
                (x,) = labels
                out = [(x.encode(), x)]
            else:
                out = []
                for direct in _subsets(inner_labels):
                    colls = self.collections(direct) if direct else [()]
                    seqs = (self.sequences(labels - direct) if direct
                            else self.sequences(labels, proper=True))
                    for seq in seqs:
                        for coll in colls:
                            if 2 * len(coll) + len(seq) < 2:
                                continue
                            head = "D(" + ",".join(e for e, _ in coll) + ";"
                            enc = head + ",".join(e for e, _ in seq) + ")"
                            if not coll:
                                rev = head + ",".join(e for e, _ in reversed(seq)) + ")"
                                if rev < enc:
                                    continue
                            out.append((enc, Disk(tuple(c for _, c in coll),
                                                  tuple(c for _, c in seq))))
                self._tick(len(out))
            self._boundary[labels] = out
        return self._boundary[labels]

    def sequences(self, labels, proper=False):
        """Ordered sequences of boundary items covering ``labels``; with
        ``proper`` only those of two or more items."""
        if (labels, proper) not in self._sequences:
            if not labels:
                out = [] if proper else [()]
            else:
                out = []
                for first in _subsets(labels):
                    if not first or (proper and first == labels):
                        continue
                    tails = self.sequences(labels - first)
                    for item in self.boundary_items(first):
                        out.extend((item,) + t for t in tails)
                self._tick(len(out))
            self._sequences[labels, proper] = out
        return self._sequences[labels, proper]

    def roots(self):
        """Canonical root trees, one per stratum."""
        n, m = self.n, self.m
        bps = frozenset(BP(j) for j in range(1, m + 1))
        free = frozenset(IP(i) for i in range(1, n))
        out = []
        if n >= 1:
            splits = [(s | {IP(n)}, free - s) for s in _subsets(free)]
        else:
            splits = [(frozenset(), frozenset())]
        for at_root, pushed in splits:
            colls = self.collections(at_root) if at_root else [()]
            labels = pushed | bps
            for seq in self._cyclic(labels):
                for coll in colls:
                    if 2 * len(coll) + len(seq) < 3:
                        continue
                    out.append(_root_from_items(n, m, coll, seq))
                    self._tick()
        return out

    def _cyclic(self, labels):
        # one rotation per cyclic class: the item holding the least label first
        if not labels:
            yield ()
            return
        least = min(labels)
        for first in _subsets(labels - {least}):
            block = first | {least}
            if self.n == 0 and len(REFERENCE & block) >= 2:
                continue
            tails = self.sequences(labels - block)
            for item in self.boundary_items(block):
                for tail in tails:
                    if self.n == 0 and any(len(REFERENCE & self._labels_of(c)) >= 2
                                           for c in tail):
                        continue
                    yield (item,) + tail

    def _labels_of(self, item):
        enc, node = item
        if enc not in self._label_cache:
            self._label_cache[enc] = frozenset(particles(node))
        return self._label_cache[enc]


def _root_from_items(n, m, coll, seq):
    """Encoding and root tree from canonical items, least rotation first."""
    head = "R(" + ",".join(e for e, _ in coll) + ";"
    best = None
    for r in range(max(1, len(seq))):
        rot = seq[r:] + seq[:r]
        enc = head + ",".join(e for e, _ in rot) + ")"
        if best is None or enc < best[0]:
            best = (enc, rot)
    return best[0], BubbleTree(n, m, tuple(c for _, c in coll), tuple(c for _, c in best[1]))


@lru_cache(maxsize=32)
def _all_strata(n, m, cap):
    check_space(n, m)
    by_codim = defaultdict(list)
    with gc_paused():
        for key, tree in _Builder(n, m, cap).roots():
            s = Stratum._trusted(tree, key)
            by_codim[s.codim].append(s)
    top = 2 * n + m - 3
    return tuple(tuple(sorted(by_codim[k], key=lambda s: s.key)) for k in range(top + 1))


def all_strata(n, m, cap=None):
    """Tuple indexed by codimension of sorted stratum tuples."""
    return _all_strata(n, m, default_cap() if cap is None else cap)


def enumerate_strata(n, m, k, cap=None):
    """All strata of codimension ``k``, sorted by canonical key."""
    check_space(n, m)
    if not 0 <= k <= 2 * n + m - 3:
        raise CodimOutOfRange(f"codim {k} outside 0..{2 * n + m - 3} for Kbar({n},{m})")
    return list(all_strata(n, m, cap)[k])


def f_vector(n, m, cap=None):
    """Number of strata in each codimension 0..2n+m-3."""
    return [len(level) for level in all_strata(n, m, cap)]


def chambers(n, m, cap=None):
    """Count of open chambers, checked against (m-1)!."""
    check_space(n, m)
    if m == 0:
        raise UnsupportedM0("chamber count (m-1)! needs at least one boundary particle")
    count = len(all_strata(n, m, cap)[0])
    if count != factorial(m - 1):
        raise ChamberMismatch(f"Kbar({n},{m}) enumerated {count} chambers, "
                              f"expected (m-1)! = {factorial(m - 1)}")
    return count


def euler_characteristic(n, m, cap=None):
    """Alternating count of open cells; only meaningful when every stratum
    is an open cell, which needs n <= 1."""
    check_space(n, m)
    if n >= 2:
        raise UnsupportedN(
            "for n >= 2 sphere bubbles give strata with circle factors, so strata "
            "are not open cells and the alternating count is not the Euler "
            "characteristic")
    return sum((-1) ** s.dim for level in all_strata(n, m, cap) for s in level)


def chamber_adjacency(n, m, cap=None):
    """Chambers glued along a shared codimension-one stratum.

    Returns ``(chambers, edges, components)``: chamber keys, a sorted list of
    ``(key_a, key_b, divisor_key)`` and the connected components as sorted
    key lists (largest first, then lexicographic).
    """
    check_space(n, m)
    if m == 0:
        raise UnsupportedM0("chamber adjacency needs at least one boundary particle")
    levels = all_strata(n, m, cap)
    rooms = [s.key for s in levels[0]]
    edges = []
    parent = {k: k for k in rooms}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if len(levels) > 1:
        for wall in levels[1]:
            (path,) = bubble_paths(wall.canonical)
            sides = [s.key for s in merge_bubble(wall.canonical, path)]
            if len(sides) == 2:
                a, b = sides
                edges.append((a, b, wall.key))
                parent[find(a)] = find(b)
    groups = defaultdict(list)
    for k in rooms:
        groups[find(k)].append(k)
    comps = sorted((sorted(g) for g in groups.values()), key=lambda g: (-len(g), g))
    return rooms, sorted(edges), comps
