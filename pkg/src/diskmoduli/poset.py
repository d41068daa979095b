"""Finite ranked posets given by their Hasse diagram.

Text export format (one record per line, byte-stable)::

    # diskmoduli poset v1
    elements <count>
    <id> <rank> <label>
    ...
    covers <count>
    <lower-id> <upper-id>
    ...

Element ids are positions in ``FacePoset.labels``; covers are sorted.
Further ``#`` lines after the header carry metadata and are ignored when
reading.
"""
from __future__ import annotations

import sys
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .errors import CapExceeded, NotGraded

ISO_CAP = 5000
# scalar metadata echoed as comment lines by to_text
TEXT_META = ("kind", "n", "m", "chamber", "image_f_vector", "self_glued")


@dataclass
class FacePoset:
    labels: tuple
    ranks: tuple
    covers: frozenset
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        self.labels = tuple(self.labels)
        self.ranks = tuple(self.ranks)
        self.covers = frozenset(self.covers)
        if len(self.labels) != len(self.ranks):
            raise ValueError("labels and ranks differ in length")
        size = len(self.labels)
        for lo, hi in self.covers:
            if not (0 <= lo < size and 0 <= hi < size) or lo == hi:
                raise ValueError(f"bad cover ({lo}, {hi})")

    def __len__(self):
        return len(self.labels)

    def up(self):
        out = defaultdict(set)
        for lo, hi in self.covers:
            out[lo].add(hi)
        return out

    def down(self):
        out = defaultdict(set)
        for lo, hi in self.covers:
            out[hi].add(lo)
        return out

    def minimal(self):
        lower = {hi for _, hi in self.covers}
        return [x for x in range(len(self)) if x not in lower]

    def maximal(self):
        upper = {lo for lo, _ in self.covers}
        return [x for x in range(len(self)) if x not in upper]

    def is_acyclic(self):
        up = self.up()
        state = [0] * len(self)
        for start in range(len(self)):
            if state[start]:
                continue
            stack = [(start, iter(sorted(up[start])))]
            state[start] = 1
            while stack:
                x, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    state[x] = 2
                    stack.pop()
                elif state[nxt] == 1:
                    return False
                elif state[nxt] == 0:
                    state[nxt] = 1
                    stack.append((nxt, iter(sorted(up[nxt]))))
        return True

    def is_ranked(self):
        """Every cover raises the rank by exactly one."""
        return all(self.ranks[hi] == self.ranks[lo] + 1 for lo, hi in self.covers)

    def leq(self, a, b):
        if a == b:
            return True
        up = self.up()
        seen, todo = {a}, [a]
        while todo:
            x = todo.pop()
            for y in up[x]:
                if y == b:
                    return True
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return False

    def to_text(self):
        lines = ["# diskmoduli poset v1"]
        for key in TEXT_META:
            if key in self.meta:
                value = self.meta[key]
                if isinstance(value, (list, tuple)):
                    value = " ".join(map(str, value))
                lines.append(f"# {key} {str(value).lower() if isinstance(value, bool) else value}")
        lines.append(f"elements {len(self)}")
        lines += [f"{i} {r} {lab}" for i, (r, lab) in enumerate(zip(self.ranks, self.labels))]
        lines.append(f"covers {len(self.covers)}")
        lines += [f"{lo} {hi}" for lo, hi in sorted(self.covers)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
        count = int(lines[0].split()[1])
        labels, ranks = [], []
        for ln in lines[1:1 + count]:
            _, rank, label = ln.split(" ", 2)
            ranks.append(int(rank))
            labels.append(label)
        ncov = int(lines[1 + count].split()[1])
        covers = [tuple(map(int, ln.split())) for ln in lines[2 + count:2 + count + ncov]]
        return cls(labels, ranks, covers)

    def to_obj(self):
        return {
            "version": 1,
            "elements": [{"id": i, "rank": r, "label": lab}
                         for i, (r, lab) in enumerate(zip(self.ranks, self.labels))],
            "covers": [list(c) for c in sorted(self.covers)],
            "f_vector": list(rank_counts(self)),
            "meta": self.meta,
        }

    def to_dot(self, show_labels=True):
        lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
        for i, (r, lab) in enumerate(zip(self.ranks, self.labels)):
            text = f"rank {r}\\n{lab}" if show_labels else f"rank {r}"
            lines.append(f'  n{i} [label="{text}"];')
        for lo, hi in sorted(self.covers):
            lines.append(f"  n{lo} -> n{hi};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def rank_counts(p):
    if not len(p):
        return ()
    lo, hi = min(p.ranks), max(p.ranks)
    c = Counter(p.ranks)
    return tuple(c[r] for r in range(lo, hi + 1))


def is_graded(p):
    """All maximal chains have the same length and covers step rank by 1."""
    if not len(p):
        return True
    if not p.is_acyclic() or not p.is_ranked():
        return False
    # with unit steps, a maximal chain runs from a minimal to a maximal element
    return (len({p.ranks[x] for x in p.minimal()}) == 1
            and len({p.ranks[x] for x in p.maximal()}) == 1)


def poset_f_vector(p):
    """Element counts per rank, lowest rank first."""
    if not is_graded(p):
        raise NotGraded("f-vector is only defined for graded posets")
    return rank_counts(p)


def _compress(sig):
    table = {c: i for i, c in enumerate(sorted(set(sig.values())))}
    return {x: table[c] for x, c in sig.items()}


def _colors(p):
    """Colour refinement on (rank, neighbour colours), as small integers."""
    up, down = p.up(), p.down()
    color = _compress({x: (p.ranks[x], len(up[x]), len(down[x])) for x in range(len(p))})
    while True:
        sig = _compress({x: (color[x],
                             tuple(sorted(color[y] for y in up[x])),
                             tuple(sorted(color[y] for y in down[x])))
                         for x in range(len(p))})
        if len(set(sig.values())) == len(set(color.values())):
            return sig
        color = sig


def poset_isomorphic(p, q, cap=ISO_CAP):
    """Whether a rank-preserving order isomorphism ``p -> q`` exists."""
    if len(p) > cap or len(q) > cap:
        raise CapExceeded(f"isomorphism test limited to {cap} elements")
    if len(p) != len(q) or len(p.covers) != len(q.covers):
        return False
    if Counter(p.ranks) != Counter(q.ranks):
        return False
    # refine jointly so colours mean the same thing on both sides
    size = len(p)
    joint = FacePoset(
        p.labels + q.labels, p.ranks + q.ranks,
        set(p.covers) | {(lo + size, hi + size) for lo, hi in q.covers})
    color = _colors(joint)
    cp = {x: color[x] for x in range(size)}
    cq = {x: color[x + size] for x in range(size)}
    if Counter(cp.values()) != Counter(cq.values()):
        return False

    pu, pd, qu, qd = p.up(), p.down(), q.up(), q.down()
    by_color = defaultdict(list)
    for y, c in cq.items():
        by_color[c].append(y)

    # visit p in BFS order from the smallest colour classes so that most
    # elements have an already-mapped neighbour
    order, seen = [], set()
    for start in sorted(range(size), key=lambda x: (len(by_color[cp[x]]), x)):
        if start in seen:
            continue
        seen.add(start)
        queue = [start]
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in sorted(pu[x] | pd[x]):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)

    fwd, used = {}, set()

    def consistent(x, y):
        for a in pu[x]:
            if a in fwd and fwd[a] not in qu[y]:
                return False
        for a in pd[x]:
            if a in fwd and fwd[a] not in qd[y]:
                return False
        mapped_up = sum(1 for a in qu[y] if a in used)
        mapped_dn = sum(1 for a in qd[y] if a in used)
        return (mapped_up == sum(1 for a in pu[x] if a in fwd)
                and mapped_dn == sum(1 for a in pd[x] if a in fwd))

    def extend(i):
        if i == len(order):
            return True
        x = order[i]
        for y in by_color[cp[x]]:
            if y in used or not consistent(x, y):
                continue
            fwd[x] = y
            used.add(y)
            if extend(i + 1):
                return True
            del fwd[x]
            used.discard(y)
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, size + 100))
    try:
        return extend(0)
    finally:
        sys.setrecursionlimit(limit)


def with_top(p, label="top"):
    """Adjoin an element above every maximal element."""
    top = len(p)
    r = max(p.ranks) + 1 if len(p) else 0
    covers = set(p.covers) | {(x, top) for x in p.maximal()}
    return FacePoset(p.labels + (label,), p.ranks + (r,), covers, dict(p.meta))


def from_networkx(g, rank="rank", label="label"):
    nodes = sorted(g.nodes)
    index = {v: i for i, v in enumerate(nodes)}
    return FacePoset([str(g.nodes[v].get(label, v)) for v in nodes],
                     [g.nodes[v][rank] for v in nodes],
                     {(index[a], index[b]) for a, b in g.edges})
