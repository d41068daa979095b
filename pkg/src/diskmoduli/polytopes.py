"""Associahedra from bracketings, cyclohedra from the moduli model.

A face of the associahedron ``K_n`` is a set of brackets on a word of ``n``
letters; adding brackets moves down to smaller faces, and a full bracketing
is a vertex.  The full word and single letters are never bracketed.

The cyclohedron ``W_n`` is taken to be the tile of Kbar(1, n) rather than
built from circular bracketings.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from string import ascii_lowercase

from .errors import TooSmall
from .faces import chamber_closure_poset
from .poset import FacePoset


def catalan(k):
    if k < 0:
        raise ValueError("catalan needs k >= 0")
    return comb(2 * k, k) // (k + 1)


def compatible(a, b):
    """Two intervals are nested or disjoint."""
    (i, j), (k, l) = a, b
    return j < k or l < i or (i <= k and l <= j) or (k <= i and j <= l)


@dataclass(frozen=True)
class Bracketing:
    """Brackets are 1-based inclusive intervals ``(i, j)``."""
    n: int
    brackets: frozenset

    def __post_init__(self):
        for i, j in self.brackets:
            if not (1 <= i and j <= self.n and 2 <= j - i + 1 <= self.n - 1):
                raise ValueError(f"bracket ({i},{j}) not allowed on {self.n} letters")
        items = sorted(self.brackets)
        for x in range(len(items)):
            for y in range(x + 1, len(items)):
                if not compatible(items[x], items[y]):
                    raise ValueError(f"brackets {items[x]} and {items[y]} cross")

    @property
    def rank(self):
        return self.n - 2 - len(self.brackets)

    def __str__(self):
        letters = ascii_lowercase if self.n <= 26 else None
        opens = [0] * (self.n + 1)
        closes = [0] * (self.n + 1)
        for i, j in self.brackets:
            opens[i] += 1
            closes[j] += 1
        parts = []
        for x in range(1, self.n + 1):
            name = letters[x - 1] if letters else f"x{x} "
            parts.append("(" * opens[x] + name + ")" * closes[x])
        return "".join(parts).strip()


def intervals(n):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if j - i + 1 <= n - 1]


def bracketings(n):
    """Every valid bracket set on ``n`` letters, as sorted tuples."""
    pool = intervals(n)
    out = []

    def grow(start, chosen):
        out.append(tuple(chosen))
        for x in range(start, len(pool)):
            if all(compatible(pool[x], c) for c in chosen):
                chosen.append(pool[x])
                grow(x + 1, chosen)
                chosen.pop()

    grow(0, [])
    return out


def associahedron_poset(n):
    """Face poset of ``K_n``; rank = (n-2) - number of brackets."""
    if n < 2:
        raise TooSmall(f"the associahedron needs n >= 2 letters, got {n}")
    faces = sorted(bracketings(n), key=lambda b: (-len(b), b))
    index = {b: x for x, b in enumerate(faces)}
    covers = set()
    for b in faces:
        for drop in range(len(b)):
            covers.add((index[b], index[b[:drop] + b[drop + 1:]]))
    labels = [str(Bracketing(n, frozenset(b))) for b in faces]
    ranks = [n - 2 - len(b) for b in faces]
    return FacePoset(labels, ranks, covers, {"kind": "associahedron", "n": n})


def cyclohedron_poset(n):
    """Face poset of ``W_n``: the tile of Kbar(1, n) with boundary order 1..n.

    For ``n = 2`` the tile is a segment whose two ends are the same point of
    Kbar(1, 2); the poset keeps both ends and ``meta["self_glued"]`` is set.
    """
    if n < 2:
        raise TooSmall(f"the cyclohedron needs n >= 2, got {n}")
    p = chamber_closure_poset(1, n)
    p.meta["kind"] = "cyclohedron"
    return p
