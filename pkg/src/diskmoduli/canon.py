"""Flips, re-rooting, canonical forms and arc deletion.

Two trees label the same stratum when one is reached from the other by

* reversing the item sequence of flat bubbles (the mirror symmetry of a
  flat screen),
* rotating the root's cyclic sequence, and
* for ``n = 0`` only, moving the root to another bubble.

With no interior particle to anchor the root, ``n = 0`` trees are put in a
reference frame first: the root is moved to the bubble where the paths
between ``bp1``, ``bp2`` and ``bp3`` meet.  These three particles play the
role of the points fixed at 0, 1 and infinity.  Only flat bubbles holding at
most one of them are mirrored; mirroring a bubble that holds two of them
would swap the two orientation classes of the fixed triple, which lie in
different connected components.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import BadPath, IsRoot, NotFlat, ModuliError
from .factors import factors as _factors
from .trees import (
    BP,
    IP,
    BubbleTree,
    Disk,
    Sphere,
    bubble_paths,
    format_path,
    node_at,
    particles,
    replace_at,
    validate_tree,
)

REFERENCE = frozenset({BP(1), BP(2), BP(3)})


# -- flip -------------------------------------------------------------------

def flip(tree, path):
    """Mirror the flat bubble at ``path``: reverse its own item sequence and
    keep every child subtree as it is."""
    validate_tree(tree)
    if not path:
        raise NotFlat("the root cannot be flipped")
    node = node_at(tree, path)
    if isinstance(node, (IP, BP)):
        raise BadPath(f"{format_path(path)} addresses a particle, not a bubble")
    if isinstance(node, Sphere):
        raise NotFlat(f"{format_path(path)} is a sphere bubble")
    if not node.flat:
        raise NotFlat(f"{format_path(path)} is a punctured bubble")
    return replace_at(tree, path, Disk((), tuple(reversed(node.boundary))))


def flip_is_identification(tree, path):
    """Whether mirroring the flat bubble at ``path`` stays in the same
    stratum.  Always true for ``n >= 1``; for ``n = 0`` the bubble may hold at
    most one reference particle."""
    node = node_at(tree, path)
    if not isinstance(node, Disk) or not node.flat or not path:
        return False
    if tree.n > 0:
        return True
    return len(REFERENCE.intersection(particles(node))) <= 1


# -- re-rooting (n = 0) -----------------------------------------------------

def reroot(tree, j):
    """Make the top-level flat bubble at boundary position ``j`` the root.

    For root ``[X1..F..Xk]`` with ``F = [Y1..Yl]`` the result has root
    ``[Y1..Yl, F']`` where ``F'`` holds ``[X(j+1)..Xk, X1..X(j-1)]``; the
    planar order of all particles is preserved.  Returns ``None`` when the
    result would be unstable.
    """
    if tree.n != 0:
        raise ModuliError("re-rooting is only an identification when n = 0")
    items = tree.boundary
    f = items[j] if 0 <= j < len(items) else None
    if not isinstance(f, Disk) or not f.flat:
        raise BadPath(f"boundary position {j} is not a top-level flat bubble")
    rest = items[j + 1:] + items[:j]
    if len(rest) < 2 or len(f.boundary) < 2:
        return None
    return BubbleTree(tree.n, tree.m, (), f.boundary + (Disk((), rest),))


def _reroot_path(path, j, k, l):
    # k = old root length, l = length of the bubble becoming root
    if not path:
        return (("b", l),)
    (slot, idx), rest = path[0], path[1:]
    if idx == j:
        return rest if rest else (("b", l),)
    return (("b", l), ("b", (idx - j - 1) % k)) + rest


def _ref_count(node):
    return len(REFERENCE.intersection(particles(node)))


def reference_frame(tree, path=None):
    """Re-root an ``n = 0`` tree at the meeting point of the reference
    particles.  With ``path`` given, also return where that bubble's arc
    ended up (a non-root bubble addressing the same arc)."""
    if tree.n != 0:
        return tree if path is None else (tree, path)
    while True:
        heavy = [j for j, x in enumerate(tree.boundary)
                 if isinstance(x, Disk) and _ref_count(x) >= 2]
        if not heavy:
            break
        j = heavy[0]
        k, l = len(tree.boundary), len(tree.boundary[j].boundary)
        new = reroot(tree, j)
        if new is None:  # cannot happen for valid trees; kept as a guard
            raise ModuliError(f"unstable re-rooting of {tree.encode()}")
        if path is not None:
            path = _reroot_path(path, j, k, l)
        tree = new
    return tree if path is None else (tree, path)


def rerooting_orbit(tree):
    """All rootings of an ``n = 0`` tree reachable by :func:`reroot` and its
    inverse, each with its root rotation normalized (no flips applied)."""
    seen = {}
    todo = [tree]
    while todo:
        t = todo.pop()
        key = planar_key(t)
        if key in seen:
            continue
        seen[key] = t
        for j, x in enumerate(t.boundary):
            if isinstance(x, Disk) and x.flat:
                new = reroot(t, j)
                if new is not None:
                    todo.append(new)
    return [seen[k] for k in sorted(seen)]


# -- canonical encodings ----------------------------------------------------

def _canon(node, mirror):
    """Return ``(encoding, node)`` with unordered parts sorted and, when
    ``mirror`` is set, flat sequences in their least orientation."""
    if isinstance(node, (IP, BP)):
        return node.encode(), node
    if isinstance(node, Sphere):
        kids = sorted(_canon(c, mirror) for c in node.children)
        return "S(" + ",".join(e for e, _ in kids) + ")", Sphere(tuple(c for _, c in kids))
    inner = sorted(_canon(c, mirror) for c in node.interior)
    seq = [_canon(c, mirror) for c in node.boundary]
    head = "D(" + ",".join(e for e, _ in inner) + ";"
    enc = head + ",".join(e for e, _ in seq) + ")"
    if mirror and not inner:
        rev = head + ",".join(e for e, _ in reversed(seq)) + ")"
        if rev < enc:
            enc, seq = rev, seq[::-1]
    return enc, Disk(tuple(c for _, c in inner), tuple(c for _, c in seq))


def _canon_root(tree, mirror):
    inner = sorted(_canon(c, mirror) for c in tree.interior)
    seq = [_canon(c, mirror) for c in tree.boundary]
    head = "R(" + ",".join(e for e, _ in inner) + ";"
    best = None
    for r in range(max(1, len(seq))):
        rot = seq[r:] + seq[:r]
        enc = head + ",".join(e for e, _ in rot) + ")"
        if best is None or enc < best[0]:
            best = (enc, rot)
    enc, rot = best
    return enc, BubbleTree(tree.n, tree.m, tuple(c for _, c in inner),
                           tuple(c for _, c in rot))


def canonicalize(tree):
    """Canonical representative of the stratum labelled by ``tree``."""
    validate_tree(tree)
    return _canon_root(reference_frame(tree), True)[1]


def canonical_key(tree):
    validate_tree(tree)
    return _canon_root(reference_frame(tree), True)[0]


def planar_key(tree):
    """Encoding up to root rotation and reordering of unordered parts only;
    flat bubbles keep their orientation.  Distinguishes faces of a single
    tile before the flip gluing."""
    return _canon_root(tree, False)[0]


def planar_normal(tree):
    return _canon_root(tree, False)[1]


# -- strata -----------------------------------------------------------------

@dataclass(frozen=True)
class Stratum:
    """A stratum, held by its canonical tree."""
    canonical: BubbleTree

    @classmethod
    def of(cls, tree):
        return cls(canonicalize(tree))

    @classmethod
    def _trusted(cls, tree, key):
        # for builders that already hold the canonical encoding
        s = cls(tree)
        s.__dict__["key"] = key
        return s

    @cached_property
    def key(self):
        return self.canonical.encode()

    @cached_property
    def codim(self):
        # one opening parenthesis per bubble plus one for the root
        return self.key.count("(") - 1

    @property
    def dim(self):
        return self.canonical.dimension - self.codim

    @cached_property
    def factors(self):
        # canonical trees are valid by construction
        return _factors(self.canonical, validate=False)

    @property
    def n(self):
        return self.canonical.n

    @property
    def m(self):
        return self.canonical.m

    def __eq__(self, other):
        return isinstance(other, Stratum) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return (self.codim, self.key) < (other.codim, other.key)

    def __str__(self):
        return self.key


# -- arc deletion -----------------------------------------------------------

def _splice(tree, path, reverse=False):
    node = node_at(tree, path)
    parent_path, (slot, idx) = path[:-1], path[-1]
    parent = node_at(tree, parent_path)
    if isinstance(node, Sphere):
        if isinstance(parent, Sphere):
            kids = parent.children[:idx] + node.children + parent.children[idx + 1:]
            return replace_at(tree, parent_path, Sphere(kids))
        inner = parent.interior[:idx] + node.children + parent.interior[idx + 1:]
        new_parent = (BubbleTree(parent.n, parent.m, inner, parent.boundary)
                      if isinstance(parent, BubbleTree) else Disk(inner, parent.boundary))
        return replace_at(tree, parent_path, new_parent)
    seq = node.boundary[::-1] if reverse else node.boundary
    inner = parent.interior + node.interior
    bnd = parent.boundary[:idx] + seq + parent.boundary[idx + 1:]
    new_parent = (BubbleTree(parent.n, parent.m, inner, bnd)
                  if isinstance(parent, BubbleTree) else Disk(inner, bnd))
    return replace_at(tree, parent_path, new_parent)


def _merge_path(tree, path):
    validate_tree(tree)
    if not path:
        raise IsRoot("the root bubble cannot be merged")
    node = node_at(tree, path)
    if not isinstance(node, (Sphere, Disk)):
        raise BadPath(f"{format_path(path)} addresses a particle, not a bubble")
    return reference_frame(tree, path)


def splice(tree, path):
    """Delete the arc of the bubble at ``path`` keeping its orientation
    (no flip identification applied).  Returns a raw tree."""
    tree, path = _merge_path(tree, path)
    return _splice(tree, path)


def merge_bubble(tree, path):
    """Strata obtained by deleting the arc of the bubble at ``path``.

    A flat bubble is spliced into its parent in both orientations, so one or
    two strata come back (sorted by key), each of codimension one less.
    """
    tree, path = _merge_path(tree, path)
    node = node_at(tree, path)
    results = [_splice(tree, path)]
    if isinstance(node, Disk) and node.flat:
        results.append(_splice(tree, path, reverse=True))
    # splicing an arc out of a valid tree leaves a valid tree
    out = {}
    for t in results:
        key, canon = _canon_root(reference_frame(t), True)
        out.setdefault(key, Stratum._trusted(canon, key))
    return [out[k] for k in sorted(out)]


# -- orbits and flattening --------------------------------------------------

def _node_variants(node):
    if isinstance(node, (IP, BP)):
        return [node]
    if isinstance(node, Sphere):
        return [Sphere(kids) for kids in product(*map(_node_variants, node.children))]
    inner = list(product(*map(_node_variants, node.interior)))
    seqs = list(product(*map(_node_variants, node.boundary)))
    out = [Disk(i, s) for i in inner for s in seqs]
    if node.flat:
        out += [Disk(i, s[::-1]) for i in inner for s in seqs]
    return out


def flip_variants(tree):
    """Every tree reachable from ``tree`` by flips that are identifications,
    taken in the reference frame (so the list may not contain ``tree``
    itself when ``n = 0`` and ``tree`` is rooted elsewhere)."""
    t = reference_frame(tree)
    inner = list(product(*map(_node_variants, t.interior)))
    seqs = list(product(*map(_node_variants, t.boundary)))
    return [BubbleTree(t.n, t.m, i, s) for i in inner for s in seqs]


def _flat_parts(node):
    if isinstance(node, IP):
        return [node], []
    if isinstance(node, BP):
        return [], [node]
    if isinstance(node, Sphere):
        return [x for c in node.children for x in _flat_parts(c)[0]], []
    ips, bps = [], []
    for c in node.interior + node.boundary:
        i, b = _flat_parts(c)
        ips += i
        bps += b
    return ips, bps


def flatten(tree):
    """The chamber reached by deleting every arc in its given orientation."""
    ips, bps = _flat_parts(Disk(tree.interior, tree.boundary))
    return BubbleTree(tree.n, tree.m, tuple(sorted(ips)), tuple(bps))
