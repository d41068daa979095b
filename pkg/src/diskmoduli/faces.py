"""Face posets of Kbar(n, m) and of its tiles.

``face_poset`` orders strata by closure: a stratum of codimension k+1
lies below each stratum obtained from it by deleting one arc.  Elements are
ranked by dimension.

``chamber_closure_poset`` describes a single tile before the flip gluing.
Its faces are nested arc systems drawn on a disk whose boundary particles
sit in the chamber's cyclic order, so flat bubbles keep their orientation
there.  Several faces can land on the same stratum of Kbar(n, m) (for
instance the two ends of the segment tiling Kbar(1, 2)); that gluing is
reported in ``meta`` rather than collapsed.
"""
from __future__ import annotations

from collections import Counter, defaultdict

from .canon import (
    Stratum,
    _canon_root,
    _splice,
    flatten,
    flip_variants,
    planar_key,
    planar_normal,
    reference_frame,
)
from .enumeration import all_strata, check_space
from .errors import CapExceeded, NotAChamber
from .poset import FacePoset
from .trees import BubbleTree, bubble_paths, node_at, trivial_tree

FACE_POSET_CAP = 100_000


def _merges(tree):
    """Keys of the strata reached by deleting one arc of a canonical tree."""
    out = set()
    for path in bubble_paths(tree):
        t, p = reference_frame(tree, path)
        node = node_at(t, p)
        out.add(_canon_root(reference_frame(_splice(t, p)), True)[0])
        if getattr(node, "flat", False):
            out.add(_canon_root(reference_frame(_splice(t, p, reverse=True)), True)[0])
    return out


def face_poset(n, m, cap=FACE_POSET_CAP):
    """All strata of Kbar(n, m) with closure covers, ranked by dimension."""
    check_space(n, m)
    levels = all_strata(n, m)
    total = sum(len(level) for level in levels)
    if total > cap:
        raise CapExceeded(f"Kbar({n},{m}) has {total} strata, above the face-poset cap {cap}")
    strata = [s for level in levels for s in level]
    index = {s.key: i for i, s in enumerate(strata)}
    covers = set()
    for i, s in enumerate(strata):
        if s.codim == 0:
            continue
        for key in _merges(s.canonical):
            covers.add((i, index[key]))
    return FacePoset([s.key for s in strata], [s.dim for s in strata], covers,
                     {"n": n, "m": m, "kind": "face_poset"})


def _as_chamber(n, m, chamber):
    if chamber is None:
        chamber = trivial_tree(n, m)
    tree = chamber.canonical if isinstance(chamber, Stratum) else chamber
    if not isinstance(tree, BubbleTree) or (tree.n, tree.m) != (n, m):
        raise NotAChamber(f"expected a chamber of Kbar({n},{m})")
    s = Stratum.of(tree)
    if s.codim != 0:
        raise NotAChamber(f"{s.key} has codimension {s.codim}, not 0")
    return s


def chamber_closure_poset(n, m, chamber=None):
    """Face poset of the tile of ``chamber`` (default: boundary order 1..m).

    ``meta`` carries ``stratum`` (face label -> stratum key), ``image_f_vector``
    (distinct strata per rank), ``self_glued`` and the list ``glued`` of strata
    met by more than one face.
    """
    check_space(n, m)
    room = _as_chamber(n, m, chamber)
    target = planar_key(room.canonical)
    faces = {}
    image = {}
    for level in all_strata(n, m):
        for s in level:
            for v in flip_variants(s.canonical):
                if planar_key(flatten(v)) != target:
                    continue
                key = planar_key(v)
                if key not in faces:
                    faces[key] = planar_normal(v)
                    image[key] = s
    labels = sorted(faces, key=lambda k: (-image[k].codim, k))
    index = {k: i for i, k in enumerate(labels)}
    covers = set()
    for k in labels:
        tree = faces[k]
        for path in bubble_paths(tree):
            upper = planar_key(_splice(tree, path))
            covers.add((index[k], index[upper]))

    per_stratum = Counter(image[k].key for k in labels)
    glued = sorted(key for key, c in per_stratum.items() if c > 1)
    ranks = [image[k].dim for k in labels]
    seen = defaultdict(set)
    for k in labels:
        seen[image[k].dim].add(image[k].key)
    lo = min(ranks)
    meta = {
        "n": n, "m": m, "kind": "chamber_closure", "chamber": room.key,
        "stratum": {k: image[k].key for k in labels},
        "image_f_vector": [len(seen[r]) for r in range(lo, max(ranks) + 1)],
        "self_glued": bool(glued),
        "glued": glued,
    }
    return FacePoset(labels, ranks, covers, meta)
