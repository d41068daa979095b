import random

from hypothesis import HealthCheck, settings, strategies as st

from diskmoduli.canon import flip_is_identification, reroot
from diskmoduli.enumeration import all_strata
from diskmoduli.trees import BubbleTree, Disk, Sphere, bubble_paths, node_at, replace_at

settings.register_profile(
    "default", deadline=None, max_examples=150,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL = [(n, m) for n in range(4) for m in range(5) if 2 * n + m >= 3 and (n, m) != (3, 4)]
WITH_LARGE = SMALL + [(3, 4)]


def _shuffled(node, rng):
    """Same tree with its unordered collections reordered."""
    if isinstance(node, Sphere):
        kids = [_shuffled(c, rng) for c in node.children]
        rng.shuffle(kids)
        return Sphere(tuple(kids))
    if isinstance(node, (Disk, BubbleTree)):
        inner = [_shuffled(c, rng) for c in node.interior]
        rng.shuffle(inner)
        bnd = tuple(_shuffled(c, rng) for c in node.boundary)
        if isinstance(node, Disk):
            return Disk(tuple(inner), bnd)
        return BubbleTree(node.n, node.m, tuple(inner), bnd)
    return node


def scramble(tree, rng):
    """Apply random identification moves: flips, rotation, reordering and,
    when n = 0, re-rooting."""
    for _ in range(rng.randrange(4)):
        if tree.n == 0:
            flats = [j for j, x in enumerate(tree.boundary) if isinstance(x, Disk) and x.flat]
            if flats:
                new = reroot(tree, rng.choice(flats))
                if new is not None:
                    tree = new
        paths = [p for p in bubble_paths(tree) if flip_is_identification(tree, p)]
        if paths:
            p = rng.choice(paths)
            node = node_at(tree, p)
            tree = replace_at(tree, p, Disk((), node.boundary[::-1]))
    if tree.boundary:
        r = rng.randrange(len(tree.boundary))
        tree = BubbleTree(tree.n, tree.m, tree.interior, tree.boundary[r:] + tree.boundary[:r])
    return _shuffled(tree, rng)


@st.composite
def strata(draw, spaces=SMALL):
    n, m = draw(st.sampled_from(spaces))
    flat = [s for level in all_strata(n, m) for s in level]
    return flat[draw(st.integers(0, len(flat) - 1))]


@st.composite
def scrambled(draw, spaces=SMALL):
    """``(stratum, raw tree representing it)``."""
    s = draw(strata(spaces))
    rng = random.Random(draw(st.integers(0, 2 ** 32 - 1)))
    return s, scramble(s.canonical, rng)
