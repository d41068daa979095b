"""Bubble trees: the cell labels of the compactified moduli space of
punctured disks.

A tree has a root disk carrying an unordered collection of interior items
and a cyclically ordered sequence of boundary items.  Interior items are
interior particles or sphere bubbles; boundary items are boundary particles
or disk bubbles.  Every bubble is one arc (or loop) of a nested compatible
arc system, so the number of bubbles is the codimension of the cell.

Nodes are immutable; unordered collections are stored as tuples in whatever
order they were built with.  Use :func:`diskmoduli.canon.canonicalize` to
get a representative that can be compared with ``==``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Tuple, Union

from .errors import (
    AnchorViolation,
    BadPath,
    BubbleTooSmall,
    DegenerateSpace,
    LabelPartition,
    MalformedTree,
    RootUnstable,
)


class _Particle:
    # interior particles sort before boundary ones
    rank = 0

    def __lt__(self, other):
        return (self.rank, self.index) < (other.rank, other.index)


@dataclass(frozen=True)
class IP(_Particle):
    """Interior particle."""
    index: int

    def encode(self):
        return f"i{self.index}"


@dataclass(frozen=True)
class BP(_Particle):
    """Boundary particle."""
    index: int
    rank = 1

    def encode(self):
        return f"b{self.index}"


@dataclass(frozen=True)
class Sphere:
    """Bubble from a contracted loop.  ``children`` is unordered."""
    children: tuple

    def encode(self):
        return "S(" + ",".join(c.encode() for c in self.children) + ")"


@dataclass(frozen=True)
class Disk:
    """Bubble from a contracted arc.

    ``interior`` is unordered, ``boundary`` is a linear sequence.  The disk
    is *flat* when it has no direct interior items and *punctured*
    otherwise.
    """
    interior: tuple
    boundary: tuple

    @property
    def flat(self):
        return not self.interior

    def encode(self):
        return ("D(" + ",".join(c.encode() for c in self.interior) + ";"
                + ",".join(c.encode() for c in self.boundary) + ")")


InteriorItem = Union[IP, Sphere]
BoundaryItem = Union[BP, Disk]
Node = Union[IP, BP, Sphere, Disk]


@dataclass(frozen=True)
class BubbleTree:
    """A cell label of Kbar(n, m).

    ``boundary`` is read cyclically: rotations describe the same cell.
    """
    n: int
    m: int
    interior: tuple = ()
    boundary: tuple = ()

    def encode(self):
        return ("R(" + ",".join(c.encode() for c in self.interior) + ";"
                + ",".join(c.encode() for c in self.boundary) + ")")

    def __str__(self):
        return self.encode()

    @property
    def dimension(self):
        return 2 * self.n + self.m - 3


Path = Tuple[Tuple[str, int], ...]


def trivial_tree(n, m):
    """The open chamber with boundary particles in the order 1..m."""
    return BubbleTree(n, m, tuple(IP(i) for i in range(1, n + 1)),
                      tuple(BP(j) for j in range(1, m + 1)))


# -- structure walking ------------------------------------------------------

def _slots(node):
    if isinstance(node, (BubbleTree, Disk)):
        return {"i": node.interior, "b": node.boundary}
    if isinstance(node, Sphere):
        return {"i": node.children}
    return {}


def node_at(tree, path):
    node = tree
    for step in path:
        try:
            slot, idx = step
            items = _slots(node)[slot]
            if idx < 0:
                raise IndexError
            node = items[idx]
        except (KeyError, IndexError, TypeError, ValueError):
            raise BadPath(f"path {format_path(path)} does not address a node")
    return node


def _with_slot(node, slot, items):
    if isinstance(node, BubbleTree):
        if slot == "i":
            return BubbleTree(node.n, node.m, items, node.boundary)
        return BubbleTree(node.n, node.m, node.interior, items)
    if isinstance(node, Disk):
        return Disk(items, node.boundary) if slot == "i" else Disk(node.interior, items)
    return Sphere(items)


def replace_at(tree, path, new):
    """Return ``tree`` with the node at ``path`` replaced by ``new``."""
    if not path:
        return new
    node_at(tree, path)
    (slot, idx), rest = path[0], path[1:]
    items = list(_slots(tree)[slot])
    items[idx] = replace_at(items[idx], rest, new)
    return _with_slot(tree, slot, tuple(items))


def walk(tree, path=()):
    """Yield ``(path, node)`` for every node below and including ``tree``."""
    yield path, tree
    for slot, items in _slots(tree).items():
        for idx, child in enumerate(items):
            yield from walk(child, path + ((slot, idx),))


def bubble_paths(tree):
    return [p for p, node in walk(tree) if isinstance(node, (Sphere, Disk))]


def particles(node):
    """All particles in the subtree, in traversal order."""
    out = []
    _collect(node, out)
    return out


def _collect(node, out):
    if isinstance(node, (IP, BP)):
        out.append(node)
    elif isinstance(node, Sphere):
        for c in node.children:
            _collect(c, out)
    else:
        for c in node.interior:
            _collect(c, out)
        for c in node.boundary:
            _collect(c, out)


def format_path(path):
    return ".".join(f"{s}{i}" for s, i in path) or "root"


def parse_path(text):
    text = text.strip()
    if text in ("", "root"):
        return ()
    steps = []
    for part in text.split("."):
        if len(part) < 2 or part[0] not in "ib" or not part[1:].isdigit():
            raise BadPath(f"cannot parse path step {part!r}")
        steps.append((part[0], int(part[1:])))
    return tuple(steps)


# -- validation -------------------------------------------------------------

class _Scan:
    """One pass over a tree: shape errors are raised on the spot, the rest
    is recorded so errors can be reported in priority order."""

    def __init__(self, n):
        self.labels = []
        self.small = None
        self.anchor = None
        self.mu = n

    def visit(self, node, in_disk, where):
        kind = type(node)
        if kind is IP or kind is BP:
            if type(node.index) is not int:
                raise MalformedTree(f"particle index {node.index!r} is not an integer")
            self.labels.append((kind is BP, node.index))
            if kind is IP and in_disk and node.index == self.mu and self.anchor is None:
                self.anchor = True
            return
        if kind is Sphere:
            if len(node.children) < 2 and self.small is None:
                self.small = node
            for c in node.children:
                if type(c) is not IP and type(c) is not Sphere:
                    raise MalformedTree(f"sphere holds {type(c).__name__}")
                self.visit(c, in_disk, where)
            return
        if kind is not Disk and kind is not BubbleTree:
            raise MalformedTree(f"unknown node {node!r}")
        if kind is Disk and 2 * len(node.interior) + len(node.boundary) < 2 and self.small is None:
            self.small = node
        for c in node.interior:
            if type(c) is not IP and type(c) is not Sphere:
                raise MalformedTree(f"{where}: interior slot holds {type(c).__name__}")
            self.visit(c, in_disk, where)
        for c in node.boundary:
            if type(c) is not BP and type(c) is not Disk:
                raise MalformedTree(f"{where}: boundary slot holds {type(c).__name__}")
            self.visit(c, in_disk or type(c) is Disk, where)


def _path_of(tree, target):
    return next(p for p, x in walk(tree) if x is target)


def validate_tree(tree, n=None, m=None):
    """Check every structural rule; raise the most specific error.

    ``n`` and ``m`` default to the values stored on the tree.  Errors are
    checked in the order: degenerate space, malformed shape, label
    partition, understuffed bubble, unstable root, anchor violation.
    """
    n = tree.n if n is None else n
    m = tree.m if m is None else m
    if n < 0 or m < 0 or 2 * n + m < 3:
        raise DegenerateSpace(f"Kbar({n},{m}) needs 2n+m >= 3")
    if not isinstance(tree, BubbleTree):
        raise MalformedTree("expected a BubbleTree")
    scan = _Scan(n)
    scan.visit(tree, False, "root")

    expected = [(False, i) for i in range(1, n + 1)] + [(True, j) for j in range(1, m + 1)]
    if sorted(scan.labels) != expected:
        labels = scan.labels
        seen = set()
        dup = sorted({x for x in labels if x in seen or seen.add(x)})
        missing = sorted(set(expected) - set(labels))
        extra = sorted(set(labels) - set(expected))

        def names(xs):
            return [("b" if b else "i") + str(k) for b, k in xs]

        raise LabelPartition(
            "particles must be exactly ip1..ip%d and bp1..bp%d "
            "(missing %s, duplicated %s, unexpected %s)" % (
                n, m, names(missing), names(dup), names(extra)))

    if scan.small is not None:
        node = scan.small
        where = format_path(_path_of(tree, node))
        if isinstance(node, Sphere):
            raise BubbleTooSmall(f"sphere at {where} has {len(node.children)} children, needs 2")
        weight = 2 * len(node.interior) + len(node.boundary)
        raise BubbleTooSmall(f"disk at {where} has 2i+b = {weight} < 2")

    weight = 2 * len(tree.interior) + len(tree.boundary)
    if weight < 3:
        raise RootUnstable(f"root has 2i+b = {weight} < 3")

    if scan.anchor:
        mu = IP(n)
        path = next(p for p, x in walk(tree) if isinstance(x, Disk) and mu in particles(x))
        raise AnchorViolation(f"anchor ip{n} lies inside the disk bubble at {format_path(path)}")
    return True


def is_valid(tree):
    try:
        validate_tree(tree)
    except Exception:
        return False
    return True


def codim_dim(tree):
    """Return ``(codim, dim)``: codim counts bubbles, dim = 2n+m-3-codim."""
    validate_tree(tree)
    codim = len(bubble_paths(tree))
    return codim, tree.dimension - codim


# -- serialization ----------------------------------------------------------

SCHEMA_VERSION = 1


def node_to_obj(node):
    if isinstance(node, IP):
        return {"ip": node.index}
    if isinstance(node, BP):
        return {"bp": node.index}
    if isinstance(node, Sphere):
        return {"sphere": {"children": [node_to_obj(c) for c in node.children]}}
    if isinstance(node, Disk):
        return {"disk": {"interior": [node_to_obj(c) for c in node.interior],
                         "boundary": [node_to_obj(c) for c in node.boundary]}}
    raise MalformedTree(f"cannot serialize {node!r}")


def tree_to_obj(tree):
    return {
        "version": SCHEMA_VERSION,
        "n": tree.n,
        "m": tree.m,
        "root": {"interior": [node_to_obj(c) for c in tree.interior],
                 "boundary": [node_to_obj(c) for c in tree.boundary]},
    }


def _list(obj, key, where):
    value = obj.get(key, [])
    if not isinstance(value, list):
        raise MalformedTree(f"{where}.{key} must be a list")
    return value


def node_from_obj(obj):
    if not isinstance(obj, dict) or len(obj) != 1:
        raise MalformedTree(f"node must be a one-key object, got {obj!r}")
    (key, value), = obj.items()
    if key in ("ip", "bp"):
        if not isinstance(value, int) or isinstance(value, bool):
            raise MalformedTree(f"{key} index must be an integer, got {value!r}")
        return IP(value) if key == "ip" else BP(value)
    if not isinstance(value, dict):
        raise MalformedTree(f"{key} body must be an object")
    if key == "sphere":
        return Sphere(tuple(node_from_obj(c) for c in _list(value, "children", key)))
    if key == "disk":
        return Disk(tuple(node_from_obj(c) for c in _list(value, "interior", key)),
                    tuple(node_from_obj(c) for c in _list(value, "boundary", key)))
    raise MalformedTree(f"unknown node kind {key!r}")


def tree_from_obj(obj):
    """Inverse of :func:`tree_to_obj`.  ``n``/``m`` are inferred from the
    particle labels when absent."""
    if not isinstance(obj, dict) or "root" not in obj:
        raise MalformedTree('tree document needs a "root" object')
    root = obj["root"]
    if not isinstance(root, dict):
        raise MalformedTree("root must be an object")
    interior = tuple(node_from_obj(c) for c in _list(root, "interior", "root"))
    boundary = tuple(node_from_obj(c) for c in _list(root, "boundary", "root"))
    probe = BubbleTree(0, 0, interior, boundary)
    labels = particles(probe)
    n = obj.get("n", sum(isinstance(x, IP) for x in labels))
    m = obj.get("m", sum(isinstance(x, BP) for x in labels))
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in (n, m)):
        raise MalformedTree("n and m must be integers")
    return BubbleTree(n, m, interior, boundary)


# -- compact text form ------------------------------------------------------

class _Reader:
    def __init__(self, text):
        self.text = text.replace(" ", "")
        self.pos = 0

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            raise MalformedTree(f"expected {ch!r} at {self.pos} in {self.text!r}")
        self.pos += 1

    def items(self, stop):
        out = []
        while self.peek() not in (stop, ""):
            out.append(self.node())
            if self.peek() == ",":
                self.pos += 1
        return tuple(out)

    def node(self):
        head = self.peek()
        self.pos += 1
        if head in "ib":
            start = self.pos
            while self.peek().isdigit():
                self.pos += 1
            if start == self.pos:
                raise MalformedTree(f"missing index at {start} in {self.text!r}")
            k = int(self.text[start:self.pos])
            return IP(k) if head == "i" else BP(k)
        if head == "S":
            self.expect("(")
            kids = self.items(")")
            self.expect(")")
            return Sphere(kids)
        if head in "DR":
            self.expect("(")
            interior = self.items(";")
            self.expect(";")
            boundary = self.items(")")
            self.expect(")")
            if head == "D":
                return Disk(interior, boundary)
            return BubbleTree(0, 0, interior, boundary)
        raise MalformedTree(f"unexpected {head!r} at {self.pos - 1} in {self.text!r}")


def parse_tree(text, n=None, m=None):
    """Parse the compact form produced by ``BubbleTree.encode``, e.g.
    ``"R(i2;D(;D(i1;),b1))"``."""
    reader = _Reader(text)
    root = reader.node()
    if reader.peek():
        raise MalformedTree(f"trailing text in {text!r}")
    if not isinstance(root, BubbleTree):
        raise MalformedTree("tree text must start with R(")
    labels = particles(root)
    if n is None:
        n = sum(isinstance(x, IP) for x in labels)
    if m is None:
        m = sum(isinstance(x, BP) for x in labels)
    return BubbleTree(n, m, root.interior, root.boundary)


def iter_bubbles(tree) -> Iterator[Tuple[Path, Node]]:
    for path, node in walk(tree):
        if isinstance(node, (Sphere, Disk)):
            yield path, node
