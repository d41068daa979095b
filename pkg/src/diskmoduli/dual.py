"""Partially planar trees dual to arc diagrams.

Each bubble (and the root) becomes a vertex and each particle a leaf.  An
edge is *spatial* when the child hangs off the interior of its parent (an
interior particle or a sphere bubble) and *planar* when it sits on the
parent's boundary; planar edges carry their position so the boundary order
survives.  Vertices are numbered in preorder, interior children first.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedTree
from .trees import BP, IP, BubbleTree, Disk, Sphere, validate_tree

SPATIAL, PLANAR = "spatial", "planar"


@dataclass(frozen=True)
class DualVertex:
    id: int
    kind: str  # root, sphere, flat, punctured, ip, bp
    label: int = 0  # particle index for leaves


@dataclass(frozen=True)
class DualEdge:
    parent: int
    child: int
    tag: str
    position: int  # order among the parent's edges of the same tag


@dataclass(frozen=True)
class DualTree:
    n: int
    m: int
    vertices: tuple
    edges: tuple

    def children(self, v):
        return [e for e in self.edges if e.parent == v]

    def to_obj(self):
        return {
            "version": 1,
            "n": self.n,
            "m": self.m,
            "vertices": [{"id": v.id, "kind": v.kind, "label": v.label} for v in self.vertices],
            "edges": [{"parent": e.parent, "child": e.child, "tag": e.tag, "position": e.position}
                      for e in self.edges],
        }

    def to_dot(self):
        lines = ["graph dual {", "  node [fontsize=10];"]
        shapes = {"root": "doublecircle", "sphere": "circle", "flat": "box",
                  "punctured": "box", "ip": "point", "bp": "point"}
        for v in self.vertices:
            if v.kind in ("ip", "bp"):
                text = f"{v.kind[0]}{v.label}"
                attrs = f'xlabel="{text}", shape=point'
            else:
                attrs = f'label="{v.kind}", shape={shapes[v.kind]}'
                if v.kind == "punctured":
                    attrs += ", style=rounded"
            lines.append(f"  v{v.id} [{attrs}];")
        for e in self.edges:
            style = 'style=dashed' if e.tag == SPATIAL else f'label="{e.position}"'
            lines.append(f"  v{e.parent} -- v{e.child} [{style}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def dual_tree(tree):
    validate_tree(tree)
    vertices, edges = [], []

    def visit(node, kind):
        vid = len(vertices)
        if isinstance(node, (IP, BP)):
            vertices.append(DualVertex(vid, kind, node.index))
            return vid
        vertices.append(DualVertex(vid, kind))
        inner = node.children if isinstance(node, Sphere) else node.interior
        for pos, child in enumerate(inner):
            cid = visit(child, "ip" if isinstance(child, IP) else "sphere")
            edges.append(DualEdge(vid, cid, SPATIAL, pos))
        if not isinstance(node, Sphere):
            for pos, child in enumerate(node.boundary):
                if isinstance(child, BP):
                    ckind = "bp"
                else:
                    ckind = "flat" if child.flat else "punctured"
                cid = visit(child, ckind)
                edges.append(DualEdge(vid, cid, PLANAR, pos))
        return vid

    visit(tree, "root")
    return DualTree(tree.n, tree.m, tuple(vertices), tuple(edges))


def from_dual(dual):
    """Rebuild the bubble tree; inverse of :func:`dual_tree`."""
    kinds = {v.id: v for v in dual.vertices}
    spatial, planar = {}, {}
    for e in dual.edges:
        if e.parent not in kinds or e.child not in kinds:
            raise MalformedTree(f"edge {e} refers to a missing vertex")
        (spatial if e.tag == SPATIAL else planar).setdefault(e.parent, []).append(e)

    def kids(table, vid):
        return [e.child for e in sorted(table.get(vid, []), key=lambda e: e.position)]

    def build(vid):
        v = kinds[vid]
        if v.kind == "ip":
            return IP(v.label)
        if v.kind == "bp":
            return BP(v.label)
        inner = tuple(build(c) for c in kids(spatial, vid))
        if v.kind == "sphere":
            return Sphere(inner)
        bnd = tuple(build(c) for c in kids(planar, vid))
        if v.kind == "root":
            return BubbleTree(dual.n, dual.m, inner, bnd)
        if v.kind in ("flat", "punctured"):
            return Disk(inner, bnd)
        raise MalformedTree(f"unknown dual vertex kind {v.kind!r}")

    roots = [v.id for v in dual.vertices if v.kind == "root"]
    if len(roots) != 1:
        raise MalformedTree("a dual tree has exactly one root vertex")
    return build(roots[0])
