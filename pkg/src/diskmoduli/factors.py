"""Product decomposition of a cell into smaller moduli spaces.

Each bubble of a tree contributes one factor: the root is a punctured disk
``Kbar(i, b)``, a sphere bubble with ``c`` children is ``Ncomplex(c + 1)``
(the extra point is where it attaches), a flat bubble with ``b`` items is the
real moduli space ``Mreal(b + 1)``, and a punctured bubble with ``i``
interior and ``b`` boundary items is ``Kbar(i, b + 1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .trees import Disk, Sphere, validate_tree


@dataclass(frozen=True, order=True)
class ModuliFactor:
    """``tag`` is one of ``"Kbar"``, ``"Mreal"``, ``"Ncomplex"``; ``args`` holds
    ``(n, m)`` for Kbar and ``(k,)`` otherwise."""
    tag: str
    args: tuple

    def __post_init__(self):
        if self.tag == "Kbar":
            n, m = self.args
            if n < 0 or m < 0 or 2 * n + m < 3:
                raise ValueError(f"Kbar({n},{m}) is not a stable space")
        elif self.tag in ("Mreal", "Ncomplex"):
            (k,) = self.args
            if k < 3:
                raise ValueError(f"{self.tag}({k}) needs k >= 3")
        else:
            raise ValueError(f"unknown factor tag {self.tag!r}")

    @property
    def dimension(self):
        if self.tag == "Kbar":
            n, m = self.args
            return 2 * n + m - 3
        (k,) = self.args
        # Ncomplex(3) is a circle: the group acting on sphere bubbles has five
        # real dimensions, one short of PGL2(C).
        return k - 3 if self.tag == "Mreal" else 2 * k - 5

    @property
    def chambers(self):
        """Number of open top cells the factor is tiled by."""
        if self.tag == "Kbar":
            n, m = self.args
            if m == 0:
                return 1
            return factorial(m - 1)
        (k,) = self.args
        if self.tag == "Mreal":
            return factorial(k - 1) // 2
        return 1

    def __str__(self):
        return f"{self.tag}({','.join(map(str, self.args))})"


@lru_cache(maxsize=None)
def Kbar(n, m):
    return ModuliFactor("Kbar", (n, m))


@lru_cache(maxsize=None)
def Mreal(k):
    return ModuliFactor("Mreal", (k,))


@lru_cache(maxsize=None)
def Ncomplex(k):
    return ModuliFactor("Ncomplex", (k,))


def factors(tree, validate=True):
    """Sorted tuple of the factors of the cell labelled by ``tree``."""
    if validate:
        validate_tree(tree)
    out = [Kbar(len(tree.interior), len(tree.boundary))]
    for c in tree.interior + tree.boundary:
        _bubble_factors(c, out)
    return tuple(sorted(out, key=_order))


def _order(f):
    return f.tag, f.args


def _bubble_factors(node, out):
    if isinstance(node, Sphere):
        out.append(Ncomplex(len(node.children) + 1))
        kids = node.children
    elif isinstance(node, Disk):
        if node.flat:
            out.append(Mreal(len(node.boundary) + 1))
        else:
            out.append(Kbar(len(node.interior), len(node.boundary) + 1))
        kids = node.interior + node.boundary
    else:
        return
    for c in kids:
        _bubble_factors(c, out)


def factor_dimension(fs):
    return sum(f.dimension for f in fs)
