"""Combinatorics of the compactified moduli space Kbar(n, m) of punctured
disks: bubble trees, strata, face posets, tiles and divisor censuses."""

__version__ = "0.1.0"

from .canon import Stratum, canonicalize, flip, merge_bubble
from .census import building_set, divisor_census
from .dual import dual_tree, from_dual
from .enumeration import (
    all_strata,
    chamber_adjacency,
    chambers,
    enumerate_strata,
    euler_characteristic,
    f_vector,
)
from .errors import ModuliError
from .factors import Kbar, ModuliFactor, Mreal, Ncomplex, factors
from .faces import chamber_closure_poset, face_poset
from .poset import FacePoset, is_graded, poset_f_vector, poset_isomorphic
from .polytopes import associahedron_poset, catalan, cyclohedron_poset
from .render import render_svg
from .trees import BP, IP, BubbleTree, Disk, Sphere, codim_dim, parse_tree, validate_tree

__all__ = [
    "BP", "IP", "BubbleTree", "Disk", "FacePoset", "Kbar", "ModuliError", "ModuliFactor",
    "Mreal", "Ncomplex", "Sphere", "Stratum", "all_strata", "associahedron_poset", "building_set",
    "canonicalize", "catalan", "chamber_adjacency", "chamber_closure_poset", "chambers",
    "codim_dim", "cyclohedron_poset", "divisor_census", "dual_tree", "enumerate_strata",
    "euler_characteristic", "f_vector", "face_poset", "factors", "flip", "from_dual",
    "is_graded", "merge_bubble", "parse_tree", "poset_f_vector", "poset_isomorphic",
    "render_svg", "validate_tree",
]
