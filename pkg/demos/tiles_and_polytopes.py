"""Tiles of the moduli spaces compared with classical polytopes.

Without interior particles a tile is an associahedron; with one interior
particle it is a cyclohedron.  Both identifications are checked here by a
rank-preserving poset isomorphism, not just by counting faces.
"""
from diskmoduli import associahedron_poset, chamber_closure_poset, poset_isomorphic
from diskmoduli.polytopes import catalan, cyclohedron_poset
from diskmoduli.poset import rank_counts
from diskmoduli.enumeration import chamber_adjacency


def associahedra(upto=6):
    for k in range(3, upto + 1):
        tile = chamber_closure_poset(0, k + 1)
        assoc = associahedron_poset(k)
        same = poset_isomorphic(tile, assoc)
        print(f"K_{k}: f-vector {rank_counts(assoc)}, vertices = catalan({k - 1}) = "
              f"{catalan(k - 1)}, tile of Kbar(0,{k + 1}) isomorphic: {same}")


def cyclohedra(upto=5):
    for k in range(2, upto + 1):
        p = cyclohedron_poset(k)
        print(f"W_{k}: f-vector {rank_counts(p)}, "
              f"image in Kbar(1,{k}) {p.meta['image_f_vector']}")


def two_copies(m=5):
    rooms, walls, comps = chamber_adjacency(0, m)
    print(f"Kbar(0,{m}): {len(rooms)} chambers, {len(walls)} walls, "
          f"components of sizes {[len(c) for c in comps]}")


if __name__ == "__main__":
    associahedra()
    cyclohedra()
    two_copies()
