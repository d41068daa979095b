"""A walk through the two smallest interesting spaces.

Kbar(2,1) is the "eye": one open chamber, a pupil where the two interior
particles collide, two lids where the first one reaches the boundary on
either side of the boundary particle, and a corner where both lids meet.

Kbar(1,3) is tiled by two hexagons.  Counting cells gives the Euler
characteristic of a torus with a crosscap.
"""
from diskmoduli import all_strata, euler_characteristic, f_vector
from diskmoduli.faces import chamber_closure_poset, face_poset


def show_space(n, m):
    print(f"Kbar({n},{m}): f-vector {f_vector(n, m)}")
    for level in all_strata(n, m):
        for s in level:
            factors = " x ".join(str(f) for f in s.factors)
            print(f"  codim {s.codim}  {s.key:<28} {factors}")


def show_covers(n, m):
    p = face_poset(n, m)
    print(f"closure relations of Kbar({n},{m}):")
    for lo, hi in sorted(p.covers):
        print(f"  {p.labels[lo]}  <  {p.labels[hi]}")


if __name__ == "__main__":
    show_space(2, 1)
    show_covers(2, 1)
    print()
    show_space(1, 3)
    print("Euler characteristic:", euler_characteristic(1, 3))
    tile = chamber_closure_poset(1, 3)
    print("one tile has f-vector", [tile.ranks.count(r) for r in range(3)],
          "and meets", tile.meta["image_f_vector"][0], "distinct vertices")
