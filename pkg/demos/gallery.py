"""Write arc-diagram drawings and dual trees for a few strata.

Usage: python3 demos/gallery.py [output directory]
"""
import sys
from pathlib import Path

from diskmoduli import parse_tree, render_svg
from diskmoduli.dual import dual_tree

TREES = {
    "trivial": "R(i1;b1)",
    "pupil": "R(S(i1,i2);b1)",
    "eye_corner": "R(i2;D(;D(i1;),b1))",
    "k13_vertex": "R(i1;D(;D(;b1,b2),b3))",
    "nested": "R(i3;D(S(i1,i2);b1,D(;b2,b3)),b4)",
}


def main(out):
    out.mkdir(parents=True, exist_ok=True)
    for name, text in TREES.items():
        tree = parse_tree(text)
        (out / f"{name}.svg").write_text(render_svg(tree))
        (out / f"{name}.dot").write_text(dual_tree(tree).to_dot())
        print(f"{name:<12} {text}")
    print(f"wrote {2 * len(TREES)} files to {out}")


if __name__ == "__main__":
    main(Path(sys.argv[1] if len(sys.argv) > 1 else "gallery"))
