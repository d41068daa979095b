"""Command-line interface.

Every subcommand maps to one library operation.  Structured output is JSON
with a ``version`` field; module errors are printed to stderr as a JSON
record ``{"error": <code>, "message": ...}`` with exit status 1, and usage
errors exit with status 2.
"""
from __future__ import annotations

import argparse
import csv
import gc
import io
import json
import os
import sys

from . import __version__
from .canon import Stratum
from .census import building_set, divisor_census
from .dual import dual_tree
from .enumeration import (
    CAP_ENV,
    all_strata,
    chamber_adjacency,
    chambers,
    check_space,
    enumerate_strata,
    euler_characteristic,
    f_vector,
)
from .errors import MalformedTree, ModuliError, NotAChamber
from .faces import chamber_closure_poset, face_poset
from .poset import FacePoset, poset_f_vector, poset_isomorphic, rank_counts
from .polytopes import associahedron_poset, cyclohedron_poset
from .render import render_svg
from .trees import BP, BubbleTree, IP, parse_tree, tree_from_obj, tree_to_obj

FORMATS = {
    "strata": ("json", "csv", "text"),
    "fvector": ("json", "csv", "text"),
    "chambers": ("json", "text"),
    "divisors": ("json", "csv", "text"),
    "building-set": ("json", "csv", "text"),
    "poset": ("json", "dot", "text"),
    "closure": ("json", "dot", "text"),
    "adjacency": ("json", "dot", "text"),
    "euler": ("json", "text"),
    "assoc": ("json", "dot", "text"),
    "cyclo": ("json", "dot", "text"),
    "iso": ("json", "text"),
    "render": ("svg", "dot", "json"),
    "verify": ("text",),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _stratum_obj(s):
    return {"key": s.key, "codim": s.codim, "dim": s.dim, "factors": [str(f) for f in s.factors]}


def _poset_out(p, fmt):
    if fmt == "dot":
        return p.to_dot()
    if fmt == "text":
        return p.to_text()
    return _json(p.to_obj())


# -- subcommands ------------------------------------------------------------

def cmd_strata(a):
    if a.codim is None:
        strata = [s for level in all_strata(a.n, a.m) for s in level]
    else:
        strata = enumerate_strata(a.n, a.m, a.codim)
    if a.format == "csv":
        return _csv(["key", "codim", "dim", "factors"],
                    [[s.key, s.codim, s.dim, " ".join(map(str, s.factors))] for s in strata])
    if a.format == "text":
        return "".join(f"{s.codim} {s.key}\n" for s in strata)
    return _json({"version": 1, "n": a.n, "m": a.m, "codim": a.codim,
                  "count": len(strata), "strata": [_stratum_obj(s) for s in strata]})


def cmd_fvector(a):
    fv = f_vector(a.n, a.m)
    if a.format == "csv":
        return _csv(["codim", "count"], list(enumerate(fv)))
    if a.format == "text":
        return " ".join(map(str, fv)) + "\n"
    return _json({"version": 1, "n": a.n, "m": a.m, "f_vector": fv})


def cmd_chambers(a):
    count = chambers(a.n, a.m)
    if a.format == "text":
        return f"{count}\n"
    return _json({"version": 1, "n": a.n, "m": a.m, "chambers": count})


def cmd_divisors(a):
    c = divisor_census(a.n, a.m, strict=a.strict)
    if a.format == "csv":
        return _csv(["kind", "interior", "boundary", "factors", "strata"],
                    [[d.kind, " ".join(map(str, d.interior)), " ".join(map(str, d.boundary)),
                      " ".join(map(str, d.factors)), len(d.strata)] for d in c.classes])
    if a.format == "text":
        lines = [f"interior {c.counts['interior']}", f"boundary {c.counts['boundary']}",
                 f"mixed {c.counts['mixed']}"]
        if c.closed_form is not None:
            lines.append(f"closed form {' '.join(map(str, c.closed_form))} "
                         f"({'match' if c.matches else 'MISMATCH'})")
        lines += [f"flag {f}" for f in c.flags]
        return "\n".join(lines) + "\n"
    return _json(c.to_obj())


def cmd_building_set(a):
    elems = building_set(a.n, a.m, order=a.order)
    if a.format == "csv":
        return _csv(["kind", "interior", "boundary", "grading", "naive_codim", "dimension"],
                    [[e.kind, " ".join(map(str, e.interior)), " ".join(map(str, e.boundary)),
                      e.grading, e.naive_codim, e.dimension] for e in elems])
    if a.format == "text":
        return "".join(f"{e.kind} i={list(e.interior)} b={list(e.boundary)} "
                       f"grading={e.grading} dim={e.dimension}\n" for e in elems)
    return _json({"version": 1, "n": a.n, "m": a.m, "order": a.order, "count": len(elems),
                  "elements": [e.to_obj() for e in elems]})


def cmd_poset(a):
    return _poset_out(face_poset(a.n, a.m, cap=a.poset_cap), a.format)


def _chamber_from_order(n, m, order):
    try:
        labels = [int(x) for x in order.split(",")]
    except ValueError:
        raise NotAChamber(f"chamber order must be comma-separated integers, got {order!r}")
    if sorted(labels) != list(range(1, m + 1)):
        raise NotAChamber(f"chamber order must list 1..{m} once each")
    return BubbleTree(n, m, tuple(IP(i) for i in range(1, n + 1)), tuple(BP(j) for j in labels))


def cmd_closure(a):
    check_space(a.n, a.m)
    chamber = _chamber_from_order(a.n, a.m, a.chamber) if a.chamber else None
    return _poset_out(chamber_closure_poset(a.n, a.m, chamber), a.format)


def cmd_adjacency(a):
    rooms, edges, comps = chamber_adjacency(a.n, a.m)
    if a.format == "dot":
        index = {k: i for i, k in enumerate(rooms)}
        lines = ["graph chambers {", "  node [shape=box, fontsize=10];"]
        lines += [f'  c{index[k]} [label="{k}"];' for k in rooms]
        lines += [f'  c{index[x]} -- c{index[y]} [tooltip="{w}"];' for x, y, w in edges]
        return "\n".join(lines + ["}"]) + "\n"
    if a.format == "text":
        return (f"chambers {len(rooms)}\nwalls {len(edges)}\n"
                f"components {' '.join(str(len(c)) for c in comps)}\n")
    return _json({"version": 1, "n": a.n, "m": a.m, "chambers": rooms,
                  "edges": [{"a": x, "b": y, "wall": w} for x, y, w in edges],
                  "components": comps, "component_sizes": [len(c) for c in comps]})


def cmd_euler(a):
    chi = euler_characteristic(a.n, a.m)
    if a.format == "text":
        return f"{chi}\n"
    return _json({"version": 1, "n": a.n, "m": a.m, "euler_characteristic": chi})


def cmd_assoc(a):
    return _poset_out(associahedron_poset(a.n), a.format)


def cmd_cyclo(a):
    return _poset_out(cyclohedron_poset(a.n), a.format)


def _load_poset(source):
    """A poset file in the text format, or one of ``assoc:N``, ``cyclo:N``,
    ``closure:N,M``, ``face:N,M``."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return FacePoset.from_text(fh.read())
    kind, _, args = source.partition(":")
    try:
        nums = [int(x) for x in args.split(",")]
        if kind == "assoc" and len(nums) == 1:
            return associahedron_poset(nums[0])
        if kind == "cyclo" and len(nums) == 1:
            return cyclohedron_poset(nums[0])
        if kind == "closure" and len(nums) == 2:
            return chamber_closure_poset(*nums)
        if kind == "face" and len(nums) == 2:
            return face_poset(*nums)
    except ValueError:
        pass
    raise UsageError(f"cannot read poset {source!r}: not a file or a kind:args descriptor")


def cmd_iso(a):
    p, q = _load_poset(a.first), _load_poset(a.second)
    result = poset_isomorphic(p, q)
    if a.format == "text":
        return f"{'isomorphic' if result else 'not isomorphic'}\n"
    return _json({"version": 1, "isomorphic": result,
                  "f_vectors": [list(rank_counts(p)), list(rank_counts(q))]})


def _load_tree(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read().strip()
    if text.startswith("{"):
        try:
            return tree_from_obj(json.loads(text))
        except json.JSONDecodeError as err:
            raise MalformedTree(f"{path}: invalid JSON ({err.msg})")
    return parse_tree(text)


def cmd_render(a):
    tree = _load_tree(a.tree)
    if a.format == "dot":
        return dual_tree(tree).to_dot()
    if a.format == "json":
        stratum = Stratum.of(tree)
        return _json({"tree": tree_to_obj(tree), "dual": dual_tree(tree).to_obj(),
                      "stratum": _stratum_obj(stratum)})
    return render_svg(tree)


def cmd_verify(a):
    from .verify import run_all

    results = run_all()
    lines = []
    for r in results:
        lines.append(r.line())
        if a.verbose or not r.passed:
            lines.extend(r.details())
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    a.failed = passed != len(results)
    return "\n".join(lines) + "\n"


# -- parser -----------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="diskmoduli", description=(
        "Strata, face posets and divisor censuses of the compactified moduli "
        "space Kbar(n,m) of punctured disks."))
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)

    def add(name, fn, help_text, nm=True, n_only=False):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if nm or n_only:
            p.add_argument("--n", type=int, required=True)
        if nm:
            p.add_argument("--m", type=int, required=True)
        formats = FORMATS[name]
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("-o", "--output", help="write to this file instead of stdout")
        p.add_argument("--cap", type=int,
                       help=f"enumeration cap on generated trees (default from {CAP_ENV})")
        p.set_defaults(func=fn)
        return p

    p = add("strata", cmd_strata, "list strata, optionally of one codimension")
    p.add_argument("--codim", type=int)
    add("fvector", cmd_fvector, "strata counts per codimension")
    add("chambers", cmd_chambers, "number of open chambers, checked against (m-1)!")
    p = add("divisors", cmd_divisors, "codimension-one divisor census")
    p.add_argument("--strict", action="store_true",
                   help="fail instead of flagging when n or m is 0")
    p = add("building-set", cmd_building_set, "building-set elements")
    p.add_argument("--order", choices=("dimension", "grading"), default="dimension")
    p = add("poset", cmd_poset, "face poset of all strata")
    p.add_argument("--poset-cap", type=int, default=100_000, help="refuse above this many strata")
    p = add("closure", cmd_closure, "face poset of one chamber's tile")
    p.add_argument("--chamber", help="boundary order of the chamber, e.g. 1,3,2")
    add("adjacency", cmd_adjacency, "chambers glued along codimension-one strata")
    add("euler", cmd_euler, "Euler characteristic (n <= 1)")
    add("assoc", cmd_assoc, "associahedron face poset on n letters", nm=False, n_only=True)
    add("cyclo", cmd_cyclo, "cyclohedron face poset W_n", nm=False, n_only=True)
    p = add("iso", cmd_iso, "test two posets for isomorphism", nm=False)
    p.add_argument("first", help="poset file or descriptor such as assoc:4, closure:0,5")
    p.add_argument("second")
    p = add("render", cmd_render, "draw a tree file (JSON or compact form)", nm=False)
    p.add_argument("tree")
    p = add("verify", cmd_verify, "run the acceptance suite", nm=False)
    p.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("diskmoduli: a command is required")
    except UsageError as err:
        sys.stderr.write(parser.format_usage())
        sys.stderr.write(json.dumps({"error": "Usage", "message": str(err)}) + "\n")
        return 2
    if args.cap is not None and args.cap < 1:
        sys.stderr.write(json.dumps({"error": "Usage", "message": "--cap must be positive"}) + "\n")
        return 2
    previous = os.environ.get(CAP_ENV)
    if args.cap is not None:
        os.environ[CAP_ENV] = str(args.cap)
    args.failed = False
    try:
        text = args.func(args)
    except UsageError as err:
        sys.stderr.write(json.dumps({"error": "Usage", "message": str(err)}) + "\n")
        return 2
    except ModuliError as err:
        sys.stderr.write(json.dumps(err.record()) + "\n")
        return 1
    except ValueError as err:
        sys.stderr.write(json.dumps({"error": "InvalidValue", "message": str(err)}) + "\n")
        return 1
    except OSError as err:
        sys.stderr.write(json.dumps({"error": "IOError", "message": str(err)}) + "\n")
        return 1
    finally:
        if previous is None:
            os.environ.pop(CAP_ENV, None)
        else:
            os.environ[CAP_ENV] = previous
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    # keep the exit-time collections from walking every cached tree
    gc.freeze()
    return 1 if args.failed else 0


if __name__ == "__main__":
    sys.exit(main())
