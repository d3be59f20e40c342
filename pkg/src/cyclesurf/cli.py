"""Command line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 the input is
not a surface.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .census import count_cst_torus_types
from .complex import TypeTag, classify_surface, from_cycles, read_facets, write_facets
from .cycles import parse_cycle_list
from .decomp import (
    Decomposition,
    certificate_json,
    decompose_beta,
    decompose_simplex,
    predict_type,
    verify,
)
from .errors import CycleSurfError, NotASurface, ParseError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NOT_SURFACE = 0, 1, 2, 3

_KIND_ORDER = ("sphere", "moebius_strip", "cylinder", "torus", "klein_bottle", "other")


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"7"`` -> [7]; ``"3..10"`` -> [3, ..., 10] (inclusive, possibly empty)."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <int> or <a>..<b>, got {text!r}") from None


def _single_k(values: list[int]) -> int:
    if len(values) != 1:
        raise UsageError("this command takes a single k")
    return values[0]


def _grouped(decomp: Decomposition):
    groups: dict[TypeTag, list] = {}
    for part in decomp.parts:
        groups.setdefault(predict_type(part), []).append(part)
    order = sorted(groups, key=lambda t: (_KIND_ORDER.index(t.kind), t.copies))
    return [(t, groups[t]) for t in order]


def render_text(decomp: Decomposition) -> str:
    header = f"k={decomp.k}"
    if decomp.ambient == "beta":
        header += f" f2={sum(len(p.facets()) for p in decomp.parts)}"
    lines = [header]
    for tag, parts in _grouped(decomp):
        lines.append(f"[{tag.symbol}]")
        lines.extend(f"  {p}" for p in parts)
    return "\n".join(lines) + "\n"


def render_csv(decomp: Decomposition) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "type", "components", "cycles"])
    for tag, parts in _grouped(decomp):
        for p in parts:
            writer.writerow([decomp.k, tag.kind, tag.copies, " ".join(str(c) for c in p.cycles)])
    return buf.getvalue()


def render(decomp: Decomposition, fmt: str) -> str:
    if fmt == "json":
        return certificate_json(decomp)
    if fmt == "csv":
        return render_csv(decomp)
    return render_text(decomp)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _map(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _verify_one(task: tuple[str, int]) -> tuple[str, int, str, list[str]]:
    ambient, k = task
    if ambient == "beta":
        if k < 3:
            return ambient, k, "SKIP", ["k must be >= 3"]
        report = verify(decompose_beta(k))
    else:
        if k <= 1 or k % 6 not in (1, 5):
            return ambient, k, "SKIP", ["k must be 1 or 5 mod 6"]
        report = verify(decompose_simplex(k))
    return ambient, k, "PASS" if report.passed else "FAIL", report.failures()


def _census_one(k: int) -> tuple[int, int]:
    return k, count_cst_torus_types(k)


# -- commands ---------------------------------------------------------------


def cmd_beta(args) -> int:
    k = _single_k(args.k)
    if k < 3:
        raise UsageError("k must be ≥ 3")
    _emit(render(decompose_beta(k), args.format), args.out)
    return EXIT_OK


def cmd_simplex(args) -> int:
    k = _single_k(args.k)
    if k <= 1 or k % 6 not in (1, 5):
        raise UsageError(f"k must be > 1 and congruent to 1 or 5 mod 6 (got k={k}, k mod 6 = {k % 6})")
    _emit(render(decompose_simplex(k), args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    tasks = [("beta", k) for k in args.beta or []] + [("simplex", k) for k in args.simplex or []]
    results = _map(_verify_one, tasks, args.jobs)
    lines = []
    ok = True
    for ambient, k, status, failures in results:
        lines.append(f"{ambient} k={k} {status}")
        if status == "FAIL":
            ok = False
            lines.extend(f"  {msg}" for msg in failures)
    _emit("".join(ln + "\n" for ln in lines), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_census(args) -> int:
    ks = [k for k in args.k if k >= 3]
    if len(ks) != len(args.k):
        raise UsageError("k must be ≥ 3")
    rows = _map(_census_one, ks, args.jobs)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "types"])
    writer.writerows(rows)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def _load_complex(args):
    if args.facets_file:
        with open(args.facets_file, encoding="utf-8") as fh:
            return read_facets(fh.read())
    if args.cycles is None:
        raise UsageError("give a cycle list or --facets-file")
    cycles = parse_cycle_list(args.cycles, args.n)
    if not cycles and args.n is None:
        raise UsageError("an empty cycle list needs --n")
    return from_cycles(cycles, args.n)


def cmd_classify(args) -> int:
    c = _load_complex(args)
    try:
        report = classify_surface(c)
    except NotASurface as exc:
        sys.stderr.write(f"NotASurface: link of vertex {exc.vertex} is not a cycle or a path\n")
        if exc.link is not None:
            sys.stderr.write("link edges: " + " ".join(f"{a}-{b}" for a, b in exc.link.sorted_facets) + "\n")
        return EXIT_NOT_SURFACE
    text = (
        f"euler: {report.euler}\n"
        f"orientable: {str(report.orientable).lower()}\n"
        f"components: {report.component_count}\n"
        f"boundary_circles: {report.boundary_circles}\n"
        f"type: {report.type_tag}\n"
    )
    _emit(text, args.out)
    return EXIT_OK


def cmd_facets(args) -> int:
    _emit(write_facets(_load_complex(args)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclesurf",
        description="Decompose cross polytope and simplex 2-skeleta into transitive surfaces.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes for ranges")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (
        ("beta", cmd_beta, "decomposition of the cross polytope's 2-skeleton"),
        ("simplex", cmd_simplex, "decomposition of the simplex's 2-skeleton"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--k", type=parse_range, required=True)
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.set_defaults(func=fn)

    p = sub.add_parser("verify", parents=[common], help="verify decompositions over ranges of k")
    p.add_argument("--beta", type=parse_range, metavar="K|A..B")
    p.add_argument("--simplex", type=parse_range, metavar="K|A..B")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", parents=[common], help="count distinct cst-torus types (CSV)")
    p.add_argument("--k", type=parse_range, required=True)
    p.set_defaults(func=cmd_census)

    for name, fn, helptext in (
        ("classify", cmd_classify, "classify the surface spanned by a cycle list"),
        ("facets", cmd_facets, "export the facet list of a cycle list"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("cycles", nargs="?", help='e.g. "(1:1:8),(4:4:2)"')
        p.add_argument("--n", type=int, help="number of vertices")
        p.add_argument("--facets-file", help="read a facet list ('n=<v>' header) instead")
        p.set_defaults(func=fn)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except CycleSurfError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
