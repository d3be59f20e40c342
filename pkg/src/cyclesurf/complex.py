"""Brute-force simplicial engine.

Everything here works on explicit facet lists and never uses the cyclic
structure a complex may have come from, except as an optional shortcut in
:func:`is_isomorphic` that is re-checked against the facets anyway.
"""

from __future__ import annotations

import sys
from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Iterable

from .cycles import DifferenceCycle, common_modulus, expand
from .errors import (
    NotASurface,
    NotPseudomanifold,
    NotPure2Complex,
    ParseError,
    VertexNotPresent,
)

__all__ = [
    "Complex",
    "TypeTag",
    "SurfaceReport",
    "from_cycles",
    "euler_characteristic",
    "vertex_link",
    "connected_components",
    "edge_degree_profile",
    "orientable",
    "classify_surface",
    "is_isomorphic",
    "find_isomorphism",
    "is_isomorphism",
    "relabel",
    "octahedron",
    "write_facets",
    "read_facets",
]


class Complex:
    """A simplicial complex given by its facets on labels ``0..n_vertices-1``.

    Facets are stored as sorted tuples. Instances are treated as immutable.
    """

    def __init__(self, n_vertices: int, facets: Iterable[Iterable[int]]):
        self.n_vertices = int(n_vertices)
        cleaned = set()
        for f in facets:
            t = tuple(sorted(int(v) for v in f))
            if len(set(t)) != len(t):
                raise ValueError(f"facet {t} repeats a vertex")
            if t and (t[0] < 0 or t[-1] >= self.n_vertices):
                raise ValueError(f"facet {t} has labels outside [0, {self.n_vertices})")
            cleaned.add(t)
        sizes = {len(t) for t in cleaned}
        if len(sizes) > 1:
            as_sets = [frozenset(t) for t in cleaned]
            for s in as_sets:
                if any(s < other for other in as_sets):
                    raise ValueError(f"facet {sorted(s)} is contained in another facet")
        self.facets = frozenset(cleaned)

    def __len__(self) -> int:
        return len(self.facets)

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return self.n_vertices == other.n_vertices and self.facets == other.facets

    def __hash__(self):
        return hash((self.n_vertices, self.facets))

    def __repr__(self):
        return f"Complex(n_vertices={self.n_vertices}, facets={len(self.facets)})"

    @cached_property
    def sorted_facets(self) -> list[tuple[int, ...]]:
        return sorted(self.facets)

    @cached_property
    def vertices(self) -> frozenset[int]:
        """Vertices incident to at least one facet."""
        return frozenset(v for f in self.facets for v in f)

    @cached_property
    def star(self) -> dict[int, list[tuple[int, ...]]]:
        out = defaultdict(list)
        for f in self.sorted_facets:
            for v in f:
                out[v].append(f)
        return dict(out)

    @cached_property
    def edge_facets(self) -> dict[tuple[int, int], list[tuple[int, ...]]]:
        out = defaultdict(list)
        for f in self.sorted_facets:
            for e in combinations(f, 2):
                out[e].append(f)
        return dict(out)

    @property
    def is_pure_2(self) -> bool:
        return all(len(f) == 3 for f in self.facets)

    def shifted(self, step: int = 1) -> Complex:
        n = self.n_vertices
        return Complex(n, (tuple((v + step) % n for v in f) for f in self.facets))


def _require_pure_2(c: Complex) -> None:
    if not c.is_pure_2:
        raise NotPure2Complex("operation needs a pure 2-dimensional complex")


def relabel(c: Complex, mapping) -> Complex:
    """Apply a vertex map (dict or sequence) to every facet."""
    return Complex(c.n_vertices, (tuple(mapping[v] for v in f) for f in c.facets))


def from_cycles(cycles: Iterable[DifferenceCycle], n: int | None = None) -> Complex:
    cycles = list(cycles)
    n = common_modulus(cycles, n)
    if n is None:
        raise ValueError("vertex count is required for an empty cycle set")
    facets = set()
    for c in cycles:
        facets |= expand(c)
    return Complex(n, facets)


def octahedron() -> Complex:
    """Boundary of the octahedron, ``{(1:1:4), (2:2:2)}`` on six vertices."""
    return from_cycles([DifferenceCycle((1, 1, 4)), DifferenceCycle((2, 2, 2))])


def euler_characteristic(c: Complex) -> int:
    _require_pure_2(c)
    return len(c.vertices) - len(c.edge_facets) + len(c.facets)


def vertex_link(c: Complex, v: int) -> Complex:
    if v not in c.star:
        raise VertexNotPresent(v)
    return Complex(c.n_vertices, (tuple(u for u in f if u != v) for f in c.star[v]))


def connected_components(c: Complex) -> list[Complex]:
    """Facet-driven components, ordered by smallest vertex; labels are kept."""
    parent = {v: v for v in c.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in c.facets:
        root = find(f[0])
        for v in f[1:]:
            r = find(v)
            if r != root:
                parent[r] = root
    groups = defaultdict(list)
    for f in c.facets:
        groups[find(f[0])].append(f)
    parts = [Complex(c.n_vertices, fs) for fs in groups.values()]
    return sorted(parts, key=lambda p: min(p.vertices))


def edge_degree_profile(c: Complex) -> dict[int, int]:
    """Map from 'number of triangles on an edge' to the number of such edges."""
    _require_pure_2(c)
    return dict(sorted(Counter(len(fs) for fs in c.edge_facets.values()).items()))


def _oriented_edges(f: tuple[int, int, int], sign: int):
    a, b, cc = f
    return (((a, b), sign), ((b, cc), sign), ((a, cc), -sign))


def orientable(c: Complex) -> bool:
    """True iff the triangles admit a coherent orientation.

    Orientations are propagated across every edge shared by two triangles;
    the neighbour must induce the opposite direction on that edge.
    """
    _require_pure_2(c)
    for e, fs in c.edge_facets.items():
        if len(fs) > 2:
            raise NotPseudomanifold(f"edge {e} lies in {len(fs)} triangles")
    sign: dict[tuple[int, ...], int] = {}
    for start in c.sorted_facets:
        if start in sign:
            continue
        sign[start] = 1
        queue = deque([start])
        while queue:
            f = queue.popleft()
            for e, induced in _oriented_edges(f, sign[f]):
                for g in c.edge_facets[e]:
                    if g == f:
                        continue
                    # g must induce -induced on e
                    g_induced = dict(_oriented_edges(g, 1))[e]
                    want = -induced * g_induced
                    if g not in sign:
                        sign[g] = want
                        queue.append(g)
                    elif sign[g] != want:
                        return False
    return True


@dataclass(frozen=True)
class TypeTag:
    """Topological type of a surface, possibly repeated over several components.

    ``kind`` is one of ``sphere``, ``torus``, ``klein_bottle``,
    ``moebius_strip``, ``cylinder`` or ``other``; ``euler`` and
    ``orientable`` are only filled in for ``other``.
    """

    kind: str
    copies: int = 1
    euler: int | None = None
    orientable: bool | None = None

    KINDS = ("sphere", "torus", "klein_bottle", "moebius_strip", "cylinder", "other")
    SYMBOLS = {
        "sphere": "S^2",
        "torus": "T^2",
        "klein_bottle": "K^2",
        "moebius_strip": "M^2",
        "cylinder": "C^2",
    }

    def single(self) -> TypeTag:
        return TypeTag(self.kind, 1, self.euler, self.orientable)

    def __str__(self) -> str:
        base = self.kind
        if self.kind == "other":
            base = f"other({self.euler},{'orientable' if self.orientable else 'non_orientable'})"
        if self.copies == 1:
            return base
        return f"disjoint_union({base},{self.copies})"

    @property
    def symbol(self) -> str:
        """Table notation, e.g. ``T^2`` or ``{1,...,5} x M^2``."""
        base = self.SYMBOLS.get(self.kind, str(self.single()))
        if self.copies == 1:
            return base
        if self.copies == 2:
            return f"{{1,2}} x {base}"
        if self.copies == 3:
            return f"{{1,2,3}} x {base}"
        return f"{{1,...,{self.copies}}} x {base}"


@dataclass(frozen=True)
class SurfaceReport:
    euler: int
    orientable: bool
    component_count: int
    boundary_circles: int
    closed: bool
    type_tag: TypeTag


def _link_shape(c: Complex, v: int) -> str | None:
    """Return 'cycle' or 'path' for a well-formed link of v, else None."""
    adj = defaultdict(set)
    for f in c.star[v]:
        a, b = (u for u in f if u != v)
        adj[a].add(b)
        adj[b].add(a)
    if any(len(nb) > 2 for nb in adj.values()):
        return None
    seen = set()
    stack = [next(iter(adj))]
    while stack:
        u = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        stack.extend(adj[u] - seen)
    if len(seen) != len(adj):
        return None
    ends = sum(1 for nb in adj.values() if len(nb) == 1)
    if ends == 0:
        return "cycle"
    return "path" if ends == 2 else None


def _boundary_circles(c: Complex) -> int:
    boundary = [e for e, fs in c.edge_facets.items() if len(fs) == 1]
    if not boundary:
        return 0
    tmp = Complex(c.n_vertices, boundary)
    return len(connected_components(tmp))


def _single_tag(euler: int, is_orientable: bool, circles: int) -> TypeTag:
    if circles == 0:
        if euler == 2:
            return TypeTag("sphere")
        if euler == 0:
            return TypeTag("torus" if is_orientable else "klein_bottle")
    elif euler == 0:
        if circles == 1 and not is_orientable:
            return TypeTag("moebius_strip")
        if circles == 2 and is_orientable:
            return TypeTag("cylinder")
    return TypeTag("other", 1, euler, is_orientable)


def check_surface(c: Complex) -> None:
    """Raise :class:`NotASurface` unless every vertex link is one cycle or one path."""
    _require_pure_2(c)
    for v in sorted(c.star):
        if _link_shape(c, v) is None:
            link = vertex_link(c, v)
            raise NotASurface(
                f"link of vertex {v} is not a single cycle or path: {link.sorted_facets}",
                vertex=v,
                link=link,
            )


def classify_surface(c: Complex) -> SurfaceReport:
    """Compute the topological type of a (possibly disconnected) surface."""
    check_surface(c)
    comps = connected_components(c)
    tags = []
    for comp in comps:
        tags.append(_single_tag(euler_characteristic(comp), orientable(comp), _boundary_circles(comp)))
    euler = euler_characteristic(c)
    is_orientable = orientable(c)
    circles = _boundary_circles(c)
    if len(comps) == 1:
        tag = tags[0]
    elif len(set(tags)) == 1 and all(is_isomorphic(comps[0], other) for other in comps[1:]):
        tag = TypeTag(tags[0].kind, len(comps), tags[0].euler, tags[0].orientable)
    else:
        tag = TypeTag("other", 1, euler, is_orientable)
    return SurfaceReport(
        euler=euler,
        orientable=is_orientable,
        component_count=len(comps),
        boundary_circles=circles,
        closed=circles == 0,
        type_tag=tag,
    )


# -- isomorphism ------------------------------------------------------------


def is_isomorphism(c1: Complex, c2: Complex, mapping: dict[int, int]) -> bool:
    """Check that ``mapping`` is injective and carries the facets of c1 onto those of c2."""
    if set(mapping) != set(c1.vertices) or len(set(mapping.values())) != len(mapping):
        return False
    image = {tuple(sorted(mapping[v] for v in f)) for f in c1.facets}
    return image == set(c2.facets)


def _is_shift_invariant(c: Complex) -> bool:
    return len(c.vertices) == c.n_vertices and c.shifted(1).facets == c.facets


def _affine_isomorphism(c1: Complex, c2: Complex) -> dict[int, int] | None:
    # Both complexes are invariant under v -> v + 1, so translations can be
    # absorbed and only the scaling v -> u*v needs to be searched.
    n = c1.n_vertices
    target = c2.facets
    for u in range(1, n):
        if gcd(u, n) != 1:
            continue
        if all(tuple(sorted(u * v % n for v in f)) in target for f in c1.facets):
            return {v: u * v % n for v in range(n)}
    return None


class _Index:
    """Lookup tables for the backtracking search."""

    def __init__(self, c: Complex):
        self.c = c
        self.facets = c.facets
        self.faces: dict[frozenset, set[tuple[int, ...]]] = defaultdict(set)
        for f in c.facets:
            for r in range(1, len(f)):
                for sub in combinations(f, r):
                    self.faces[frozenset(sub)].add(f)
        self.signature = {
            v: (len(c.star[v]), len({u for f in c.star[v] for u in f}), tuple(sorted(Counter(len(f) for f in c.star[v]).items())))
            for v in c.vertices
        }


def _search_order(c: Complex) -> list[int]:
    # Greedy: next vertex shares a facet with as many placed vertices as possible.
    order: list[int] = []
    placed: set[int] = set()
    best = Counter()
    remaining = set(c.vertices)
    while remaining:
        v = max(remaining, key=lambda x: (best[x], -x))
        order.append(v)
        placed.add(v)
        remaining.discard(v)
        for f in c.star[v]:
            k = sum(1 for u in f if u in placed)
            for u in f:
                if u not in placed and k > best[u]:
                    best[u] = k
    return order


def _connected_isomorphism(c1: Complex, c2: Complex, transitive_target: bool) -> dict[int, int] | None:
    if len(c1.facets) != len(c2.facets) or len(c1.vertices) != len(c2.vertices):
        return None
    if not c1.facets:
        return {}
    i1, i2 = _Index(c1), _Index(c2)
    if Counter(i1.signature.values()) != Counter(i2.signature.values()):
        return None
    order = _search_order(c1)
    pos = {v: i for i, v in enumerate(order)}
    # for order[i], a facet sharing the most earlier vertices feeds the candidates
    anchor: dict[int, tuple[int, ...] | None] = {}
    for i, v in enumerate(order):
        best, best_k = None, 0
        for f in c1.star[v]:
            earlier = [u for u in f if pos[u] < i]
            if len(earlier) > best_k:
                best, best_k = f, len(earlier)
        anchor[i] = best
    fmap: dict[int, int] = {}
    used: set[int] = set()

    def candidates(i: int):
        v = order[i]
        sig = i1.signature[v]
        f = anchor[i]
        if f is None:
            if transitive_target and i == 0:
                pool = [min(c2.vertices)]
            else:
                pool = sorted(c2.vertices)
        else:
            mapped = frozenset(fmap[u] for u in f if u != v and u in fmap)
            pool = sorted({w for g in i2.faces.get(mapped, ()) if len(g) == len(f) for w in g} - mapped)
        return [w for w in pool if w not in used and i2.signature[w] == sig]

    def consistent(i: int) -> bool:
        v = order[i]
        for f in c1.star[v]:
            img = frozenset(fmap[u] for u in f if u in fmap)
            if len(img) == len(f):
                if tuple(sorted(img)) not in i2.facets:
                    return False
            elif not any(len(g) == len(f) for g in i2.faces.get(img, ())):
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in candidates(i):
            fmap[v] = w
            used.add(w)
            if consistent(i) and extend(i + 1):
                return True
            del fmap[v]
            used.discard(w)
        return False

    if sys.getrecursionlimit() < len(order) + 200:
        sys.setrecursionlimit(len(order) + 200)
    if extend(0):
        return dict(fmap)
    return None


def find_isomorphism(c1: Complex, c2: Complex) -> dict[int, int] | None:
    """Return a vertex bijection carrying c1 onto c2, or None.

    Only vertices incident to facets take part; isolated labels are ignored.
    """
    if len(c1.facets) != len(c2.facets) or len(c1.vertices) != len(c2.vertices):
        return None
    if Counter(len(f) for f in c1.facets) != Counter(len(f) for f in c2.facets):
        return None
    if c1.n_vertices == c2.n_vertices and _is_shift_invariant(c1) and _is_shift_invariant(c2):
        m = _affine_isomorphism(c1, c2)
        if m is not None:
            return m
        transitive = True
    else:
        transitive = False
    comps1, comps2 = connected_components(c1), connected_components(c2)
    if len(comps1) != len(comps2):
        return None
    if len(comps1) == 1:
        return _connected_isomorphism(c1, c2, transitive)
    mapping: dict[int, int] = {}
    free = list(comps2)
    for a in comps1:
        for idx, b in enumerate(free):
            m = _connected_isomorphism(a, b, False)
            if m is not None:
                mapping.update(m)
                del free[idx]
                break
        else:
            return None
    return mapping


def is_isomorphic(c1: Complex, c2: Complex, witness: bool = False):
    """Decide combinatorial isomorphism; with ``witness=True`` return ``(flag, map)``."""
    m = find_isomorphism(c1, c2)
    if witness:
        return m is not None, m
    return m is not None


# -- text format ------------------------------------------------------------


def write_facets(c: Complex) -> str:
    lines = [f"n={c.n_vertices}"]
    lines += [" ".join(str(v) for v in f) for f in c.sorted_facets]
    return "\n".join(lines) + "\n"


def read_facets(text: str) -> Complex:
    rows = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not rows or not rows[0].startswith("n="):
        raise ParseError("facet list must start with a header line 'n=<vertices>'")
    try:
        n = int(rows[0][2:])
        facets = [tuple(int(tok) for tok in row.split()) for row in rows[1:]]
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return Complex(n, facets)
