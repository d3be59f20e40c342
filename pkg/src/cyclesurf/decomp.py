"""Decompositions of the 2-skeleta of the cross polytope and the simplex.

Both ambient skeleta are partitioned into small families of difference
cycles (parts).  Each part carries the series it was built from, which is
all :func:`predict_type` needs; :func:`verify` then re-derives every claim
with the brute-force engine in :mod:`cyclesurf.complex`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb, gcd

from .complex import (
    Complex,
    SurfaceReport,
    TypeTag,
    classify_surface,
    connected_components,
    edge_degree_profile,
    from_cycles,
    is_isomorphic,
    octahedron,
)
from .cycles import DifferenceCycle, common_modulus, expand
from .errors import BadResidue, CycleSurfError, KTooSmall, UnknownSeries

__all__ = [
    "Part",
    "Decomposition",
    "VerificationReport",
    "beta_skeleton_cycles",
    "b_series_partition",
    "decompose_beta",
    "decompose_simplex",
    "moebius_family",
    "predict_type",
    "verify",
    "skel2_size_beta",
    "beta_skeleton",
    "simplex_skeleton",
    "certificate",
    "certificate_json",
]

# series identifiers recorded on constructed parts
CST_TORUS = "cst_torus"          # {(l:j:2k-l-j), (l:2k-l-j:j)} on 2k vertices
CST_PAIR = "cst_pair"            # {(l:l:2(k-l)), (k-l:k-l:2l)} on 2k vertices
MOEBIUS = "moebius"              # {(l:l:k-2l)} on k vertices
SIMPLEX_TORUS = "simplex_torus"  # {(l:j:k-l-j), (l:k-l-j:j)} on k vertices


@dataclass(frozen=True)
class Part:
    """A set of difference cycles on a common modulus forming one piece.

    ``series`` and ``params`` record how the part was built, e.g.
    ``("cst_torus", (l, j, k))``; hand-built parts leave them empty and
    cannot be predicted.
    """

    cycles: tuple[DifferenceCycle, ...]
    n: int
    series: str | None = None
    params: tuple[int, ...] = ()

    def __post_init__(self):
        cycles = tuple(sorted(set(self.cycles)))
        if not cycles:
            raise ValueError("a part needs at least one cycle")
        common_modulus(cycles, self.n)
        object.__setattr__(self, "cycles", cycles)

    @property
    def predicted_type(self) -> TypeTag:
        return predict_type(self)

    @property
    def predicted_components(self) -> int:
        return predict_type(self).copies

    @cached_property
    def complex(self) -> Complex:
        return from_cycles(self.cycles, self.n)

    def facets(self) -> frozenset[tuple[int, ...]]:
        return self.complex.facets

    def __str__(self) -> str:
        return "{" + ",".join(str(c) for c in self.cycles) + "}"


@dataclass(frozen=True)
class Decomposition:
    ambient: str  # "beta" (cross polytope) or "simplex"
    k: int
    parts: tuple[Part, ...]

    @property
    def vertices(self) -> int:
        return 2 * self.k if self.ambient == "beta" else self.k


def skel2_size_beta(k: int) -> int:
    """Number of triangles of the k-dimensional cross polytope."""
    if k < 3:
        raise KTooSmall(f"k must be >= 3, got {k}")
    return comb(2 * k, 3) - k * (2 * k - 2)


def beta_skeleton(k: int) -> frozenset[tuple[int, int, int]]:
    """All triangles on 2k labels avoiding every diagonal {i, i + k}."""
    return frozenset(
        t for t in combinations(range(2 * k), 3)
        if not any(b - a == k for a, b in combinations(t, 2))
    )


def simplex_skeleton(k: int) -> frozenset[tuple[int, int, int]]:
    return frozenset(combinations(range(k), 3))


def _cst_torus_triples(k: int):
    n = 2 * k
    for l in range(1, n):
        for j in range(l + 1, n):
            if not j < n - l - j:
                break
            if k not in (l, j, l + j):
                yield l, j


def beta_skeleton_cycles(k: int) -> list[DifferenceCycle]:
    if k < 3:
        raise KTooSmall(f"k must be >= 3, got {k}")
    n = 2 * k
    out = set()
    for l, j in _cst_torus_triples(k):
        out.add(DifferenceCycle((l, j, n - l - j), n))
        out.add(DifferenceCycle((l, n - l - j, j), n))
    for j in range(1, k):
        if 2 * j != k:
            out.add(DifferenceCycle((j, j, 2 * (k - j)), n))
    return sorted(out)


def b_series_partition(k: int):
    """The cycles ``(j:j:2(k-j))`` and the two halves they split into.

    Returns ``(M, M1, M2)`` as sets, with ``M1`` holding the ``l`` cycles and
    ``M2`` their partners ``(k-l:k-l:2l)`` for ``1 <= l <= (k-1)//2``.
    """
    n = 2 * k
    whole = {DifferenceCycle((j, j, 2 * (k - j)), n) for j in range(1, k) if 2 * j != k}
    first = {DifferenceCycle((l, l, 2 * (k - l)), n) for l in range(1, (k - 1) // 2 + 1)}
    second = {DifferenceCycle((k - l, k - l, 2 * l), n) for l in range(1, (k - 1) // 2 + 1)}
    return whole, first, second


def _sorted_parts(parts) -> tuple[Part, ...]:
    return tuple(sorted(parts, key=lambda p: p.cycles))


def decompose_beta(k: int) -> Decomposition:
    """Split the 2-skeleton of the cross polytope into closed transitive surfaces."""
    if k < 3:
        raise KTooSmall(f"k must be >= 3, got {k}")
    n = 2 * k
    parts = [
        Part(
            (DifferenceCycle((l, j, n - l - j), n), DifferenceCycle((l, n - l - j, j), n)),
            n, CST_TORUS, (l, j, k),
        )
        for l, j in _cst_torus_triples(k)
    ]
    for l in range(1, (k - 1) // 2 + 1):
        parts.append(Part(
            (DifferenceCycle((l, l, 2 * (k - l)), n), DifferenceCycle((k - l, k - l, 2 * l), n)),
            n, CST_PAIR, (l, k),
        ))
    return Decomposition("beta", k, _sorted_parts(parts))


def moebius_family(l: int, k: int) -> Part:
    """The single-cycle part ``{(l:l:k-2l)}`` on k vertices.

    Allowed for ``k >= 5`` with ``k`` divisible by neither 3 nor 4, and
    ``1 <= l <= (k-1)//2``.
    """
    if k < 5 or k % 3 == 0 or k % 4 == 0:
        raise BadResidue(f"moebius family needs k >= 5 and k not divisible by 3 or 4, got {k}")
    if not 1 <= l <= (k - 1) // 2:
        raise ValueError(f"need 1 <= l <= {(k - 1) // 2}, got {l}")
    return Part((DifferenceCycle((l, l, k - 2 * l), k),), k, MOEBIUS, (l, k))


def decompose_simplex(k: int) -> Decomposition:
    """Split the 2-skeleton of the (k-1)-simplex into Moebius strips and tori."""
    if k <= 1 or k % 6 not in (1, 5):
        raise BadResidue(f"k must satisfy k > 1 and k = 1 or 5 (mod 6), got {k}")
    parts = [moebius_family(l, k) for l in range(1, (k - 1) // 2 + 1)]
    for l in range(1, k):
        for j in range(l + 1, k):
            if not j < k - l - j:
                break
            parts.append(Part(
                (DifferenceCycle((l, j, k - l - j), k), DifferenceCycle((l, k - l - j, j), k)),
                k, SIMPLEX_TORUS, (l, j, k),
            ))
    return Decomposition("simplex", k, _sorted_parts(parts))


def predict_type(part: Part) -> TypeTag:
    """Closed-form type of a constructed part; never builds the complex."""
    if part.series == CST_TORUS:
        l, j, k = part.params
        return TypeTag("torus", gcd(gcd(l, j), 2 * k))
    if part.series == CST_PAIR:
        l, k = part.params
        if 3 * l == k:
            return TypeTag("sphere", k // 3)
        g = gcd(l, k)
        # g copies of A_6(2k/g): torus iff the vertex count is 0 mod 4
        return TypeTag("torus" if (2 * k // g) % 4 == 0 else "klein_bottle", g)
    if part.series == MOEBIUS:
        l, k = part.params
        g = gcd(l, k)
        return TypeTag("moebius_strip" if (k // g) % 2 else "cylinder", g)
    if part.series == SIMPLEX_TORUS:
        l, j, k = part.params
        return TypeTag("torus", gcd(gcd(l, j), k))
    raise UnknownSeries(f"part {part} was not produced by a known constructor")


# -- verification -----------------------------------------------------------


@dataclass(frozen=True)
class CountCheck:
    name: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class PartCheck:
    part: Part
    predicted: TypeTag
    computed: SurfaceReport | None
    error: str | None = None
    extra_ok: bool = True

    @property
    def passed(self) -> bool:
        return (
            self.error is None
            and self.computed is not None
            and self.extra_ok
            and self.computed.type_tag == self.predicted
            and self.computed.component_count == self.predicted.copies
        )


@dataclass
class VerificationReport:
    ambient: str
    k: int
    covered: bool
    disjoint: bool
    part_checks: list[PartCheck] = field(default_factory=list)
    count_checks: list[CountCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.covered
            and self.disjoint
            and all(p.passed for p in self.part_checks)
            and all(c.passed for c in self.count_checks)
        )

    def failures(self) -> list[str]:
        out = []
        if not self.covered:
            out.append("union of parts differs from the ambient skeleton")
        if not self.disjoint:
            out.append("parts overlap")
        for p in self.part_checks:
            if not p.passed:
                got = p.error or (p.computed and str(p.computed.type_tag))
                out.append(f"part {p.part}: predicted {p.predicted}, computed {got}")
        for c in self.count_checks:
            if not c.passed:
                out.append(f"{c.name}: expected {c.expected}, got {c.actual}")
        return out


def _check_part(part: Part, octahedra: bool) -> PartCheck:
    try:
        predicted = predict_type(part)
    except UnknownSeries as exc:
        return PartCheck(part, TypeTag("other"), None, str(exc))
    try:
        report = classify_surface(part.complex)
    except CycleSurfError as exc:
        return PartCheck(part, predicted, None, f"{type(exc).__name__}: {exc}")
    extra_ok = True
    if octahedra and predicted.kind == "sphere":
        ref = octahedron()
        extra_ok = all(is_isomorphic(comp, ref) for comp in connected_components(part.complex))
    return PartCheck(part, predicted, report, None, extra_ok)


def verify(decomp: Decomposition) -> VerificationReport:
    """Check a decomposition against brute force; failures are recorded, not raised."""
    k = decomp.k
    beta = decomp.ambient == "beta"
    ambient = beta_skeleton(k) if beta else simplex_skeleton(k)

    seen: set[tuple[int, ...]] = set()
    disjoint = True
    for part in decomp.parts:
        facets = part.facets()
        if seen & facets:
            disjoint = False
        seen |= facets
    report = VerificationReport(decomp.ambient, k, covered=seen == ambient, disjoint=disjoint)

    report.part_checks = [_check_part(p, beta) for p in decomp.parts]
    computed = [pc.computed for pc in report.part_checks]
    total = sum(len(p.facets()) for p in decomp.parts)

    if beta:
        report.count_checks.append(CountCheck("triangles", skel2_size_beta(k), total))
        report.count_checks.append(CountCheck("ambient triangles (brute force)", len(ambient), total))
        zero = [p for p, c in zip(decomp.parts, computed) if c is not None and c.euler == 0]
        spheres = [p for p, c in zip(decomp.parts, computed) if c is not None and c.type_tag.kind == "sphere"]
        if k % 3:
            report.count_checks.append(CountCheck("chi=0 surfaces", (k - 1) * (k - 2) // 3, len(zero)))
            report.count_checks.append(CountCheck("octahedra parts", 0, len(spheres)))
        else:
            report.count_checks.append(CountCheck("chi=0 surfaces", k * (k - 3) // 3, len(zero)))
            report.count_checks.append(CountCheck("octahedra parts", 1, len(spheres)))
            copies = len(connected_components(spheres[0].complex)) if spheres else 0
            report.count_checks.append(CountCheck("octahedra copies", k // 3, copies))
            report.count_checks.append(CountCheck(
                "octahedra triangles", 8 * k // 3, len(spheres[0].facets()) if spheres else 0,
            ))
        report.count_checks.append(CountCheck(
            "chi=0 part sizes", {4 * k}, {len(p.facets()) for p in zero} or {4 * k},
        ))
        closed = all(edge_degree_profile(p.complex).keys() == {2} for p in decomp.parts)
        report.count_checks.append(CountCheck("closed pseudomanifolds", True, closed))
    else:
        report.count_checks.append(CountCheck("triangles", comb(k, 3), total))
        moeb = sum(1 for c in computed if c is not None and c.type_tag.kind == "moebius_strip")
        tori = sum(1 for c in computed if c is not None and c.type_tag.kind == "torus")
        report.count_checks.append(CountCheck("moebius collections", (k - 1) // 2, moeb))
        report.count_checks.append(CountCheck("torus collections", (k * k - 6 * k + 5) // 12, tori))
    return report


# -- certificates -----------------------------------------------------------


def certificate(decomp: Decomposition) -> dict:
    """JSON-ready description of a decomposition with engine-computed fields."""
    parts = []
    for p in decomp.parts:
        report = classify_surface(p.complex)
        parts.append({
            "components": report.component_count,
            "cycles": [list(c.entries) for c in p.cycles],
            "euler": report.euler,
            "orientable": report.orientable,
            "predicted_type": str(predict_type(p)),
            "triangles": len(p.facets()),
        })
    return {
        "ambient": decomp.ambient,
        "k": decomp.k,
        "parts": parts,
        "vertices": decomp.vertices,
    }


def certificate_json(decomp: Decomposition) -> str:
    return json.dumps(certificate(decomp), sort_keys=True, indent=2) + "\n"
