"""Isomorphism census over decomposition parts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .complex import Complex, classify_surface, find_isomorphism
from .decomp import Part, decompose_beta

__all__ = ["TypeCensus", "distinct_types", "cst_tori", "count_cst_torus_types"]


@dataclass
class TypeCensus:
    k: int | None
    classes: list[tuple[Part, int]]

    @property
    def total_types(self) -> int:
        return len(self.classes)


def _bucket_key(c: Complex):
    degrees = Counter(len(c.star[v]) for v in c.vertices)
    return len(c.facets), len(c.vertices), tuple(sorted(degrees.items()))


def distinct_types(parts: list[Part], k: int | None = None) -> TypeCensus:
    """Group parts into isomorphism classes; the first part seen represents its class.

    Parts are compared only within buckets of equal facet count and vertex
    degree multiset.
    """
    buckets: dict[tuple, list[int]] = {}
    classes: list[list] = []
    for part in parts:
        key = _bucket_key(part.complex)
        for idx in buckets.setdefault(key, []):
            if find_isomorphism(classes[idx][0].complex, part.complex) is not None:
                classes[idx][1] += 1
                break
        else:
            buckets[key].append(len(classes))
            classes.append([part, 1])
    return TypeCensus(k, [(p, m) for p, m in classes])


def cst_tori(k: int) -> list[Part]:
    """Connected orientable chi=0 parts of the cross-polytope decomposition on all 2k vertices."""
    out = []
    for part in decompose_beta(k).parts:
        c = part.complex
        if len(c.vertices) != 2 * k:
            continue
        report = classify_surface(c)
        if report.component_count == 1 and report.closed and report.orientable and report.euler == 0:
            out.append(part)
    return out


def count_cst_torus_types(k: int) -> int:
    return distinct_types(cst_tori(k), k).total_types
