"""Difference cycles on ``Z_n`` and the algebra around them.

A difference cycle ``(a_0 : ... : a_d)`` with ``sum(a_i) == n`` stands for the
orbit of the simplex ``{0, a_0, a_0 + a_1, ...}`` under ``v -> v + 1 mod n``.
Two gap tuples describe the same cycle iff they are cyclic rotations of one
another; reflections are *not* identified.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    MixedModulus,
    NonPositiveEntry,
    NotAUnit,
    ParseError,
    SumMismatch,
    WrongDimension,
)

__all__ = [
    "DifferenceCycle",
    "SignedCycleChain",
    "new_cycle",
    "orbit_length",
    "expand",
    "apply_multiplier",
    "is_multiplier",
    "boundary_chain",
    "enumerate_cycles",
    "common_modulus",
    "parse_cycle",
    "parse_cycle_list",
    "format_cycle",
]


def _least_rotation(entries: tuple[int, ...]) -> tuple[int, ...]:
    return min(entries[r:] + entries[:r] for r in range(len(entries)))


@dataclass(frozen=True, order=True)
class DifferenceCycle:
    """A difference cycle stored as its lexicographically least rotation.

    Parameters
    ----------
    entries : sequence of int
        Positive gaps between consecutive vertex labels.
    n : int, optional
        Number of vertices. Defaults to ``sum(entries)``; when given it must
        agree with that sum.
    """

    entries: tuple[int, ...]
    n: int = 0

    def __init__(self, entries: Iterable[int], n: int | None = None):
        entries = tuple(int(a) for a in entries)
        if not entries:
            raise ValueError("a difference cycle needs at least one entry")
        if any(a < 1 for a in entries):
            raise NonPositiveEntry(f"entries must be >= 1, got {entries}")
        total = sum(entries)
        if n is None:
            n = total
        if total != n:
            raise SumMismatch(f"entries {entries} sum to {total}, expected n={n}")
        object.__setattr__(self, "entries", _least_rotation(entries))
        object.__setattr__(self, "n", int(n))

    @property
    def dim(self) -> int:
        return len(self.entries) - 1

    @property
    def base_simplex(self) -> tuple[int, ...]:
        """The orbit representative ``{0, a_0, a_0 + a_1, ...}`` in gap order."""
        out = [0]
        for a in self.entries[:-1]:
            out.append(out[-1] + a)
        return tuple(out)

    def __len__(self) -> int:
        return orbit_length(self)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __str__(self) -> str:
        return format_cycle(self)

    def __repr__(self) -> str:
        return f"DifferenceCycle({format_cycle(self)}, n={self.n})"


def new_cycle(entries: Sequence[int], n: int) -> DifferenceCycle:
    return DifferenceCycle(entries, n)


def format_cycle(cycle: DifferenceCycle) -> str:
    return "(" + ":".join(str(a) for a in cycle.entries) + ")"


_CYCLE_RE = re.compile(r"\(\s*(\d+(?:\s*:\s*\d+)*)\s*\)")


def parse_cycle(text: str, n: int | None = None) -> DifferenceCycle:
    """Parse ``"(1:2:5)"``; whitespace around tokens is ignored."""
    m = _CYCLE_RE.fullmatch(text.strip())
    if m is None:
        raise ParseError(f"not a difference cycle: {text!r}")
    entries = [int(tok) for tok in m.group(1).split(":")]
    return DifferenceCycle(entries, n)


def parse_cycle_list(text: str, n: int | None = None) -> list[DifferenceCycle]:
    """Parse a comma separated list such as ``"(1:1:8),(4:4:2)"``."""
    text = text.strip()
    if not text:
        return []
    pos = 0
    out = []
    while pos < len(text):
        m = _CYCLE_RE.match(text, pos)
        if m is None:
            raise ParseError(f"cannot parse cycle list at offset {pos}: {text!r}")
        out.append(parse_cycle(m.group(0), n))
        pos = m.end()
        rest = text[pos:].lstrip()
        if rest.startswith(","):
            rest = rest[1:].lstrip()
            if not rest:
                raise ParseError(f"trailing comma in cycle list: {text!r}")
        elif rest:
            raise ParseError(f"expected ',' at offset {pos}: {text!r}")
        pos = len(text) - len(rest)
    return out


def _least_period(entries: tuple[int, ...]) -> int:
    size = len(entries)
    for p in range(1, size + 1):
        if size % p == 0 and all(entries[i] == entries[i + p] for i in range(size - p)):
            return p
    return size


def orbit_length(cycle: DifferenceCycle) -> int:
    """Number of distinct simplices in the orbit, ``n * p / (d + 1)``."""
    return cycle.n * _least_period(cycle.entries) // len(cycle.entries)


def expand(cycle: DifferenceCycle) -> frozenset[tuple[int, ...]]:
    """All simplices of the cycle as sorted vertex tuples."""
    n = cycle.n
    base = cycle.base_simplex
    return frozenset(
        tuple(sorted((v + shift) % n for v in base))
        for shift in range(orbit_length(cycle))
    )


def _cycle_of_simplex(vertices: Iterable[int], n: int) -> DifferenceCycle:
    vs = sorted(set(vertices))
    gaps = [b - a for a, b in zip(vs, vs[1:])]
    gaps.append(n - vs[-1] + vs[0])
    return DifferenceCycle(gaps, n)


def apply_multiplier(cycle: DifferenceCycle, factor: int) -> DifferenceCycle:
    n = cycle.n
    if gcd(factor, n) != 1:
        raise NotAUnit(f"{factor} is not a unit modulo {n}")
    return _cycle_of_simplex(((factor * v) % n for v in cycle.base_simplex), n)


def common_modulus(cycles: Iterable[DifferenceCycle], n: int | None = None) -> int | None:
    """Return the shared modulus, raising :class:`MixedModulus` on disagreement."""
    for c in cycles:
        if n is None:
            n = c.n
        elif c.n != n:
            raise MixedModulus(f"cycle {c} lives on {c.n} vertices, expected {n}")
    return n


def is_multiplier(cycles: Iterable[DifferenceCycle], factor: int) -> bool:
    cycles = set(cycles)
    n = common_modulus(cycles)
    if n is not None and gcd(factor, n) != 1:
        raise NotAUnit(f"{factor} is not a unit modulo {n}")
    return {apply_multiplier(c, factor) for c in cycles} == cycles


class SignedCycleChain(Mapping[DifferenceCycle, int]):
    """Integer combination of oriented 1-dimensional difference cycles.

    The basis element ``(a : n - a)`` with ``a < n - a`` is the sum of the
    oriented edges ``<i, i + a>`` over ``Z_n``.  Zero coefficients are never
    stored.
    """

    def __init__(self, terms: Mapping[DifferenceCycle, int] | Iterable[tuple[DifferenceCycle, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[DifferenceCycle, int] = {}
        for cyc, coeff in items:
            if cyc.dim != 1:
                raise WrongDimension(f"chain terms must be 1-dimensional, got {cyc}")
            acc[cyc] = acc.get(cyc, 0) + int(coeff)
        self._terms = {c: v for c, v in sorted(acc.items()) if v != 0}

    def __getitem__(self, key: DifferenceCycle) -> int:
        return self._terms[key]

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: SignedCycleChain) -> SignedCycleChain:
        return SignedCycleChain(list(self.items()) + list(other.items()))

    def __neg__(self) -> SignedCycleChain:
        return SignedCycleChain((c, -v) for c, v in self.items())

    def __sub__(self, other: SignedCycleChain) -> SignedCycleChain:
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SignedCycleChain):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self._terms == {c: v for c, v in other.items() if v != 0}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "SignedCycleChain(0)"
        body = " ".join(f"{'+' if v > 0 else '-'}{abs(v) if abs(v) != 1 else ''}{c}" for c, v in self.items())
        return f"SignedCycleChain({body})"


def boundary_chain(cycle: DifferenceCycle) -> SignedCycleChain:
    """Oriented boundary of a 2-dimensional difference cycle.

    For ``(a:b:c)`` this is ``(b : n-b) - (a+b : n-a-b) + (a : n-a)``, where a
    1-cycle written against its canonical rotation flips sign. Coefficients
    refer to the whole orbit, so a cycle of length ``n/3`` such as ``(2:2:2)``
    contributes a third of what a full-length cycle would.  Diagonal classes
    ``(n/2 : n/2)`` are their own negatives and always cancel.
    """
    if cycle.dim != 2:
        raise WrongDimension(f"boundary_chain needs a 2-dimensional cycle, got {cycle}")
    a, b, _ = cycle.entries
    n = cycle.n
    acc: dict[DifferenceCycle, int] = {}
    for step, sign in ((b, 1), (a + b, -1), (a, 1)):
        if 2 * step == n:
            continue
        if 2 * step > n:
            step, sign = n - step, -sign
        key = DifferenceCycle((step, n - step), n)
        acc[key] = acc.get(key, 0) + sign
    scale = orbit_length(cycle)
    out = {}
    for key, coeff in acc.items():
        if (coeff * scale) % n:
            raise AssertionError("non-integral orbit boundary")
        out[key] = coeff * scale // n
    return SignedCycleChain(out)


def enumerate_cycles(dim: int, n: int) -> list[DifferenceCycle]:
    """Every canonical ``dim``-dimensional difference cycle on ``n`` vertices, sorted."""
    if not (n >= dim + 1 >= 2):
        raise ValueError(f"need n >= dim + 1 >= 2, got dim={dim}, n={n}")
    out = []
    # compositions of n into dim + 1 positive parts via cut points in 1..n-1
    for cuts in combinations(range(1, n), dim):
        bounds = (0,) + cuts + (n,)
        gaps = tuple(y - x for x, y in zip(bounds, bounds[1:]))
        if gaps == _least_rotation(gaps):
            out.append(DifferenceCycle(gaps, n))
    return out
