"""Exact root-system, weight-lattice and Weyl-group arithmetic.

Weights are stored as tuples of Fractions in the simple-root basis; the
fundamental-weight view is derived through the Cartan matrix.  The invariant
form is normalized so that short roots of every simple component have
squared length 2.  Product systems ("A1xA1", ...) are block-diagonal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Weight = tuple[Fraction, ...]

_LABEL_RE = re.compile(r"^([ABCDG])(\d+)$")

# positive-root count and Weyl-group order per simple type, keyed by (series, rank)
_SIMPLE_TYPES = ("A", "B", "C", "D", "G")


class CartanTypeError(ValueError):
    """Raised for labels outside the supported Cartan types."""


class OrbitOverflowError(RuntimeError):
    """Raised when a Weyl orbit exceeds the configured size cap."""


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def as_weight(coords) -> Weight:
    return tuple(_fr(c) for c in coords)


def _simple_gram(series: str, rank: int) -> list[list[Fraction]]:
    """Gram matrix (alpha_i, alpha_j) of the simple roots, short roots of
    squared length 2."""
    if rank < 1:
        raise CartanTypeError("empty system")
    n = rank
    S = [[Fraction(0)] * n for _ in range(n)]
    if series == "A":
        for i in range(n):
            S[i][i] = Fraction(2)
        for i in range(n - 1):
            S[i][i + 1] = S[i + 1][i] = Fraction(-1)
    elif series == "B":
        # alpha_i = e_i - e_{i+1} (long, length^2 4), alpha_n = e_n (short, 2)
        if n < 2:
            raise CartanTypeError(f"unknown Cartan type: B{n}")
        for i in range(n - 1):
            S[i][i] = Fraction(4)
        S[n - 1][n - 1] = Fraction(2)
        for i in range(n - 2):
            S[i][i + 1] = S[i + 1][i] = Fraction(-2)
        S[n - 2][n - 1] = S[n - 1][n - 2] = Fraction(-2)
    elif series == "C":
        # alpha_i = e_i - e_{i+1} (short, 2), alpha_n = 2e_n (long, 4)
        if n < 2:
            raise CartanTypeError(f"unknown Cartan type: C{n}")
        for i in range(n - 1):
            S[i][i] = Fraction(2)
        S[n - 1][n - 1] = Fraction(4)
        for i in range(n - 2):
            S[i][i + 1] = S[i + 1][i] = Fraction(-1)
        S[n - 2][n - 1] = S[n - 1][n - 2] = Fraction(-2)
    elif series == "D":
        if n < 3:
            raise CartanTypeError(f"unknown Cartan type: D{n}")
        for i in range(n):
            S[i][i] = Fraction(2)
        for i in range(n - 2):
            S[i][i + 1] = S[i + 1][i] = Fraction(-1)
        S[n - 3][n - 1] = S[n - 1][n - 3] = Fraction(-1)
    elif series == "G":
        if n != 2:
            raise CartanTypeError(f"unknown Cartan type: G{n}")
        S[0][0] = Fraction(2)
        S[1][1] = Fraction(6)
        S[0][1] = S[1][0] = Fraction(-3)
    else:
        raise CartanTypeError(f"unknown Cartan type: {series}{n}")
    return S


def _simple_counts(series: str, rank: int) -> tuple[int, int]:
    """(number of positive roots, Weyl group order) for a simple type."""
    n = rank
    if series == "A":
        npos = n * (n + 1) // 2
        worder = 1
        for k in range(2, n + 2):
            worder *= k
    elif series in ("B", "C"):
        npos = n * n
        worder = 2**n
        for k in range(2, n + 1):
            worder *= k
    elif series == "D":
        npos = n * (n - 1)
        worder = 2 ** (n - 1)
        for k in range(2, n + 1):
            worder *= k
    else:  # G2
        npos = 6
        worder = 12
    return npos, worder


@dataclass(frozen=True)
class RootSystem:
    """Root data of a (product of) simple Lie algebra(s) over the rationals."""

    label: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    symmetrized_form: tuple[tuple[Fraction, ...], ...]
    simple_roots: tuple[Weight, ...]
    positive_roots: tuple[Weight, ...]
    component_spans: tuple[tuple[str, int, int], ...]  # (type, offset, rank)
    weyl_order: int

    # -- bilinear form ---------------------------------------------------

    def form(self, x: Weight, y: Weight) -> Fraction:
        """(x, y) under the W-invariant symmetrized form."""
        S = self.symmetrized_form
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                row = S[i]
                for j, yj in enumerate(y):
                    if yj:
                        total += xi * row[j] * yj
        return total

    def pairing(self, x: Weight, alpha: Weight) -> Fraction:
        """<x, alpha^vee> = 2(x, alpha)/(alpha, alpha)."""
        return 2 * self.form(x, alpha) / self.form(alpha, alpha)

    def reflect(self, x: Weight, alpha: Weight) -> Weight:
        c = self.pairing(x, alpha)
        return tuple(xi - c * ai for xi, ai in zip(x, alpha))

    def simple_reflect(self, x: Weight, i: int) -> Weight:
        c = sum(Fraction(self.cartan_matrix[i][j]) * x[j] for j in range(self.rank))
        out = list(x)
        out[i] -= c
        return tuple(out)

    # -- coordinate views ------------------------------------------------

    def to_fundamental(self, x: Weight) -> Weight:
        """Coordinates <x, alpha_i^vee> in the fundamental-weight view."""
        C = self.cartan_matrix
        return tuple(
            sum(Fraction(C[i][j]) * x[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def from_fundamental(self, fw) -> Weight:
        fw = as_weight(fw)
        return _solve_cartan(self, fw)

    def zero(self) -> Weight:
        return (Fraction(0),) * self.rank

    @property
    def rho(self) -> Weight:
        return rho_of(self.positive_roots)

    def is_root(self, x: Weight) -> bool:
        return x in self._root_set()

    def _root_set(self) -> frozenset:
        cached = getattr(self, "_roots_cache", None)
        if cached is None:
            cached = frozenset(self.positive_roots) | frozenset(
                tuple(-c for c in r) for r in self.positive_roots
            )
            object.__setattr__(self, "_roots_cache", cached)
        return cached


def _solve_cartan(system: RootSystem, fw: Weight) -> Weight:
    """Invert fw = C x by exact Gaussian elimination."""
    n = system.rank
    M = [[Fraction(system.cartan_matrix[i][j]) for j in range(n)] + [fw[i]] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col]
        M[col] = [v / inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return tuple(M[i][n] for i in range(n))


def _parse_label(label: str) -> list[tuple[str, int]]:
    parts = label.split("x")
    out = []
    for part in parts:
        m = _LABEL_RE.match(part.strip())
        if not m:
            raise CartanTypeError(f"unknown Cartan type: {part!r}")
        series, rank = m.group(1), int(m.group(2))
        if rank == 0:
            raise CartanTypeError("empty system")
        if rank > 6:
            raise CartanTypeError(f"unknown Cartan type: rank {rank} exceeds 6")
        if series not in _SIMPLE_TYPES:
            raise CartanTypeError(f"unknown Cartan type: {part!r}")
        out.append((series, rank))
    if not out:
        raise CartanTypeError("empty system")
    return out


def _positive_roots_by_orbit(
    cartan: list[list[int]], rank: int, nexpected: int
) -> list[Weight]:
    """All positive roots as the W-orbit closure of the simple roots."""
    simple = [
        tuple(Fraction(1) if j == i else Fraction(0) for j in range(rank))
        for i in range(rank)
    ]
    seen: set[Weight] = set(simple) | {tuple(-c for c in s) for s in simple}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(rank):
                c = sum(Fraction(cartan[i][j]) * x[j] for j in range(rank))
                y = list(x)
                y[i] -= c
                y = tuple(y)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    positive = [r for r in seen if all(c >= 0 for c in r)]
    # sort by height, then lexicographically, for reproducible listings
    positive.sort(key=lambda r: (sum(r), r))
    assert len(positive) == nexpected, (len(positive), nexpected)
    return positive


@lru_cache(maxsize=None)
def build_root_system(label: str) -> RootSystem:
    """Construct the root system for a Cartan-type tag like "A2", "C2" or
    "A1xA1"."""
    comps = _parse_label(label)
    rank = sum(r for _, r in comps)
    S = [[Fraction(0)] * rank for _ in range(rank)]
    spans = []
    offset = 0
    npos_total = 0
    worder = 1
    for series, r in comps:
        block = _simple_gram(series, r)
        for i in range(r):
            for j in range(r):
                S[offset + i][offset + j] = block[i][j]
        npos, wo = _simple_counts(series, r)
        npos_total += npos
        worder *= wo
        spans.append((f"{series}{r}", offset, r))
        offset += r
    cartan = [
        [int(2 * S[i][j] / S[i][i]) for j in range(rank)] for i in range(rank)
    ]
    simple = tuple(
        tuple(Fraction(1) if j == i else Fraction(0) for j in range(rank))
        for i in range(rank)
    )
    positive = tuple(_positive_roots_by_orbit(cartan, rank, npos_total))
    return RootSystem(
        label=label,
        rank=rank,
        cartan_matrix=tuple(tuple(row) for row in cartan),
        symmetrized_form=tuple(tuple(row) for row in S),
        simple_roots=simple,
        positive_roots=positive,
        component_spans=tuple(spans),
        weyl_order=worder,
    )


def rho_of(roots) -> Weight:
    """Half the sum of a multiset of weights (empty multiset gives 0)."""
    roots = list(roots)
    if not roots:
        return ()
    n = len(roots[0])
    acc = [Fraction(0)] * n
    for r in roots:
        for i, c in enumerate(r):
            acc[i] += c
    return tuple(c / 2 for c in acc)


def is_integrally_dominant(
    system: RootSystem, lam: Weight, positive=None, anti: bool = False
) -> bool:
    """Whether 2(lam, alpha)/(alpha, alpha) avoids the negative (or, with
    anti=True, the positive) integers over the supplied positive roots."""
    if positive is None:
        positive = system.positive_roots
    for alpha in positive:
        v = system.pairing(lam, alpha)
        if v.denominator != 1:
            continue
        if anti:
            if v >= 1:
                return False
        else:
            if v <= -1:
                return False
    return True


@dataclass(frozen=True)
class WeylOrbit:
    base: Weight
    elements: frozenset


DEFAULT_ORBIT_CAP = 100_000


def weyl_orbit(system: RootSystem, lam: Weight, cap: int = DEFAULT_ORBIT_CAP) -> WeylOrbit:
    """Orbit of lam under the full Weyl group, by closure under simple
    reflections."""
    lam = as_weight(lam)
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(system.rank):
                y = system.simple_reflect(x, i)
                if y not in seen:
                    if len(seen) >= cap:
                        raise OrbitOverflowError("orbit overflow")
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return WeylOrbit(base=lam, elements=frozenset(seen))
