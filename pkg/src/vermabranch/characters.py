"""Formal characters of finite-dimensional modules over reductive Levi factors.

A FormalCharacter is a sparse weight -> multiplicity map, optionally graded
by a rational H-level per weight.  Characters over a Levi subalgebra are
handled by passing the Levi's positive roots explicitly; the ambient root
system only supplies the bilinear form and the coordinate frame.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd as _gcd

from vermabranch.rootsys import RootSystem, Weight, as_weight, rho_of


class NotHighestWeightError(ValueError):
    pass


class NotModuleCharacterError(ValueError):
    pass


class TorusMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class FormalCharacter:
    entries: dict
    grading: dict | None = None

    def __post_init__(self):
        for w, m in self.entries.items():
            if m == 0:
                raise ValueError("zero multiplicity entry")

    def dimension(self) -> int:
        return sum(self.entries.values())

    def rank(self) -> int:
        for w in self.entries:
            return len(w)
        return 0

    def level_of(self, w: Weight):
        if self.grading is None:
            return None
        return self.grading.get(w)

    def __eq__(self, other):
        return isinstance(other, FormalCharacter) and self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))


def character_from_entries(entries: dict, level_fn=None) -> FormalCharacter:
    entries = {w: m for w, m in entries.items() if m != 0}
    grading = None
    if level_fn is not None:
        grading = {w: level_fn(w) for w in entries}
    return FormalCharacter(entries=entries, grading=grading)


@dataclass(frozen=True)
class HWDecomposition:
    parts: tuple  # of (highest_weight, multiplicity)


def _simple_of_subsystem(system: RootSystem, positive) -> list[Weight]:
    """Indecomposable elements of a positive subsystem (its simple roots)."""
    pos = set(positive)
    simple = []
    for a in positive:
        if not any(
            tuple(x - y for x, y in zip(a, b)) in pos for b in pos if b != a
        ):
            simple.append(a)
    return simple


def _check_dominant_integral(system: RootSystem, hw: Weight, simple) -> None:
    for a in simple:
        v = system.pairing(hw, a)
        if v.denominator != 1 or v < 0:
            raise NotHighestWeightError(f"not a highest weight: <hw, {a}~> = {v}")


def freudenthal_character(
    system: RootSystem, hw, positive=None, level_fn=None
) -> FormalCharacter:
    """Weight multiplicities of the irreducible module with highest weight hw,
    by Freudenthal's recursion in exact rationals.

    positive restricts to a Levi subsystem; by default the full system is used.

    The inner string sums are maintained incrementally: weights are visited in
    decreasing height order, and for each positive root a running sum of
    m(nu) * (nu, alpha) along every alpha-string is kept, so each weight costs
    O(number of positive roots).  All arithmetic is on scaled integers; the
    saturation of weight strings guarantees the running sums stay correct.
    """
    hw = as_weight(hw)
    if positive is None:
        positive = system.positive_roots
    positive = [as_weight(a) for a in positive]
    simple = _simple_of_subsystem(system, positive)
    _check_dominant_integral(system, hw, simple)

    rho_s = rho_of(positive) if positive else system.zero()
    if not positive:
        return character_from_entries({hw: 1}, level_fn)

    if len(positive) == 1:
        # rank-1 subsystem: the module is a single unbroken root string
        a = positive[0]
        n = system.pairing(hw, a)
        assert n.denominator == 1 and n >= 0
        sc = 1
        for c in hw:
            sc = sc * c.denominator // _gcd(sc, c.denominator)
        start = [int(sc * c) for c in hw]
        step = [int(sc * c) for c in a]
        entries = {}
        for j in range(int(n) + 1):
            entries[
                tuple(
                    (s - j * t) // sc if (s - j * t) % sc == 0 else Fraction(s - j * t, sc)
                    for s, t in zip(start, step)
                )
            ] = 1
        return character_from_entries(entries, level_fn)

    rank = system.rank
    denoms = [c.denominator for c in hw] + [2]
    scale = 1
    for d in denoms:
        scale = scale * d // _gcd(scale, d)
    S = [[int(v) for v in row] for row in system.symmetrized_form]

    def scaled(w):
        out = tuple(int(scale * c) for c in w)
        return out

    top = scaled(tuple(a + b for a, b in zip(hw, rho_s)))  # nu = scale*(mu+rho)
    roots = [scaled(a) for a in positive]
    sroots = [scaled(a) for a in simple]
    # precompute S*alpha and scale*(rho, alpha) per positive root
    S_alpha = [
        tuple(sum(S[i][j] * a[j] for j in range(rank)) for i in range(rank))
        for a in roots
    ]
    rho_dot = [
        sum(scaled(rho_s)[i] * Sa[i] for i in range(rank)) // scale for Sa in S_alpha
    ]

    def norm(nu):
        return sum(nu[i] * sum(S[i][j] * nu[j] for j in range(rank)) for i in range(rank))

    top_norm = norm(top)
    mult = {top: 1}
    strings = [dict() for _ in roots]  # per root: shifted weight -> running sum

    def push(nu, m):
        for idx, a in enumerate(roots):
            up = tuple(x + y for x, y in zip(nu, a))
            prev = strings[idx].get(up, 0)
            # (mu, alpha) * scale^2 = nu.S.alpha_scaled - scale^2*(rho, alpha)
            dot = sum(nu[i] * S_alpha[idx][i] for i in range(rank)) - scale * rho_dot[idx]
            strings[idx][nu] = prev + m * dot

    push(top, 1)
    frontier = [top]
    while frontier:
        candidates = set()
        for nu in frontier:
            for a in sroots:
                candidates.add(tuple(x - y for x, y in zip(nu, a)))
        nxt = []
        for nu in candidates:
            if nu in mult:
                continue
            denom = top_norm - norm(nu)
            if denom <= 0:
                continue
            total = 0
            for idx, a in enumerate(roots):
                up = tuple(x + y for x, y in zip(nu, a))
                total += strings[idx].get(up, 0)
            if total <= 0:
                continue
            m2, rem = divmod(2 * total, denom)
            assert rem == 0
            mult[nu] = m2
            push(nu, m2)
            nxt.append(nu)
        frontier = nxt

    # convert scaled shifted weights back; plain ints where exact (they hash
    # and compare equal to the corresponding Fractions)
    rho_scaled = scaled(rho_s)
    entries = {}
    for nu, m in mult.items():
        mu = tuple(
            (c - r) // scale if (c - r) % scale == 0 else Fraction(c - r, scale)
            for c, r in zip(nu, rho_scaled)
        )
        entries[mu] = m
    return character_from_entries(entries, level_fn)


def weyl_dimension(system: RootSystem, hw, positive=None) -> int:
    """Weyl dimension formula for the subsystem's irreducible module."""
    hw = as_weight(hw)
    if positive is None:
        positive = system.positive_roots
    positive = [as_weight(a) for a in positive]
    simple = _simple_of_subsystem(system, positive)
    _check_dominant_integral(system, hw, simple)
    if not positive:
        return 1
    rho_s = rho_of(positive)
    num = Fraction(1)
    den = Fraction(1)
    shifted = tuple(a + b for a, b in zip(hw, rho_s))
    for a in positive:
        num *= system.form(shifted, a)
        den *= system.form(rho_s, a)
    dim = num / den
    assert dim.denominator == 1 and dim > 0
    return int(dim)


def tensor_character(a: FormalCharacter, b: FormalCharacter) -> FormalCharacter:
    """Convolution of two sparse characters; gradings add when both present."""
    if a.entries and b.entries and a.rank() != b.rank():
        raise TorusMismatchError("torus mismatch")
    out: dict = {}
    grading = {} if (a.grading is not None and b.grading is not None) else None
    for wa, ma in a.entries.items():
        la = a.grading[wa] if grading is not None else None
        for wb, mb in b.entries.items():
            w = tuple(x + y for x, y in zip(wa, wb))
            out[w] = out.get(w, 0) + ma * mb
            if grading is not None:
                grading[w] = la + b.grading[wb]
    out = {w: m for w, m in out.items() if m != 0}
    if grading is not None:
        grading = {w: grading[w] for w in out}
    return FormalCharacter(entries=out, grading=grading)


def _scale_character(v: FormalCharacter, j: int) -> FormalCharacter:
    """Power-sum p_j: each weight w goes to j*w, multiplicities kept."""
    entries: dict = {}
    for w, m in v.entries.items():
        wj = tuple(j * c for c in w)
        entries[wj] = entries.get(wj, 0) + m
    grading = None
    if v.grading is not None:
        grading = {}
        for w in v.entries:
            grading[tuple(j * c for c in w)] = j * v.grading[w]
    return FormalCharacter(entries=entries, grading=grading)


def sym_power_character(v: FormalCharacter, k: int) -> FormalCharacter:
    """Character of the k-th symmetric power via Newton's identity
    k*h_k = sum_j p_j h_{k-j} on the weight multiset."""
    if k < 0:
        raise ValueError("negative symmetric power")
    n = v.rank()
    zero = (Fraction(0),) * n
    grading_on = v.grading is not None
    trivial = FormalCharacter(
        entries={zero: 1}, grading={zero: Fraction(0)} if grading_on else None
    )
    if k == 0:
        return trivial
    h = [trivial]
    powers = [None] + [_scale_character(v, j) for j in range(1, k + 1)]
    for deg in range(1, k + 1):
        acc: dict = {}
        grading: dict = {}
        for j in range(1, deg + 1):
            term = tensor_character(powers[j], h[deg - j])
            for w, m in term.entries.items():
                acc[w] = acc.get(w, Fraction(0)) + Fraction(m)
                if grading_on:
                    grading[w] = term.grading[w]
        entries = {}
        for w, m in acc.items():
            m = m / deg
            if m != 0:
                assert m.denominator == 1
                entries[w] = int(m)
        h.append(
            FormalCharacter(
                entries=entries,
                grading={w: grading[w] for w in entries} if grading_on else None,
            )
        )
    return h[k]


def strip_to_highest_weights(
    system: RootSystem, chi: FormalCharacter, positive=None
) -> HWDecomposition:
    """Decompose a module character into irreducible highest-weight parts.

    Repeatedly selects the residual weight maximizing ((mu, 2*rho_s), lex on
    fundamental coordinates), subtracts its multiplicity times the Freudenthal
    character, and records the part.  A non-dominant maximum or a negative
    residual signals an invalid input.
    """
    if positive is None:
        positive = system.positive_roots
    positive = [as_weight(a) for a in positive]
    simple = _simple_of_subsystem(system, positive)
    rho2 = tuple(2 * c for c in rho_of(positive)) if positive else system.zero()

    residual = dict(chi.entries)
    parts = []

    def key(mu):
        return (system.form(mu, rho2) if positive else 0, system.to_fundamental(mu))

    while residual:
        mu = max(residual, key=key)
        m = residual[mu]
        if m < 0:
            raise NotModuleCharacterError(f"not a module character: residual {m} at {mu}")
        for a in simple:
            v = system.pairing(mu, a)
            if v.denominator != 1 or v < 0:
                raise NotModuleCharacterError(
                    f"not a module character: maximal weight {mu} not dominant"
                )
        irr = freudenthal_character(system, mu, positive)
        for w, mw in irr.entries.items():
            r = residual.get(w, 0) - m * mw
            if r < 0:
                raise NotModuleCharacterError(f"not a module character: residual {r} at {w}")
            if r == 0:
                residual.pop(w, None)
            else:
                residual[w] = r
        parts.append((mu, m))
    parts.sort(key=lambda p: (system.to_fundamental(p[0])), reverse=True)
    return HWDecomposition(parts=tuple(parts))


def dual_character(chi: FormalCharacter) -> FormalCharacter:
    """Entries negated in weight, multiplicities preserved."""
    entries = {tuple(-c for c in w): m for w, m in chi.entries.items()}
    grading = None
    if chi.grading is not None:
        grading = {
            tuple(-c for c in w): -chi.grading[w] for w in chi.entries
        }
    return FormalCharacter(entries=entries, grading=grading)


def restrict_character(
    chi: FormalCharacter, matrix, level_fn=None
) -> FormalCharacter:
    """Push a character through a rational restriction matrix t* -> (t')*."""
    entries: dict = {}
    for w, m in chi.entries.items():
        w2 = tuple(
            sum(row[j] * w[j] for j in range(len(w))) for row in matrix
        )
        entries[w2] = entries.get(w2, 0) + m
    return character_from_entries(entries, level_fn)
