"""Reductive pairs g' < g, parabolic subalgebras from a semisimple element H,
and the structural checks on the nilradical split u = u' + u''.

The embedding is specified at weight level: the g' root system together with
a rational restriction matrix t* -> (t')*.  Closure of g' under brackets is
trusted input; the multiset invariants below catch gross inconsistencies.
All verdicts are exact sign/integrality tests over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from vermabranch.linalg import convex_combination, nullspace, solve_linear
from vermabranch.rootsys import RootSystem, Weight, as_weight, rho_of


class EmbeddingError(ValueError):
    pass


class NotWeaklyCompatibleError(ValueError):
    """Raised when an operation requires weak compatibility and the check fails."""

    def __init__(self, violated: str):
        super().__init__(f"not weakly compatible: {violated} violated")
        self.violated = violated


@dataclass(frozen=True)
class ThetaData:
    """Involution metadata for labeling: compact roots of g (and optionally
    the k = k1 + k2 ideal split given by the g'-roots belonging to k1)."""

    compact_roots: frozenset
    k1_roots: frozenset | None = None


@dataclass(frozen=True)
class ReductivePair:
    g: RootSystem
    g_prime: RootSystem
    restriction: tuple  # rank' x rank rational matrix, simple-root coords
    theta: ThetaData | None = None

    def __post_init__(self):
        if len(self.restriction) != self.g_prime.rank:
            raise EmbeddingError("restriction matrix has wrong number of rows")
        for row in self.restriction:
            if len(row) != self.g.rank:
                raise EmbeddingError("restriction matrix has wrong number of columns")
        self._check_weight_consistency()

    def restrict(self, w) -> Weight:
        w = as_weight(w)
        return tuple(
            sum(Fraction(row[j]) * w[j] for j in range(self.g.rank))
            for row in self.restriction
        )

    def g_weight_multiset(self) -> dict:
        """g as a t'-module: restrictions of all g-roots plus rank(g) zeros."""
        out: dict = {}
        zero = (Fraction(0),) * self.g_prime.rank
        out[zero] = self.g.rank
        for r in self.g.positive_roots:
            for s in (1, -1):
                w = self.restrict(tuple(s * c for c in r))
                out[w] = out.get(w, 0) + 1
        return out

    def _check_weight_consistency(self):
        ms = self.g_weight_multiset()
        for r in self.g_prime.positive_roots:
            for s in (1, -1):
                w = as_weight(tuple(s * c for c in r))
                if ms.get(w, 0) < 1:
                    raise EmbeddingError(
                        f"g' root {w} missing from the t'-weights of g"
                    )
        total = sum(ms.values())
        expected = 2 * len(self.g.positive_roots) + self.g.rank
        if total != expected:
            raise EmbeddingError("weight multiset count mismatch")

    def section(self):
        """Orthogonal section iota: (t')* -> t* of the restriction map.

        iota(a) is the unique preimage orthogonal (under the g form) to the
        kernel of the restriction; realizes (t')* as a subspace of t*.
        """
        M = [list(map(Fraction, row)) for row in self.restriction]
        ker = nullspace(M)
        rank, rank_p = self.g.rank, self.g_prime.rank
        S = self.g.symmetrized_form
        # basis of (ker)^perp under S: nullspace of the system (S k)^T x = 0
        constraints = []
        for k in ker:
            constraints.append(
                [sum(S[i][j] * k[j] for j in range(rank)) for i in range(rank)]
            )
        perp = nullspace(constraints) if constraints else [
            [Fraction(1) if j == i else Fraction(0) for j in range(rank)]
            for i in range(rank)
        ]
        if len(perp) != rank_p:
            raise EmbeddingError("restriction map is not surjective")

        def iota(alpha):
            alpha = as_weight(alpha)
            # solve M (sum c_b perp_b) = alpha
            A = [
                [sum(M[i][j] * perp[b][j] for j in range(rank)) for b in range(rank_p)]
                for i in range(rank_p)
            ]
            c = solve_linear(A, list(alpha))
            return tuple(
                sum(c[b] * perp[b][j] for b in range(rank_p)) for j in range(rank)
            )

        return iota


@dataclass(frozen=True)
class Verdict:
    passed: bool
    violated: str | None = None
    witness: tuple | None = None
    note: str | None = None

    def __bool__(self):
        return self.passed


@dataclass(frozen=True)
class ParabolicDatum:
    pair: ReductivePair
    H: tuple  # values of H on the simple roots of g'
    delta_u: tuple  # g-roots of the nilradical
    delta_l: tuple  # g-roots of the Levi
    u_prime_roots: tuple  # g'-roots of u' = u cap g'
    u_dprime_weights: tuple  # (t'-weight, H-level) multiset of u''

    # -- evaluation helpers ----------------------------------------------

    def root_value(self, alpha) -> Fraction:
        """alpha(H) for a g-root alpha."""
        return self.weight_value(self.pair.restrict(alpha))

    def weight_value(self, w) -> Fraction:
        """mu(H) for a t'-weight mu in g' simple-root coordinates."""
        return sum(Fraction(c) * Fraction(h) for c, h in zip(w, self.H))

    @property
    def ubar_prime_roots(self) -> tuple:
        return tuple(tuple(-c for c in r) for r in self.u_prime_roots)

    @property
    def ubar_dprime_weights(self) -> tuple:
        return tuple(
            (tuple(-c for c in w), -lvl) for w, lvl in self.u_dprime_weights
        )

    def l_prime_roots(self) -> tuple:
        """g'-roots of the Levi l' = l cap g' (weight-level shadow)."""
        gp = self.pair.g_prime
        l_set = set(self.delta_l)
        out = []
        for r in gp.positive_roots:
            for s in (1, -1):
                gamma = tuple(s * c for c in r)
                fiber = _fiber(self.pair, gamma)
                if fiber and all(b in l_set for b in fiber):
                    out.append(as_weight(gamma))
        return tuple(out)

    def l_prime_positive(self) -> tuple:
        pos = set(self.pair.g_prime.positive_roots)
        return tuple(r for r in self.l_prime_roots() if r in pos)

    def levi_positive(self) -> tuple:
        """Positive roots of the Levi l inside Delta^+(g)."""
        pos = set(self.pair.g.positive_roots)
        return tuple(r for r in self.delta_l if r in pos)

    def rho_u(self) -> Weight:
        roots = list(self.delta_u)
        return rho_of(roots) if roots else self.pair.g.zero()

    def rho_u_prime(self) -> Weight:
        roots = list(self.u_prime_roots)
        return rho_of(roots) if roots else self.pair.g_prime.zero()


def _fiber(pair: ReductivePair, gamma) -> list:
    """All g-roots restricting to the t'-weight gamma."""
    gamma = as_weight(gamma)
    out = []
    for r in pair.g.positive_roots:
        for s in (1, -1):
            alpha = tuple(s * c for c in r)
            if pair.restrict(alpha) == gamma:
                out.append(as_weight(alpha))
    return out


def _split_nilradical(pair: ReductivePair, H, delta_u, delta_l):
    """u' roots (shadow: g'-roots whose whole fiber lies in delta_u) and the
    residual u'' t'-weight multiset with H-levels."""
    u_set = set(delta_u)
    gp = pair.g_prime
    u_prime = []
    for r in gp.positive_roots:
        for s in (1, -1):
            gamma = as_weight(tuple(s * c for c in r))
            fiber = _fiber(pair, gamma)
            if fiber and all(b in u_set for b in fiber):
                u_prime.append(gamma)
    restriction_ms: dict = {}
    for alpha in delta_u:
        w = pair.restrict(alpha)
        restriction_ms[w] = restriction_ms.get(w, 0) + 1
    residual = dict(restriction_ms)
    for gamma in u_prime:
        if residual.get(gamma, 0) < 1:
            raise EmbeddingError(
                f"u' root {gamma} not covered by restrictions of the nilradical"
            )
        residual[gamma] -= 1
        if residual[gamma] == 0:
            del residual[gamma]
    zero = (Fraction(0),) * gp.rank
    residual.pop(zero, None)  # Delta denotes non-zero weights
    hval = lambda w: sum(Fraction(c) * Fraction(h) for c, h in zip(w, H))
    u_dprime = []
    for w in sorted(residual):
        for _ in range(residual[w]):
            u_dprime.append((w, hval(w)))
    return tuple(sorted(u_prime)), tuple(u_dprime)


def parabolic_from_H(pair: ReductivePair, H) -> ParabolicDatum:
    """The parabolic q(H): nilradical roots with alpha(H) > 0, Levi roots with
    alpha(H) = 0.  H is given by its rational values on the g' simple roots."""
    H = tuple(Fraction(h) for h in H)
    if len(H) != pair.g_prime.rank:
        raise EmbeddingError("H has wrong rank")

    def value(alpha):
        w = pair.restrict(alpha)
        return sum(c * h for c, h in zip(w, H))

    delta_u = []
    delta_l = []
    for r in pair.g.positive_roots:
        v = value(r)
        if v > 0:
            delta_u.append(as_weight(r))
        elif v < 0:
            delta_u_neg = tuple(-c for c in r)
            delta_u.append(as_weight(delta_u_neg))
        else:
            delta_l.append(as_weight(r))
            delta_l.append(as_weight(tuple(-c for c in r)))
    delta_u.sort()
    delta_l.sort()
    u_prime, u_dprime = _split_nilradical(pair, H, delta_u, delta_l)
    return ParabolicDatum(
        pair=pair,
        H=H,
        delta_u=tuple(delta_u),
        delta_l=tuple(delta_l),
        u_prime_roots=u_prime,
        u_dprime_weights=u_dprime,
    )


def refine_parabolic(base: ParabolicDatum, extra_levi) -> ParabolicDatum:
    """Enlarge the Levi of q(H) by moving the roots in extra_levi (a subset of
    the nilradical) and their negatives into l.  The result must still be
    weakly compatible; otherwise the refinement is rejected."""
    extra = {as_weight(r) for r in extra_levi}
    if not extra:
        return base
    u_set = set(base.delta_u)
    if not extra <= u_set:
        raise EmbeddingError("extra Levi roots must lie in the nilradical")
    new_l = set(base.delta_l)
    for r in extra:
        new_l.add(r)
        new_l.add(tuple(-c for c in r))
    new_u = sorted(u_set - extra)
    # the enlarged Levi must be a closed root subsystem and q = l + u must
    # stay closed: root sums from l+u and u+u may not leave u
    g = base.pair.g
    new_u_set = set(new_u)
    for a in new_l:
        for b in new_l:
            s = tuple(x + y for x, y in zip(a, b))
            if g.is_root(s) and s not in new_l:
                raise EmbeddingError("not a Levi subsystem")
    for a in list(new_l) + new_u:
        for b in new_u:
            s = tuple(x + y for x, y in zip(a, b))
            if g.is_root(s) and s not in new_u_set:
                raise EmbeddingError("refined subalgebra is not parabolic")
    u_prime, u_dprime = _split_nilradical(base.pair, base.H, new_u, sorted(new_l))
    refined = ParabolicDatum(
        pair=base.pair,
        H=base.H,
        delta_u=tuple(new_u),
        delta_l=tuple(sorted(new_l)),
        u_prime_roots=u_prime,
        u_dprime_weights=u_dprime,
    )
    verdict = check_weakly_compatible(refined)
    if not verdict:
        raise NotWeaklyCompatibleError(verdict.violated)
    return refined


def check_weakly_compatible(p: ParabolicDatum) -> Verdict:
    """Weight-multiset shadow of the four compatibility identities.

    For each part of the Levi decomposition, the g'-roots it contains
    (those whose whole restriction fiber lies in that part) must coincide
    with the corresponding part of q(H)."""
    gp = p.pair.g_prime
    # q must contain q(H): every nilradical root is strictly positive on H
    for alpha in p.delta_u:
        if p.root_value(alpha) <= 0:
            return Verdict(
                False, violated="q(H) subset q", witness=(alpha, p.root_value(alpha))
            )
    u_set = set(p.delta_u)
    l_set = set(p.delta_l)
    ubar_set = {tuple(-c for c in r) for r in p.delta_u}

    def shadow(part_set):
        out = set()
        for r in gp.positive_roots:
            for s in (1, -1):
                gamma = as_weight(tuple(s * c for c in r))
                fiber = _fiber(p.pair, gamma)
                if fiber and all(b in part_set for b in fiber):
                    out.add(gamma)
        return out

    u_sh = shadow(u_set)
    l_sh = shadow(l_set)
    ubar_sh = shadow(ubar_set)

    def hvalue(gamma):
        return p.weight_value(gamma)

    all_gp = set()
    for r in gp.positive_roots:
        all_gp.add(as_weight(r))
        all_gp.add(as_weight(tuple(-c for c in r)))
    uH = {g_ for g_ in all_gp if hvalue(g_) > 0}
    lH = {g_ for g_ in all_gp if hvalue(g_) == 0}
    ubarH = {g_ for g_ in all_gp if hvalue(g_) < 0}

    checks = [
        ("u(H) cap g' = u cap g'", uH, u_sh),
        ("l(H) cap g' = l cap g'", lH, l_sh),
        ("ubar(H) cap g' = ubar cap g'", ubarH, ubar_sh),
        ("q(H) cap g' = q cap g'", uH | lH, u_sh | l_sh),
    ]
    for name, lhs, rhs in checks:
        if lhs != rhs:
            diff = sorted(lhs.symmetric_difference(rhs))
            return Verdict(False, violated=name, witness=tuple(diff[:1]))
    return Verdict(True)


def check_quasi_abelian(p: ParabolicDatum) -> Verdict:
    """(alpha, beta) >= 0 for every u'-root alpha and u''-weight beta, under
    the g' form; fails with the first violating pair in scan order."""
    gp = p.pair.g_prime
    for alpha in p.u_prime_roots:
        for beta, _lvl in p.u_dprime_weights:
            v = gp.form(alpha, beta)
            if v < 0:
                return Verdict(False, violated="quasi-abelian", witness=(alpha, beta, v))
    return Verdict(True)


def check_commutator_vanishing(p: ParabolicDatum) -> Verdict:
    """Weight-level sufficient test for [u', u''] = 0: no u'-root plus
    u''-weight lands among the u''-weights."""
    dprime_support = {w for w, _ in p.u_dprime_weights}
    for alpha in p.u_prime_roots:
        for beta in dprime_support:
            s = tuple(a + b for a, b in zip(alpha, beta))
            if s in dprime_support:
                return Verdict(False, violated="commutator", witness=(alpha, beta))
    return Verdict(True)


def convexity_certificate(p: ParabolicDatum, alpha):
    """Exact convex combination expressing alpha (embedded in t* via the
    orthogonal section) over its restriction fiber inside the nilradical.

    Returns (fiber, coefficients).  Infeasibility signals corrupt embedding
    data and raises."""
    alpha = as_weight(alpha)
    fiber = [b for b in p.delta_u if p.pair.restrict(b) == alpha]
    if not fiber:
        raise EmbeddingError("not a restricted root")
    iota = p.pair.section()
    target = iota(alpha)
    coeffs = convex_combination(fiber, target)
    if coeffs is None:
        raise EmbeddingError("convexity violation")
    return fiber, coeffs


def rho_positivity_check(p: ParabolicDatum) -> Verdict:
    """Strict positivity of (rho(u), alpha) on the nilradical, of its
    restriction against u'-roots, and the non-negative defect inequality
    (rho(u)|' + rho(l)|' - rho(l') - rho(u'), alpha') >= 0."""
    g = p.pair.g
    gp = p.pair.g_prime
    rho_u = p.rho_u()
    for alpha in p.delta_u:
        if g.form(rho_u, alpha) <= 0:
            return Verdict(False, violated="(rho(u), alpha) > 0", witness=(alpha,))
    rho_u_r = p.pair.restrict(rho_u)
    for alpha in p.u_prime_roots:
        if gp.form(rho_u_r, alpha) <= 0:
            return Verdict(False, violated="(rho(u)|', alpha') > 0", witness=(alpha,))
    rho_l_r = p.pair.restrict(rho_of(p.levi_positive()) or g.zero())
    lp = p.l_prime_positive()
    rho_lp = rho_of(lp) if lp else gp.zero()
    rho_up = p.rho_u_prime() if p.u_prime_roots else gp.zero()
    defect = tuple(
        a + b - c - d for a, b, c, d in zip(rho_u_r, rho_l_r, rho_lp, rho_up)
    )
    for alpha in p.u_prime_roots:
        if gp.form(defect, alpha) < 0:
            return Verdict(False, violated="defect inequality", witness=(alpha,))
    return Verdict(True)


def quasi_abelian_transfer_check(p: ParabolicDatum) -> Verdict:
    """Independently evaluate 'quasi-abelian with respect to k1' and
    'quasi-abelian with respect to g'' and report the implication status."""
    theta = p.pair.theta
    if theta is None:
        raise EmbeddingError("no involution data")
    if theta.k1_roots is None:
        return Verdict(True, note="not applicable")
    gp = p.pair.g_prime
    k1 = {as_weight(r) for r in theta.k1_roots}
    u_k1 = [a for a in p.u_prime_roots if a in k1]
    restr_ms: list = []
    for alpha in p.delta_u:
        restr_ms.append(p.pair.restrict(alpha))
    # weights of u not accounted for by u cap k1
    residual = list(restr_ms)
    for a in u_k1:
        residual.remove(a)
    hyp = True
    for a in u_k1:
        for b in residual:
            if gp.form(a, b) < 0:
                hyp = False
    concl = bool(check_quasi_abelian(p))
    if hyp and not concl:
        return Verdict(False, violated="transfer implication", note="hypothesis true, conclusion false")
    if not hyp:
        return Verdict(True, note="hypothesis fails, no claim")
    return Verdict(True, note="implication confirmed")
