"""The graded branching law of ind_q^g(F)|_{g'} and its certification.

The associated graded of the restriction is ind_{q'}^{g'}(F (x) S(ubar'')),
computed degree by degree: restrict the character of F to t', tensor with
the k-th symmetric power of the ubar''-weights, decompose over l', and
certify every emitted highest weight through the good-range and Verma
irreducibility tests on the g' side.  A brute-force truncated character of
S(ubar) (x) F provides the independent per-H-level cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from vermabranch.characters import (
    FormalCharacter,
    NotHighestWeightError,
    character_from_entries,
    freudenthal_character,
    restrict_character,
    strip_to_highest_weights,
    tensor_character,
    sym_power_character,
)
from vermabranch.embedding import (
    NotWeaklyCompatibleError,
    ParabolicDatum,
    check_quasi_abelian,
    check_weakly_compatible,
)
from vermabranch.rootsys import (
    Weight,
    WeylOrbit,
    as_weight,
    rho_of,
    weyl_orbit,
)

AMBIENT = "ambient"
SUBALGEBRA = "subalgebra"

CERTIFIED = "certified"
CERTIFIED_VIA_SUMMANDS = "certified_via_summands"
UNKNOWN = "unknown"

CERTIFIED_IRREDUCIBLE = "certified_irreducible"
CRITERION_INCONCLUSIVE = "criterion_inconclusive"


class TruncationOverflowError(RuntimeError):
    pass


DEFAULT_LEVEL_POPULATION_CAP = 2_000_000


@dataclass(frozen=True)
class VermaDescriptor:
    parabolic: ParabolicDatum
    F_hw: Weight
    side: str = AMBIENT

    def __post_init__(self):
        object.__setattr__(self, "F_hw", as_weight(self.F_hw))

    def _system(self):
        return (
            self.parabolic.pair.g if self.side == AMBIENT else self.parabolic.pair.g_prime
        )

    def levi_positive(self):
        p = self.parabolic
        return p.levi_positive() if self.side == AMBIENT else p.l_prime_positive()

    def nilradical(self):
        p = self.parabolic
        return p.delta_u if self.side == AMBIENT else p.u_prime_roots

    def rho_u(self):
        roots = list(self.nilradical())
        return rho_of(roots) if roots else self._system().zero()

    def levi_infl_char_rep(self) -> Weight:
        """Dominant representative F_hw + rho(Levi) of the Levi infinitesimal
        character."""
        levi = list(self.levi_positive())
        rho_l = rho_of(levi) if levi else self._system().zero()
        return tuple(a + b for a, b in zip(self.F_hw, rho_l))


@dataclass(frozen=True)
class InfinitesimalCharacter:
    orbit: frozenset
    algebra: str

    def __eq__(self, other):
        return (
            isinstance(other, InfinitesimalCharacter)
            and self.algebra == other.algebra
            and self.orbit == other.orbit
        )

    def __hash__(self):
        return hash((self.algebra, self.orbit))


def infinitesimal_character(v: VermaDescriptor) -> InfinitesimalCharacter:
    """[lambda + rho(u)] as a full Weyl orbit of the ambient algebra."""
    system = v._system()
    lam = v.levi_infl_char_rep()
    rep = tuple(a + b for a, b in zip(lam, v.rho_u()))
    orbit = weyl_orbit(system, rep)
    return InfinitesimalCharacter(orbit=orbit.elements, algebra=system.label)


def is_good_range(v: VermaDescriptor, lam_rep=None) -> bool:
    """(lambda + rho(u), alpha) < 0 for every nilradical root alpha."""
    system = v._system()
    lam = as_weight(lam_rep) if lam_rep is not None else v.levi_infl_char_rep()
    shifted = tuple(a + b for a, b in zip(lam, v.rho_u()))
    return all(system.form(shifted, alpha) < 0 for alpha in v.nilradical())


def verma_irreducibility(v: VermaDescriptor, lam_rep=None) -> str:
    """Sufficient irreducibility criterion: 2(lambda+rho(u), alpha)/(alpha,
    alpha) avoids the positive integers on the nilradical.  Never reports
    reducibility."""
    system = v._system()
    lam = as_weight(lam_rep) if lam_rep is not None else v.levi_infl_char_rep()
    shifted = tuple(a + b for a, b in zip(lam, v.rho_u()))
    for alpha in v.nilradical():
        val = system.pairing(shifted, alpha)
        if val.denominator == 1 and val >= 1:
            return CRITERION_INCONCLUSIVE
    return CERTIFIED_IRREDUCIBLE


def fdual(F_prime, parabolic: ParabolicDatum) -> Weight:
    """Highest weight of (F')* (x) C_{-2 rho(u')}."""
    gp = parabolic.pair.g_prime
    lp_pos = parabolic.l_prime_positive()
    mu = as_weight(F_prime)
    for alpha in _subsystem_simple(gp, lp_pos):
        val = gp.pairing(mu, alpha)
        if val.denominator != 1 or val < 0:
            raise NotHighestWeightError("not a highest weight for l'")
    lowest = _antidominant_in_orbit(gp, lp_pos, mu)
    two_rho_up = tuple(2 * c for c in parabolic.rho_u_prime()) if parabolic.u_prime_roots else gp.zero()
    return tuple(-lo - t for lo, t in zip(lowest, two_rho_up))


def _subsystem_simple(system, positive):
    pos = set(positive)
    out = []
    for a in positive:
        if not any(tuple(x - y for x, y in zip(a, b)) in pos for b in pos if b != a):
            out.append(a)
    return out


def _antidominant_in_orbit(system, positive, mu):
    simple = _subsystem_simple(system, positive)
    cur = mu
    changed = True
    while changed:
        changed = False
        for a in simple:
            if system.form(cur, a) > 0:
                cur = system.reflect(cur, a)
                changed = True
    return cur


@dataclass(frozen=True)
class BranchSummand:
    f_prime_hw: Weight
    multiplicity: int
    degree: int
    level: Fraction
    good_range: bool
    irreducible_certified: bool
    infl_char: InfinitesimalCharacter


@dataclass(frozen=True)
class BranchingTable:
    source: VermaDescriptor
    max_degree: int
    complete_above_level: Fraction | None  # None: table is complete at all levels
    summands: tuple
    verdicts: dict
    multiplicity_stats: dict

    def level_complete(self, level) -> bool:
        return self.complete_above_level is None or level > self.complete_above_level

    def summands_in_complete_range(self):
        return [s for s in self.summands if self.level_complete(s.level)]


def _restricted_F_character(v: VermaDescriptor) -> FormalCharacter:
    p = v.parabolic
    g = p.pair.g
    chi = freudenthal_character(g, v.F_hw, p.levi_positive())
    return restrict_character(chi, p.pair.restriction, level_fn=p.weight_value)


def _ubar_dprime_character(p: ParabolicDatum) -> FormalCharacter:
    entries: dict = {}
    for w, _lvl in p.ubar_dprime_weights:
        entries[w] = entries.get(w, 0) + 1
    return character_from_entries(entries, level_fn=p.weight_value)


def branch(v: VermaDescriptor, depth: int) -> BranchingTable:
    """Compute the branching table of ind_q^g(F)|_{g'} down to symmetric
    degree `depth`."""
    if v.side != AMBIENT:
        raise ValueError("branch expects an ambient-side descriptor")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    p = v.parabolic
    wc = check_weakly_compatible(p)
    if not wc:
        raise NotWeaklyCompatibleError(wc.violated)

    gp = p.pair.g_prime
    lp_pos = p.l_prime_positive()
    qa = check_quasi_abelian(p)
    source_good = is_good_range(v)

    chi_F = _restricted_F_character(v)
    chi_ubar = _ubar_dprime_character(p)

    summands = []
    all_irreducible = True
    for k in range(depth + 1):
        sym = sym_power_character(chi_ubar, k)
        if not sym.entries:
            break
        chi_k = tensor_character(chi_F, sym)
        dec = strip_to_highest_weights(gp, chi_k, lp_pos)
        graded = []
        for hw, mult in dec.parts:
            sub = VermaDescriptor(parabolic=p, F_hw=hw, side=SUBALGEBRA)
            good = is_good_range(sub)
            irr = verma_irreducibility(sub) == CERTIFIED_IRREDUCIBLE
            all_irreducible = all_irreducible and irr
            graded.append(
                BranchSummand(
                    f_prime_hw=hw,
                    multiplicity=mult,
                    degree=k,
                    level=chi_k.grading[hw],
                    good_range=good,
                    irreducible_certified=irr,
                    infl_char=infinitesimal_character(sub),
                )
            )
        graded.sort(key=lambda s: gp.to_fundamental(s.f_prime_hw), reverse=True)
        summands.extend(graded)

    # completeness bound in H-levels
    if p.ubar_dprime_weights:
        max_f_level = max(chi_F.grading.values())
        min_step = min(-lvl for _, lvl in p.ubar_dprime_weights)
        complete_above = max_f_level - (depth + 1) * min_step
    else:
        complete_above = None

    verdicts = {
        "weakly_compatible": True,
        "quasi_abelian": bool(qa),
        "source_good_range": source_good,
    }
    if bool(qa) and source_good:
        verdicts["completely_reducible"] = CERTIFIED
    elif all_irreducible and summands:
        verdicts["completely_reducible"] = CERTIFIED_VIA_SUMMANDS
    else:
        verdicts["completely_reducible"] = UNKNOWN

    table = BranchingTable(
        source=v,
        max_degree=depth,
        complete_above_level=complete_above,
        summands=tuple(summands),
        verdicts={},
        multiplicity_stats={},
    )
    stats = _multiplicity_stats(table)
    return BranchingTable(
        source=v,
        max_degree=depth,
        complete_above_level=complete_above,
        summands=tuple(summands),
        verdicts=verdicts,
        multiplicity_stats=stats,
    )


def _multiplicity_stats(table: BranchingTable) -> dict:
    totals: dict = {}
    for s in table.summands_in_complete_range():
        totals[s.f_prime_hw] = totals.get(s.f_prime_hw, 0) + s.multiplicity
    sup = max(totals.values()) if totals else 0
    return {
        "sup_observed": sup,
        "multiplicity_free_so_far": sup <= 1,
    }


def complete_reducibility_verdict(table: BranchingTable) -> str:
    """Theorem route (quasi-abelian + good range), Lemma route (every summand
    in the complete range certified irreducible), else unknown.  Reducibility
    is never asserted."""
    if table.verdicts.get("quasi_abelian") and table.verdicts.get("source_good_range"):
        return CERTIFIED
    in_range = table.summands_in_complete_range()
    if in_range and all(s.irreducible_certified for s in in_range):
        return CERTIFIED_VIA_SUMMANDS
    return UNKNOWN


@dataclass(frozen=True)
class HomSpaceReport:
    f_prime_hw: Weight
    dimension: int
    exact: bool  # False: the dimension is only a lower bound
    zero: bool
    irreducible_flag: bool


def hom_space_report(table: BranchingTable, F_prime) -> HomSpaceReport:
    """Dimension of Hom_{g'}(ind_{q'}(F'), ind_q(F)) read off the table, with
    the U(g)^{G'}-irreducibility flag in the certified regime."""
    p = table.source.parabolic
    gp = p.pair.g_prime
    mu = as_weight(F_prime)
    for alpha in _subsystem_simple(gp, p.l_prime_positive()):
        val = gp.pairing(mu, alpha)
        if val.denominator != 1 or val < 0:
            raise NotHighestWeightError("not a highest weight for l'")
    dim = sum(s.multiplicity for s in table.summands if s.f_prime_hw == mu)
    level = _f_prime_level(p, mu)
    exact = table.level_complete(level)
    certified = table.verdicts.get("completely_reducible") == CERTIFIED
    return HomSpaceReport(
        f_prime_hw=mu,
        dimension=dim,
        exact=exact,
        zero=(dim == 0 and exact),
        irreducible_flag=(certified and dim > 0),
    )


def _f_prime_level(p: ParabolicDatum, mu) -> Fraction:
    return p.weight_value(mu)


@dataclass(frozen=True)
class TransferReport:
    shift_degree: int | None  # S = #{compact u'-roots}; None when symbolic
    summand_labels: tuple
    all_good_range_reverified: bool
    hypotheses_verified: bool
    banner: str | None


def cohomological_transfer_report(table: BranchingTable, assertions: dict) -> TransferReport:
    """Relabel each summand ind_{q'}(F') as a cohomologically induced module
    L^S_{q'}(F') and re-verify the good-range flags.  Requires a certified
    table; the group-level hypotheses are user assertions, never computed."""
    if table.verdicts.get("completely_reducible") != CERTIFIED:
        raise ValueError("transfer report requires a certified table")
    p = table.source.parabolic
    theta = p.pair.theta
    if theta is not None:
        compact = set(theta.compact_roots)
        S = 0
        for gamma in p.u_prime_roots:
            fiber = [
                b for b in p.delta_u if p.pair.restrict(b) == gamma
            ]
            if fiber and all(b in compact for b in fiber):
                S += 1
    else:
        S = None
    labels = []
    all_good = True
    for s in table.summands:
        sub = VermaDescriptor(parabolic=p, F_hw=s.f_prime_hw, side=SUBALGEBRA)
        good = is_good_range(sub)
        all_good = all_good and good and s.good_range
        stag = str(S) if S is not None else "S"
        labels.append((f"L^{stag}_{{q'}}({_fmt_weight(s.f_prime_hw)})", s.multiplicity, good))
    verified = bool(assertions.get("theta_stable")) and bool(
        assertions.get("transitivity_asserted")
    )
    return TransferReport(
        shift_degree=S,
        summand_labels=tuple(labels),
        all_good_range_reverified=all_good,
        hypotheses_verified=verified,
        banner=None if verified else "hypotheses unverified",
    )


def _fmt_weight(w) -> str:
    return "(" + ",".join(str(c) for c in w) + ")"


def truncated_character_oracle(
    v: VermaDescriptor,
    max_level,
    cap: int = DEFAULT_LEVEL_POPULATION_CAP,
) -> dict:
    """Brute-force per-H-level t'-characters of ind_q^g(F) = S(ubar) (x) F.

    Enumerates monomials in the ubar-root multiset down to max_level, tensors
    with the full character of F over the Levi, restricts to t', and buckets
    by H-eigenvalue.  Returns {level: (dimension, {t'-weight: mult})}.
    """
    max_level = Fraction(max_level)
    if max_level > 0:
        raise ValueError("max_level must be non-positive")
    p = v.parabolic
    wc = check_weakly_compatible(p)
    if not wc:
        raise NotWeaklyCompatibleError(wc.violated)
    g = p.pair.g

    chi_F = freudenthal_character(g, v.F_hw, p.levi_positive())
    f_weights = [
        (w, m, p.weight_value(p.pair.restrict(w))) for w, m in chi_F.entries.items()
    ]
    min_f_level = min(lvl for _, _, lvl in f_weights)

    ubar = [tuple(-c for c in r) for r in p.delta_u]
    ubar_levels = [p.root_value(r) for r in ubar]
    budget = max_level - min_f_level  # most negative monomial level still needed

    # enumerate monomials by DFS over the ubar multiset
    monomials: dict = {}  # t-weight -> (mult, level)... keyed by full weight tuple
    population = 0

    def dfs(idx, weight, level):
        nonlocal population
        if idx == len(ubar):
            key = tuple(weight)
            monomials[key] = (monomials.get(key, (0, level))[0] + 1, level)
            population += 1
            if population > cap:
                raise TruncationOverflowError("truncation too deep")
            return
        step_level = ubar_levels[idx]
        root = ubar[idx]
        e = 0
        cur_weight = list(weight)
        cur_level = level
        while cur_level >= budget:
            dfs(idx + 1, cur_weight, cur_level)
            cur_weight = [a + b for a, b in zip(cur_weight, root)]
            cur_level += step_level
            e += 1

    dfs(0, [Fraction(0)] * g.rank, Fraction(0))

    buckets: dict = {}
    for mono_w, (mono_m, mono_lvl) in monomials.items():
        for fw, fm, flvl in f_weights:
            lvl = mono_lvl + flvl
            if lvl < max_level:
                continue
            w = p.pair.restrict(tuple(a + b for a, b in zip(mono_w, fw)))
            bucket = buckets.setdefault(lvl, {})
            bucket[w] = bucket.get(w, 0) + mono_m * fm
    return {
        lvl: (sum(ws.values()), ws) for lvl, ws in sorted(buckets.items(), reverse=True)
    }


def reconstruct_table_levels(table: BranchingTable, max_level) -> dict:
    """Per-H-level t'-characters implied by the table: each summand
    contributes mult copies of the truncated character of ind_{q'}^{g'}(F')."""
    max_level = Fraction(max_level)
    p = table.source.parabolic
    gp = p.pair.g_prime
    lp_pos = p.l_prime_positive()

    ubar_p = [tuple(-c for c in r) for r in p.u_prime_roots]
    ubar_p_levels = [p.weight_value(r) for r in ubar_p]

    buckets: dict = {}
    for s in table.summands:
        chi = freudenthal_character(gp, s.f_prime_hw, lp_pos)
        f_weights = [(w, m, p.weight_value(w)) for w, m in chi.entries.items()]
        min_f_level = min(lvl for _, _, lvl in f_weights)
        budget = max_level - min_f_level
        monomials: list = []

        def dfs(idx, weight, level):
            if idx == len(ubar_p):
                monomials.append((tuple(weight), level))
                return
            root = ubar_p[idx]
            step = ubar_p_levels[idx]
            cur_w = list(weight)
            cur_l = level
            while cur_l >= budget:
                dfs(idx + 1, cur_w, cur_l)
                cur_w = [a + b for a, b in zip(cur_w, root)]
                cur_l += step

        dfs(0, [Fraction(0)] * gp.rank, Fraction(0))
        for mono_w, mono_lvl in monomials:
            for fw, fm, flvl in f_weights:
                lvl = mono_lvl + flvl
                if lvl < max_level:
                    continue
                w = tuple(a + b for a, b in zip(mono_w, fw))
                bucket = buckets.setdefault(lvl, {})
                bucket[w] = bucket.get(w, 0) + s.multiplicity * fm
    return {
        lvl: (sum(ws.values()), ws) for lvl, ws in sorted(buckets.items(), reverse=True)
    }


def oracle_crosscheck(table: BranchingTable, oracle: dict) -> tuple | None:
    """First per-level discrepancy between the table reconstruction and the
    oracle, restricted to the provably complete range; None on agreement."""
    levels = [lvl for lvl in oracle if table.level_complete(lvl)]
    if not levels:
        return None
    max_level = min(levels)
    recon = reconstruct_table_levels(table, max_level)
    for lvl in sorted(levels, reverse=True):
        o_dim, o_entries = oracle[lvl]
        r_dim, r_entries = recon.get(lvl, (0, {}))
        if o_entries != r_entries:
            return (lvl, o_entries, r_entries)
    return None
