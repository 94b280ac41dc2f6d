"""Standard polynomial identities and the multiplicity / PI-degree report.

s_m is evaluated by a subset dynamic program rather than a raw sum over all
m! orderings, but the result is the exact alternating sum.  The
Amitsur-Levitzki harness checks that s_{2n} vanishes on seeded random
rational matrix tuples and stores an explicit nonzero witness for s_{2n-1}.
The report layer turns an observed branching multiplicity pattern into a
certified lower bound for the PI degree of the invariant algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

DEGREE_CAP = 8


class DegreeCapError(ValueError):
    pass


@dataclass(frozen=True)
class RationalMatrix:
    entries: tuple  # tuple of row tuples of Fraction

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.entries)
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def __add__(self, other):
        return RationalMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        )

    def __neg__(self):
        return RationalMatrix(tuple(tuple(-v for v in row) for row in self.entries))

    def __matmul__(self, other):
        n = self.n
        return RationalMatrix(
            tuple(
                tuple(
                    sum(self.entries[i][k] * other.entries[k][j] for k in range(n))
                    for j in range(n)
                )
                for i in range(n)
            )
        )

    @staticmethod
    def zero(n: int) -> "RationalMatrix":
        return RationalMatrix(tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n)))

    @staticmethod
    def unit(n: int, i: int, j: int) -> "RationalMatrix":
        return RationalMatrix(
            tuple(
                tuple(Fraction(1) if (r, c) == (i, j) else Fraction(0) for c in range(n))
                for r in range(n)
            )
        )


def standard_polynomial_eval(m: int, matrices) -> RationalMatrix:
    """Exact alternating sum over all m! orderings of the arguments.

    Computed by a DP over argument subsets: A[S] accumulates, over orderings
    of S, sgn * (product in that order), so A[full] = s_m.  The sign of
    appending argument i to an ordering of S \\ {i} is (-1)^(number of
    already-used arguments with larger index).
    """
    matrices = list(matrices)
    if m <= 0 or len(matrices) != m:
        raise ValueError("need exactly m matrices")
    if m > DEGREE_CAP:
        raise DegreeCapError("degree cap exceeded")
    n = matrices[0].n
    if any(x.n != n for x in matrices):
        raise ValueError("size mismatch")

    # clear denominators once so the DP runs on native integers; the result
    # is rescaled back exactly at the end
    scales = []
    ints = []
    for x in matrices:
        L = 1
        for row in x.entries:
            for v in row:
                L = L * v.denominator // gcd(L, v.denominator)
        scales.append(L)
        ints.append(tuple(tuple(int(v * L) for v in row) for row in x.entries))

    rng = range(n)

    def matmul(a, b):
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in rng) for j in rng) for i in rng
        )

    zero = tuple(tuple(0 for _ in rng) for _ in rng)

    A = [None] * (1 << m)
    for i in range(m):
        A[1 << i] = ints[i]
    for S in range(1, 1 << m):
        if A[S] is not None or bin(S).count("1") < 2:
            continue
        acc = [list(row) for row in zero]
        for i in range(m):
            if not (S >> i) & 1:
                continue
            prev = S & ~(1 << i)
            # parity of inversions contributed by placing i last
            sign = -1 if bin(prev >> (i + 1)).count("1") % 2 else 1
            term = matmul(A[prev], ints[i])
            for r in rng:
                tr = term[r]
                ar = acc[r]
                for c in rng:
                    ar[c] += sign * tr[c]
        A[S] = tuple(tuple(row) for row in acc)

    denom = prod(scales)
    return RationalMatrix(
        tuple(tuple(Fraction(e, denom) for e in row) for row in A[(1 << m) - 1])
    )


@dataclass(frozen=True)
class ALVerdict:
    n: int
    trials: int
    seed: int
    vanishing_holds: bool
    witness: tuple | None  # tuple of RationalMatrix with s_{2n-1} != 0
    witness_value: RationalMatrix | None
    failure: str | None


def _random_matrix(n: int, rng: random.Random) -> RationalMatrix:
    return RationalMatrix(
        tuple(
            tuple(
                Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)
            )
            for _ in range(n)
        )
    )


def _witness_search(n: int):
    """Nonzero s_{2n-1} witness among matrix-unit tuples; the staircase
    E_{11}, E_{12}, E_{22}, E_{23}, ..., E_{nn} works for every n."""
    stair = []
    for i in range(n):
        stair.append(RationalMatrix.unit(n, i, i))
        if i + 1 < n:
            stair.append(RationalMatrix.unit(n, i, i + 1))
    value = standard_polynomial_eval(2 * n - 1, stair)
    if not value.is_zero():
        return tuple(stair), value
    return None, None


def amitsur_levitzki_test(n: int, trials: int, seed: int) -> ALVerdict:
    if n < 1 or n > 4:
        raise ValueError("n must be between 1 and 4")
    if 2 * n > DEGREE_CAP:
        raise DegreeCapError("degree cap exceeded")
    rng = random.Random(seed)
    for _ in range(trials):
        tup = [_random_matrix(n, rng) for _ in range(2 * n)]
        if not standard_polynomial_eval(2 * n, tup).is_zero():
            return ALVerdict(
                n=n, trials=trials, seed=seed, vanishing_holds=False,
                witness=None, witness_value=None,
                failure="nonzero value of the even standard polynomial",
            )
    if n == 1:
        # s_1(X) = X: no nonzero-witness clause in the commutative case
        return ALVerdict(
            n=n, trials=trials, seed=seed, vanishing_holds=True,
            witness=None, witness_value=None, failure=None,
        )
    witness, value = _witness_search(n)
    if witness is None:
        return ALVerdict(
            n=n, trials=trials, seed=seed, vanishing_holds=True,
            witness=None, witness_value=None, failure="no witness found",
        )
    return ALVerdict(
        n=n, trials=trials, seed=seed, vanishing_holds=True,
        witness=witness, witness_value=value, failure=None,
    )


@dataclass(frozen=True)
class PiReport:
    observed_sup_multiplicity: int
    multiplicity_free_so_far: bool
    pi_degree_lower_bound: int
    pi_degree_exact: bool
    commutative_predicted: object  # True / False / "unknown"
    depth: int


def pi_degree_report(table, complete_asserted: bool = False) -> PiReport:
    """Certified lower bound for the PI degree of the invariant algebra, read
    off the observed multiplicities in the complete range of the table."""
    sup = table.multiplicity_stats.get("sup_observed", 0)
    free = table.multiplicity_stats.get("multiplicity_free_so_far", sup <= 1)
    certified = table.verdicts.get("completely_reducible") in (
        "certified",
        "certified_via_summands",
    )
    finite = table.complete_above_level is None
    exact = certified and (finite or complete_asserted)
    if not certified:
        commutative = "unknown"
    elif sup >= 2:
        commutative = False
    elif exact:
        commutative = True
    else:
        commutative = "unknown"
    return PiReport(
        observed_sup_multiplicity=sup,
        multiplicity_free_so_far=free,
        pi_degree_lower_bound=sup if certified else 0,
        pi_degree_exact=exact,
        commutative_predicted=commutative,
        depth=table.max_degree,
    )
