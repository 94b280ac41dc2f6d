"""Small exact rational linear algebra and LP feasibility.

Everything here works on lists of Fractions at desk rank; used for the
orthogonal section of a restriction map and for convex-combination
certificates (vertex-level linear programming with Bland's rule).
"""

from __future__ import annotations

from fractions import Fraction


def solve_linear(A, b):
    """Solve A x = b exactly (A square, invertible)."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col]
        M[col] = [v / inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b_ for a, b_ in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def nullspace(A):
    """Basis of the right nullspace of a rational matrix (rows x cols)."""
    if not A:
        return []
    rows = [list(map(Fraction, row)) for row in A]
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [v / inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def convex_combination(points, target):
    """Non-negative rational coefficients summing to 1 with sum c_i p_i =
    target, or None if infeasible.

    Phase-1 simplex with Bland's rule on the standard form; exact rationals
    throughout.
    """
    npts = len(points)
    if npts == 0:
        return None
    dim = len(target)
    # rows: dim coordinate equations + 1 normalization equation
    nrows = dim + 1
    A = []
    b = []
    for i in range(dim):
        A.append([Fraction(p[i]) for p in points])
        b.append(Fraction(target[i]))
    A.append([Fraction(1)] * npts)
    b.append(Fraction(1))
    # make rhs non-negative
    for i in range(nrows):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # tableau with artificial variables
    ncols = npts + nrows
    T = [A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(nrows)] + [b[i]]
         for i in range(nrows)]
    basis = [npts + i for i in range(nrows)]
    # objective: minimize sum of artificials; reduced cost row
    obj = [Fraction(0)] * (ncols + 1)
    for i in range(nrows):
        for j in range(ncols + 1):
            obj[j] += T[i][j]
    # artificial columns have cost 1, cancel
    for i in range(nrows):
        obj[npts + i] -= Fraction(1)

    while True:
        enter = next((j for j in range(ncols) if obj[j] > 0), None)
        if enter is None:
            break
        ratios = [
            (T[i][ncols] / T[i][enter], basis[i], i)
            for i in range(nrows)
            if T[i][enter] > 0
        ]
        if not ratios:
            return None  # unbounded phase-1 cannot happen, defensive
        _, _, leave = min(ratios)
        piv = T[leave][enter]
        T[leave] = [v / piv for v in T[leave]]
        for i in range(nrows):
            if i != leave and T[i][enter]:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[leave])]
        if obj[enter]:
            f = obj[enter]
            obj = [a - f * c for a, c in zip(obj, T[leave])]
        basis[leave] = enter

    if obj[ncols] != 0:
        return None  # infeasible: artificials cannot be driven to zero
    coeffs = [Fraction(0)] * npts
    for i, bv in enumerate(basis):
        if bv < npts:
            coeffs[bv] = T[i][ncols]
        elif T[i][ncols] != 0:
            return None
    return coeffs


def in_convex_hull(points, target) -> bool:
    return convex_combination(points, target) is not None
