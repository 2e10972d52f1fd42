"""Exact Smith normal form over the integers.

Small dense matrices only (exploration and dilation computations stay well
under 20x20), so a straightforward pivoting elimination with arbitrary
precision ints is plenty.  smith_normal_form returns (U, D, V) with
U * M * V == D, U and V unimodular, and the diagonal of D a divisibility
chain d1 | d2 | ... with nonnegative entries.
"""

from __future__ import annotations


def _identity(k):
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def _snf_core(M, track):
    A = [list(row) for row in M]
    R = len(A)
    C = len(A[0]) if R else 0
    U = _identity(R) if track else None
    V = _identity(C) if track else None

    def swap_rows(a, b):
        A[a], A[b] = A[b], A[a]
        if track:
            U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        if track:
            for row in V:
                row[a], row[b] = row[b], row[a]

    def add_row(src, dst, q):
        # row[dst] += q * row[src]
        As, Ad = A[src], A[dst]
        for j in range(C):
            Ad[j] += q * As[j]
        if track:
            Us, Ud = U[src], U[dst]
            for j in range(R):
                Ud[j] += q * Us[j]

    def add_col(src, dst, q):
        for row in A:
            row[dst] += q * row[src]
        if track:
            for row in V:
                row[dst] += q * row[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        if track:
            U[i] = [-x for x in U[i]]

    t = 0
    limit = min(R, C)
    while t < limit:
        # locate a pivot of minimal absolute value in the trailing block
        piv = None
        best = None
        for i in range(t, R):
            Ai = A[i]
            for j in range(t, C):
                a = Ai[j]
                if a:
                    a = -a if a < 0 else a
                    if best is None or a < best:
                        best = a
                        piv = (i, j)
                        if a == 1:
                            break
            if best == 1:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])

        while True:
            # clear the pivot column
            dirty = False
            for i in range(t + 1, R):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        add_row(t, i, -q)
                    if A[i][t]:
                        # remainder smaller than pivot: promote it
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            # clear the pivot row
            for j in range(t + 1, C):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining block by the pivot
            stuck = None
            d = A[t][t]
            for i in range(t + 1, R):
                Ai = A[i]
                for j in range(t + 1, C):
                    if Ai[j] % d:
                        stuck = i
                        break
                if stuck is not None:
                    break
            if stuck is None:
                break
            add_row(stuck, t, 1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1

    return U, A, V


def smith_normal_form(M):
    """Return (U, D, V) with U*M*V == D in Smith normal form."""
    rows = [list(r) for r in M]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    U, D, V = _snf_core(rows, track=True)
    return U, D, V


def invariant_factors(M):
    """Nonzero diagonal of the Smith form, as a list d1 | d2 | ..."""
    rows = [list(r) for r in M]
    if not rows or not rows[0]:
        return []
    _, D, _ = _snf_core(rows, track=False)
    out = []
    for t in range(min(len(D), len(D[0]))):
        if D[t][t]:
            out.append(abs(D[t][t]))
    return out


def integer_rank(M) -> int:
    return len(invariant_factors(M))


def spans_full_lattice(M, dim: int) -> bool:
    """Do the rows of M span all of Z^dim?"""
    facs = invariant_factors(M)
    return len(facs) == dim and all(d == 1 for d in facs)


def solve_unimodular(X, c):
    """Solve X * tau = c exactly for integer X with det +-1.

    Fraction-free forward elimination would do; plain rational elimination is
    simpler and the sizes are tiny.  Raises ValueError if X is singular or
    the solution is not integral (which cannot happen for unimodular X).
    """
    from fractions import Fraction

    k = len(X)
    aug = [[Fraction(x) for x in row] + [Fraction(c[i])] for i, row in enumerate(X)]
    for col in range(k):
        piv = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    out = []
    for r in range(k):
        v = aug[r][k]
        if v.denominator != 1:
            raise ValueError("non-integral solution; matrix was not unimodular")
        out.append(int(v))
    return out
