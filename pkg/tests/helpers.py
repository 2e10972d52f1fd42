"""Independent oracles shared by the test suite.

Everything here is written against the definitions directly, with no reuse
of the package's own shortcuts, so the main implementations are checked
against genuinely separate code paths.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd


# -- integer linear algebra ------------------------------------------------


def det_int(M) -> Fraction:
    """Determinant via rational elimination (exact)."""
    k = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for col in range(k):
        piv = next((r for r in range(col, k) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        inv = 1 / A[col][col]
        for r in range(col + 1, k):
            if A[r][col] != 0:
                f = A[r][col] * inv
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return det


def minor_gcd_invariant_factors(M):
    """Invariant factors computed as ratios of k-minor gcds.

    d_k = g_k / g_(k-1) where g_k is the gcd of all k x k minors (g_0 = 1).
    Stops at the first k where every minor vanishes.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    out = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rsel in combinations(range(rows), k):
            for csel in combinations(range(cols), k):
                sub = [[M[r][c] for c in csel] for r in rsel]
                g = gcd(g, abs(int(det_int(sub))))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


# -- arrow-level quiver mutation ------------------------------------------


def arrows_to_multiset(n, m, arrows):
    out = {}
    for i, j, w in arrows:
        out[(i, j)] = out.get((i, j), 0) + w
    return out


def mutate_arrow_multiset(n, m, arrows, k):
    """Literal three-step mutation on a multiset of individual arrows.

    arrows is a dict (source, target) -> positive count, 0-based vertices.
    Step 1 composes every path i -> k -> j into a new arrow i -> j unless
    both endpoints are frozen; step 2 reverses every arrow at k; step 3
    cancels directed 2-cycles.
    """
    work = dict(arrows)
    for (i, a), w1 in list(arrows.items()):
        if a != k:
            continue
        for (b, j), w2 in list(arrows.items()):
            if b != k:
                continue
            if i >= n and j >= n:
                continue
            work[(i, j)] = work.get((i, j), 0) + w1 * w2
    flipped = {}
    for (i, j), w in work.items():
        if i == k or j == k:
            flipped[(j, i)] = flipped.get((j, i), 0) + w
        else:
            flipped[(i, j)] = flipped.get((i, j), 0) + w
    out = {}
    for (i, j), w in flipped.items():
        if (j, i) in flipped and j < i:
            continue
        back = flipped.get((j, i), 0)
        net = w - back
        if net > 0:
            out[(i, j)] = net
        elif net < 0:
            out[(j, i)] = -net
    return out


# -- brute-force cluster expansion ----------------------------------------


def brute_cluster_sets(matrix_rows, n, m, depth):
    """All distinct clusters (as frozenset of polynomials) within a depth.

    Replays mutation over the symbolic cluster directly with Fraction-free
    dict polynomials from the main package; dedup is by unordered cluster
    content only, ignoring the quiver, which is the coarse count used to
    cross-check seed exploration.
    """
    from clusterdeep.laurent import LaurentPoly
    from clusterdeep.quiver import IceQuiver
    from clusterdeep.seeds import initial_seed, mutate_seed

    q = IceQuiver(n, m, matrix_rows)
    start = initial_seed(q)
    seen = {}
    frontier = [start]
    key = lambda s: frozenset(s.cluster[: s.quiver.n])
    seen[key(start)] = 0
    for d in range(depth):
        nxt = []
        for s in frontier:
            for k in range(n):
                t = mutate_seed(s, k)
                kk = key(t)
                if kk not in seen:
                    seen[kk] = d + 1
                    nxt.append(t)
        frontier = nxt
        if not frontier:
            break
    return seen
