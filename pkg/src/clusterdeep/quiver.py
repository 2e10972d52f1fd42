"""Ice quivers with integer multiplicities.

An ice quiver on n mutable and m frozen vertices is stored as its extended
exchange matrix: a tuple of n+m rows, each a tuple of n ints.  Row i, column
j holds the signed multiplicity b_ij: positive means arrows i -> j, negative
means arrows j -> i.  The top n x n block is skew-symmetric; rows n..n+m-1
describe arrows between frozen and mutable vertices.  Arrows between two
frozen vertices are not representable and not allowed.

All indices in this module are 0-based.  The JSON interchange format is
1-based (vertices 1..n mutable, n+1..n+m frozen) and uses explicit arrow
triples [source, target, weight].
"""

from __future__ import annotations

import itertools
import json
from collections import Counter, deque
from dataclasses import dataclass
from math import gcd

from .errors import QuiverFormatError
from .snf import spans_full_lattice


class IceQuiver:
    """Immutable ice quiver; all operations return new instances."""

    __slots__ = ("n", "m", "matrix", "_hash")

    def __init__(self, n: int, m: int, matrix):
        self.n = n
        self.m = m
        self.matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        self._hash = None
        self._validate()

    def _validate(self):
        n, m = self.n, self.m
        if n < 1 or m < 0:
            raise QuiverFormatError("need at least one mutable vertex and m >= 0")
        if len(self.matrix) != n + m:
            raise QuiverFormatError(
                "matrix has %d rows, expected %d" % (len(self.matrix), n + m)
            )
        for row in self.matrix:
            if len(row) != n:
                raise QuiverFormatError("matrix rows must have length n")
        B = self.matrix
        for i in range(n):
            if B[i][i] != 0:
                raise QuiverFormatError("loop at vertex %d" % (i + 1))
            for j in range(i + 1, n):
                if B[i][j] != -B[j][i]:
                    raise QuiverFormatError(
                        "mutable block not skew-symmetric at (%d,%d)" % (i + 1, j + 1)
                    )

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, IceQuiver)
            and self.n == other.n
            and self.m == other.m
            and self.matrix == other.matrix
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.m, self.matrix))
        return self._hash

    def __repr__(self):
        return "IceQuiver(n=%d, m=%d, %r)" % (self.n, self.m, self.matrix)

    # -- basic access -----------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        """Signed multiplicity between vertex i and mutable vertex j."""
        return self.matrix[i][j]

    def column(self, k: int):
        return tuple(self.matrix[i][k] for i in range(self.n + self.m))

    def mutable_block(self):
        return tuple(row for row in self.matrix[: self.n])

    def arrows(self):
        """All arrows as (source, target, weight) triples, 0-based."""
        out = []
        n, m = self.n, self.m
        B = self.matrix
        for j in range(n):
            for i in range(n + m):
                w = B[i][j]
                if w > 0:
                    out.append((i, j, w))
                elif w < 0 and i >= n:
                    out.append((j, i, -w))
        out.sort()
        return out

    def mutable_neighbors(self, v: int):
        """Mutable vertices joined to mutable v by at least one arrow."""
        B = self.matrix
        return tuple(u for u in range(self.n) if u != v and B[u][v] != 0)

    def mutable_degree(self, v: int) -> int:
        return len(self.mutable_neighbors(v))

    # -- mutation ---------------------------------------------------------

    def mutate(self, k: int) -> "IceQuiver":
        """Matrix mutation at mutable vertex k."""
        n, m = self.n, self.m
        if not (0 <= k < n):
            raise QuiverFormatError("mutation index %d out of range" % k)
        B = self.matrix
        new = []
        for i in range(n + m):
            bik = B[i][k]
            row = []
            for j in range(n):
                if i == k or j == k:
                    row.append(-B[i][j])
                else:
                    bkj = B[k][j]
                    v = B[i][j]
                    if bik > 0 and bkj > 0:
                        v += bik * bkj
                    elif bik < 0 and bkj < 0:
                        v -= bik * bkj
                    row.append(v)
            new.append(row)
        return IceQuiver(n, m, new)

    def mutate_word(self, word) -> "IceQuiver":
        q = self
        for k in word:
            q = q.mutate(k)
        return q

    # -- structural surgery ----------------------------------------------

    def freeze_vertex(self, k: int) -> "IceQuiver":
        """Turn mutable vertex k into a frozen one.

        The new frozen vertex is appended after the existing frozen rows;
        surviving mutable vertices keep their relative order.
        """
        n, m = self.n, self.m
        if not (0 <= k < n):
            raise QuiverFormatError("freeze index %d out of range" % k)
        B = self.matrix
        keep = [v for v in range(n) if v != k]
        rows = []
        for v in keep:
            rows.append([B[v][j] for j in keep])
        for f in range(n, n + m):
            rows.append([B[f][j] for j in keep])
        rows.append([B[k][j] for j in keep])
        return IceQuiver(n - 1, m + 1, rows)

    def relabel(self, perm_mutable, perm_frozen=None) -> "IceQuiver":
        """Apply a relabeling; perm[new_index] = old_index."""
        n, m = self.n, self.m
        if sorted(perm_mutable) != list(range(n)):
            raise QuiverFormatError("bad mutable permutation")
        if perm_frozen is None:
            perm_frozen = list(range(m))
        if sorted(perm_frozen) != list(range(m)):
            raise QuiverFormatError("bad frozen permutation")
        B = self.matrix
        rows = []
        for i in range(n):
            oi = perm_mutable[i]
            rows.append([B[oi][perm_mutable[j]] for j in range(n)])
        for f in range(m):
            of = n + perm_frozen[f]
            rows.append([B[of][perm_mutable[j]] for j in range(n)])
        return IceQuiver(n, m, rows)

    def add_frozen_rows(self, rows) -> "IceQuiver":
        """Append extra frozen vertices with the given arrow rows."""
        for row in rows:
            if len(row) != self.n:
                raise QuiverFormatError("frozen rows must have length n")
        return IceQuiver(self.n, self.m + len(rows), list(self.matrix) + [list(r) for r in rows])

    # -- JSON interchange -------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "arrows": [[i + 1, j + 1, w] for (i, j, w) in self.arrows()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def from_json_dict(data) -> "IceQuiver":
        if not isinstance(data, dict):
            raise QuiverFormatError("quiver document must be an object")
        try:
            n = int(data["n"])
            m = int(data["m"])
            arrows = data["arrows"]
        except (KeyError, TypeError, ValueError) as exc:
            raise QuiverFormatError("quiver document needs n, m, arrows") from exc
        if not isinstance(arrows, list):
            raise QuiverFormatError("arrows must be a list")
        return IceQuiver.from_arrows(n, m, [tuple(a) for a in arrows], one_based=True)

    @staticmethod
    def from_json(text: str) -> "IceQuiver":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise QuiverFormatError("invalid JSON: %s" % exc) from exc
        return IceQuiver.from_json_dict(data)

    @staticmethod
    def from_arrows(n: int, m: int, arrows, one_based: bool = False) -> "IceQuiver":
        if n < 1 or m < 0:
            raise QuiverFormatError("need n >= 1 and m >= 0")
        total = n + m
        rows = [[0] * n for _ in range(total)]
        seen = set()
        for arrow in arrows:
            if len(arrow) != 3:
                raise QuiverFormatError("arrow records are [source, target, weight]")
            i, j, w = (int(x) for x in arrow)
            if one_based:
                i -= 1
                j -= 1
            if not (0 <= i < total and 0 <= j < total):
                raise QuiverFormatError("arrow endpoint out of range: %r" % (arrow,))
            if i == j:
                raise QuiverFormatError("loops are not allowed")
            if w < 1:
                raise QuiverFormatError("arrow weights must be positive")
            if i >= n and j >= n:
                raise QuiverFormatError("arrows between frozen vertices are not allowed")
            if (i, j) in seen:
                raise QuiverFormatError("duplicate arrow record %r" % ((i, j),))
            if (j, i) in seen:
                raise QuiverFormatError("2-cycle between %d and %d" % (i + 1, j + 1))
            seen.add((i, j))
            if j < n:
                rows[i][j] += w
            if i < n:
                rows[j][i] -= w
        return IceQuiver(n, m, rows)

    @staticmethod
    def from_matrix(matrix, n=None, m=None) -> "IceQuiver":
        rows = [list(r) for r in matrix]
        if n is None:
            n = len(rows[0]) if rows else 0
        if m is None:
            m = len(rows) - n
        return IceQuiver(n, m, rows)


# -- derived data ---------------------------------------------------------


def gcd_vector(q: IceQuiver):
    """Per-vertex gcd of the mutable-block row; 0 for an isolated vertex."""
    out = []
    for i in range(q.n):
        g = 0
        for j in range(q.n):
            g = gcd(g, abs(q.matrix[i][j]))
        out.append(g)
    return tuple(out)


def is_acyclic(q: IceQuiver) -> bool:
    """No directed cycle among mutable vertices."""
    n = q.n
    B = q.matrix
    state = [0] * n  # 0 unseen, 1 on stack, 2 done

    def dfs(v):
        state[v] = 1
        for u in range(n):
            if B[v][u] > 0:
                if state[u] == 1:
                    return False
                if state[u] == 0 and not dfs(u):
                    return False
        state[v] = 2
        return True

    return all(state[v] == 2 or dfs(v) for v in range(n))


def is_abundant(q: IceQuiver) -> bool:
    """Every pair of mutable vertices is joined with multiplicity >= 2."""
    n = q.n
    B = q.matrix
    return all(abs(B[i][j]) >= 2 for i in range(n) for j in range(i + 1, n))


def is_tree_mutable(q: IceQuiver) -> bool:
    """Underlying simple graph on mutable vertices is a tree.

    Multiplicities are ignored: a double arrow still counts as one edge of
    the underlying graph.
    """
    n = q.n
    B = q.matrix
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if B[i][j] != 0]
    if len(edges) != n - 1:
        return False
    seen = {0}
    queue = deque([0])
    adj = {v: [] for v in range(n)}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == n


def is_sink_source_form(q: IceQuiver) -> bool:
    """Every mutable vertex is a sink or a source of the full ice quiver."""
    n, m = q.n, q.m
    B = q.matrix
    for k in range(n):
        col = [B[i][k] for i in range(n + m)]
        if not (all(x >= 0 for x in col) or all(x <= 0 for x in col)):
            return False
    return True


def is_really_full_rank(q: IceQuiver) -> bool:
    """Columns of the extended matrix span a full direct summand of Z^(n+m).

    Equivalently the Smith form of the matrix has n invariant factors, all 1.
    """
    cols = [[q.matrix[i][k] for i in range(q.n + q.m)] for k in range(q.n)]
    return spans_full_lattice(cols, q.n)


@dataclass(frozen=True)
class QuiverClass:
    acyclic: bool
    tree_mutable: bool
    sink_source_form: bool
    abundant: bool
    really_full_rank: bool

    def to_json_dict(self):
        return {
            "acyclic": self.acyclic,
            "tree_mutable": self.tree_mutable,
            "sink_source_form": self.sink_source_form,
            "abundant": self.abundant,
            "really_full_rank": self.really_full_rank,
        }


def classify(q: IceQuiver) -> QuiverClass:
    return QuiverClass(
        acyclic=is_acyclic(q),
        tree_mutable=is_tree_mutable(q),
        sink_source_form=is_sink_source_form(q),
        abundant=is_abundant(q),
        really_full_rank=is_really_full_rank(q),
    )


# -- keys -----------------------------------------------------------------


@dataclass(frozen=True)
class KeyPair:
    pair: tuple
    mode_used: str


def is_key(q: IceQuiver, mode: str = "strict"):
    """Find a key pair in an acyclic mutable part, or None.

    A key pair {k, k'} is joined with multiplicity < 2 while every other
    pair of mutable vertices is joined with multiplicity >= 2, and the two
    members relate to each remaining vertex coherently: in strict mode both
    must point at i (or both receive from i) for every other vertex i.  In
    tolerant mode a globally reversed orientation profile is accepted too:
    k points at i exactly when i points at k', for every i at once.
    """
    if mode not in ("strict", "tolerant"):
        raise ValueError("mode must be 'strict' or 'tolerant'")
    n = q.n
    if n < 3:
        return None
    if not is_acyclic(q):
        return None
    B = q.matrix
    for k in range(n):
        for kp in range(k + 1, n):
            if abs(B[k][kp]) >= 2:
                continue
            ok = True
            for i in range(n):
                for j in range(i + 1, n):
                    if (i, j) != (k, kp) and abs(B[i][j]) < 2:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            others = [i for i in range(n) if i != k and i != kp]
            if all((B[k][i] > 0) == (B[kp][i] > 0) for i in others):
                return KeyPair(pair=(k, kp), mode_used="strict")
            if mode == "tolerant" and all(
                (B[k][i] > 0) == (B[i][kp] > 0) for i in others
            ):
                return KeyPair(pair=(k, kp), mode_used="tolerant")
    return None


# -- forks ----------------------------------------------------------------


def _subquiver_acyclic(q: IceQuiver, verts) -> bool:
    vs = list(verts)
    index = {v: i for i, v in enumerate(vs)}
    B = q.matrix
    state = [0] * len(vs)

    def dfs(v):
        state[index[v]] = 1
        for u in vs:
            if B[v][u] > 0:
                if state[index[u]] == 1:
                    return False
                if state[index[u]] == 0 and not dfs(u):
                    return False
        state[index[v]] = 2
        return True

    return all(state[index[v]] == 2 or dfs(v) for v in vs)


def is_fork(q: IceQuiver):
    """Return the point of return of a fork, or None.

    A fork is abundant and non-acyclic with a vertex r whose in-neighbors
    and out-neighbors each induce an acyclic subquiver, and every directed
    path i -> r -> j that is closed up by an arrow j -> i has that closing
    multiplicity strictly dominate both legs.
    """
    n = q.n
    if n < 3 or not is_abundant(q) or is_acyclic(q):
        return None
    B = q.matrix
    for r in range(n):
        ins = [v for v in range(n) if B[v][r] > 0]
        outs = [v for v in range(n) if B[r][v] > 0]
        if not _subquiver_acyclic(q, ins) or not _subquiver_acyclic(q, outs):
            continue
        good = True
        for i in ins:
            for j in outs:
                if B[j][i] > 0 and B[j][i] <= max(B[i][r], B[r][j]):
                    good = False
                    break
            if not good:
                break
        if good:
            return r
    return None


# -- canonical form -------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    key: tuple
    mutable_perm: tuple
    frozen_perm: tuple

    def matrix(self):
        return self.key


def _refined_classes(q: IceQuiver):
    """Partition mutable vertices into relabeling-invariant color classes."""
    n, m = q.n, q.m
    B = q.matrix
    color = {}
    for v in range(n):
        row = tuple(sorted(Counter(B[v][j] for j in range(n) if j != v).items()))
        froz = tuple(sorted(Counter(B[f][v] for f in range(n, n + m)).items()))
        color[v] = (row, froz)
    ranks = {c: i for i, c in enumerate(sorted(set(color.values())))}
    color = {v: ranks[color[v]] for v in range(n)}
    while True:
        nclasses = len(set(color.values()))
        new = {}
        for v in range(n):
            neigh = tuple(
                sorted((B[v][u], color[u]) for u in range(n) if u != v)
            )
            new[v] = (color[v], neigh)
        ranks = {c: i for i, c in enumerate(sorted(set(new.values())))}
        color = {v: ranks[new[v]] for v in range(n)}
        if len(set(color.values())) == nclasses:
            break
    classes = {}
    for v in range(n):
        classes.setdefault(color[v], []).append(v)
    return [classes[c] for c in sorted(classes)]


def canonical_form(q: IceQuiver) -> CanonicalForm:
    """Minimal matrix encoding over simultaneous vertex relabelings.

    Mutable vertices may be permuted arbitrarily; frozen rows are sorted
    lexicographically for each candidate mutable permutation, so the result
    is invariant under independent frozen relabeling as well.
    """
    n, m = q.n, q.m
    B = q.matrix
    classes = _refined_classes(q)
    best = None
    best_perm = None
    best_frozen = None
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        perm = [v for part in parts for v in part]
        mut = tuple(
            tuple(B[perm[i]][perm[j]] for j in range(n)) for i in range(n)
        )
        frozen_rows = sorted(
            (tuple(B[n + f][perm[j]] for j in range(n)), f) for f in range(m)
        )
        key = (n, m, mut + tuple(r for r, _ in frozen_rows))
        if best is None or key < best:
            best = key
            best_perm = tuple(perm)
            best_frozen = tuple(f for _, f in frozen_rows)
    return CanonicalForm(key=best, mutable_perm=best_perm, frozen_perm=best_frozen)


# -- small builders used across the package and its demos -----------------


def star_quiver(a: int, b: int) -> IceQuiver:
    """Three mutable vertices: 2 -> 1 with weight b, 3 -> 1 with weight a."""
    return IceQuiver.from_matrix(
        [[0, -b, -a], [b, 0, 0], [a, 0, 0]], n=3, m=0
    )


def path_quiver(n: int) -> IceQuiver:
    """Linear orientation 1 -> 2 -> ... -> n, single arrows."""
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = 1
        rows[i + 1][i] = -1
    return IceQuiver.from_matrix(rows, n=n, m=0)


def triangle_quiver(a: int, b: int, c: int) -> IceQuiver:
    """Directed 3-cycle 1 -> 2 -> 3 -> 1 with weights a, b, c."""
    return IceQuiver.from_matrix(
        [[0, a, -c], [-a, 0, b], [c, -b, 0]], n=3, m=0
    )
