"""Deciding whether a model point is deep, covered, or out of reach.

A point is covered when some mutation word produces a chart whose
coordinates are all nonzero at the point.  It is deep when no chart does.
This module collects the machinery that settles the question in the cases
the library understands: structural certificates for quivers whose shape
forces deepness, an exact covering procedure for reduced sink-source
trees, a classifier for the rank two family, one for the two-leaf star
family, and a combined entry point that also reports whether a deep point
comes with a nontrivial scaling stabilizer or stands without one.

Every positive answer ships evidence that is re-verified before it is
returned: covering words replay through the chart engine with symbolic
witnesses, scaling elements are checked against the stabilizer report,
and certificates recompute from scratch.  A bug in the search can only
surface as an exception, never as a wrong verdict.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .dilation import GroupElement, StabilizerReport, stabilizer
from .errors import (
    CoverInvariantError,
    ExplorationExceeded,
    NotReducedTree,
    QuiverFormatError,
)
from .explore import forkless_part
from .laurent import LaurentPoly
from .quiver import IceQuiver, gcd_vector, is_abundant, is_acyclic, is_key, is_tree_mutable
from .snf import smith_normal_form, solve_unimodular
from .variety import (
    ModelPoint,
    Witness,
    slot_count,
    slot_values,
    stratum_of,
    torus_membership,
    validate_point,
)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Certificate:
    """A checkable structural reason for a quiver to carry deep points.

    The kind names the argument and the evidence dict holds the numbers
    the argument rests on, with vertices written one-based.
    """

    kind: str
    evidence: dict

    def to_json_dict(self):
        return {"kind": self.kind, "evidence": dict(self.evidence)}


def cert_gcd_star(q: IceQuiver) -> Optional[Certificate]:
    """Certificate for a two-leaf star with coprime weights both at least two.

    The mutable part must be three vertices with both leaves pointing at
    the center; anything else raises QuiverFormatError.  Returns None when
    the weights share a factor or one of them is below two.
    """
    if q.n != 3:
        raise QuiverFormatError("the star check needs exactly three mutable vertices")
    B = q.matrix
    center = None
    for c in range(3):
        l1, l2 = [v for v in range(3) if v != c]
        if B[l1][l2] == 0 and B[l1][c] > 0 and B[l2][c] > 0:
            center = c
            break
    if center is None:
        raise QuiverFormatError(
            "mutable part is not a two-leaf star pointing at its center"
        )
    leaves = [v for v in range(3) if v != center]
    wa = B[leaves[0]][center]
    wb = B[leaves[1]][center]
    if min(wa, wb) < 2 or gcd(wa, wb) != 1:
        return None
    return Certificate(
        "GcdStar",
        {
            "center": center + 1,
            "leaf_weights": sorted((wa, wb)),
            "row_gcds": list(gcd_vector(q)),
        },
    )


def cert_key(q: IceQuiver) -> Optional[Certificate]:
    """Certificate from a key pair that avoids the first vertex.

    Requires a key pair (found in strict or tolerant mode), the first
    vertex outside the pair, and every arrow at the first vertex of
    multiplicity at least two.
    """
    try:
        found = is_key(q, mode="tolerant")
    except QuiverFormatError:
        return None
    if found is None:
        return None
    k, kp = found.pair
    if 0 in (k, kp):
        return None
    first_row = [abs(q.matrix[0][i]) for i in range(1, q.n)]
    if any(w < 2 for w in first_row):
        return None
    return Certificate(
        "Key",
        {"pair": sorted((k + 1, kp + 1)), "mode": found.mode_used, "first_row": first_row},
    )


def cert_abundant_acyclic(q: IceQuiver) -> Optional[Certificate]:
    """Certificate for an acyclic mutable part with every pair doubled or more."""
    if not (is_abundant(q) and is_acyclic(q)):
        return None
    pairs = [
        abs(q.matrix[i][j]) for i in range(q.n) for j in range(i + 1, q.n)
    ]
    return Certificate(
        "AbundantAcyclic", {"min_multiplicity": min(pairs) if pairs else None}
    )


_MEMBER_LISTING_CAP = 40


def fork_bounded_report(q: IceQuiver, cap: int) -> dict:
    """Enumerate the fork-less part and bound the first row over all of it.

    Returns a dict with a certificate when every fork-less member keeps
    all first-row multiplicities at two or more, and otherwise the reason
    the certificate could not be issued.  The walk is cut off at cap
    quivers; hitting the cap yields no certificate, never a wrong one.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    try:
        members = forkless_part(q, cap, dedup="matrix")
    except ExplorationExceeded as exc:
        return {"certificate": None, "reason": str(exc), "members": None}
    ordered = sorted(members, key=lambda mem: mem.matrix)
    for mem in ordered:
        for i in range(1, q.n):
            w = abs(mem.matrix[0][i])
            if w < 2:
                return {
                    "certificate": None,
                    "reason": "a fork-less member has multiplicity %d at the first vertex"
                    % w,
                    "members": len(members),
                }
    evidence = {"cap": cap, "member_count": len(members)}
    if len(ordered) <= _MEMBER_LISTING_CAP:
        evidence["members"] = [[list(row) for row in mem.matrix] for mem in ordered]
    return {
        "certificate": Certificate("ForkBounded", evidence),
        "reason": None,
        "members": len(members),
    }


def cert_fork_bounded(q: IceQuiver, cap: int) -> Optional[Certificate]:
    """The certificate half of fork_bounded_report."""
    return fork_bounded_report(q, cap)["certificate"]


def verify_certificate(q: IceQuiver, cert) -> bool:
    """Recompute a certificate from scratch and compare the evidence."""
    if cert is None or not isinstance(cert, Certificate):
        return False
    try:
        if cert.kind == "GcdStar":
            fresh = cert_gcd_star(q)
        elif cert.kind == "Key":
            fresh = cert_key(q)
        elif cert.kind == "AbundantAcyclic":
            fresh = cert_abundant_acyclic(q)
        elif cert.kind == "ForkBounded":
            cap = cert.evidence.get("cap")
            if not isinstance(cap, int) or cap < 1:
                return False
            fresh = cert_fork_bounded(q, cap)
        else:
            return False
    except QuiverFormatError:
        return False
    return fresh is not None and fresh.evidence == cert.evidence


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class DeepVerdict:
    """Outcome of a deepness decision, always carrying its evidence.

    kind is one of "Deep" (a certificate), "DeepByStabilizer" (a scaling
    element that fixes the point but not the chart), "InTorus" (a
    covering word with witnesses for the zero-pivot steps), or "Unknown"
    (a reason string; never a claim of deepness).
    """

    kind: str
    certificate: Optional[Certificate] = None
    element: Optional[GroupElement] = None
    word: Optional[tuple] = None
    witnesses: tuple = ()
    reason: Optional[str] = None

    @staticmethod
    def deep(cert: Certificate) -> "DeepVerdict":
        return DeepVerdict(kind="Deep", certificate=cert)

    @staticmethod
    def by_stabilizer(elem: GroupElement) -> "DeepVerdict":
        return DeepVerdict(kind="DeepByStabilizer", element=elem)

    @staticmethod
    def in_torus(word, witnesses=()) -> "DeepVerdict":
        return DeepVerdict(kind="InTorus", word=tuple(word), witnesses=tuple(witnesses))

    @staticmethod
    def unknown(reason: str) -> "DeepVerdict":
        return DeepVerdict(kind="Unknown", reason=reason)

    @property
    def is_deep(self):
        return self.kind in ("Deep", "DeepByStabilizer")

    def to_json_dict(self):
        out = {"kind": self.kind}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json_dict()
        if self.element is not None:
            out["element"] = self.element.to_json_dict()
        if self.word is not None:
            out["word"] = [k + 1 for k in self.word]
        if self.witnesses:
            out["witnesses"] = [w.to_json_dict() for w in self.witnesses]
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def _checked_in_torus(q, pt, word, witnesses) -> DeepVerdict:
    """Wrap a covering word after replaying it through the chart engine."""
    word = tuple(word)
    witnesses = tuple(witnesses)
    out = torus_membership(q, pt, word, witnesses=witnesses)
    if out.verdict != "in":
        raise CoverInvariantError(
            "covering word %s does not replay to torus membership" % (word,)
        )
    return DeepVerdict.in_torus(word, witnesses)


def _certificate_guards_first(cert: Certificate) -> bool:
    if cert.kind == "GcdStar":
        return cert.evidence.get("center") == 1
    if cert.kind == "Key":
        return 1 not in cert.evidence.get("pair", ())
    return cert.kind in ("AbundantAcyclic", "ForkBounded")


def so_may_deep(q: IceQuiver, pt: ModelPoint, cert) -> DeepVerdict:
    """Deep verdict for a point vanishing to second order at the first vertex.

    The certificate must re-verify on the quiver and bound the first row;
    the point must have both coordinates zero at the first vertex and all
    other mutable coordinates nonzero.  Any miss returns Unknown with the
    reason, never a negative claim.
    """
    validate_point(q, pt)
    if cert is None:
        return DeepVerdict.unknown("no certificate supplied")
    if not verify_certificate(q, cert):
        return DeepVerdict.unknown("certificate does not re-verify on this quiver")
    if not _certificate_guards_first(cert):
        return DeepVerdict.unknown("certificate does not bound the first vertex")
    if pt.p[0] != 0 or pt.p_prime[0] != 0:
        return DeepVerdict.unknown("the first coordinate pair is not both zero")
    if any(pt.p[i] == 0 for i in range(1, q.n)):
        return DeepVerdict.unknown("another mutable coordinate vanishes")
    return DeepVerdict.deep(cert)


# ---------------------------------------------------------------------------
# symbolic replay of a mutation word


def _mutated_chars(chars, q, k):
    """Advance the per-vertex scaling characters through a mutation at k."""
    total = q.n + q.m
    acc = [0] * total
    for v in range(total):
        w = q.matrix[v][k]
        if w > 0:
            row = chars[v]
            for t in range(total):
                acc[t] += w * row[t]
    old = chars[k]
    out = [list(row) for row in chars]
    out[k] = [acc[t] - old[t] for t in range(total)]
    return out


class _ReplayState:
    """A mutation word tracked symbolically over the generator slots.

    Each mutable vertex is touched at most once, so every divisor that
    turns up is still a plain slot variable and all expressions stay
    honest Laurent polynomials in the starting coordinates.  Witness
    candidates are collected as the word grows and verified wholesale by
    the final replay.
    """

    def __init__(self, q: IceQuiver, pt: ModelPoint):
        self.q0 = q
        self.pt = pt
        self.n = q.n
        self.m = q.m
        self.nslots = slot_count(q)
        self.svals = slot_values(pt)
        self.cur = q
        total = q.n + q.m
        self.exprs = [LaurentPoly.variable(v, self.nslots) for v in range(q.n)]
        self.exprs += [
            LaurentPoly.variable(v + q.n, self.nslots) for v in range(q.n, total)
        ]
        self.vals = list(pt.p)
        self.chars = [[1 if a == b else 0 for b in range(total)] for a in range(total)]
        self.word = []
        self.witnesses = []

    def _advance(self, k, expr, emit):
        self.chars = _mutated_chars(self.chars, self.cur, k)
        self.cur = self.cur.mutate(k)
        self.exprs[k] = expr
        self.word.append(k)
        self.vals[k] = expr.evaluate(self.svals)
        if emit:
            self.witnesses.append(
                Witness(
                    word=tuple(self.word),
                    vertex=k,
                    numer=expr,
                    denom=LaurentPoly.one(self.nslots),
                )
            )

    def _column_products(self, j):
        """Incoming and outgoing monomial products at j, in current expressions."""
        pos = LaurentPoly.one(self.nslots)
        neg = LaurentPoly.one(self.nslots)
        col = self.cur.column(j)
        for v, w in enumerate(col):
            if w > 0:
                pos = pos * (self.exprs[v] ** w)
            elif w < 0:
                neg = neg * (self.exprs[v] ** (-w))
        return pos, neg

    def step_prime(self, k):
        """Mutate at k where the stored partner value takes over the slot."""
        expr = LaurentPoly.variable(self.n + k, self.nslots)
        self._advance(k, expr, emit=True)

    def two_step(self, i, j):
        """Mutate at j then at i across a weight-one arrow between them.

        The composite trades the vanishing coordinate at i for a value
        built from the partner slot at i and the neighborhood of j, with
        only the nonzero coordinate at j in the denominator.  Both new
        expressions are exact in the slot ring.
        """
        sign = self.cur.matrix[j][i]
        if abs(sign) != 1:
            raise CoverInvariantError(
                "double step needs a weight-one arrow between its two vertices"
            )
        xi = self.exprs[i]
        xj = self.exprs[j]
        if xi != LaurentPoly.variable(i, self.nslots) or xj != LaurentPoly.variable(
            j, self.nslots
        ):
            raise CoverInvariantError("double step entered at an already mutated vertex")
        pos, neg = self._column_products(j)
        partner = LaurentPoly.variable(self.n + i, self.nslots)
        inv_j = xj.inverse()
        if sign > 0:
            expr_i = (pos * partner + neg.div_exact(xi)) * inv_j
        else:
            expr_i = (pos.div_exact(xi) + neg * partner) * inv_j
        self._advance(j, (pos + neg) * inv_j, emit=False)
        self._advance(i, expr_i, emit=True)


# ---------------------------------------------------------------------------
# rank two


def rank2_companion(a: int) -> IceQuiver:
    """The two-vertex quiver of weight a with one companion per vertex."""
    if a < 1:
        raise QuiverFormatError("arrow weight must be positive")
    return IceQuiver.from_arrows(2, 2, [(0, 1, a), (0, 2, 1), (3, 1, 1)])


def rank2_classify(a: int, pt: ModelPoint) -> DeepVerdict:
    """Full deepness answer on the rank two family of weight a.

    At weight one every point is covered by a word of length at most two.
    From weight two on, a doubly vanishing coordinate is deep and the
    evidence is the root-of-unity scaling on that coordinate.
    """
    q = rank2_companion(a)
    validate_point(q, pt)
    zeros = stratum_of(q, pt)
    if not zeros:
        return _checked_in_torus(q, pt, (), ())
    (k,) = sorted(zeros)
    if pt.p_prime[k] != 0:
        state = _ReplayState(q, pt)
        state.step_prime(k)
        return _checked_in_torus(q, pt, state.word, state.witnesses)
    if a >= 2:
        exps = [0] * (q.n + q.m)
        exps[k] = 1
        elem = GroupElement(tuple(exps), a)
        if not stabilizer(q, pt).contains_nontrivially(elem):
            raise CoverInvariantError(
                "the root-of-unity scaling fails to stabilize the point"
            )
        return DeepVerdict.by_stabilizer(elem)
    for word in ((), (0,), (1,), (0, 1), (1, 0)):
        out = torus_membership(q, pt, word, auto_solve=True, solve_degree=3)
        if out.verdict == "in":
            used = tuple(out.chart.witnesses_used)
            return DeepVerdict.in_torus(word, used)
    raise CoverInvariantError("no covering chart of length two at weight one")


# ---------------------------------------------------------------------------
# reduced trees


def reduce_tree_form(t: IceQuiver) -> IceQuiver:
    """Attach one frozen companion to every vertex of a sink-source tree.

    The input must be purely mutable, a tree of weight-one arrows, with
    each vertex either a sink or a source.  Sinks receive their companion
    as an incoming arrow and sources as an outgoing one, so that the
    companion always sides with the unanimous direction at its vertex.
    An isolated vertex counts as a sink.
    """
    if t.m != 0:
        raise NotReducedTree("input must have no frozen vertices")
    if not is_tree_mutable(t):
        raise NotReducedTree("mutable part is not a tree")
    n = t.n
    B = t.matrix
    rows = []
    for i in range(n):
        col = [B[v][i] for v in range(n)]
        if any(abs(w) > 1 for w in col):
            raise NotReducedTree("tree arrows must all have weight one")
        has_in = any(w > 0 for w in col)
        has_out = any(w < 0 for w in col)
        if has_in and has_out:
            raise NotReducedTree(
                "vertex %d is neither a sink nor a source" % (i + 1)
            )
        row = [0] * n
        row[i] = -1 if has_out else 1
        rows.append(row)
    return t.add_frozen_rows(rows)


def _check_reduced_tree(q: IceQuiver):
    """Raise NotReducedTree unless q is a sink-source tree with companions."""
    n, m = q.n, q.m
    if m != n:
        raise NotReducedTree("expected one companion frozen per mutable vertex")
    if not is_tree_mutable(q):
        raise NotReducedTree("mutable part is not a tree")
    B = q.matrix
    for i in range(n):
        col = [B[v][i] for v in range(n)]
        if any(abs(w) > 1 for w in col):
            raise NotReducedTree("tree arrows must all have weight one")
        has_in = any(w > 0 for w in col)
        has_out = any(w < 0 for w in col)
        if has_in and has_out:
            raise NotReducedTree(
                "vertex %d is neither a sink nor a source" % (i + 1)
            )
        want = -1 if has_out else 1
        for f in range(m):
            got = B[n + f][i]
            expect = want if f == i else 0
            if got != expect:
                raise NotReducedTree(
                    "companion rows do not follow the sink-source pattern"
                )


def _live_neighbors(cur, v, live):
    return [u for u in live if u != v and cur.matrix[u][v] != 0]


def _bfs_layout(cur, live):
    """Depths and parents of the live forest, each component rooted at its
    smallest vertex."""
    depth = {}
    parent = {}
    for root in sorted(live):
        if root in depth:
            continue
        depth[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in _live_neighbors(cur, v, live):
                if u not in depth:
                    depth[u] = depth[v] + 1
                    parent[u] = v
                    queue.append(u)
    return depth, parent


def _normalized_element(tau, order) -> GroupElement:
    exps = [int(t) for t in tau]
    if order:
        exps = [e % order for e in exps]
        if all(e == 0 for e in exps):
            raise CoverInvariantError("scaling element collapsed to the identity")
    else:
        first = next((e for e in exps if e != 0), None)
        if first is None:
            raise CoverInvariantError("scaling element collapsed to the identity")
        if first < 0:
            exps = [-e for e in exps]
    return GroupElement(tuple(exps), order)


def _cover_element(state, live, zeros) -> GroupElement:
    """A nontrivial scaling fixing the current chart except on the zero set.

    Solved on the current seed: the live columns outside the zero set
    must vanish, and the returned element is written in the starting
    coordinates through the tracked characters.
    """
    n, m = state.n, state.m
    cols = sorted(zeros)
    rows_idx = sorted(v for v in live if v not in zeros)
    if not cols:
        raise CoverInvariantError("scaling solver called with no vanishing vertices")
    if not rows_idx:
        a = [0] * len(cols)
        a[0] = 1
        order = 0
    else:
        M = [[state.cur.matrix[i][k] for i in cols] for k in rows_idx]
        U, D, V = smith_normal_form(M)
        R, C = len(M), len(cols)
        rank = sum(1 for t in range(min(R, C)) if D[t][t] != 0)
        if rank < C:
            a = [V[r][rank] for r in range(C)]
            order = 0
        else:
            pick = next((t for t in range(C) if abs(D[t][t]) > 1), None)
            if pick is None:
                raise CoverInvariantError(
                    "no nontrivial scaling solves the live constraints"
                )
            order = abs(D[pick][pick])
            a = [V[r][pick] for r in range(C)]
    c = [0] * (n + m)
    for t, v in enumerate(cols):
        c[v] = a[t]
    tau = solve_unimodular(state.chars, c)
    return _normalized_element(tau, order)


def tree_cover(q: IceQuiver, pt: ModelPoint) -> DeepVerdict:
    """Decide covering on a reduced sink-source tree, with total certainty.

    Freezes vertices whose value is already pinned, spends stored partner
    values where they are nonzero, and works the remaining zero set from
    the deepest adjacent pair inward with weight-one double steps.  When
    the zero set empties the accumulated word replays to torus
    membership; when it jams, an explicit scaling element nontrivial on
    the zero set is solved for and checked against the stabilizer.  Any
    internal contradiction raises CoverInvariantError.
    """
    _check_reduced_tree(q)
    validate_point(q, pt)
    n = q.n
    state = _ReplayState(q, pt)
    live = set(range(n))
    zeros = set(stratum_of(q, pt))
    budget = 2 * n + 2
    for _ in range(budget):
        if not zeros:
            return _checked_in_torus(q, pt, state.word, state.witnesses)
        free = sorted(
            v
            for v in live - zeros
            if not any(u in zeros for u in _live_neighbors(state.cur, v, live))
        )
        if free:
            live.discard(free[0])
            continue
        ready = sorted(v for v in zeros if pt.p_prime[v] != 0)
        if ready:
            v = ready[0]
            state.step_prime(v)
            live.discard(v)
            zeros.discard(v)
            continue
        leaves = sorted(
            v
            for v in live - zeros
            if len(_live_neighbors(state.cur, v, live)) == 1
        )
        if leaves:
            j = leaves[0]
            (i,) = _live_neighbors(state.cur, j, live)
            if i not in zeros:
                raise CoverInvariantError("a free leaf survived the freezing pass")
            state.two_step(i, j)
            if state.vals[i] == 0 or state.vals[j] == 0:
                raise CoverInvariantError("double step left a vanishing coordinate")
            zeros.discard(i)
            continue
        pairs = [
            (u, w)
            for u in sorted(live - zeros)
            for w in sorted(live - zeros)
            if u < w and state.cur.matrix[u][w] != 0
        ]
        if not pairs:
            elem = _cover_element(state, live, zeros)
            rep = stabilizer(q, pt)
            if not rep.contains_nontrivially(elem):
                raise CoverInvariantError(
                    "constructed scaling fails to stabilize the point"
                )
            return DeepVerdict.by_stabilizer(elem)
        depth, parent = _bfs_layout(state.cur, live)
        cands = []
        for u, w in pairs:
            deeper = u if depth[u] > depth[w] else w
            cands.append((depth[deeper], deeper))
        dmax = max(d for d, _ in cands)
        j0 = min(v for d, v in cands if d == dmax)
        children = [
            c
            for c in _live_neighbors(state.cur, j0, live)
            if depth.get(c) == depth[j0] + 1
        ]
        if not children:
            raise CoverInvariantError("a deepest pair vertex has nothing below it")
        if any(c not in zeros for c in children):
            raise CoverInvariantError("a deepest pair vertex has a free child")
        if len(children) >= 2:
            elem = _cover_element(state, live, zeros)
            rep = stabilizer(q, pt)
            if not rep.contains_nontrivially(elem):
                raise CoverInvariantError(
                    "constructed scaling fails to stabilize the point"
                )
            return DeepVerdict.by_stabilizer(elem)
        i0 = children[0]
        state.two_step(i0, j0)
        if state.vals[i0] == 0 or state.vals[j0] == 0:
            raise CoverInvariantError("double step left a vanishing coordinate")
        zeros.discard(i0)
    raise CoverInvariantError("covering loop exceeded its iteration budget")


# ---------------------------------------------------------------------------
# the two-leaf star family


def star3_companion(a: int, b: int) -> IceQuiver:
    """Two leaves of weights b and a pointing at a center, with companions.

    The center gets an incoming weight-one companion and each leaf an
    outgoing one, matching the sink-source convention on the underlying
    star.
    """
    if a < 1 or b < 1:
        raise QuiverFormatError("leaf weights must be positive")
    return IceQuiver.from_arrows(
        3, 3, [(1, 0, b), (2, 0, a), (3, 0, 1), (1, 4, 1), (2, 5, 1)]
    )


@dataclass(frozen=True)
class Star3Verdict:
    """Family-level answer for the two-leaf star of weights (a, b).

    The family verdict is backed by a fully verified decision at the
    sampled candidate point, not by a symbolic proof over all points; the
    sampled evidence travels with the verdict.
    """

    family: str
    weights: tuple
    reason: str
    point: ModelPoint
    evidence: DeepVerdict

    def to_json_dict(self):
        return {
            "family": self.family,
            "weights": list(self.weights),
            "reason": self.reason,
            "note": "family verdict backed by a spot check at the sampled point",
            "point": self.point.to_json_dict(),
            "evidence": self.evidence.to_json_dict(),
        }


def star3_classify(a: int, b: int) -> Star3Verdict:
    """Sort the two-leaf star family by its weights.

    Coprime weights both at least two carry mysterious deep points; a
    common divisor g > 1 pins every candidate with an order-g scaling;
    and a weight-one leaf opens a covering chart, so nothing deep
    survives at the candidate locus.
    """
    from .variety import sample_stratum_point

    q = star3_companion(a, b)
    pt = sample_stratum_point(q, [0])
    if min(a, b) == 1:
        leaf = 1 if b == 1 else 2
        state = _ReplayState(q, pt)
        state.two_step(0, leaf)
        if any(v == 0 for v in state.vals):
            raise CoverInvariantError("double step left a vanishing coordinate")
        evidence = _checked_in_torus(q, pt, state.word, state.witnesses)
        return Star3Verdict(
            family="NoMysterious",
            weights=(a, b),
            reason="a weight-one leaf opens a covering chart at every candidate",
            point=pt,
            evidence=evidence,
        )
    g = gcd(a, b)
    if g > 1:
        exps = [0] * (q.n + q.m)
        exps[0] = 1
        elem = GroupElement(tuple(exps), g)
        if not stabilizer(q, pt).contains_nontrivially(elem):
            raise CoverInvariantError(
                "the common-divisor scaling fails to stabilize the candidate"
            )
        return Star3Verdict(
            family="NoMysterious",
            weights=(a, b),
            reason="the common leaf weight divisor %d scales every candidate in place"
            % g,
            point=pt,
            evidence=DeepVerdict.by_stabilizer(elem),
        )
    cert = cert_gcd_star(q)
    if cert is None:
        raise CoverInvariantError("coprime star certificate unexpectedly failed")
    verdict = so_may_deep(q, pt, cert)
    if verdict.kind != "Deep":
        raise CoverInvariantError("sampled candidate missed the deep locus")
    check = is_mysterious(q, pt, cert=cert)
    if check.mysterious is not True:
        raise CoverInvariantError("sampled deep candidate failed the stabilizer check")
    return Star3Verdict(
        family="HasMysterious",
        weights=(a, b),
        reason="sampled deep candidate verified deep with trivial stabilizer",
        point=pt,
        evidence=verdict,
    )


# ---------------------------------------------------------------------------
# combined entry point


@dataclass(frozen=True)
class MysteriousVerdict:
    """Whether a point is deep with trivial stabilizer.

    mysterious is True, False, or None for undecided.  status is one of
    "mysterious", "stabilized", "covered", "unknown".  The deep verdict
    that settled the question rides along when there is one.
    """

    mysterious: Optional[bool]
    status: str
    deep: Optional[DeepVerdict]
    stabilizer: StabilizerReport

    def to_json_dict(self):
        return {
            "mysterious": self.mysterious,
            "status": self.status,
            "deep": self.deep.to_json_dict() if self.deep is not None else None,
            "stabilizer": self.stabilizer.to_json_dict(),
        }


def _is_reduced_tree(q: IceQuiver) -> bool:
    try:
        _check_reduced_tree(q)
    except NotReducedTree:
        return False
    return True


def _rank2_weight(q: IceQuiver):
    """Weight a when q is exactly the rank two companion quiver, else None."""
    if q.n != 2 or q.m != 2:
        return None
    a = abs(q.matrix[0][1])
    if a < 1:
        return None
    if q.matrix == rank2_companion(a).matrix:
        return a
    return None


def _swap_first(q: IceQuiver, pt: ModelPoint, v: int):
    """Relabel so that mutable vertex v leads, carrying the point along."""
    perm = list(range(q.n))
    perm[0], perm[v] = perm[v], perm[0]
    q2 = q.relabel(perm, list(range(q.m)))
    p = tuple(pt.p[perm[i]] for i in range(q.n))
    pp = tuple(pt.p_prime[perm[i]] for i in range(q.n))
    return q2, ModelPoint(p=p, p_prime=pp, frozen=pt.frozen)


_DEFAULT_FORK_CAP = 200


def _auto_certificate(q: IceQuiver) -> Optional[Certificate]:
    try:
        cert = cert_gcd_star(q)
        if cert is not None:
            return cert
    except QuiverFormatError:
        pass
    cert = cert_key(q)
    if cert is not None:
        return cert
    cert = cert_abundant_acyclic(q)
    if cert is not None:
        return cert
    return cert_fork_bounded(q, _DEFAULT_FORK_CAP)


def _decide_deep(q: IceQuiver, pt: ModelPoint, cert) -> DeepVerdict:
    zeros = sorted(stratum_of(q, pt))
    if not zeros:
        return _checked_in_torus(q, pt, (), ())
    if all(pt.p_prime[v] != 0 for v in zeros):
        state = _ReplayState(q, pt)
        for v in zeros:
            state.step_prime(v)
        return _checked_in_torus(q, pt, state.word, state.witnesses)
    if _is_reduced_tree(q):
        return tree_cover(q, pt)
    a = _rank2_weight(q)
    if a is not None:
        return rank2_classify(a, pt)
    deep_zeros = [v for v in zeros if pt.p_prime[v] == 0]
    if len(zeros) != 1 or len(deep_zeros) != 1:
        return DeepVerdict.unknown(
            "several vanishing coordinates without usable structure"
        )
    v = zeros[0]
    if v == 0:
        use = cert if cert is not None else _auto_certificate(q)
        return so_may_deep(q, pt, use)
    q2, pt2 = _swap_first(q, pt, v)
    use = _auto_certificate(q2)
    return so_may_deep(q2, pt2, use)


def is_mysterious(q: IceQuiver, pt: ModelPoint, cert=None) -> MysteriousVerdict:
    """Decide whether the point is deep while nothing in the scaling group
    pins it there.

    A nontrivial stabilizer settles the question immediately.  With a
    trivial one, the point must be shown deep by certificate or exact
    cover; a covering word proves it is not.  When the deep decision
    lands on a relabeled quiver (the vanishing vertex moved first), the
    certificate inside the verdict speaks about that relabeling.
    """
    validate_point(q, pt)
    rep = stabilizer(q, pt)
    if not rep.structure.trivial:
        return MysteriousVerdict(
            mysterious=False, status="stabilized", deep=None, stabilizer=rep
        )
    verdict = _decide_deep(q, pt, cert)
    if verdict.kind == "InTorus":
        return MysteriousVerdict(
            mysterious=False, status="covered", deep=verdict, stabilizer=rep
        )
    if verdict.kind == "Deep":
        return MysteriousVerdict(
            mysterious=True, status="mysterious", deep=verdict, stabilizer=rep
        )
    if verdict.kind == "DeepByStabilizer":
        raise CoverInvariantError(
            "stabilizer evidence produced under a trivial stabilizer report"
        )
    return MysteriousVerdict(
        mysterious=None, status="unknown", deep=verdict, stabilizer=rep
    )
