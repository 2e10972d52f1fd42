"""Points of the variety attached to an acyclic ice quiver, and replay.

A model point stores one value per mutable vertex (p), one partner value
per mutable vertex (p_prime), and one nonzero value per frozen vertex.
The defining relations couple them: at every mutable vertex the product
p_i * p'_i equals the sum of the two exchange monomials evaluated at the
point.  Everything is exact rational arithmetic.

Replay (propagate) walks a mutation word and keeps track of the chart
coordinate values.  Divisions by a nonzero pivot are plain arithmetic; a
zero pivot needs outside help, which arrives as a witness: a verified
algebraic identity expressing the next variable as a fraction in the
original generators x_i, x'_i and the frozen variables.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InconsistentPoint,
    NotAcyclic,
    QuiverFormatError,
    RelationUnsatisfiable,
    WitnessError,
    ZeroAtNegativeExponent,
)
from .laurent import LaurentPoly, format_rational, parse_rational, poly_prod
from .quiver import IceQuiver, is_acyclic
from .seeds import initial_seed, mutate_seed, mutate_seed_word


# -- points ----------------------------------------------------------------


@dataclass(frozen=True)
class ModelPoint:
    p: tuple
    p_prime: tuple
    frozen: tuple

    def to_json_dict(self) -> dict:
        return {
            "p": [format_rational(v) for v in self.p],
            "p_prime": [format_rational(v) for v in self.p_prime],
            "frozen": [format_rational(v) for v in self.frozen],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def from_json_dict(doc) -> "ModelPoint":
        if not isinstance(doc, dict):
            raise QuiverFormatError("point document must be an object")
        try:
            p = tuple(parse_rational(v) for v in doc["p"])
            pp = tuple(parse_rational(v) for v in doc["p_prime"])
            fr = tuple(parse_rational(v) for v in doc.get("frozen", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise QuiverFormatError("point document needs p, p_prime, frozen") from exc
        return ModelPoint(p=p, p_prime=pp, frozen=fr)

    @staticmethod
    def from_json(text: str) -> "ModelPoint":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise QuiverFormatError("invalid JSON: %s" % exc) from exc
        return ModelPoint.from_json_dict(doc)


def make_point(p, p_prime, frozen=()) -> ModelPoint:
    return ModelPoint(
        p=tuple(parse_rational(v) for v in p),
        p_prime=tuple(parse_rational(v) for v in p_prime),
        frozen=tuple(parse_rational(v) for v in frozen),
    )


def exchange_monomial_values(q: IceQuiver, values, k: int):
    """The two exchange products at vertex k, at given coordinate values.

    values has one entry per vertex (mutable then frozen).  Returns a pair
    of Fractions; zero factors are fine since all exponents are positive.
    """
    col = q.column(k)
    pos = Fraction(1)
    neg = Fraction(1)
    for i, e in enumerate(col):
        if e > 0:
            pos *= Fraction(values[i]) ** e
        elif e < 0:
            neg *= Fraction(values[i]) ** (-e)
    return pos, neg


def validate_point(q: IceQuiver, pt: ModelPoint) -> None:
    """Raise unless pt is an honest point of the model attached to q."""
    if not is_acyclic(q):
        raise NotAcyclic("the model needs an acyclic mutable part")
    n, m = q.n, q.m
    if len(pt.p) != n or len(pt.p_prime) != n or len(pt.frozen) != m:
        raise QuiverFormatError(
            "point shape (%d,%d,%d) does not match quiver (n=%d, m=%d)"
            % (len(pt.p), len(pt.p_prime), len(pt.frozen), n, m)
        )
    for j, v in enumerate(pt.frozen):
        if v == 0:
            raise RelationUnsatisfiable("frozen coordinate %d must be nonzero" % (j + 1))
    values = list(pt.p) + list(pt.frozen)
    for i in range(n):
        pos, neg = exchange_monomial_values(q, values, i)
        if pt.p[i] * pt.p_prime[i] != pos + neg:
            raise RelationUnsatisfiable(
                "relation fails at vertex %d: %s * %s != %s + %s"
                % (
                    i + 1,
                    format_rational(pt.p[i]),
                    format_rational(pt.p_prime[i]),
                    format_rational(pos),
                    format_rational(neg),
                )
            )


def point_errors(q: IceQuiver, pt: ModelPoint):
    """Validation as data: a list of messages, empty when the point is valid."""
    try:
        validate_point(q, pt)
        return []
    except (NotAcyclic, QuiverFormatError, RelationUnsatisfiable) as exc:
        return [str(exc)]


def stratum_of(q: IceQuiver, pt: ModelPoint) -> frozenset:
    """Indices of the zero coordinates of p; always independent in q.

    Independence comes for free: a directed edge between two zeros would
    force an infinite directed path of zeros through an acyclic quiver.
    """
    validate_point(q, pt)
    zeros = frozenset(i for i in range(q.n) if pt.p[i] == 0)
    for i in zeros:
        for j in zeros:
            if i < j and q.matrix[i][j] != 0:
                raise AssertionError("dependent zero set on a validated point")
    return zeros


def sample_stratum_point(
    q: IceQuiver, I, values=None, p_prime_zero=None, rng=None
) -> ModelPoint:
    """Construct a valid point whose zero set is exactly I.

    Nonzero mutable values default to 1 and can be pinned via values (a
    mapping vertex -> rational).  Partner values on I default to 0 (the
    deep candidate) unless p_prime_zero maps them elsewhere.  Each vertex
    of I needs a knob to balance its relation: a dedicated weight-one
    frozen neighbor with no other mutable neighbor, or failing that a
    mutable neighbor with odd weight which gets value -1.
    """
    if not is_acyclic(q):
        raise NotAcyclic("the model needs an acyclic mutable part")
    n, m = q.n, q.m
    I = frozenset(I)
    for i in I:
        if not (0 <= i < n):
            raise QuiverFormatError("stratum index %d out of range" % i)
        for j in I:
            if i < j and q.matrix[i][j] != 0:
                raise RelationUnsatisfiable(
                    "requested zero set contains the adjacent pair (%d,%d)"
                    % (i + 1, j + 1)
                )
    values = dict(values or {})
    p_prime_zero = dict(p_prime_zero or {})
    p = [Fraction(0)] * n
    for j in range(n):
        if j not in I:
            p[j] = Fraction(values.get(j, 1))
            if p[j] == 0:
                raise RelationUnsatisfiable("vertex %d is not in the zero set" % (j + 1))
    frozen = [Fraction(1)] * m

    def dedicated_frozen(i):
        for f in range(m):
            w = q.matrix[n + f][i]
            if abs(w) != 1:
                continue
            if all(q.matrix[n + f][j] == 0 for j in range(n) if j != i):
                return f
        return None

    def balance_at(i):
        coords = p + frozen
        pos, neg = exchange_monomial_values(q, coords, i)
        return pos + neg

    used_mutable_knobs = set()
    for i in sorted(I):
        if balance_at(i) == 0:
            continue  # an earlier knob already balanced this relation
        f = dedicated_frozen(i)
        if f is not None:
            # balance via the companion: solve for its value exactly
            coords = p + frozen
            col = q.column(i)
            rest_pos = Fraction(1)
            rest_neg = Fraction(1)
            for idx, e in enumerate(col):
                if idx == n + f:
                    continue
                if e > 0:
                    rest_pos *= Fraction(coords[idx]) ** e
                elif e < 0:
                    rest_neg *= Fraction(coords[idx]) ** (-e)
            w = col[n + f]
            if w > 0:
                # frozen value * rest_pos + rest_neg = 0
                frozen[f] = -rest_neg / rest_pos
            else:
                frozen[f] = -rest_pos / rest_neg
            continue
        # no companion: flip a mutable neighbor of odd weight to -1
        knob = None
        for u in range(n):
            if u in I or u in used_mutable_knobs or u in values:
                continue
            w = q.matrix[u][i]
            if w != 0 and abs(w) % 2 == 1:
                knob = u
                break
        if knob is None:
            raise RelationUnsatisfiable(
                "no frozen companion or odd mutable neighbor to balance vertex %d"
                % (i + 1)
            )
        used_mutable_knobs.add(knob)
        p[knob] = Fraction(-1)

    p_prime = [Fraction(0)] * n
    coords = p + frozen
    for i in range(n):
        pos, neg = exchange_monomial_values(q, coords, i)
        if i in I:
            if pos + neg != 0:
                raise RelationUnsatisfiable(
                    "could not balance the relation at vertex %d" % (i + 1)
                )
            p_prime[i] = Fraction(p_prime_zero.get(i, 0))
        else:
            p_prime[i] = (pos + neg) / p[i]
    pt = ModelPoint(p=tuple(p), p_prime=tuple(p_prime), frozen=tuple(frozen))
    validate_point(q, pt)
    if stratum_of(q, pt) != I:
        raise RelationUnsatisfiable("sampled point landed outside the stratum")
    return pt


def lift_with_frozens(q: IceQuiver, pt: ModelPoint, rows, frozen_values=None):
    """Extend the model by extra frozen vertices with the given arrow rows.

    New frozen coordinates default to 1, which leaves every relation
    literally unchanged; the lifted point stays valid.
    """
    q2 = q.add_frozen_rows(rows)
    extra = (
        tuple(parse_rational(v) for v in frozen_values)
        if frozen_values is not None
        else (Fraction(1),) * len(rows)
    )
    if len(extra) != len(rows):
        raise QuiverFormatError("one frozen value per added row")
    # adjust partner values: new frozen factors scale the exchange monomials
    values = list(pt.p) + list(pt.frozen) + list(extra)
    p_prime = list(pt.p_prime)
    for i in range(q.n):
        pos, neg = exchange_monomial_values(q2, values, i)
        if pt.p[i] != 0:
            p_prime[i] = (pos + neg) / pt.p[i]
        elif pos + neg != 0:
            raise RelationUnsatisfiable(
                "lift breaks the balanced relation at vertex %d" % (i + 1)
            )
    pt2 = ModelPoint(p=pt.p, p_prime=tuple(p_prime), frozen=pt.frozen + extra)
    validate_point(q2, pt2)
    return q2, pt2


def freeze_point(q: IceQuiver, pt: ModelPoint, k: int):
    """Reshape a point for the quiver with vertex k frozen.

    Requires p_k nonzero; the value moves to the new frozen slot at the
    end, and the partner value at k is dropped.
    """
    if pt.p[k] == 0:
        raise RelationUnsatisfiable("cannot freeze vertex %d at value zero" % (k + 1))
    q2 = q.freeze_vertex(k)
    keep = [v for v in range(q.n) if v != k]
    pt2 = ModelPoint(
        p=tuple(pt.p[v] for v in keep),
        p_prime=tuple(pt.p_prime[v] for v in keep),
        frozen=pt.frozen + (pt.p[k],),
    )
    validate_point(q2, pt2)
    return q2, pt2


# -- witnesses -------------------------------------------------------------
#
# Witness polynomials live over generator slots: 0..n-1 the initial
# variables, n..2n-1 their partners, 2n..2n+m-1 the frozen variables.


def slot_count(q: IceQuiver) -> int:
    return 2 * q.n + q.m


def slot_names(q: IceQuiver):
    names = ["x%d" % (i + 1) for i in range(q.n)]
    names += ["x%d'" % (i + 1) for i in range(q.n)]
    names += ["x̄%d" % (j + 1) for j in range(q.m)]
    return names


def slot_values(pt: ModelPoint):
    return list(pt.p) + list(pt.p_prime) + list(pt.frozen)


def generator_expansions(q: IceQuiver):
    """Each generator slot expanded in the initial n+m variables."""
    total = q.n + q.m
    out = [LaurentPoly.variable(i, total) for i in range(q.n)]
    base = initial_seed(q)
    for i in range(q.n):
        out.append(mutate_seed(base, i).cluster[i])
    for j in range(q.m):
        out.append(LaurentPoly.variable(q.n + j, total))
    return out


def _poly_to_json(p: LaurentPoly):
    return [[c, list(e)] for e, c in sorted(p.terms.items())]


def _poly_from_json(data, nvars: int) -> LaurentPoly:
    try:
        terms = {tuple(int(x) for x in e): int(c) for c, e in data}
    except (TypeError, ValueError) as exc:
        raise QuiverFormatError("bad polynomial term list") from exc
    return LaurentPoly(nvars, terms)


@dataclass(frozen=True)
class Witness:
    """Verified identity: variable(word, vertex) == numer / denom.

    Both sides are polynomials in the generator slots; the denominator must
    not vanish at any point where the witness is to be used.
    """

    word: tuple
    vertex: int
    numer: LaurentPoly
    denom: LaurentPoly

    def pretty(self, q: IceQuiver) -> str:
        names = slot_names(q)
        return "x[%s;%d] * (%s) = %s" % (
            ",".join(str(k + 1) for k in self.word),
            self.vertex + 1,
            self.denom.pretty(names),
            self.numer.pretty(names),
        )

    def to_json_dict(self) -> dict:
        return {
            "word": [k + 1 for k in self.word],
            "vertex": self.vertex + 1,
            "numer": _poly_to_json(self.numer),
            "denom": _poly_to_json(self.denom),
        }

    @staticmethod
    def from_json_dict(doc, q: IceQuiver) -> "Witness":
        try:
            word = tuple(int(k) - 1 for k in doc["word"])
            vertex = int(doc["vertex"]) - 1
            numer = _poly_from_json(doc["numer"], slot_count(q))
            denom = _poly_from_json(doc["denom"], slot_count(q))
        except (KeyError, TypeError, ValueError) as exc:
            raise QuiverFormatError("witness document needs word, vertex, numer, denom") from exc
        return Witness(word=word, vertex=vertex, numer=numer, denom=denom)


def witness_target(q: IceQuiver, word, vertex: int) -> LaurentPoly:
    """The cluster variable the witness speaks about, fully expanded."""
    if not word or word[-1] != vertex:
        raise WitnessError("witness word must end at its vertex")
    return mutate_seed_word(initial_seed(q), word).cluster[vertex]


def verify_witness(q: IceQuiver, w: Witness) -> None:
    """Symbolic check of the witness identity; raises WitnessError."""
    target = witness_target(q, w.word, w.vertex)
    gens = generator_expansions(q)
    try:
        den = w.denom.substitute(gens)
        num = w.numer.substitute(gens)
    except Exception as exc:
        raise WitnessError("witness does not expand: %s" % exc) from exc
    if den.is_zero():
        raise WitnessError("witness denominator expands to zero")
    if target * den != num:
        raise WitnessError("witness identity fails symbolically")


def witness_value(w: Witness, pt: ModelPoint) -> Fraction:
    vals = slot_values(pt)
    try:
        den = w.denom.evaluate(vals)
        num = w.numer.evaluate(vals)
    except ZeroAtNegativeExponent as exc:
        raise WitnessError("witness hits a zero inverted coordinate") from exc
    if den == 0:
        raise WitnessError("witness denominator vanishes at the point")
    return num / den


# -- solving for witnesses -------------------------------------------------


def _monomials_upto(nslots: int, degree: int):
    out = []

    def rec(prefix, remaining, slot):
        if slot == nslots:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slot + 1)

    rec([], degree, 0)
    return out


def _solve_linear(columns, rhs):
    """One exact solution of sum c_j * columns[j] == rhs, or None.

    Columns and rhs are dicts keyed by exponent tuples with Fraction-safe
    integer values.
    """
    keys = sorted(set().union(rhs.keys(), *(c.keys() for c in columns)))
    if not keys:
        return [Fraction(0)] * len(columns)
    rows = [
        [Fraction(c.get(k, 0)) for c in columns] + [Fraction(rhs.get(k, 0))]
        for k in keys
    ]
    ncols = len(columns)
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = rows[i][ncols]
    return sol


def solve_witness(
    q: IceQuiver,
    word,
    vertex: int,
    degree: int = 2,
    denominators=None,
    avoid_zeros_at: ModelPoint | None = None,
):
    """Search for a witness identity by linear algebra over a monomial basis.

    Tries each candidate denominator in order (constant 1 first, then the
    single generator slots, then products of two); for each, solves for a
    numerator of total degree <= degree in the generator slots.  Returns a
    verified Witness or None.  The identity found is point-independent;
    avoid_zeros_at only prunes denominator candidates that vanish at that
    point and so would be unusable there.
    """
    word = tuple(word)
    target = witness_target(q, word, vertex)
    gens = generator_expansions(q)
    nslots = slot_count(q)

    if denominators is None:
        denominators = [LaurentPoly.one(nslots)]
        for s in range(nslots):
            denominators.append(LaurentPoly.variable(s, nslots))
        for s in range(nslots):
            for t in range(s, nslots):
                e = [0] * nslots
                e[s] += 1
                e[t] += 1
                denominators.append(LaurentPoly.monomial(1, e))
    if avoid_zeros_at is not None:
        vals = slot_values(avoid_zeros_at)
        kept = []
        for den in denominators:
            try:
                if den.evaluate(vals) != 0:
                    kept.append(den)
            except ZeroAtNegativeExponent:
                continue
        denominators = kept

    basis = _monomials_upto(nslots, degree)
    columns = []
    cache = {}

    def expand(e):
        if e not in cache:
            parts = []
            for s, k in enumerate(e):
                if k:
                    parts.append(gens[s] ** k)
            cache[e] = poly_prod(parts, q.n + q.m)
        return cache[e]

    for e in basis:
        columns.append(expand(e).terms)

    for den in denominators:
        try:
            den_exp = den.substitute(gens)
        except Exception:
            continue
        if den_exp.is_zero():
            continue
        rhs = (target * den_exp).terms
        sol = _solve_linear(columns, rhs)
        if sol is None:
            continue
        lcm = 1
        for c in sol:
            if c != 0:
                g = c.denominator
                lcm = lcm * g // math.gcd(lcm, g)
        terms = {}
        for e, c in zip(basis, sol):
            if c != 0:
                terms[e] = int(c * lcm)
        numer = LaurentPoly(nslots, terms)
        scaled_den = LaurentPoly.constant(lcm, nslots) * den
        w = Witness(word=word, vertex=vertex, numer=numer, denom=scaled_den)
        verify_witness(q, w)
        return w
    return None


# -- replay ----------------------------------------------------------------


@dataclass(frozen=True)
class ChartValues:
    word: tuple
    values: tuple  # Fraction per mutable slot, or None when undetermined
    frozen: tuple
    witnesses_used: tuple

    def determined(self) -> bool:
        return all(v is not None for v in self.values)

    def to_json_dict(self) -> dict:
        return {
            "word": [k + 1 for k in self.word],
            "values": [None if v is None else format_rational(v) for v in self.values],
            "frozen": [format_rational(v) for v in self.frozen],
        }


def _find_witness(witnesses, word, vertex):
    for w in witnesses:
        if tuple(w.word) == tuple(word) and w.vertex == vertex:
            return w
    return None


def propagate(
    q: IceQuiver,
    pt: ModelPoint,
    word,
    witnesses=(),
    auto_solve: bool = False,
    solve_degree: int = 2,
) -> ChartValues:
    """Replay a mutation word on a point, tracking chart coordinate values.

    Nonzero pivots are plain division.  A zero pivot first checks the
    exchange sum is balanced (anything else raises InconsistentPoint), then
    consults: the stored partner value when the word so far is empty, a
    supplied witness for this exact prefix, or solve_witness when
    auto_solve is set.  With no source of truth the value becomes
    undetermined and stays sticky through later arithmetic.
    """
    validate_point(q, pt)
    word = tuple(word)
    n, m = q.n, q.m
    vals = list(pt.p)
    cur = q
    verified = set()
    used = []
    for t, k in enumerate(word):
        if not (0 <= k < n):
            raise QuiverFormatError("word index %d out of range" % (k + 1))
        col = cur.column(k)
        support = [i for i in range(n + m) if col[i] != 0 and i != k]
        coords = vals + list(pt.frozen)
        computable = all(coords[i] is not None for i in support)
        msum = None
        if computable:
            pos, neg = exchange_monomial_values(cur, [c if c is not None else 0 for c in coords], k)
            msum = pos + neg
        prefix = word[: t + 1]
        w = _find_witness(witnesses, prefix, k)
        wval = None
        if w is not None:
            if id(w) not in verified:
                verify_witness(q, w)
                verified.add(id(w))
            wval = witness_value(w, pt)
        pivot = vals[k]
        if pivot is not None and pivot != 0:
            if msum is not None:
                new = msum / pivot
                if wval is not None and wval != new:
                    raise WitnessError(
                        "witness value disagrees with arithmetic at step %d" % (t + 1)
                    )
            elif wval is not None:
                new = wval
            else:
                new = None
        elif pivot == 0:
            if msum is not None and msum != 0:
                raise InconsistentPoint(
                    "zero pivot with unbalanced exchange sum at step %d (vertex %d)"
                    % (t + 1, k + 1)
                )
            if t == 0:
                new = pt.p_prime[k]
                if wval is not None and wval != new:
                    raise WitnessError("witness value disagrees with the stored partner")
            elif wval is not None:
                new = wval
            elif auto_solve:
                cand = solve_witness(
                    q, prefix, k, degree=solve_degree, avoid_zeros_at=pt
                )
                if cand is not None:
                    try:
                        new = witness_value(cand, pt)
                        used.append(cand)
                    except WitnessError:
                        new = None
                else:
                    new = None
            else:
                new = None
        else:
            new = wval  # unknown pivot: only a witness helps
        if w is not None:
            used.append(w)
        vals[k] = new
        cur = cur.mutate(k)
    return ChartValues(
        word=word,
        values=tuple(vals),
        frozen=tuple(pt.frozen),
        witnesses_used=tuple(used),
    )


@dataclass(frozen=True)
class TorusVerdict:
    verdict: str  # "in", "out", "unknown"
    chart: ChartValues

    def to_json_dict(self) -> dict:
        return {"verdict": self.verdict, "chart": self.chart.to_json_dict()}


def torus_membership(
    q: IceQuiver,
    pt: ModelPoint,
    word,
    witnesses=(),
    auto_solve: bool = False,
    solve_degree: int = 2,
) -> TorusVerdict:
    """Does the point lie in the seed torus reached by the word?

    "out" as soon as one determined chart value is zero; "in" when every
    value is determined and nonzero; "unknown" otherwise.
    """
    chart = propagate(
        q, pt, word, witnesses=witnesses, auto_solve=auto_solve, solve_degree=solve_degree
    )
    if any(v == 0 for v in chart.values if v is not None):
        return TorusVerdict(verdict="out", chart=chart)
    if chart.determined():
        return TorusVerdict(verdict="in", chart=chart)
    return TorusVerdict(verdict="unknown", chart=chart)


# -- fractions over the generator slots ------------------------------------


class GenFrac:
    """Quotient of slot polynomials with exact cancellation where cheap.

    Used to carry closed forms for chart variables during covering runs;
    denominators are only ever evaluated at points where they are nonzero.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.one(num.nvars)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        one = LaurentPoly.one(num.nvars)
        if num.is_zero():
            den = one
        elif den.divides(num):
            num = num.div_exact(den)
            den = one
        elif den.is_monomial():
            # a unit monomial denominator folds into the numerator
            ((_, c),) = den.terms.items()
            if c in (1, -1):
                num = num * den.inverse()
                den = one
        self.num = num
        self.den = den

    @staticmethod
    def from_slot(s: int, nslots: int) -> "GenFrac":
        return GenFrac(LaurentPoly.variable(s, nslots))

    @staticmethod
    def one(nslots: int) -> "GenFrac":
        return GenFrac(LaurentPoly.one(nslots))

    def __mul__(self, other: "GenFrac") -> "GenFrac":
        return GenFrac(self.num * other.num, self.den * other.den)

    def __add__(self, other: "GenFrac") -> "GenFrac":
        return GenFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "GenFrac":
        return GenFrac(-self.num, self.den)

    def __sub__(self, other: "GenFrac") -> "GenFrac":
        return self + (-other)

    def divide(self, other: "GenFrac") -> "GenFrac":
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        return GenFrac(self.num * other.den, self.den * other.num)

    def power(self, k: int) -> "GenFrac":
        if k < 0:
            return GenFrac.one(self.num.nvars).divide(self).power(-k)
        out = GenFrac.one(self.num.nvars)
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, vals) -> Fraction:
        den = self.den.evaluate(vals)
        if den == 0:
            raise ZeroDivisionError("fraction denominator vanished at the point")
        return self.num.evaluate(vals) / den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __repr__(self):
        return "GenFrac(%s / %s)" % (self.num.pretty(), self.den.pretty())
