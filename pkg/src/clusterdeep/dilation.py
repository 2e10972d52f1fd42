"""Scaling symmetries of the variety attached to an ice quiver.

A diagonal torus element t = (t_1, ..., t_{n+m}) rescales each coordinate.
It preserves the defining relations exactly when every column of the
extended matrix gives a satisfied multiplicative equation, and it fixes a
specific point when the coordinates that are nonzero there are fixed as
well.  Both groups are computed exactly from Smith normal forms and come
with printable equation lists and a membership test for explicit elements.

Group structure is reported as (torus_rank, torsion): the group is a
product of torus_rank copies of the multiplicative group and cyclic
factors of the listed orders.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quiver import IceQuiver
from .snf import invariant_factors


def coordinate_names(n: int, m: int):
    """Display names: t1..tn for mutable slots, then overlined frozen ones."""
    names = ["t%d" % (i + 1) for i in range(n)]
    names += ["t̄%d" % (j + 1) for j in range(m)]
    return names


def pretty_equation(vector, n: int, m: int) -> str:
    """Render a character vector as a multiplicative equation.

    Positive exponents go to the left-hand side, negative to the right; an
    empty side renders as 1, and a bare "1 = X" is flipped to "X = 1".
    """
    names = coordinate_names(n, m)
    lhs = []
    rhs = []
    for i, e in enumerate(vector):
        if e > 0:
            lhs.append(names[i] if e == 1 else "%s^%d" % (names[i], e))
        elif e < 0:
            rhs.append(names[i] if e == -1 else "%s^%d" % (names[i], -e))
    left = " ".join(lhs) if lhs else "1"
    right = " ".join(rhs) if rhs else "1"
    if left == "1" and right != "1":
        left, right = right, left
    return "%s = %s" % (left, right)


@dataclass(frozen=True)
class GroupStructure:
    torus_rank: int
    torsion: tuple

    @property
    def trivial(self) -> bool:
        return self.torus_rank == 0 and not self.torsion

    def order(self):
        """Number of elements, or None when a torus factor makes it infinite."""
        if self.torus_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def to_json_dict(self):
        return {
            "torus_rank": self.torus_rank,
            "torsion": list(self.torsion),
            "trivial": self.trivial,
        }


def structure_from_constraints(vectors, dim: int) -> GroupStructure:
    """Group of t in the torus with t^v = 1 for every constraint vector v.

    The vectors span a sublattice L of Z^dim; the group is the character
    group of Z^dim / L: one torus factor per rank deficit and one cyclic
    factor per invariant factor above 1.
    """
    vecs = [list(v) for v in vectors]
    if not vecs:
        return GroupStructure(torus_rank=dim, torsion=())
    facs = invariant_factors(vecs)
    return GroupStructure(
        torus_rank=dim - len(facs),
        torsion=tuple(d for d in facs if d > 1),
    )


@dataclass(frozen=True)
class GroupElement:
    """Diagonal element given by exponents on a root of unity or a parameter.

    order == 0: coordinates are mu^exponents for a generic parameter mu (a
    one-parameter family, infinite order).  order == s > 0: coordinates are
    zeta_s^exponents for a primitive s-th root of unity.
    """

    exponents: tuple
    order: int

    def is_identity(self) -> bool:
        if self.order == 0:
            return all(e == 0 for e in self.exponents)
        return all(e % self.order == 0 for e in self.exponents)

    def satisfies(self, vector) -> bool:
        dot = sum(e * v for e, v in zip(self.exponents, vector))
        if self.order == 0:
            return dot == 0
        return dot % self.order == 0

    def to_json_dict(self):
        return {"exponents": list(self.exponents), "order": self.order}

    def pretty(self, n: int, m: int) -> str:
        base = "mu" if self.order == 0 else "zeta%d" % self.order
        names = coordinate_names(n, m)
        parts = []
        for i, e in enumerate(self.exponents):
            if self.order:
                e %= self.order
            if e == 0:
                continue
            parts.append("%s = %s" % (names[i], base if e == 1 else "%s^%d" % (base, e)))
        return ", ".join(parts) if parts else "identity"


@dataclass(frozen=True)
class DilationReport:
    structure: GroupStructure
    constraints: tuple  # one vector per mutable vertex, in vertex order
    n: int
    m: int

    def equations(self):
        return [pretty_equation(v, self.n, self.m) for v in self.constraints]

    def contains(self, elem: GroupElement) -> bool:
        return all(elem.satisfies(v) for v in self.constraints)

    def to_json_dict(self):
        return {
            "structure": self.structure.to_json_dict(),
            "equations": self.equations(),
        }


def dilation_group(q: IceQuiver) -> DilationReport:
    """Diagonal rescalings preserving every exchange relation of q.

    One multiplicative equation per mutable vertex: the column of the
    extended matrix read as exponents.
    """
    total = q.n + q.m
    cols = tuple(q.column(k) for k in range(q.n))
    return DilationReport(
        structure=structure_from_constraints(cols, total),
        constraints=cols,
        n=q.n,
        m=q.m,
    )


def xprime_character(q: IceQuiver, k: int):
    """Weight of the partner variable at k under the diagonal torus.

    The exchange relation forces the partner to scale by the positive part
    of column k divided by the coordinate at k.
    """
    total = q.n + q.m
    col = q.column(k)
    out = [max(x, 0) for x in col]
    out[k] -= 1
    return tuple(out)


@dataclass(frozen=True)
class StabilizerReport:
    structure: GroupStructure
    constraints: tuple
    n: int
    m: int

    def contains(self, elem: GroupElement) -> bool:
        return all(elem.satisfies(v) for v in self.constraints)

    def contains_nontrivially(self, elem: GroupElement) -> bool:
        return self.contains(elem) and not elem.is_identity()

    def to_json_dict(self):
        return {"structure": self.structure.to_json_dict()}


def stabilizer_constraints(q: IceQuiver, point):
    """Constraint vectors pinning down the stabilizer of a model point.

    Every exchange relation must be preserved (the matrix columns), every
    nonzero coordinate must be fixed (a unit vector), and every nonzero
    partner value must be fixed as well (its character).
    """
    n, m = q.n, q.m
    total = n + m
    vecs = [q.column(k) for k in range(n)]
    for i in range(n):
        if point.p[i] != 0:
            e = [0] * total
            e[i] = 1
            vecs.append(tuple(e))
    for j in range(m):
        e = [0] * total
        e[n + j] = 1
        vecs.append(tuple(e))
    for k in range(n):
        if point.p_prime[k] != 0:
            vecs.append(xprime_character(q, k))
    return tuple(vecs)


def stabilizer(q: IceQuiver, point) -> StabilizerReport:
    vecs = stabilizer_constraints(q, point)
    return StabilizerReport(
        structure=structure_from_constraints(vecs, q.n + q.m),
        constraints=vecs,
        n=q.n,
        m=q.m,
    )
