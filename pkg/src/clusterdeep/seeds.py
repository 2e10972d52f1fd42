"""Seeds: an ice quiver together with a cluster of Laurent polynomials.

Every cluster variable is kept fully expanded in the initial variables
(slots 0..n-1 mutable, n..n+m-1 frozen).  Mutation divides the exchange
binomial by the leaving variable with exact Laurent division; the division
succeeding at every step is exactly the Laurent phenomenon, and a failure
raises NotDivisible rather than being hidden.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import QuiverFormatError
from .laurent import LaurentPoly, poly_prod
from .quiver import IceQuiver


@dataclass(frozen=True)
class Seed:
    quiver: IceQuiver
    cluster: tuple
    word: tuple

    @property
    def nvars(self) -> int:
        return self.cluster[0].nvars if self.cluster else 0

    def same_labeled_seed(self, other: "Seed") -> bool:
        """Equal quiver and equal ordered cluster; the words may differ."""
        return self.quiver == other.quiver and self.cluster == other.cluster

    def to_json_dict(self, include_cluster: bool = False) -> dict:
        doc = {
            "quiver": self.quiver.to_json_dict(),
            "word": [k + 1 for k in self.word],
        }
        if include_cluster:
            doc["cluster"] = [p.pretty() for p in self.cluster]
        return doc

    def to_json(self, include_cluster: bool = False) -> str:
        return json.dumps(self.to_json_dict(include_cluster))


def initial_seed(q: IceQuiver) -> Seed:
    total = q.n + q.m
    cluster = tuple(LaurentPoly.variable(i, total) for i in range(total))
    return Seed(quiver=q, cluster=cluster, word=())


def exchange_monomials(seed: Seed, k: int):
    """The two products exchanged at vertex k, expanded in initial variables."""
    q = seed.quiver
    col = q.column(k)
    nv = seed.nvars
    pos = poly_prod(
        (seed.cluster[i] ** col[i] for i in range(len(col)) if col[i] > 0), nv
    )
    neg = poly_prod(
        (seed.cluster[i] ** -col[i] for i in range(len(col)) if col[i] < 0), nv
    )
    return pos, neg


def mutate_seed(seed: Seed, k: int) -> Seed:
    """Seed mutation at mutable vertex k.

    Raises NotDivisible if the exchange sum is not divisible by the leaving
    variable, which would mean the input was not an honest seed.
    """
    q = seed.quiver
    if not (0 <= k < q.n):
        raise QuiverFormatError("mutation index %d out of range" % k)
    pos, neg = exchange_monomials(seed, k)
    new_var = (pos + neg).div_exact(seed.cluster[k])
    cluster = list(seed.cluster)
    cluster[k] = new_var
    return Seed(quiver=q.mutate(k), cluster=tuple(cluster), word=seed.word + (k,))


def mutate_seed_word(seed: Seed, word) -> Seed:
    s = seed
    for k in word:
        s = mutate_seed(s, k)
    return s


def seed_from_json_dict(doc) -> Seed:
    if not isinstance(doc, dict) or "quiver" not in doc:
        raise QuiverFormatError("seed document needs a quiver")
    q = IceQuiver.from_json_dict(doc["quiver"])
    word = doc.get("word", [])
    if not isinstance(word, list):
        raise QuiverFormatError("seed word must be a list")
    try:
        steps = [int(k) - 1 for k in word]
    except (TypeError, ValueError) as exc:
        raise QuiverFormatError("seed word entries must be integers") from exc
    for k in steps:
        if not (0 <= k < q.n):
            raise QuiverFormatError("seed word index %d out of range" % (k + 1))
    return mutate_seed_word(initial_seed(q), steps)


def check_laurent_phenomenon(q: IceQuiver, word) -> dict:
    """Replay a mutation word, recording the term count at every step.

    Returns a small report; any division failure surfaces as NotDivisible.
    """
    s = initial_seed(q)
    steps = []
    for k in word:
        s = mutate_seed(s, k)
        steps.append({"vertex": k, "terms": len(s.cluster[k])})
    return {"ok": True, "steps": steps, "final": s}
