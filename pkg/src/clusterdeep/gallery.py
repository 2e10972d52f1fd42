"""Curated quivers with pinned expected outcomes, runnable end to end.

Each entry pairs a concrete quiver (and points, where the check needs
them) with the verdicts the library must reproduce.  The runner executes
every entry and compares against the pinned expectations, so a green
gallery is the quickest whole-stack smoke test the repository has.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .deep import (
    cert_abundant_acyclic,
    cert_fork_bounded,
    cert_gcd_star,
    fork_bounded_report,
    is_mysterious,
    rank2_classify,
    rank2_companion,
    so_may_deep,
    star3_classify,
    star3_companion,
)
from .dilation import dilation_group, stabilizer
from .errors import ClusterDeepError
from .explore import explore_seeds, forkless_part
from .laurent import LaurentPoly
from .quiver import IceQuiver, is_key, star_quiver, triangle_quiver
from .variety import (
    Witness,
    make_point,
    torus_membership,
    validate_point,
)


@dataclass(frozen=True)
class GalleryEntry:
    """One pinned scenario: a quiver, optional points, and expectations.

    expected maps result keys to required values; the check callable
    recomputes those keys (and may add informational extras).  An entry
    passes when every expected key is present and equal in the actual
    result.
    """

    entry_id: str
    anchor: str
    quiver: IceQuiver
    points: tuple
    expected: dict
    check: Callable

    def run(self) -> "GalleryResult":
        try:
            actual = self.check(self)
        except ClusterDeepError as exc:
            return GalleryResult(
                entry_id=self.entry_id,
                anchor=self.anchor,
                ok=False,
                expected=self.expected,
                actual=None,
                error="%s: %s" % (type(exc).__name__, exc),
            )
        ok = all(actual.get(key) == val for key, val in self.expected.items())
        return GalleryResult(
            entry_id=self.entry_id,
            anchor=self.anchor,
            ok=ok,
            expected=self.expected,
            actual=actual,
            error=None,
        )


@dataclass(frozen=True)
class GalleryResult:
    entry_id: str
    anchor: str
    ok: bool
    expected: dict
    actual: Optional[dict]
    error: Optional[str]

    def to_json_dict(self):
        return {
            "id": self.entry_id,
            "anchor": self.anchor,
            "ok": self.ok,
            "expected": _plain(self.expected),
            "actual": _plain(self.actual),
            "error": self.error,
        }


@dataclass(frozen=True)
class GalleryReport:
    results: tuple

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def format_lines(self):
        lines = []
        for r in self.results:
            mark = "PASS" if r.ok else "FAIL"
            lines.append("%s %s: %s" % (mark, r.entry_id, r.anchor))
            if not r.ok and r.error:
                lines.append("     error: %s" % r.error)
        lines.append(
            "%d/%d entries passed"
            % (sum(1 for r in self.results if r.ok), len(self.results))
        )
        return lines

    def to_json_dict(self):
        return {
            "ok": self.ok,
            "results": [r.to_json_dict() for r in self.results],
        }


def _plain(value):
    """Recursively turn result payloads into JSON-safe structures."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction):
        return str(value)
    if value is None or isinstance(value, (bool, int, str, float)):
        return value
    if hasattr(value, "to_json_dict"):
        return value.to_json_dict()
    return str(value)


# ---------------------------------------------------------------------------
# entry checks


def _a2_quiver() -> IceQuiver:
    return rank2_companion(1)


def _a2_points():
    # the five boundary points of the weight-one model, frozen values 1, 1
    return (
        make_point([-1, -1], [0, 0], [1, 1]),
        make_point([0, -1], [-1, -1], [1, 1]),
        make_point([-1, 0], [-1, -1], [1, 1]),
        make_point([-1, 0], [-1, 0], [1, 1]),
        make_point([0, -1], [0, -1], [1, 1]),
    )


_A2_WORDS = [(), (0,), (1,), (0, 1), (1, 0)]


def _a2_witnesses():
    # the shared fifth variable: u = x1'*x2' - f1*f2, reached either way
    # around the pentagon
    numer = LaurentPoly(6, {(0, 0, 1, 1, 0, 0): 1, (0, 0, 0, 0, 1, 1): -1})
    one = LaurentPoly.one(6)
    return (
        Witness(word=(0, 1), vertex=1, numer=numer, denom=one),
        Witness(word=(1, 0), vertex=0, numer=numer, denom=one),
    )


def _check_a2_five_tori(entry: GalleryEntry) -> dict:
    q = entry.quiver
    seeds = explore_seeds(q, max_depth=8, max_nodes=64)
    wits = _a2_witnesses()
    matrix = []
    for pt in entry.points:
        validate_point(q, pt)
        row = []
        for word in _A2_WORDS:
            v = torus_membership(q, pt, word, witnesses=wits)
            row.append(1 if v.verdict == "in" else 0)
        matrix.append(row)
    return {
        "seed_count": seeds.node_count,
        "frontier_exhausted": seeds.frontier_exhausted,
        "membership": matrix,
    }


def _check_star_dilation(entry: GalleryEntry) -> dict:
    rep = dilation_group(entry.quiver)
    return {
        "equations": sorted(rep.equations()),
        "torus_rank": rep.structure.torus_rank,
        "torsion": list(rep.structure.torsion),
    }


def _check_equations_exact(entry: GalleryEntry) -> dict:
    rep = dilation_group(entry.quiver)
    return {
        "equations": rep.equations(),
        "torus_rank": rep.structure.torus_rank,
        "torsion": list(rep.structure.torsion),
    }


def _check_star_mysterious(entry: GalleryEntry) -> dict:
    q = entry.quiver
    (pt,) = entry.points
    validate_point(q, pt)
    verdict = is_mysterious(q, pt)
    deep = verdict.deep
    return {
        "mysterious": verdict.mysterious,
        "status": verdict.status,
        "deep_kind": deep.kind if deep else None,
        "certificate": deep.certificate.kind if deep and deep.certificate else None,
        "stabilizer_trivial": verdict.stabilizer.structure.trivial,
    }


def _check_star3_trichotomy(entry: GalleryEntry) -> dict:
    out = {}
    for (a, b) in ((1, 5), (2, 4), (2, 3)):
        verdict = star3_classify(a, b)
        key = "family_%d_%d" % (a, b)
        out[key] = verdict.family
        out["evidence_%d_%d" % (a, b)] = verdict.evidence.kind
    order = star3_classify(2, 4).evidence.element.order
    out["order_2_4"] = order
    return out


def _check_rank2_classify(entry: GalleryEntry) -> dict:
    stuck = rank2_classify(2, make_point([1, 0], [1, 0], [1, -1]))
    escaped = rank2_classify(2, make_point([1, 0], [1, 5], [1, -1]))
    out = {
        "weight2_kind": stuck.kind,
        "weight2_order": stuck.element.order if stuck.element else None,
        "escape_kind": escaped.kind,
    }
    covered = []
    for pt in _a2_points():
        v = rank2_classify(1, pt)
        covered.append(v.kind)
    out["weight1_kinds"] = covered
    return out


def _check_key_modes(entry: GalleryEntry) -> dict:
    q = entry.quiver
    tolerant = is_key(q, "tolerant")
    strict = is_key(q, "strict")
    return {
        "tolerant_pair": [v + 1 for v in tolerant.pair] if tolerant else None,
        "strict_pair": [v + 1 for v in strict.pair] if strict else None,
    }


def _check_abundant(entry: GalleryEntry) -> dict:
    q = entry.quiver
    (pt,) = entry.points
    cert = cert_abundant_acyclic(q)
    verdict = so_may_deep(q, pt, cert)
    return {
        "certificate": cert.kind if cert else None,
        "min_multiplicity": cert.evidence["min_multiplicity"] if cert else None,
        "deep_kind": verdict.kind,
    }


def _check_fork_triangle(entry: GalleryEntry) -> dict:
    q = entry.quiver
    part = forkless_part(q, max_nodes=64, dedup="matrix")
    cert = cert_fork_bounded(q, 64)
    return {
        "forkless_count": len(part),
        "certificate": cert.kind if cert else None,
        "member_count": cert.evidence["member_count"] if cert else None,
    }


def _locally_acyclic_quiver() -> IceQuiver:
    # four-vertex cyclic quiver, pairwise coprime weights a..f = 2,3,5,7,11,13
    # and the long arrow carrying c + a*b = 11
    a, b, c, d, e, f = 2, 3, 5, 7, 11, 13
    return IceQuiver.from_arrows(
        4,
        0,
        [(1, 0, a), (3, 1, d), (3, 0, e), (3, 2, f), (0, 2, b), (2, 1, c + a * b)],
    )


def _check_locally_acyclic(entry: GalleryEntry) -> dict:
    report = fork_bounded_report(entry.quiver, cap=10000)
    cert = report["certificate"]
    keys_ok = set(report) == {"certificate", "reason", "members"}
    outcome = "bounded" if cert is not None else "unbounded-or-refused"
    return {
        "report_keys_ok": keys_ok,
        "outcome_recorded": cert is not None or bool(report["reason"]),
        "outcome": outcome,
        "reason": report["reason"] if cert is None else None,
    }


def _check_gcd_star_cert(entry: GalleryEntry) -> dict:
    cert = cert_gcd_star(entry.quiver)
    return {
        "certificate": cert.kind if cert else None,
        "center": cert.evidence["center"] if cert else None,
        "leaf_weights": cert.evidence["leaf_weights"] if cert else None,
        "row_gcds": cert.evidence["row_gcds"] if cert else None,
    }


def _check_stabilizer_freeze_flip(entry: GalleryEntry) -> dict:
    from .variety import freeze_point

    q = entry.quiver
    (pt,) = entry.points
    before = stabilizer(q, pt).structure.trivial
    q2, pt2 = freeze_point(q, pt, 1)
    after = stabilizer(q2, pt2).structure.trivial
    return {"trivial_before": before, "trivial_after": after}


# ---------------------------------------------------------------------------
# the entry table


def build_entries():
    star = star_quiver(2, 3)
    star_point = make_point([0, -1, 1], [0, -1, 1])
    abundant = IceQuiver.from_arrows(
        4, 0, [(3, 0, 2), (0, 1, 3), (1, 2, 2), (3, 1, 2), (0, 2, 5), (3, 2, 2)]
    )
    key_triangle = IceQuiver.from_arrows(3, 0, [(1, 0, 2), (1, 2, 1), (0, 2, 3)])
    entries = [
        GalleryEntry(
            entry_id="a2-five-tori",
            anchor="five seeds; each boundary point lies in exactly its own torus",
            quiver=_a2_quiver(),
            points=_a2_points(),
            expected={
                "seed_count": 5,
                "frontier_exhausted": True,
                "membership": [
                    [1 if i == j else 0 for j in range(5)] for i in range(5)
                ],
            },
            check=_check_a2_five_tori,
        ),
        GalleryEntry(
            entry_id="star-2-3-dilation",
            anchor="scaling group cut out by t1^2=1, t2^3 t3^2=1, t1^3=1; "
            "one torus factor, no torsion",
            quiver=star,
            points=(),
            expected={
                "equations": sorted(["t1^2 = 1", "t2^3 t3^2 = 1", "t1^3 = 1"]),
                "torus_rank": 1,
                "torsion": [],
            },
            check=_check_star_dilation,
        ),
        GalleryEntry(
            entry_id="rank2-dilation",
            anchor="weight-2 pair with companions: t2^2 t̄1 = 1 and t1^2 t̄2 = 1",
            quiver=rank2_companion(2),
            points=(),
            expected={
                "equations": ["t2^2 t̄1 = 1", "t1^2 t̄2 = 1"],
                "torus_rank": 2,
                "torsion": [],
            },
            check=_check_equations_exact,
        ),
        GalleryEntry(
            entry_id="star3-dilation",
            anchor="two-leaf star (2,3) with companions: three binding equations",
            quiver=star3_companion(2, 3),
            points=(),
            expected={
                "equations": [
                    "t2^3 t3^2 t̄1 = 1",
                    "t1^3 t̄2 = 1",
                    "t1^2 t̄3 = 1",
                ],
                "torus_rank": 3,
                "torsion": [],
            },
            check=_check_equations_exact,
        ),
        GalleryEntry(
            entry_id="star-2-3-gcd-cert",
            anchor="coprime leaf weights 2,3 on a 3-vertex star produce the "
            "center-vanishing certificate",
            quiver=star,
            points=(),
            expected={
                "certificate": "GcdStar",
                "center": 1,
                "leaf_weights": [2, 3],
                "row_gcds": [1, 3, 2],
            },
            check=_check_gcd_star_cert,
        ),
        GalleryEntry(
            entry_id="star-2-3-mysterious",
            anchor="the star point with vanishing center pair is deep with "
            "trivial stabilizer",
            quiver=star,
            points=(star_point,),
            expected={
                "mysterious": True,
                "status": "mysterious",
                "deep_kind": "Deep",
                "certificate": "GcdStar",
                "stabilizer_trivial": True,
            },
            check=_check_star_mysterious,
        ),
        GalleryEntry(
            entry_id="star3-trichotomy",
            anchor="two-leaf star family: weight-one leaf covers, common "
            "divisor stabilizes, coprime weights >= 2 go mysterious",
            quiver=star3_companion(2, 3),
            points=(),
            expected={
                "family_1_5": "NoMysterious",
                "evidence_1_5": "InTorus",
                "family_2_4": "NoMysterious",
                "evidence_2_4": "DeepByStabilizer",
                "order_2_4": 2,
                "family_2_3": "HasMysterious",
                "evidence_2_3": "Deep",
            },
            check=_check_star3_trichotomy,
        ),
        GalleryEntry(
            entry_id="rank2-classify",
            anchor="weight-2 double arrow pins its boundary point with an "
            "order-2 scaling; weight one covers all five boundary points",
            quiver=rank2_companion(2),
            points=(),
            expected={
                "weight2_kind": "DeepByStabilizer",
                "weight2_order": 2,
                "escape_kind": "InTorus",
                "weight1_kinds": ["InTorus"] * 5,
            },
            check=_check_rank2_classify,
        ),
        GalleryEntry(
            entry_id="key-modes-discrepancy",
            anchor="a triangle whose orientation profile only matches up to "
            "global reversal: tolerant mode finds the pair, strict does not",
            quiver=key_triangle,
            points=(),
            expected={"tolerant_pair": [2, 3], "strict_pair": None},
            check=_check_key_modes,
        ),
        GalleryEntry(
            entry_id="abundant-acyclic",
            anchor="acyclic quiver with all weights >= 2 certifies its "
            "first-pair-vanishing point deep",
            quiver=abundant,
            points=(make_point([0, 1, -1, 1], [0, 1, -1, 1]),),
            expected={
                "certificate": "AbundantAcyclic",
                "min_multiplicity": 2,
                "deep_kind": "Deep",
            },
            check=_check_abundant,
        ),
        GalleryEntry(
            entry_id="fork-triangle-forkless",
            anchor="oriented triangle (3,4,5) has an empty fork-less part",
            quiver=triangle_quiver(3, 4, 5),
            points=(),
            expected={
                "forkless_count": 0,
                "certificate": "ForkBounded",
                "member_count": 0,
            },
            check=_check_fork_triangle,
        ),
        GalleryEntry(
            entry_id="locally-acyclic-coprime",
            anchor="four-vertex cyclic quiver with pairwise coprime weights: "
            "fork-bound analysis recorded per instance, either outcome honest",
            quiver=_locally_acyclic_quiver(),
            points=(),
            expected={"report_keys_ok": True, "outcome_recorded": True},
            check=_check_locally_acyclic,
        ),
        GalleryEntry(
            entry_id="star-2-3-freeze-flip",
            anchor="freezing the weight-3 leaf hands the star point a "
            "nontrivial stabilizer",
            quiver=star,
            points=(star_point,),
            expected={"trivial_before": True, "trivial_after": False},
            check=_check_stabilizer_freeze_flip,
        ),
    ]
    return entries


def run_gallery(filter: Optional[str] = None) -> GalleryReport:
    """Run every entry whose id contains the filter substring.

    An empty or missing filter runs the whole table.
    """
    entries = build_entries()
    if filter:
        entries = [e for e in entries if filter in e.entry_id]
    return GalleryReport(results=tuple(e.run() for e in entries))
