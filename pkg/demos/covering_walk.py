"""Walking boundary points into cluster tori, witness in hand.

Two stories.  First the weight-one rank-2 model: five seeds, five boundary
points, and a perfect matching between them.  Then a covering run on a
small tree where the engine prints the exact identity that lets it divide
through a zero.
"""

from clusterdeep import (
    IceQuiver,
    LaurentPoly,
    Witness,
    explore_seeds,
    make_point,
    rank2_companion,
    reduce_tree_form,
    torus_membership,
    tree_cover,
    verify_witness,
)

BOUNDARY_POINTS = [
    make_point([-1, -1], [0, 0], [1, 1]),
    make_point([0, -1], [-1, -1], [1, 1]),
    make_point([-1, 0], [-1, -1], [1, 1]),
    make_point([-1, 0], [-1, 0], [1, 1]),
    make_point([0, -1], [0, -1], [1, 1]),
]


def pentagon_witnesses():
    # the shared fifth variable u = x1'*x2' - f1*f2, reachable two ways
    numer = LaurentPoly(6, {(0, 0, 1, 1, 0, 0): 1, (0, 0, 0, 0, 1, 1): -1})
    one = LaurentPoly.one(6)
    return (
        Witness(word=(0, 1), vertex=1, numer=numer, denom=one),
        Witness(word=(1, 0), vertex=0, numer=numer, denom=one),
    )


def five_tori():
    q = rank2_companion(1)
    seeds = explore_seeds(q, max_depth=8, max_nodes=64)
    print("Weight-one rank-2 model: %d seeds, search exhausted: %s" % (
        seeds.node_count, seeds.frontier_exhausted))

    words = [(), (0,), (1,), (0, 1), (1, 0)]
    wits = pentagon_witnesses()
    print("\nMembership matrix (rows = boundary points, cols = seed words):")
    for pt in BOUNDARY_POINTS:
        row = []
        for word in words:
            v = torus_membership(q, pt, word, witnesses=wits)
            row.append("1" if v.verdict == "in" else ".")
        print("   ", " ".join(row))
    print("Each point lives in exactly one torus: the identity pattern.")


def tree_walk():
    # a two-vertex path in reduced form; the point zeroes the second slot
    q = reduce_tree_form(IceQuiver.from_arrows(2, 0, [(0, 1, 1)]))
    pt = make_point([1, 0], [1, 0], [1, -1])
    print("\nReduced two-path, point with x2 = x2' = 0.")
    verdict = tree_cover(q, pt)
    print("Cover verdict:", verdict.kind)
    print("Covering word (1-based):", [k + 1 for k in verdict.word])
    for w in verdict.witnesses:
        verify_witness(q, w)
        print("Witness at vertex %d after word %s:" % (w.vertex + 1, [k + 1 for k in w.word]))
        print("    value = (%s) / (%s)" % (w.numer.pretty(), w.denom.pretty()))
    replay = torus_membership(q, pt, verdict.word, witnesses=verdict.witnesses)
    print("Replay through the chart engine:", replay.verdict)


def main():
    five_tori()
    tree_walk()


if __name__ == "__main__":
    main()
