"""A point that is provably deep while nothing in the scaling group pins it.

The walk: build the three-vertex star with leaf weights 2 and 3, place the
point where the center coordinate pair vanishes, certify deepness from the
arrow weights alone, and then watch the stabilizer come back empty.
"""

from clusterdeep import (
    cert_gcd_star,
    dilation_group,
    is_mysterious,
    make_point,
    so_may_deep,
    stabilizer,
    star_quiver,
    validate_point,
    verify_certificate,
)


def main():
    q = star_quiver(2, 3)
    print("Quiver: center 1 receives from leaf 2 (weight 3) and leaf 3 (weight 2)")
    for row in q.matrix:
        print("   ", row)

    rep = dilation_group(q)
    print("\nScaling group equations:")
    for eq in rep.equations():
        print("   ", eq)
    print("Structure: torus rank %d, torsion %s" % (rep.structure.torus_rank, list(rep.structure.torsion)))
    print("The two center equations force t1 = 1, so scalings only move the leaves.")

    pt = make_point([0, -1, 1], [0, -1, 1])
    validate_point(q, pt)
    print("\nPoint: x1 = x1' = 0, x2 = x2' = -1, x3 = x3' = 1 (valid).")

    cert = cert_gcd_star(q)
    print("\nCertificate: %s  %s" % (cert.kind, cert.evidence))
    verify_certificate(q, cert)
    print("The coprime leaf weights mean no mutation path can clear the center zero.")

    verdict = so_may_deep(q, pt, cert)
    print("Deep check:", verdict.kind)

    rep = stabilizer(q, pt)
    print("Stabilizer trivial?", rep.structure.trivial)

    full = is_mysterious(q, pt)
    print("\nFinal verdict: status=%s mysterious=%s" % (full.status, full.mysterious))
    print("Deep, yet invisible to the scaling group: a mysterious point.")


if __name__ == "__main__":
    main()
