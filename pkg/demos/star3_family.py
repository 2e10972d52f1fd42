"""Sweeping the two-leaf star family: who gets mysterious points and why.

For each weight pair (a, b) the companion quiver is classified three ways:
a weight-one leaf opens a covering chart, a common divisor pins every
candidate with a root-of-unity scaling, and coprime weights >= 2 leave a
deep point with trivial stabilizer.
"""

from clusterdeep import star3_classify


def main():
    print("family verdicts over the weight grid (rows a, cols b):\n")
    top = "      " + "".join("b=%-14d" % b for b in range(1, 6))
    print(top)
    for a in range(1, 6):
        cells = []
        for b in range(1, 6):
            v = star3_classify(a, b)
            tag = {
                "InTorus": "covered",
                "DeepByStabilizer": "stabilized",
                "Deep": "MYSTERIOUS",
            }[v.evidence.kind]
            cells.append("%-16s" % tag)
        print("a=%-4d%s" % (a, "".join(cells)))

    print("\nThree sample verdicts in full:")
    for (a, b) in ((1, 5), (2, 4), (2, 3)):
        v = star3_classify(a, b)
        print("\n(a, b) = (%d, %d): %s" % (a, b, v.family))
        print("   ", v.reason)
        if v.evidence.kind == "InTorus":
            print("    covering word:", [k + 1 for k in v.evidence.word])
        elif v.evidence.kind == "DeepByStabilizer":
            e = v.evidence.element
            print("    stabilizing element of order %d, exponents %s" % (e.order, list(e.exponents)))
        else:
            print("    certificate:", v.evidence.certificate.kind, v.evidence.certificate.evidence)


if __name__ == "__main__":
    main()
