"""Walk through the smallest cospectral classes and what they share."""
from distspec import (MatrixVariant as V, census, enumerate_connected_graphs, parse_graph6,
                      preservation_report, structural_report)


def main() -> None:
    for n in range(4, 8):
        res = census(enumerate_connected_graphs(n))
        print(res.csv_row())
    res = census(enumerate_connected_graphs(5), [V.DQ])
    poly, members = res.classes[V.DQ][0]
    print(f"\nsmallest signless pair, char poly {poly}")
    g1, g2 = (parse_graph6(s) for s in members)
    for code, g in zip(members, (g1, g2)):
        r = structural_report(g)
        print(f"  {code}: degrees {r.degree_sequence} transmissions {r.transmission_sequence}")
    rep = preservation_report(g1, g2, V.DQ)
    shared = sorted(k for k, same in rep.equal.items() if same)
    print(f"  shared parameters: {', '.join(shared)}")


if __name__ == "__main__":
    main()
