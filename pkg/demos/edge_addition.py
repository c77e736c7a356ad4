"""Adding an edge: spectral radii shrink, but single distance eigenvalues can rise."""
from distspec import Graph, MatrixVariant as V, variant_spectrum
from distspec.spectra import edge_addition_monotonicity


def main() -> None:
    # star K_{1,4} with one extra leaf on a leaf, then join two outer vertices
    g = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)])
    for u, v in g.non_edges():
        rep = edge_addition_monotonicity(g, (u, v))
        if not rep.variant_ok["D"]:
            before = variant_spectrum(g, V.D).real
            after = variant_spectrum(g.add_edge(u, v), V.D).real
            print(f"edge {u}-{v}")
            print("  D before:", [round(float(x), 4) for x in before])
            print("  D after: ", [round(float(x), 4) for x in after])
            print("  DQ, DL per-index decrease:", rep.variant_ok["DQ"], rep.variant_ok["DL"])
            print("  strict radius drop D, DQ:", rep.strict["D"], rep.strict["DQ"])
            break


if __name__ == "__main__":
    main()
