"""Compare closed-form family spectra with direct computation."""
from distspec import ALL_VARIANTS, classify, oracle_spectrum, variant_spectrum
from distspec.families import FamilySpec, NoClosedForm, build

SPECS = ["complete:6", "cycle:7", "hamming:3,3", "paley:13", "petersen", "dsrg:8,4,3,1,3", "dicycle:5"]


def main() -> None:
    for text in SPECS:
        spec = FamilySpec.parse(text)
        g = build(spec)
        row = []
        for v in ALL_VARIANTS:
            try:
                oracle = oracle_spectrum(spec, v)
            except NoClosedForm:
                row.append(f"{v.value}:-")
                continue
            ok = variant_spectrum(g, v).matches([complex(x) for x in oracle], 1e-9)
            row.append(f"{v.value}:{'ok' if ok else 'MISMATCH'}")
        print(f"{text:16s} n={g.n:3d}  " + "  ".join(row))
    c = classify(build(FamilySpec.parse("paley:13")))
    print(f"\npaley:13 optimistic={c.optimistic} transmission_regular={c.transmission_regular}")


if __name__ == "__main__":
    main()
