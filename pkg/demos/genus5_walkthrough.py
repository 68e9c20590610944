"""Walk through the trigonal genus-5 chain: ranks of K - iE, torus memberships,
the pencil's bridge slopes and the certified scroll map."""

from kgonal.reproduce import genus5


def main():
    report, sk = genus5()
    print("torsion profile:", report["chain"]["profile"])
    print("canonical divisor xi:", [str(x) for x in report["canonical"]["xi"]])
    print()
    print("i  degree  rank  witness")
    for row in report["rank_table"]:
        print(f"{row['i']}  {row['degree']:>6}  {row['rank']:>4}  {row['witness']}")
    print()
    for m in report["membership"]:
        print(f"K - {m['i']}E in torus of {m['tableau']}: {m['contains']}")
    print("pencil slopes of the first coordinate on bridges:", report["pencil_slopes"]["psi0"])
    print()
    sm = report["scroll_map"]
    print("scroll map spans per cycle:", sm["spans"])
    print("contracted cycles:", sm["contracted_cycles"])
    cert = report["certificates"]
    print("bridge lengths after tuning:", [str(x) for x in cert["lengths"]["bridges"]])
    print("assumption clauses:", {c: cert["assumptions"][c] for c in "ABC"})
    print("naively well spaced:", cert["naively-well-spaced"])
    print("vertices:", len(sk.vertices), "edges:", len(sk.edges))


if __name__ == "__main__":
    main()
