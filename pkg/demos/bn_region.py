"""Tabulate the k-gonal Brill-Noether number over a grid and write the
region picture next to this script."""

from pathlib import Path

from kgonal.numerics import bn_region
from kgonal.svg import bn_region_svg


def main(g=12, k=4):
    region = bn_region(g, k, 8, 8)
    print(f"g = {g}, k = {k}")
    print(" x  y  r  d  rho_bar")
    for x, y, r, d, value, nonempty in region.points:
        if nonempty:
            print(f"{x:>2} {y:>2} {r:>2} {d:>2} {value:>4}")
    out = Path(__file__).with_name("bn_region.svg")
    out.write_text(bn_region_svg(region) + "\n")
    print("wrote", out)


if __name__ == "__main__":
    main()
