"""Co-invariants and fixed rank-one characters for every shipped generator set."""
import argparse

from surfacerep.homology import character_fixed_points, coinvariants
from surfacerep.mapping import SHIPPED, shipped_genset


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, nargs="*", default=[5, 7])
    args = ap.parse_args()
    head = f"{'g':>2} {'n':>2} {'classes':>7}  {'smith diagonal':<24} {'module':<8}"
    print(head + "".join(f" fixed/GF({q})" for q in args.q))
    for g, n in SHIPPED:
        S = shipped_genset(g, n)
        rep = coinvariants(S)
        row = f"{g:>2} {n:>2} {len(S):>7}  {str(list(rep.smith_diagonal)):<24} {rep.describe():<8}"
        row += "".join(f" {len(character_fixed_points(S, q)):>11}" for q in args.q)
        print(row)


if __name__ == "__main__":
    main()
