"""Enumerate a finite-field fixed point atlas and print its histogram.

    python3 scripts/run_atlas.py --g 2 --r 2 --p 2 --workers 4 --out atlas.json
"""
import argparse
import time

from surfacerep.enumerator import SearchSpec, atlas_is_closed, fixed_point_atlas
from surfacerep.mapping import shipped_genset


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--g", type=int, default=2)
    ap.add_argument("--n", type=int, default=0)
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--mode", choices=("class", "hom"), default="class")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out")
    args = ap.parse_args()

    spec = SearchSpec(args.g, args.n, args.r, args.p, mode=args.mode, workers=args.workers)
    t0 = time.perf_counter()
    atlas = fixed_point_atlas(spec, shipped_genset(args.g, args.n))
    dt = time.perf_counter() - t0
    print(f"homs={atlas.total_homs} classes={atlas.class_count} fixed={len(atlas.fixed)} "
          f"closed={atlas_is_closed(atlas)} ({dt:.1f}s)")
    for size, count in sorted(atlas.orbit_histogram.items()):
        print(f"  orbit size {size:6d}: {count}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(atlas.dumps() + "\n")


if __name__ == "__main__":
    main()
