"""Check the rho identity on the standard corpus for every push of bounded length."""
import argparse
import time

from surfacerep.corpus import standard_corpus
from surfacerep.mapping import point_push
from surfacerep.rho import build_rho, rho_identity_check, kernel_test, reducibility_witness, span_w_phi
from surfacerep.words import Presentation, all_words


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--g", type=int, default=1)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--push-length", type=int, default=3)
    ap.add_argument("--depth", type=int, default=6)
    args = ap.parse_args()

    p = Presentation.surface(args.g, args.n)
    pushes = [point_push(w, p) for w in all_words(p.symbols, args.push_length)]
    for name, phi in standard_corpus(p).items():
        t0 = time.perf_counter()
        W = span_w_phi(phi)
        e = reducibility_witness(W)
        fails = samples = trivial = 0
        for f in pushes:
            rho = build_rho(phi, f, W)
            ok, k = rho_identity_check(phi, f, rho, args.depth)
            fails += not ok or rho.matrix.apply(e) != tuple(e)
            samples += k
            trivial += kernel_test(phi, f, W)
        print(f"{name:<9} dim W={W.dim}  pushes={len(pushes)}  samples={samples}  "
              f"rho=id for {trivial}  failures={fails}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
