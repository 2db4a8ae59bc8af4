#!/usr/bin/env python3
"""Entanglement concentration statistics for n copies of a partially
entangled pure state: the Schmidt-type measurement yields a maximally
entangled state whose log2-dimension concentrates at n times the
marginal entropy."""

import argparse

from locclab import (
    PsiSpec,
    concentration_distribution,
    concentration_success_prob,
    psi_spectrum,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lam", type=float, default=0.5)
    parser.add_argument("--d2", type=int, default=2)
    parser.add_argument("--samples", type=int, default=100_000)
    args = parser.parse_args()

    spectrum = psi_spectrum(PsiSpec(lam=args.lam, d2=args.d2))
    entropy = spectrum.entropy_bits
    print(f"marginal entropy S = {entropy:.6f} bits/copy\n")

    print(f"{'n':>6} {'E[log2 dim]/n':>14} {'deficit':>10} "
          f"{'P(>= 0.9 n S)':>14}")
    for n in (4, 16, 64, 256, 1024):
        dist = concentration_distribution(spectrum, n, samples=args.samples,
                                          seed=1)
        mean = sum(o.probability * o.log2_dim for o in dist) / n
        est = concentration_success_prob(spectrum, n, 0.9 * n * entropy,
                                         samples=args.samples, seed=2)
        print(f"{n:>6} {mean:>14.6f} {entropy - mean:>10.6f} "
              f"{est.estimate:>14.6f}")

    # exact worked case: two balanced qubit pairs yield one perfect
    # ebit exactly half the time
    balanced = psi_spectrum(PsiSpec(lam=0.5, d2=2))
    est = concentration_success_prob(balanced, 2, 1.0)
    print(f"\nbalanced qubit pair, n=2: P(log2 dim >= 1) = {est.estimate} "
          f"(exact={est.exact})")
    print("the per-copy deficit closes like log2(n)/n, which is the "
          "finite-size price of the type-counting argument.")


if __name__ == "__main__":
    main()
