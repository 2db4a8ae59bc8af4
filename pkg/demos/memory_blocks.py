#!/usr/bin/env python3
"""Reusable quantum memory beats the round-by-round LOCC cap.

A memory of n_block maximally entangled pairs wins every round of a
block by teleport-then-measure; re-concentrating the stored psi copies
recharges it with probability 1 - eps_tilde per block. The empirical
rate therefore approaches 1 - eps_tilde, a statistical signature no
catalytic (restored-exactly) resource can produce."""

from locclab import (
    PsiSpec,
    check_supermartingale,
    estimate_rate,
    memory_block_strategy,
    simulate_ensemble,
)


def main() -> None:
    strat = memory_block_strategy(2, PsiSpec(lam=0.5, d2=8), 16)
    print(f"block recharge probability: {strat.block_success_prob:.6f}")
    print(f"eps_tilde = {strat.eps_tilde:.6f}\n")

    r = 1.0 - strat.eps_tilde - 0.05
    print(f"target rate r = 1 - eps_tilde - 0.05 = {r:.6f}")
    print(f"{'rounds':>8} {'Pr(S_n >= r n)':>16}")
    for n in (160, 640, 3200):
        est = estimate_rate(strat, r=r, trials=500, n_list=(n,), seed=0)
        print(f"{n:>8} {est.success_frac[0]:>16.4f}")

    # the same audit that catches super-capped oracles passes here only
    # because the memory stores real wins, not conditional drift
    x = simulate_ensemble(strat, n=320, trials=4000, seed=1)
    report = check_supermartingale(x, p_cap=0.75)
    print(f"\naudit against a 0.75 cap: passed={report.passed} "
          f"(max z = {report.max_z:.1f})")
    print("the drift audit rejects the cap: this behavior needs memory, "
          "not a catalyst.")


if __name__ == "__main__":
    main()
