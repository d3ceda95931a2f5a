"""Sampled checks of the two infinite examples: Z acting on (0, inf) and Moebius maps.

    python3 demos/03_numeric.py [samples] [seed]
"""

import sys

from pact.numeric import (
    MoebiusElement,
    funcspace_witness,
    mobius_apply,
    mobius_axiom_check,
    ray_apply,
    ray_funcspace_check,
    ray_phi_check,
)

samples = int(sys.argv[1]) if len(sys.argv) > 1 else 10_000
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0

print("theta_2(1.5) =", ray_apply(2, 1.5), "  theta_-2(1.5) =", ray_apply(-2, 1.5))
n, f = funcspace_witness((0.5, 0.5))
print(f"F = 0.5 is hit by n = {n}, f = {[str(v) for v in f]}")
swap = MoebiusElement(0.0, 1.0, 1.0, 0.0)
print("x -> 1/x at 2:", mobius_apply(swap, 2.0), " at 0:", mobius_apply(swap, 0.0))
print()
for report in (
    ray_phi_check(samples, seed),
    ray_funcspace_check(5, max(1, samples // 10), seed),
    mobius_axiom_check(samples, seed),
):
    print(report.render())
