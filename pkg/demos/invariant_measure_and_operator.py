"""The invariant measure rho_N and the transfer operator.

Shows the density 1/((x+N-1) log(N/(N-1))), checks that the branch
weights of the Perron-Frobenius operator telescope to total mass 1, and
that the constant function is fixed by the operator.
"""

import numpy as np

from renyicf import RhoMeasure, rho_cdf, rho_density, rho_interval
from renyicf.transfer import TailPolicy, apply_transfer, branch_point, branch_weight

for N in (2, 5, 20):
    m = RhoMeasure(N)
    xs = np.linspace(0, 1, 5)
    print(f"N={N:<3} normalizer={m.normalizer:.12f}")
    print("   density:", np.array2string(np.asarray(rho_density(m, xs)), precision=6))
    print("   cdf    :", np.array2string(np.asarray(rho_cdf(m, xs)), precision=6))
    print("   total mass:", rho_interval(m, 0.0, 1.0))

print("\nbranch weights P_{N,i}(x) telescope: sum_{i=N..I} = 1 - (x+N-1)/(x+I)")
N, x, I = 3, 0.4, 2000
i = np.arange(N, I + 1)
print("  partial sum  :", float(np.sum(branch_weight(N, i, x))))
print("  closed form  :", 1 - (x + N - 1) / (x + I))

print("\nthe operator fixes constants (U1 = 1):")
for x in (0.0, 0.3, 1.0):
    val = apply_transfer(N, lambda u: np.ones_like(u), x, TailPolicy(N + 1000))
    print(f"  U1({x}) = {val:.15f}")

print("\ninverse branches cover [0,1): first few images of x=0 / x=1")
for bi in range(N, N + 4):
    print(f"  branch {bi}: [{branch_point(N, bi, 0.0):.6f}, "
          f"{branch_point(N, bi, 1.0):.6f})")
