"""Why the midpoint grid is the right place to look.

Among all n-point designs, the midpoints t_i = (2i-1)/(2n) minimize the
worst-case radius of information, achieving exactly L/(4n). Uniform grids
that include the endpoints waste their two outermost evaluations, and random
designs are reliably worse. Inverting L/(4n) gives m(eps), the minimal
number of function values for accuracy eps -- the classical benchmark the
quantum lower bound is measured against.
"""

import numpy as np

from qibc import Design, m_eps, optimal_design, query_complexity, worst_radius

L = 1.0
rng = np.random.default_rng(7)

print(" n   L/(4n)      midpoint    endpoints   random (best of 20)")
for n in (1, 2, 4, 8, 16):
    mid = worst_radius(optimal_design(n), L)

    # uniform grid including both endpoints (the "obvious" choice)
    if n == 1:
        ends = worst_radius(Design((0.0,)), L)
    else:
        ends = worst_radius(Design(tuple(i / (n - 1) for i in range(n))), L)

    # the luckiest of 20 random designs still loses
    best_random = min(
        worst_radius(Design(tuple(sorted(rng.uniform(0.0, 1.0, size=n)))), L)
        for _ in range(20)
    )

    print(
        f"{n:2d}   {L / (4 * n):<9.6f}   {mid:<9.6f}   {ends:<9.6f}   {best_random:.6f}"
    )
print()

# m(eps): the smallest n whose guarantee L/(4n) meets the target
print("eps        m(eps)   query complexity (c=1)")
for eps in (0.1, 0.025, 0.0025, 0.00025):
    print(f"{eps:<8}   {m_eps(L, eps):<6d}   {query_complexity(L, eps):g}")
