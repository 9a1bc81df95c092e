"""What a handful of function values can and cannot pin down.

Observing a Lipschitz-L function at n points leaves a precise residue of
uncertainty: every function threading the data stays between two explicit
piecewise-linear envelopes, and the set of integrals consistent with the data
is an interval H. Half the length of H -- the radius of information -- is the
best worst-case integration error anyone can guarantee from those values,
no matter how cleverly they are combined.
"""

from qibc import (
    Design,
    envelopes,
    eval,
    exact_integral,
    interval_H,
    observe,
    pwl,
    worst_radius,
)

L = 1.0

# the "hidden" function: piecewise linear, every slope strictly below L
f = pwl([(0.0, 0.2), (0.4, 0.5), (0.7, 0.35), (1.0, 0.55)])
print("hidden integral:", exact_integral(f))
print()

# observe it at 1, 2, then 4 points and watch H shrink
for pts in [(0.5,), (0.25, 0.75), (0.125, 0.375, 0.625, 0.875)]:
    d = Design(pts)
    y = observe(f, d)
    rep = interval_H(envelopes(d, y, L))
    print(
        f"n={d.n}: H = [{rep.h_lo:.6f}, {rep.h_hi:.6f}]"
        f"  radius = {rep.radius:.6f}  center = {rep.center:.6f}"
    )
print()

# the envelopes really do sandwich the hidden function
d = Design((0.25, 0.75))
env = envelopes(d, observe(f, d), L)
for x in (0.0, 0.1, 0.5, 0.9):
    lo, mid, hi = eval(env.lower, x), eval(f, x), eval(env.upper, x)
    assert lo <= mid <= hi
    print(f"x={x:.2f}:  lower {lo:+.4f}  <=  f {mid:+.4f}  <=  upper {hi:+.4f}")
print()

# the radius above depends on the observed data; the design's guarantee is
# its worst case over all consistent data, attained at constant data
print("worst-case radius of {0.25, 0.75}:", worst_radius(d, L))
print("radius at this particular data:   ", interval_H(env).radius)
