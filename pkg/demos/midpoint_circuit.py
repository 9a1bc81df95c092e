"""The midpoint rule as a reversible circuit.

A classical computation can always be made reversible and then run on a
quantum simulator: here the n = 2^{m'} midpoint evaluations are XOR-queried
one by one into a value register and accumulated by a controlled ripple
adder. The final state is a single basis state encoding the quantized sum,
so measuring it reproduces the midpoint estimate exactly -- same answer,
2 * 2^{m'} oracle calls (each evaluation is queried and later uncomputed),
and a concrete qubit count nu = 2(m' + m'') to hold index, value, and sum.
"""

from qibc import build_reversible_midpoint, exact_integral, pwl

# a tent function on [0, 1] with Lipschitz bound 2, values in [-1, 1]
f = pwl([(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)])
truth = exact_integral(f)

m_prime, m_double_prime = 3, 4  # 8 grid points, 16 quantization levels
alg, dist = build_reversible_midpoint(m_prime, m_double_prime, f, -1.0, 1.0)

print(f"qubits nu = {alg.nu}, oracle calls = {alg.num_queries}")
print()

# the outcome distribution is a point mass on the quantized midpoint sum
top = max(dist.entries, key=lambda e: e[1])
print("outcome (code, probability, decoded value):")
print(f"  j={top[0]}  p={top[1]:.12f}  phi={top[2]}")
print()

print("true integral :", truth)
print("estimate      :", top[2])
print("error         :", abs(top[2] - truth))

# a-priori guarantee: information error L/(4n) plus quantization span/2^{m''}
L, span, n = 2.0, 2.0, 2 ** m_prime
bound = L / (4 * n) + 2 * span / 2 ** m_double_prime
print("a-priori bound:", bound)
assert abs(top[2] - truth) <= bound
