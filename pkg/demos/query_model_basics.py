"""The quantum query model, one oracle call at a time.

A query algorithm never sees the input function directly. It sees the
unitary Q_f |j>|k> = |j>|k XOR beta(f(tau(j)))>: index j selects the grid
point tau(j) = (2j+1)/2^{m'+1}, the value f(tau(j)) is quantized to an
m''-bit code beta, and that code is XORed into the value register. Applied
to a superposition of indices, one call correlates the registers with every
grid value at once -- that, and nothing else, is the quantum advantage's
raw material.
"""

import math

from qibc import (
    GateOp,
    QuerySpec,
    apply_gate,
    beta_code,
    bit_query,
    pwl,
    query_table,
    tau_point,
    zero_state,
)

ramp = pwl([(0.0, 0.0), (1.0, 1.0)])  # f(x) = x

# two index qubits, one value qubit: grid of 4 points, codes in {0, 1}
q = QuerySpec(m_prime=2, m_double_prime=1, range_lo=0.0, range_hi=1.0)
print("grid and codes for f(x) = x:")
for j in range(4):
    x = tau_point(j, q)
    print(f"  j={j}: tau={x}  f={x}  beta={beta_code(x, q)}")
print("query_table:", query_table(ramp, q))
print()

# a classical query: |j=2>|0> -> |j=2>|beta(f(tau(2)))>
s = zero_state(3)
s = apply_gate(s, GateOp("X", (0,)))  # index 0b10 = 2 (qubit 0 is the MSB)
s = bit_query(s, ramp, q)
hot = [i for i, a in enumerate(s.amplitudes) if abs(a) > 1e-12]
print("basis state after querying j=2:", format(hot[0], "03b"))
print()

# a quantum query: superpose the index first, then one call entangles
s = zero_state(3)
s = apply_gate(s, GateOp("H", (0,)))
s = apply_gate(s, GateOp("H", (1,)))
s = bit_query(s, ramp, q)
print("state after one query on a uniform index superposition:")
for i, a in enumerate(s.amplitudes):
    if abs(a) > 1e-12:
        print(f"  |{format(i, '03b')}>  amplitude {a.real:+.4f}")
print()

# the oracle is an involution: a second call uncomputes the first
s = bit_query(s, ramp, q)
weight = math.fsum(abs(a) ** 2 for a in s.amplitudes[::2])
print("after a second (uncomputing) query, value register is |0> with "
      f"probability {weight:.1f}")
