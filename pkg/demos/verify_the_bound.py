"""The whole argument, end to end, on a concrete instance.

Take eps = 1/40 and L = 1. Classically, m(3*eps) function values are needed
at accuracy 3*eps. Quantumly, a midpoint circuit at accuracy eps exists with
nu qubits -- and counting how many classical evaluations a nu-qubit,
n_eps-query algorithm could have gathered forces

    nu >= log2(m(3*eps)) - 1.

This script builds the circuit, verifies on a worst-case function family
that it really achieves eps (the premise), evaluates both sides, and writes
the algorithm + family to demos/out/ so the same check can be rerun through
the command-line interface.
"""

import math
import os

from qibc import (
    build_bound_fixture,
    function_to_json,
    algorithm_to_json,
    m_eps,
    qubit_lower_bound,
    verify_bound,
)
from qibc.serialize import dump_json_file

eps, L = 1 / 40, 1.0
fix = build_bound_fixture(eps, L)

print(f"eps = {eps}, L = {L}")
print(f"classical: m(3 eps) = {m_eps(L, 3 * eps)} evaluations")
print(f"quantum  : nu = {fix.algorithm.nu} qubits, "
      f"n_eps = {fix.algorithm.num_queries // 2} evaluations in superposition "
      f"({fix.algorithm.num_queries} oracle calls: each is queried, then "
      "uncomputed)")
print(f"family   : {len(fix.family)} worst-case functions, truths "
      f"{[float(v) for v in fix.truths]}")
print()

report = verify_bound(fix.algorithm, fix.family, L=L, eps=eps)
print(f"premise (worst error {report.achieved_error} <= eps): {report.status}")
print(f"bound: nu = {report.nu} >= log2(m(3 eps)) - 1 = {report.rhs}")
print(f"satisfied: {report.satisfied}")
assert report.satisfied
assert math.isclose(report.rhs, qubit_lower_bound(L, eps))
print()

# persist the instance for the CLI:  qibc verify-bound --alg ... --family ...
out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out")
os.makedirs(os.path.join(out, "family_eps40"), exist_ok=True)
dump_json_file(os.path.join(out, "alg_eps40.json"), algorithm_to_json(fix.algorithm))
for i, g in enumerate(fix.family):
    dump_json_file(
        os.path.join(out, "family_eps40", f"f{i}.json"), function_to_json(g)
    )
print("wrote demos/out/alg_eps40.json and demos/out/family_eps40/f0..f"
      f"{len(fix.family) - 1}.json")
