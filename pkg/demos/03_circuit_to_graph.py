"""
From a circuit to a multigraph and back
=======================================

A NOT/OR circuit becomes a bipartite multigraph whose heavy components are
all odd multitrees, so the polynomial solver cannot touch it. A satisfying
assignment still yields an EFX orientation, and the orientation of each
input's variable edge reads the assignment back.
"""

from efxorient import (build_instance, construct_orientation_from_assignment, extract_assignment,
                       is_efx, parse_circuit, solve, verify_reduction_properties)
from efxorient.circuit import satisfying_assignments

circuit = parse_circuit("""
input x
input y
n = NOT x
o = OR n y
output o
""")
inst, rmap = build_instance(circuit, q=2)
print(f"{inst.n} vertices, {inst.m} edges; gadgets:", [g.kind for g in rmap.gadgets])
print("structure:", verify_reduction_properties(inst, rmap).to_dict())
print("solver says:", solve(inst).reason)

for a in satisfying_assignments(circuit):
    pi = construct_orientation_from_assignment(inst, rmap, a)
    print(a, "-> EFX:", is_efx(inst, pi), "read back:", extract_assignment(rmap, pi))

# x=True, y=False makes the output false, so no orientation is produced.
print(construct_orientation_from_assignment(inst, rmap, {"x": True, "y": False}))
