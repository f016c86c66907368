"""
When EFX orientations do not exist
==================================

Two agents share one heavy edge, and each also owns ``q`` light self-loops.
Whoever loses the heavy edge is left with ``q * beta``. If that is less than
``alpha`` the loser strongly envies the winner, because dropping one of the
winner's loops (worthless to the loser) leaves the heavy edge intact.
"""

from efxorient import exists_efx_orientation, solve, strongly_envies
from efxorient.generate import heavy_edge_with_light_loops

for q in (1, 2, 3):
    inst = heavy_edge_with_light_loops(q)  # alpha = q + 1, beta = 1
    print(f"q={q} alpha={inst.alpha} beta={inst.beta}: EFX exists?",
          exists_efx_orientation(inst) is not None)

# The polynomial solver recognises the obstruction before trying anything.
out = solve(heavy_edge_with_light_loops(2))
print("solver:", out.reason, "on component", out.forbidden_component)

# Give 0 the heavy edge and watch vertex 1 complain.
inst = heavy_edge_with_light_loops(1, 2, 1)
flag, witness = strongly_envies(inst, (0, 0, 1), 1, 0)
print("1 strongly envies 0:", flag, "even after removing edge", witness)

# Make the light goods heavier, alpha <= q*beta, and the obstruction dissolves.
inst = heavy_edge_with_light_loops(2, 3, 2)
print("alpha=3, beta=2, q=2: EFX exists?", exists_efx_orientation(inst) is not None)
