"""
Solving a random tractable instance
===================================

Draw a seeded instance without forbidden heavy components, inspect how its
heavy components are classified, orient it and confirm the result is EFX.
"""

import json
from collections import Counter

from efxorient import envy_report, gen_random_instance, solve
from efxorient.structure import analysis_report

inst = gen_random_instance(8, 3, 0.5, seed=2024, avoid_forbidden=True)
print(f"{inst.n} vertices, {inst.m} edges, alpha={inst.alpha}, beta={inst.beta}")

report = analysis_report(inst)
for comp in report["heavy_components"]:
    print(" heavy component", comp["vertices"], "->", comp["kind"])

# The step counter records every elementary operation of the pipeline.
steps = Counter()
out = solve(inst, steps=steps, check=True)
print("owners:", out.orientation.owners)
print("steps:", dict(steps))

env = envy_report(inst, out.orientation)
print("EF:", env.is_ef, "EFX:", env.is_efx)
print(json.dumps(env.to_dict()["envy"], indent=1))
