"""
What the gadgets force
======================

Exhaustive search over the standalone gadgets shows how each one
constrains the orientation of its boundary edges.
"""

from efxorient.oracle import all_efx_orientations
from efxorient.reduction import gadget_instance


def port_colours(t, pi):
    return tuple(t.colors[pi.owners[k]] for _, k in t.ports)


for kind in ("not", "or", "dup", "true"):
    inst, t = gadget_instance(kind, q=2)
    seen = sorted({port_colours(t, pi) for pi in all_efx_orientations(inst)})
    roles = [r for r, _ in t.ports]
    print(f"{kind:>4} ports {roles}: owner colours in EFX orientations {seen}")

# The five-vertex chain: its two boundary edges cannot both point inward.
for q in (2, 3):
    inst, t = gadget_instance("hq", q)
    inward = {t.port("e"): t.index("u2"), t.port("e'"): t.index("u4")}
    print(f"chain q={q}: EFX with both ends inward?", bool(all_efx_orientations(inst, inward)))
