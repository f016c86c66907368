"""Independent reference implementations used as test oracles.

Nothing here shares code with the package beyond the data types: envy is
computed literally from the definition and existence by raw enumeration.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from efxorient.core import Instance, new_instance


def value(inst: Instance, i: int, goods) -> Fraction:
    return sum((inst.weight(e) for e in goods if i in (inst.edges[e].u, inst.edges[e].v)),
               Fraction(0))


def naive_strong_envy(inst: Instance, owners, i: int, j: int) -> bool:
    mine = [e for e, o in enumerate(owners) if o == i]
    theirs = [e for e, o in enumerate(owners) if o == j]
    base = value(inst, i, mine)
    return any(value(inst, i, [x for x in theirs if x != g]) > base for g in theirs)


def naive_envy(inst: Instance, owners, i: int, j: int) -> bool:
    mine = [e for e, o in enumerate(owners) if o == i]
    theirs = [e for e, o in enumerate(owners) if o == j]
    return value(inst, i, theirs) > value(inst, i, mine)


def naive_is_efx(inst: Instance, owners) -> bool:
    return not any(naive_strong_envy(inst, owners, i, j)
                   for i in range(inst.n) for j in range(inst.n) if i != j)


def all_raw_orientations(inst: Instance):
    choices = [(e.u,) if e.is_loop else (e.u, e.v) for e in inst.edges]
    return itertools.product(*choices)


def naive_efx_exists(inst: Instance) -> bool:
    return any(naive_is_efx(inst, o) for o in all_raw_orientations(inst))


def naive_efx_count(inst: Instance) -> int:
    return sum(1 for o in all_raw_orientations(inst) if naive_is_efx(inst, o))


weights = st.sampled_from([(3, 1), (2, 1), (5, 2), (4, 1), (Fraction(7, 2), 1),
                           (1, 0), (2, Fraction(3, 2)), (5, 1)])


@st.composite
def instances(draw, max_n: int = 5, max_m: int = 8, loops: bool = True) -> Instance:
    n = draw(st.integers(1, max_n))
    alpha, beta = draw(weights)
    m = draw(st.integers(0, max_m))
    edges = []
    for _ in range(m):
        u = draw(st.integers(0, n - 1))
        v = draw(st.integers(0, n - 1))
        if u == v and not loops:
            continue
        edges.append((u, v, draw(st.booleans())))
    return new_instance(n, alpha, beta, edges)


@st.composite
def oriented(draw, max_n: int = 5, max_m: int = 8, partial: bool = False):
    inst = draw(instances(max_n, max_m))
    owners = []
    for e in inst.edges:
        opts = [e.u, e.v] + ([None] if partial else [])
        owners.append(draw(st.sampled_from(opts)))
    return inst, tuple(owners)
