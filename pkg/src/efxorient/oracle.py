"""Exhaustive EFX search for small instances.

Parallel edges of the same weight class are interchangeable: which of them a
vertex owns never changes any utility. The search therefore enumerates one
representative per *class split*, i.e. per choice of how many edges of each
(endpoint pair, weight class) group go to the lower endpoint. Representatives
are decoded in chunks as mixed-radix integers and checked for EFX with numpy
on integer-scaled weights, so the arithmetic stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

import numpy as np

from .core import Instance, Orientation

DEFAULT_BUDGET = 2 ** 24
CHUNK = 1 << 15


class OracleBudgetExceeded(RuntimeError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"{count} representatives exceed the budget of {budget}")
        self.count = count
        self.budget = budget


@dataclass(frozen=True)
class SplitClass:
    """Interchangeable unconstrained edges sharing endpoints and weight class."""

    lo: int
    hi: int
    heavy: bool
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


class _Space:
    def __init__(self, inst: Instance, constraints: Optional[Mapping[int, int]] = None):
        constraints = dict(constraints or {})
        fixed: list = [None] * inst.m
        for e, o in constraints.items():
            if not 0 <= e < inst.m:
                raise ValueError(f"constraint on unknown edge {e}")
            edge = inst.edges[e]
            if o not in (edge.u, edge.v):
                raise ValueError(f"edge {e} ({edge.u},{edge.v}) cannot be fixed to {o}")
            fixed[e] = o
        groups: dict[tuple[int, int, bool], list[int]] = {}
        for edge in inst.edges:
            if fixed[edge.id] is not None:
                continue
            if edge.is_loop:
                fixed[edge.id] = edge.u
                continue
            groups.setdefault((*edge.pair, edge.is_heavy), []).append(edge.id)
        self.inst = inst
        self.fixed = fixed
        self.classes = [SplitClass(lo, hi, h, tuple(ids)) for (lo, hi, h), ids in sorted(groups.items())]
        self.radix = [c.size + 1 for c in self.classes]
        self.count = math.prod(self.radix)

    def decode(self, index: int) -> Orientation:
        owners = list(self.fixed)
        for c, r in zip(self.classes, self.radix):
            index, k = divmod(index, r)
            for pos, e in enumerate(c.members):
                owners[e] = c.lo if pos < k else c.hi
        return Orientation(tuple(owners))


def representative_count(inst: Instance, constraints: Optional[Mapping[int, int]] = None) -> int:
    return _Space(inst, constraints).count


def enumerate_orientations(inst: Instance,
                           constraints: Optional[Mapping[int, int]] = None) -> Iterator[Orientation]:
    """One canonical complete orientation per class split (lowest ids to the lower endpoint)."""
    space = _Space(inst, constraints)
    for k in range(space.count):
        yield space.decode(k)


class _Evaluator:
    """Vectorized EFX test over a block of representative indices."""

    def __init__(self, space: _Space):
        inst = space.inst
        scale = math.lcm(inst.alpha.denominator, inst.beta.denominator)
        a = int(inst.alpha * scale)
        b = int(inst.beta * scale)
        n = inst.n
        self.space = space
        self.n = n
        self.a, self.b = a, b

        # contributions that do not depend on the split
        self.base_util = np.zeros(n, dtype=np.int64)
        self.base_owned = np.zeros(n, dtype=np.int64)
        pairs: dict[tuple[int, int], dict] = {}

        def pair(i, j):
            return pairs.setdefault((i, j), {"fixed_val": 0, "fixed_cnt": 0,
                                             "fixed_light": 0, "fixed_heavy": 0, "terms": []})

        for edge in inst.edges:
            o = space.fixed[edge.id]
            if o is None:
                continue
            w = a if edge.is_heavy else b
            self.base_util[o] += w
            self.base_owned[o] += 1
            if not edge.is_loop:
                p = pair(edge.other(o), o)
                p["fixed_val"] += w
                p["fixed_cnt"] += 1
                p["fixed_heavy" if edge.is_heavy else "fixed_light"] += 1
        # every class contributes to both ordered pairs between its endpoints
        for k, c in enumerate(space.classes):
            pair(c.hi, c.lo)["terms"].append((k, c, True))
            pair(c.lo, c.hi)["terms"].append((k, c, False))
        self.pairs = pairs

    def efx_mask(self, start: int, stop: int) -> np.ndarray:
        space = self.space
        idx = np.arange(start, stop, dtype=np.int64)
        counts = []
        for r in space.radix:
            idx, k = np.divmod(idx, r)
            counts.append(k)
        size = stop - start
        util = np.repeat(self.base_util[:, None], size, axis=1)
        owned = np.repeat(self.base_owned[:, None], size, axis=1)
        for k, c in enumerate(space.classes):
            w = self.a if c.heavy else self.b
            to_lo = counts[k]
            to_hi = c.size - to_lo
            util[c.lo] += w * to_lo
            util[c.hi] += w * to_hi
            owned[c.lo] += to_lo
            owned[c.hi] += to_hi

        ok = np.ones(size, dtype=bool)
        for (i, j), p in self.pairs.items():
            # value of j's bundle to i, and the cheapest good of j that i values
            val = np.full(size, p["fixed_val"], dtype=np.int64)
            cnt = np.full(size, p["fixed_cnt"], dtype=np.int64)
            light = np.full(size, p["fixed_light"], dtype=np.int64)
            heavy = np.full(size, p["fixed_heavy"], dtype=np.int64)
            for k, c, toward_lo in p["terms"]:
                got = counts[k] if toward_lo else c.size - counts[k]
                val += (self.a if c.heavy else self.b) * got
                cnt += got
                if c.heavy:
                    heavy += got
                else:
                    light += got
            cheapest = np.where(light > 0, self.b, self.a)
            drop = np.where(owned[j] > cnt, 0, cheapest)
            strong = (cnt > 0) & (util[i] < val - drop)
            ok &= ~strong
        return ok


def _scan(inst: Instance, constraints, budget: int, stop_at_first: bool):
    space = _Space(inst, constraints)
    if space.count > budget:
        raise OracleBudgetExceeded(space.count, budget)
    ev = _Evaluator(space)
    for start in range(0, space.count, CHUNK):
        stop = min(space.count, start + CHUNK)
        hits = np.flatnonzero(ev.efx_mask(start, stop))
        for h in hits:
            yield space, start + int(h)
            if stop_at_first:
                return


def exists_efx_orientation(inst: Instance, constraints: Optional[Mapping[int, int]] = None,
                           budget: int = DEFAULT_BUDGET) -> Optional[Orientation]:
    """An EFX orientation respecting ``constraints`` (edge id -> owner), or None."""
    for space, k in _scan(inst, constraints, budget, stop_at_first=True):
        return space.decode(k)
    return None


def all_efx_orientations(inst: Instance, constraints: Optional[Mapping[int, int]] = None,
                         budget: int = DEFAULT_BUDGET) -> list[Orientation]:
    return [space.decode(k) for space, k in _scan(inst, constraints, budget, stop_at_first=False)]


def count_efx_orientations(inst: Instance, constraints: Optional[Mapping[int, int]] = None,
                           budget: int = DEFAULT_BUDGET) -> int:
    """Number of EFX class-split representatives (not raw orientations)."""
    space = _Space(inst, constraints)
    if space.count > budget:
        raise OracleBudgetExceeded(space.count, budget)
    ev = _Evaluator(space)
    return sum(int(ev.efx_mask(s, min(space.count, s + CHUNK)).sum())
               for s in range(0, space.count, CHUNK))
