"""Exact envy, strong-envy, EF, EFX and PEF checks for (partial) orientations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import Instance, all_utilities, as_owners, utility, utility_of_bundle_to


def _distinct(inst: Instance, i: int, j: int) -> None:
    if i == j:
        raise ValueError("i and j must differ")
    for x in (i, j):
        if not 0 <= x < inst.n:
            raise IndexError(f"vertex {x} out of range")


def envies(inst: Instance, pi, i: int, j: int) -> bool:
    _distinct(inst, i, j)
    return utility(inst, pi, i) < utility_of_bundle_to(inst, pi, i, j)


def strongly_envies(inst: Instance, pi, i: int, j: int) -> tuple[bool, Optional[int]]:
    """Whether ``i`` still envies ``j`` after dropping some good from ``j``'s bundle.

    Returns the flag and the lowest-id good whose removal leaves the envy in
    place. Goods of ``j`` not incident with ``i`` are worth nothing to ``i``,
    so dropping one of them never relieves envy.
    """
    _distinct(inst, i, j)
    owners = as_owners(pi)
    mine = utility(inst, pi, i)
    theirs = utility_of_bundle_to(inst, pi, i, j)
    if not mine < theirs:
        return False, None
    for e in inst.edges:
        if owners[e.id] != j:
            continue
        worth = inst.weight(e) if i in (e.u, e.v) else Fraction(0)
        if mine < theirs - worth:
            return True, e.id
    return False, None


@dataclass(frozen=True)
class PairEnvy:
    envies: bool
    strongly_envies: bool
    witness_edge: Optional[int] = None


@dataclass
class EnvyReport:
    """Envy status for every ordered pair ``(i, j)``, ``i != j``."""

    n: int
    pairs: dict[tuple[int, int], PairEnvy]

    @property
    def is_ef(self) -> bool:
        return not any(p.envies for p in self.pairs.values())

    @property
    def is_efx(self) -> bool:
        return not any(p.strongly_envies for p in self.pairs.values())

    def __getitem__(self, ij: tuple[int, int]) -> PairEnvy:
        return self.pairs[ij]

    def to_dict(self) -> dict:
        """JSON-ready form listing only pairs where envy occurs."""
        rows = []
        for (i, j), p in sorted(self.pairs.items()):
            if p.envies:
                rows.append({"i": i, "j": j, "envies": True,
                             "strongly_envies": p.strongly_envies,
                             "witness_edge": p.witness_edge})
        return {"ef": self.is_ef, "efx": self.is_efx, "envy": rows}


class _PairTable:
    """Per ordered pair aggregates over goods owned by ``j`` and incident with ``i``."""

    def __init__(self, inst: Instance, pi):
        owners = as_owners(pi)
        self.util = all_utilities(inst, owners)
        self.owned = [0] * inst.n
        self.value: dict[tuple[int, int], Fraction] = {}
        self.count: dict[tuple[int, int], int] = {}
        self.cheapest: dict[tuple[int, int], Fraction] = {}
        for e in inst.edges:
            j = owners[e.id]
            if j is None:
                continue
            self.owned[j] += 1
            if e.is_loop:
                continue
            i = e.other(j)
            w = inst.weight(e)
            key = (i, j)
            self.value[key] = self.value.get(key, Fraction(0)) + w
            self.count[key] = self.count.get(key, 0) + 1
            self.cheapest[key] = min(self.cheapest.get(key, w), w)

    def envious_pairs(self):
        for (i, j), val in self.value.items():
            if self.util[i] < val:
                yield i, j, val

    def strong(self, i: int, j: int, val: Fraction) -> bool:
        drop = Fraction(0) if self.owned[j] > self.count[(i, j)] else self.cheapest[(i, j)]
        return self.util[i] < val - drop


def is_ef(inst: Instance, pi) -> bool:
    return next(_PairTable(inst, pi).envious_pairs(), None) is None


def is_efx(inst: Instance, pi) -> bool:
    table = _PairTable(inst, pi)
    return not any(table.strong(i, j, val) for i, j, val in table.envious_pairs())


def envy_report(inst: Instance, pi) -> EnvyReport:
    table = _PairTable(inst, pi)
    pairs = {(i, j): PairEnvy(False, False)
             for i in range(inst.n) for j in range(inst.n) if i != j}
    for i, j, val in table.envious_pairs():
        if table.strong(i, j, val):
            _, witness = strongly_envies(inst, pi, i, j)
            pairs[(i, j)] = PairEnvy(True, True, witness)
        else:
            pairs[(i, j)] = PairEnvy(True, False)
    return EnvyReport(inst.n, pairs)


def is_pef_pair(inst: Instance, pi, i: int, j: int) -> bool:
    """Private envy-freeness: equal shares of the edges strictly between i and j."""
    _distinct(inst, i, j)
    owners = as_owners(pi)
    share = {i: Fraction(0), j: Fraction(0)}
    for e in inst.edges:
        if e.is_loop or {e.u, e.v} != {i, j}:
            continue
        o = owners[e.id]
        if o is not None:
            share[o] += inst.weight(e)
    # weights are symmetric, so i's and j's views of both shares coincide
    return share[i] == share[j]
