"""Value types for bi-valued symmetric multigraphs and their orientations.

An instance is a multigraph whose edges are goods and whose vertices are
agents. Every edge is worth the same to both endpoints: ``alpha`` for heavy
edges and ``beta`` for light ones, with ``alpha > beta >= 0``. Weights are
kept as :class:`fractions.Fraction` so that envy comparisons are exact.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Union

Rational = Fraction
Owners = Sequence[Optional[int]]


class EdgeClass(enum.Enum):
    HEAVY = "heavy"
    LIGHT = "light"


HEAVY = EdgeClass.HEAVY
LIGHT = EdgeClass.LIGHT


class Edge(NamedTuple):
    id: int
    u: int
    v: int
    cls: EdgeClass

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def is_heavy(self) -> bool:
        return self.cls is HEAVY

    @property
    def pair(self) -> tuple[int, int]:
        """Unordered endpoint pair as a sorted tuple."""
        return (self.u, self.v) if self.u <= self.v else (self.v, self.u)

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"vertex {x} is not an endpoint of edge {self.id}")


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"7/2"`` to a Fraction.

    Floats are rejected: they would silently smuggle rounding error into
    envy comparisons.
    """
    if isinstance(x, float):
        raise TypeError("float weights are not accepted; use int, Fraction or 'p/q'")
    return Fraction(x)


@dataclass(frozen=True)
class Instance:
    n: int
    edges: tuple[Edge, ...]
    alpha: Fraction
    beta: Fraction

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight(self, e: Union[Edge, int]) -> Fraction:
        if isinstance(e, int):
            e = self.edges[e]
        return self.alpha if e.cls is HEAVY else self.beta

    def subinstance(self, vertices: Iterable[int]) -> tuple["Instance", list[int], list[int]]:
        """Induced sub-instance on ``vertices``.

        Returns ``(sub, vertex_map, edge_map)`` where ``vertex_map[k]`` is the
        original id of local vertex ``k`` and ``edge_map[k]`` the original id
        of local edge ``k``.
        """
        vmap = sorted(set(vertices))
        local = {v: k for k, v in enumerate(vmap)}
        edges, emap = [], []
        for e in self.edges:
            if e.u in local and e.v in local:
                edges.append((local[e.u], local[e.v], e.cls))
                emap.append(e.id)
        return new_instance(len(vmap), self.alpha, self.beta, edges), vmap, emap


@dataclass(frozen=True)
class Orientation:
    """Per-edge owner; ``None`` marks an edge that is not yet oriented."""

    owners: tuple[Optional[int], ...]

    def __len__(self) -> int:
        return len(self.owners)

    def __getitem__(self, e: int) -> Optional[int]:
        return self.owners[e]

    @property
    def is_complete(self) -> bool:
        return all(o is not None for o in self.owners)

    def bundle(self, i: int) -> list[int]:
        return [e for e, o in enumerate(self.owners) if o == i]

    @classmethod
    def empty(cls, inst: Instance) -> "Orientation":
        return cls((None,) * inst.m)


def new_instance(n: int, alpha, beta, edges: Iterable) -> Instance:
    """Build a validated instance.

    ``edges`` holds ``(u, v, cls)`` triples where ``cls`` is an
    :class:`EdgeClass`, the string ``"heavy"``/``"light"`` or a bool meaning
    heavy. Edge ids are list positions.
    """
    alpha, beta = as_rational(alpha), as_rational(beta)
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    if not alpha > beta:
        raise ValueError(f"alpha must exceed beta, got alpha={alpha} beta={beta}")
    out = []
    for k, item in enumerate(edges):
        u, v, cls = item
        if isinstance(cls, bool):
            cls = HEAVY if cls else LIGHT
        else:
            cls = EdgeClass(cls)
        for x in (u, v):
            if not (isinstance(x, int) and 0 <= x < n):
                raise ValueError(f"edge {k} endpoint {x!r} out of range for n={n}")
        out.append(Edge(k, u, v, cls))
    return Instance(n, tuple(out), alpha, beta)


def as_owners(pi: Union[Orientation, Owners]) -> Owners:
    return pi.owners if isinstance(pi, Orientation) else pi


def validate_orientation(inst: Instance, pi: Union[Orientation, Owners]) -> Orientation:
    owners = tuple(as_owners(pi))
    if len(owners) != inst.m:
        raise ValueError(f"orientation has {len(owners)} entries, instance has {inst.m} edges")
    for e, o in zip(inst.edges, owners):
        if o is not None and o not in (e.u, e.v):
            raise ValueError(f"edge {e.id} ({e.u},{e.v}) cannot be owned by {o}")
    return Orientation(owners)


def _check_vertex(inst: Instance, i: int) -> None:
    if not 0 <= i < inst.n:
        raise IndexError(f"vertex {i} out of range")


def utility(inst: Instance, pi, i: int) -> Fraction:
    """Value agent ``i`` gets from its own bundle."""
    _check_vertex(inst, i)
    owners = as_owners(pi)
    return sum((inst.weight(e) for e in inst.edges if owners[e.id] == i), Fraction(0))


def utility_of_bundle_to(inst: Instance, pi, i: int, j: int) -> Fraction:
    """Value agent ``i`` assigns to agent ``j``'s bundle.

    Only edges between ``i`` and ``j`` count; everything else ``j`` holds is
    not incident with ``i`` and is worth nothing to it.
    """
    _check_vertex(inst, i)
    _check_vertex(inst, j)
    if i == j:
        raise ValueError("i and j must differ")
    owners = as_owners(pi)
    total = Fraction(0)
    for e in inst.edges:
        if owners[e.id] == j and i in (e.u, e.v):
            total += inst.weight(e)
    return total


def all_utilities(inst: Instance, pi) -> list[Fraction]:
    owners = as_owners(pi)
    util = [Fraction(0)] * inst.n
    for e in inst.edges:
        o = owners[e.id]
        if o is not None:
            util[o] += inst.weight(e)
    return util


@dataclass(frozen=True)
class ParallelClass:
    endpoints: tuple[int, int]
    members: tuple[int, ...]
    heavy_count: int
    light_count: int

    @property
    def is_loop(self) -> bool:
        return self.endpoints[0] == self.endpoints[1]

    def __len__(self) -> int:
        return len(self.members)


def edges_by_pair(inst: Instance) -> dict[tuple[int, int], list[int]]:
    groups: dict[tuple[int, int], list[int]] = defaultdict(list)
    for e in inst.edges:
        groups[e.pair].append(e.id)
    return groups


def parallel_classes(inst: Instance) -> list[ParallelClass]:
    out = []
    for pair, ids in sorted(edges_by_pair(inst).items()):
        heavy = sum(1 for k in ids if inst.edges[k].is_heavy)
        out.append(ParallelClass(pair, tuple(ids), heavy, len(ids) - heavy))
    return out


def multiplicity(inst: Instance) -> int:
    return max((len(c) for c in parallel_classes(inst)), default=0)
