"""Heavy-component decomposition and classification.

A heavy component is a maximal vertex set connected by heavy non-loop
edges. Each one falls into exactly one of four kinds:

``TRIVIAL``
    a single vertex without a heavy self-loop;
``TYPE1``
    the heavy edges form a multitree (a tree once parallel edges are merged)
    in which some pair has an even number of heavy edges;
``TYPE2``
    the heavy edges do not form a multitree (a heavy self-loop, or a cycle
    after merging parallels);
``FORBIDDEN``
    a non-trivial multitree in which every merged edge has odd heavy
    multiplicity. These are exactly the components that can block an EFX
    orientation.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import Instance, multiplicity


class ComponentKind(enum.Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"
    TRIVIAL = "trivial"
    FORBIDDEN = "forbidden_odd_multitree"


@dataclass(frozen=True)
class HeavyComponentInfo:
    vertices: tuple[int, ...]
    kind: ComponentKind
    special_pair: Optional[tuple[int, int]] = None
    # heavy self-loop or heavy non-tree edge (TYPE2 only)
    witness_edge: Optional[int] = None
    spanning_tree: tuple[int, ...] = field(default=())

    def to_dict(self) -> dict:
        d = {"vertices": list(self.vertices), "kind": self.kind.value}
        if self.special_pair is not None:
            d["special_pair"] = list(self.special_pair)
        if self.witness_edge is not None:
            d["witness_edge"] = self.witness_edge
        d["spanning_tree"] = list(self.spanning_tree)
        return d


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                ra, rb = rb, ra
            self.parent[ra] = rb


def _groups(n: int, dsu: _DSU) -> list[tuple[int, ...]]:
    buckets: dict[int, list[int]] = {}
    for v in range(n):
        buckets.setdefault(dsu.find(v), []).append(v)
    return sorted(tuple(b) for b in buckets.values())


def connected_components(inst: Instance) -> list[tuple[int, ...]]:
    dsu = _DSU(inst.n)
    for e in inst.edges:
        if not e.is_loop:
            dsu.union(e.u, e.v)
    return _groups(inst.n, dsu)


def heavy_components(inst: Instance) -> list[tuple[int, ...]]:
    dsu = _DSU(inst.n)
    for e in inst.edges:
        if e.is_heavy and not e.is_loop:
            dsu.union(e.u, e.v)
    return _groups(inst.n, dsu)


class _HeavyView:
    """Condensed heavy graph restricted to one heavy component."""

    def __init__(self, inst: Instance, K: Iterable[int], edges=None):
        self.K = tuple(sorted(set(K)))
        members = set(self.K)
        # condensed pair -> heavy edge ids (ascending)
        self.pairs: dict[tuple[int, int], list[int]] = {}
        self.heavy_loops: list[int] = []
        for e in inst.edges if edges is None else edges:
            if not e.is_heavy:
                continue
            inside = (e.u in members) + (e.v in members)
            if inside == 1:
                raise ValueError("vertex set is not a heavy component (heavy edge leaves it)")
            if inside == 0:
                continue
            if e.is_loop:
                self.heavy_loops.append(e.id)
            else:
                self.pairs.setdefault(e.pair, []).append(e.id)
        self.adj: dict[int, list[int]] = {v: [] for v in self.K}
        for a, b in self.pairs:
            self.adj[a].append(b)
            self.adj[b].append(a)
        for v in self.K:
            self.adj[v].sort()
        if len(self.K) > 1 and not self._connected():
            raise ValueError("vertex set is not a heavy component (not heavy-connected)")

    def _connected(self) -> bool:
        seen = {self.K[0]}
        stack = [self.K[0]]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.K)

    def is_condensed_tree(self) -> bool:
        return len(self.pairs) == len(self.K) - 1

    def spanning_tree(self, seed: Optional[tuple[int, int]] = None) -> list[int]:
        """BFS spanning tree (one lowest-id heavy edge per condensed edge)."""
        if seed is None:
            roots = [self.K[0]]
            tree: list[int] = []
        else:
            roots = list(seed)
            tree = [self.pairs[seed][0]]
        seen = set(roots)
        queue = deque(roots)
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    tree.append(self.pairs[(min(x, y), max(x, y))][0])
                    queue.append(y)
        return tree


def _check_component(inst: Instance, K: Iterable[int], edges=None) -> _HeavyView:
    view = _HeavyView(inst, K, edges)
    if not view.K:
        raise ValueError("empty vertex set")
    return view


def is_multitree(inst: Instance, K: Iterable[int]) -> bool:
    view = _check_component(inst, K)
    return not view.heavy_loops and view.is_condensed_tree()


def is_odd_multitree(inst: Instance, K: Iterable[int]) -> bool:
    view = _check_component(inst, K)
    if view.heavy_loops or not view.is_condensed_tree():
        return False
    return all(len(ids) % 2 == 1 for ids in view.pairs.values())


def classify_heavy_component(inst: Instance, K: Iterable[int], _edges=None) -> HeavyComponentInfo:
    view = _check_component(inst, K, _edges)
    verts = view.K
    if len(verts) == 1 and not view.heavy_loops:
        return HeavyComponentInfo(verts, ComponentKind.TRIVIAL)

    if view.heavy_loops or not view.is_condensed_tree():
        tree = view.spanning_tree()
        if view.heavy_loops:
            witness = view.heavy_loops[0]
        else:
            used = {inst.edges[t].pair for t in tree}
            witness = min(ids[0] for p, ids in view.pairs.items() if p not in used)
        return HeavyComponentInfo(verts, ComponentKind.TYPE2, witness_edge=witness,
                                  spanning_tree=tuple(tree))

    even = sorted(p for p, ids in view.pairs.items() if len(ids) % 2 == 0)
    if even:
        pair = even[0]
        return HeavyComponentInfo(verts, ComponentKind.TYPE1, special_pair=pair,
                                  spanning_tree=tuple(view.spanning_tree(seed=pair)))
    return HeavyComponentInfo(verts, ComponentKind.FORBIDDEN,
                              spanning_tree=tuple(view.spanning_tree()))


def analyze(inst: Instance) -> list[HeavyComponentInfo]:
    comps = heavy_components(inst)
    where = {}
    for k, K in enumerate(comps):
        for v in K:
            where[v] = k
    buckets: list[list] = [[] for _ in comps]
    for e in inst.edges:
        if e.is_heavy:
            buckets[where[e.u]].append(e)
    return [classify_heavy_component(inst, K, buckets[k]) for k, K in enumerate(comps)]


def forbidden_components(inst: Instance) -> list[HeavyComponentInfo]:
    return [c for c in analyze(inst) if c.kind is ComponentKind.FORBIDDEN]


def has_forbidden_structure(inst: Instance) -> bool:
    return bool(forbidden_components(inst))


def is_bipartite(inst: Instance) -> Optional[list[int]]:
    """Proper 2-colouring (0/1 per vertex) ignoring self-loops, or None."""
    adj: list[list[int]] = [[] for _ in range(inst.n)]
    for e in inst.edges:
        if not e.is_loop:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
    color = [-1] * inst.n
    for s in range(inst.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
    return color


def analysis_report(inst: Instance) -> dict:
    comps = analyze(inst)
    return {
        "vertices": inst.n,
        "edges": inst.m,
        "alpha": str(inst.alpha),
        "beta": str(inst.beta),
        "multiplicity": multiplicity(inst),
        "bipartite": is_bipartite(inst) is not None,
        "connected_components": [list(c) for c in connected_components(inst)],
        "heavy_components": [c.to_dict() for c in comps],
        "forbidden": any(c.kind is ComponentKind.FORBIDDEN for c in comps),
    }
