"""Polynomial-time EFX orientations for instances without forbidden components.

Pipeline per connected component:

1. If no heavy edge exists, :func:`all_light_orientation` returns a balanced
   orientation, which is EFX when every good has the same value.
2. Otherwise every heavy component is oriented on its own
   (:func:`orient_type1` / :func:`orient_type2`), light edges are pushed out
   to the remaining vertices by BFS, and :func:`extend_pair` finishes every
   vertex pair except the special pairs of type-1 components. What is left is
   a matching of light edges, each between a special pair.
3. :func:`finish_matching` orients the matching away from the endpoint that
   holds goods outside the pair.

Instances with a forbidden component (a non-trivial odd multitree) are
refused; deciding them is NP-hard and left to :mod:`efxorient.oracle`.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import Instance, Orientation, edges_by_pair
from .fairness import is_ef, is_efx, is_pef_pair
from .structure import ComponentKind, HeavyComponentInfo, analyze, connected_components


class PipelineError(RuntimeError):
    """A step's precondition failed; indicates a bug rather than bad input."""


@dataclass(frozen=True)
class SolveOutcome:
    orientation: Optional[Orientation] = None
    forbidden_component: Optional[tuple[int, ...]] = None

    @property
    def oriented(self) -> bool:
        return self.orientation is not None

    @property
    def reason(self) -> Optional[str]:
        return None if self.oriented else "ForbiddenStructure"


@dataclass
class PipelineState:
    inst: Instance
    owners: list
    util: list
    processed: set = field(default_factory=set)
    special_pairs: list = field(default_factory=list)
    matching: list = field(default_factory=list)
    steps: Counter = field(default_factory=Counter)

    @classmethod
    def start(cls, inst: Instance, steps: Optional[Counter] = None) -> "PipelineState":
        return cls(inst, [None] * inst.m, [Fraction(0)] * inst.n,
                   steps=steps if steps is not None else Counter())

    def give(self, e: int, owner: int) -> None:
        edge = self.inst.edges[e]
        if self.owners[e] is not None:
            raise PipelineError(f"edge {e} is already oriented")
        if owner not in (edge.u, edge.v):
            raise PipelineError(f"edge {e} cannot go to {owner}")
        self.owners[e] = owner
        self.util[owner] += self.inst.weight(edge)
        self.steps["orient"] += 1

    def orientation(self) -> Orientation:
        return Orientation(tuple(self.owners))


class _Index:
    """Edge lookups shared by the pipeline steps."""

    def __init__(self, inst: Instance):
        self.by_pair = {p: ids for p, ids in edges_by_pair(inst).items() if p[0] != p[1]}
        self.loops: dict[int, list[int]] = {}
        self.adj: list[list[int]] = [[] for _ in range(inst.n)]
        for e in inst.edges:
            if e.is_loop:
                self.loops.setdefault(e.u, []).append(e.id)
        for a, b in sorted(self.by_pair):
            self.adj[a].append(b)
            self.adj[b].append(a)

    def between(self, i: int, j: int) -> list[int]:
        return self.by_pair.get((min(i, j), max(i, j)), [])


def _orient_away(state: PipelineState, tree: Sequence[int], roots: Sequence[int]) -> None:
    """Orient spanning-tree edges away from ``roots`` (each child owns its parent edge)."""
    inst = state.inst
    adj: dict[int, list[tuple[int, int]]] = {}
    for t in tree:
        e = inst.edges[t]
        adj.setdefault(e.u, []).append((e.v, t))
        adj.setdefault(e.v, []).append((e.u, t))
    seen = set(roots)
    queue = deque(roots)
    while queue:
        x = queue.popleft()
        for y, t in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                if state.owners[t] is None:
                    state.give(t, y)
                queue.append(y)


def orient_type1(inst: Instance, comp: HeavyComponentInfo,
                 state: Optional[PipelineState] = None,
                 index: Optional[_Index] = None) -> tuple[Orientation, tuple[int, int]]:
    """Orient a type-1 component around its special pair ``(v, w)``.

    The pair's heavy edges are split evenly and its light edges as evenly as
    possible, leaving one light edge unoriented when their number is odd.
    Every other tree edge goes to the endpoint farther from the pair.
    """
    if comp.kind is not ComponentKind.TYPE1:
        raise ValueError(f"expected a type-1 component, got {comp.kind.value}")
    state = state or PipelineState.start(inst)
    v, w = comp.special_pair
    index = index or _Index(inst)
    between = [inst.edges[k] for k in index.between(v, w)]
    heavy = [e.id for e in between if e.is_heavy]
    light = [e.id for e in between if not e.is_heavy]
    half = len(heavy) // 2
    for k, e in enumerate(heavy):
        state.give(e, v if k < half else w)
    half = len(light) // 2
    for k, e in enumerate(light[: 2 * half]):
        state.give(e, v if k < half else w)
    _orient_away(state, comp.spanning_tree, (v, w))
    state.processed.update(comp.vertices)
    return state.orientation(), (v, w)


def orient_type2(inst: Instance, comp: HeavyComponentInfo,
                 state: Optional[PipelineState] = None) -> Orientation:
    """Give every vertex of a type-2 component exactly one heavy edge.

    The spanning tree is oriented away from the witness vertex, which in
    turn receives the witness (a heavy self-loop or a heavy non-tree edge).
    """
    if comp.kind is not ComponentKind.TYPE2:
        raise ValueError(f"expected a type-2 component, got {comp.kind.value}")
    state = state or PipelineState.start(inst)
    witness = inst.edges[comp.witness_edge]
    root = min(witness.u, witness.v)
    _orient_away(state, comp.spanning_tree, (root,))
    state.give(witness.id, root)
    state.processed.update(comp.vertices)
    return state.orientation()


def two_agent_efx_split(values: Sequence) -> tuple[list[int], list[int]]:
    """Split goods between two agents sharing one valuation.

    Goods go in descending value to the currently poorer part (ties to A);
    the result is EFX for both parts and ``value(B) >= value(A)``.
    Returns index lists into ``values``.
    """
    order = sorted(range(len(values)), key=lambda k: (-values[k], k))
    a: list[int] = []
    b: list[int] = []
    va = vb = 0
    for k in order:
        if va <= vb:
            a.append(k)
            va += values[k]
        else:
            b.append(k)
            vb += values[k]
    if va > vb:
        a, b = b, a
    return sorted(a), sorted(b)


def extend_pair(inst: Instance, state: PipelineState, i: int, j: int,
                index: Optional[_Index] = None) -> PipelineState:
    """Orient every remaining edge between ``i`` and ``j`` plus their self-loops, keeping EF."""
    if i == j:
        raise ValueError("i and j must differ")
    index = index or _Index(inst)
    between = index.between(i, j)
    done = [e for e in between if state.owners[e] is not None]
    if len(done) > 1:
        raise PipelineError(f"{len(done)} edges already oriented between {i} and {j}")
    only_light = not any(inst.edges[e].is_heavy for e in between)
    alpha, beta = inst.alpha, inst.beta

    def rich(x: int) -> bool:
        return state.util[x] >= alpha or (only_light and state.util[x] >= beta)

    if done:
        # relabel so that the pre-oriented edge points to i
        if state.owners[done[0]] == j:
            i, j = j, i
        ok = rich(i) and rich(j)
    elif rich(i):
        ok = True
    elif rich(j):
        i, j = j, i
        ok = True
    else:
        ok = False
    if not ok:
        raise PipelineError(f"no extension condition holds for pair ({i}, {j})")

    todo = [e for e in between if state.owners[e] is None]
    part_i, part_j = two_agent_efx_split([inst.weight(e) for e in todo])
    for k in part_i:
        state.give(todo[k], i)
    for k in part_j:
        state.give(todo[k], j)
    for x in (i, j):
        for e in index.loops.get(x, ()):
            if state.owners[e] is None:
                state.give(e, x)
    state.steps["extend_pair"] += 1
    return state


def all_light_orientation(inst: Instance, steps: Optional[Counter] = None) -> Orientation:
    """EFX orientation of an instance without heavy edges.

    With a single positive edge value, a utility is just a count of owned
    edges. Edges are flipped toward the poorer endpoint until no owner holds
    two more edges than the other endpoint of any edge it owns; at that point
    no agent can strongly envy another.
    """
    if any(e.is_heavy for e in inst.edges):
        raise ValueError("instance has heavy edges")
    steps = steps if steps is not None else Counter()
    owners: list = [None] * inst.m
    load = [0] * inst.n
    for e in inst.edges:
        if e.is_loop:
            owners[e.id] = e.u
            load[e.u] += 1
    for e in inst.edges:
        if not e.is_loop:
            o = e.u if (load[e.u], e.u) <= (load[e.v], e.v) else e.v
            owners[e.id] = o
            load[o] += 1
            steps["orient"] += 1
    owned: list[set] = [set() for _ in range(inst.n)]
    for e in inst.edges:
        if not e.is_loop:
            owned[owners[e.id]].add(e.id)
    queue = deque(range(inst.n))
    queued = [True] * inst.n
    while queue:
        j = queue.popleft()
        queued[j] = False
        for eid in sorted(owned[j]):
            steps["balance_scan"] += 1
            i = inst.edges[eid].other(j)
            if load[j] >= load[i] + 2:
                owned[j].discard(eid)
                owned[i].add(eid)
                owners[eid] = i
                load[j] -= 1
                load[i] += 1
                steps["flip"] += 1
                for x in (i, j):
                    if not queued[x]:
                        queued[x] = True
                        queue.append(x)
    return Orientation(tuple(owners))


def _check_invariants(state: PipelineState, where: str) -> None:
    inst = state.inst
    if not is_ef(inst, state.owners):
        raise PipelineError(f"orientation not EF after {where}")
    for x in state.processed:
        if state.util[x] < inst.beta:
            raise PipelineError(f"processed vertex {x} below beta after {where}")


def orient_all_but_matching(inst: Instance, comps: Optional[list] = None,
                            steps: Optional[Counter] = None,
                            check: bool = False) -> PipelineState:
    """EF partial orientation leaving only a matching of light edges unoriented.

    ``inst`` must be connected, free of forbidden components and contain a
    non-trivial heavy component. With ``check=True`` the pipeline invariants
    (EF, processed vertices hold at least beta) are asserted after each step.
    """
    comps = comps if comps is not None else analyze(inst)
    if any(c.kind is ComponentKind.FORBIDDEN for c in comps):
        raise PipelineError("instance contains a forbidden component")
    if all(c.kind is ComponentKind.TRIVIAL for c in comps):
        raise PipelineError("no non-trivial heavy component")
    state = PipelineState.start(inst, steps)
    index = _Index(inst)

    for c in comps:
        if c.kind is ComponentKind.TYPE1:
            orient_type1(inst, c, state, index)
            state.special_pairs.append(c.special_pair)
        elif c.kind is ComponentKind.TYPE2:
            orient_type2(inst, c, state)
    if check:
        _check_invariants(state, "component orientation")

    queue = deque(sorted(state.processed))
    while queue:
        i = queue.popleft()
        for j in index.adj[i]:
            state.steps["propagate_scan"] += 1
            if j in state.processed:
                continue
            e = index.between(i, j)[0]
            if inst.edges[e].is_heavy:
                raise PipelineError("unprocessed vertex reached by a heavy edge")
            state.give(e, j)
            state.processed.add(j)
            queue.append(j)
    if len(state.processed) != inst.n:
        raise PipelineError("instance is not connected")
    if check:
        _check_invariants(state, "propagation")

    special = set(state.special_pairs)
    for pair in sorted(index.by_pair):
        if pair in special:
            continue
        if any(state.owners[e] is None for e in index.by_pair[pair]) or \
                any(state.owners[e] is None for x in pair for e in index.loops.get(x, ())):
            extend_pair(inst, state, pair[0], pair[1], index)
    for x, loops in sorted(index.loops.items()):
        for e in loops:
            if state.owners[e] is None:
                state.give(e, x)
    if check:
        _check_invariants(state, "pair extension")

    state.matching = [e for e, o in enumerate(state.owners) if o is None]
    if check:
        touched = set()
        for e in state.matching:
            edge = inst.edges[e]
            if edge.is_heavy or edge.pair not in special or touched & {edge.u, edge.v}:
                raise PipelineError("unoriented edges are not a light matching on special pairs")
            touched.update(edge.pair)
            if not is_pef_pair(inst, state.owners, edge.u, edge.v):
                raise PipelineError(f"pair {edge.pair} with a residual edge is not PEF")
    return state


def finish_matching(inst: Instance, state: PipelineState) -> Orientation:
    """Orient each residual light edge toward the endpoint without outside goods."""
    outside = [False] * inst.n
    residual_pairs = {inst.edges[e].pair for e in state.matching}
    for e in inst.edges:
        o = state.owners[e.id]
        if o is None:
            continue
        if e.is_loop or e.pair not in residual_pairs:
            outside[o] = True
    for e in state.matching:
        edge = inst.edges[e]
        if edge.is_heavy or state.owners[e] is not None:
            raise PipelineError(f"edge {e} is not an unoriented light edge")
        a, b = edge.pair
        holder = b if outside[b] and not outside[a] else a
        state.give(e, b if holder == a else a)
    state.matching = []
    return state.orientation()


def _solve_connected(inst: Instance, steps: Counter, check: bool) -> Orientation:
    comps = analyze(inst)
    steps["components"] += len(comps)
    if all(c.kind is ComponentKind.TRIVIAL for c in comps):
        return all_light_orientation(inst, steps)
    state = orient_all_but_matching(inst, comps, steps, check)
    return finish_matching(inst, state)


def solve(inst: Instance, steps: Optional[Counter] = None, check: bool = False) -> SolveOutcome:
    """EFX orientation, or a refusal naming a forbidden heavy component.

    Connected components are handled independently and merged. ``steps``
    collects operation counts; ``check`` turns on invariant assertions.
    """
    steps = steps if steps is not None else Counter()
    for c in analyze(inst):
        if c.kind is ComponentKind.FORBIDDEN:
            return SolveOutcome(forbidden_component=c.vertices)
    owners: list = [None] * inst.m
    for comp in connected_components(inst):
        sub, _, emap = inst.subinstance(comp)
        if sub.m == 0:
            continue
        local = _solve_connected(sub, steps, check)
        for k, o in enumerate(local.owners):
            owners[emap[k]] = comp[o]
    pi = Orientation(tuple(owners))
    if check and not is_efx(inst, pi):
        raise PipelineError("solver produced a non-EFX orientation")
    return SolveOutcome(orientation=pi)
