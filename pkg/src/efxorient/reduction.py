"""Compile NOT/OR circuits into bi-valued symmetric multigraphs.

Every wire is carried by a heavy *variable edge* between a red and a black
vertex; the wire is true when the red endpoint owns the edge. Gadgets are
glued along variable edges (red to red, black to black):

* ``dup``  copies a wire onto a fresh variable edge;
* ``not``  two copies of ``H_q`` between its input and output edges;
* ``or``   the disjunction of two input edges;
* ``true`` forces the circuit's output edge to be true.

The resulting graph is bipartite, has multiplicity ``q`` and every heavy
component is a non-trivial odd multitree. At ``q = 2`` a satisfying
assignment always extends to an EFX orientation. For ``q >= 3`` the two
halves of the NOT gadget carry different light multiplicities, and a NOT
gadget with a false input has no EFX completion; the forward construction
then raises :class:`ReductionError`.

Template vertex labels: ``u1``..``u9`` and ``v1``..``v5`` for the chain
gadgets; OR uses ``a, a', b, b', v, w, u, v', u', c, c'``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional

from .circuit import Circuit, evaluate, normalize_circuit
from .core import HEAVY, LIGHT, EdgeClass, Instance, Orientation, multiplicity, new_instance
from .fairness import is_efx
from .oracle import enumerate_orientations
from .structure import ComponentKind, analyze, is_bipartite

RED, BLACK = "red", "black"


class ReductionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Template:
    kind: str
    labels: tuple[str, ...]
    colors: tuple[str, ...]
    edges: tuple[tuple[str, str, EdgeClass], ...]
    # role -> local edge index; circuit gadget ports are heavy (red, black) edges
    ports: tuple[tuple[str, int], ...]

    def port(self, role: str) -> int:
        return dict(self.ports)[role]

    def index(self, label: str) -> int:
        return self.labels.index(label)


def _template(kind, spec_vertices, edges, ports) -> Template:
    labels = tuple(v for v, _ in spec_vertices)
    colors = tuple(c for _, c in spec_vertices)
    return Template(kind, labels, colors, tuple(edges), tuple(ports.items()))


def _alternating(labels, first=RED):
    other = BLACK if first == RED else RED
    return [(v, first if k % 2 == 0 else other) for k, v in enumerate(labels)]


@lru_cache(maxsize=None)
def hq_template(q: int) -> Template:
    """``u1 -e- u2 =*= u3 =-= u4 -e'- u5``: the pair u2,u3 has one heavy and q-1 light edges."""
    if q < 2:
        raise ValueError("H_q needs q >= 2")
    edges = [("u1", "u2", LIGHT), ("u2", "u3", HEAVY)]
    edges += [("u2", "u3", LIGHT)] * (q - 1)
    edges += [("u3", "u4", HEAVY), ("u3", "u4", LIGHT), ("u4", "u5", LIGHT)]
    return _template("hq", _alternating(["u1", "u2", "u3", "u4", "u5"]), edges,
                     {"e": 0, "e'": len(edges) - 1})


@lru_cache(maxsize=None)
def not_template(q: int) -> Template:
    if q < 2:
        raise ValueError("the NOT gadget needs q >= 2")
    verts = _alternating(["u1", "u2", "u3", "u4", "u5"], RED) + \
        _alternating(["v1", "v2", "v3", "v4", "v5"], BLACK)
    edges = [("u1", "v5", HEAVY), ("u5", "v1", HEAVY),
             ("u1", "u2", LIGHT), ("u2", "u3", HEAVY)]
    edges += [("u2", "u3", LIGHT)] * (q - 1)
    edges += [("u3", "u4", HEAVY), ("u3", "u4", LIGHT), ("u4", "u5", LIGHT),
              ("v1", "v2", LIGHT), ("v2", "v3", HEAVY)]
    edges += [("v2", "v3", LIGHT)] * (q - 1)
    edges += [("v3", "v4", HEAVY), ("v3", "v4", LIGHT), ("v4", "v5", LIGHT)]
    return _template("not", verts, edges, {"in": 0, "out": 1})


@lru_cache(maxsize=None)
def or_template() -> Template:
    verts = [("a", RED), ("a'", BLACK), ("b", RED), ("b'", BLACK), ("c", RED), ("c'", BLACK),
             ("v", RED), ("w", BLACK), ("u", RED), ("v'", BLACK), ("u'", BLACK)]
    edges = [("a", "a'", HEAVY), ("b", "b'", HEAVY), ("c", "c'", HEAVY),
             ("v", "w", HEAVY), ("w", "u", HEAVY), ("v", "v'", HEAVY), ("u", "u'", HEAVY),
             ("a'", "v", LIGHT), ("w", "c", LIGHT), ("u", "b'", LIGHT),
             ("a", "c'", LIGHT), ("b", "c'", LIGHT)]
    return _template("or", verts, edges, {"x": 0, "y": 1, "out": 2})


@lru_cache(maxsize=None)
def dup_template() -> Template:
    verts = [("a", RED), ("b", BLACK), ("c", RED), ("d", BLACK)]
    edges = [("a", "b", HEAVY), ("c", "d", HEAVY), ("a", "d", LIGHT), ("b", "c", LIGHT)]
    return _template("dup", verts, edges, {"in": 0, "out": 1})


@lru_cache(maxsize=None)
def true_template() -> Template:
    verts = [("u1", BLACK), ("u2", RED), ("u3", BLACK), ("u4", RED), ("u5", BLACK),
             ("u6", RED), ("u7", RED), ("u8", BLACK), ("u9", RED)]
    edges = [("u9", "u8", HEAVY),
             ("u2", "u3", HEAVY), ("u2", "u3", LIGHT), ("u3", "u4", HEAVY), ("u3", "u4", LIGHT),
             ("u5", "u6", HEAVY), ("u1", "u7", HEAVY),
             ("u1", "u2", LIGHT), ("u4", "u5", LIGHT), ("u6", "u1", LIGHT), ("u7", "u8", LIGHT)]
    return _template("true", verts, edges, {"in": 0})


def get_template(kind: str, q: int = 2) -> Template:
    if kind == "not":
        return not_template(q)
    if kind == "hq":
        return hq_template(q)
    return {"or": or_template, "dup": dup_template, "true": true_template}[kind]()


def default_weights(q: int) -> tuple[Fraction, Fraction]:
    return Fraction(q + 1), Fraction(1)


def template_instance(t: Template, alpha, beta) -> Instance:
    return new_instance(len(t.labels), alpha, beta,
                        [(t.index(a), t.index(b), c) for a, b, c in t.edges])


def gadget_instance(kind: str, q: int = 2, alpha=None, beta=None) -> tuple[Instance, Template]:
    """A gadget on its own, vertices numbered in template label order."""
    t = get_template(kind, q)
    if alpha is None or beta is None:
        alpha, beta = default_weights(q)
    return template_instance(t, alpha, beta), t


def exhibited_orientation(kind: str, q: int = 2) -> tuple[str, ...]:
    """Owner labels (template edge order) of the hand-built EFX orientations.

    ``not``: the clockwise orientation with ``x`` true, except that the
    ``q - 1`` parallel light edges at ``u2 u3`` and ``v2 v3`` run
    counterclockwise. ``true``: the tail ``u1 u7 u8 u9`` points toward
    ``u9``; the hexagon runs counterclockwise except the light ``u2 u3`` edge.
    """
    if kind == "not":
        owners = ["u1", "v1", "u2", "u3"] + ["u2"] * (q - 1) + ["u4", "u4", "u5", "v2", "v3"]
        owners += ["v2"] * (q - 1) + ["v4", "v4", "v5"]
        return tuple(owners)
    if kind == "true":
        return ("u9", "u3", "u2", "u4", "u4", "u6", "u7", "u2", "u5", "u1", "u8")
    raise ValueError(f"no exhibited orientation for {kind!r}")


@dataclass(frozen=True)
class GadgetRecord:
    kind: str
    vertices: tuple[int, ...]  # template label order
    edges: tuple[int, ...]  # template edge order
    ports: tuple[tuple[str, int], ...]  # role -> global edge id
    wire: Optional[str] = None  # wire produced (not/or/dup) or checked (true)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices), "edges": list(self.edges),
                "ports": dict(self.ports), "wire": self.wire}


@dataclass
class ReductionMap:
    circuit: Circuit
    q: int
    alpha: Fraction
    beta: Fraction
    colors: list[str]
    wire_edges: dict[str, list[int]]
    gadgets: list[GadgetRecord] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "q": self.q, "alpha": str(self.alpha), "beta": str(self.beta),
            "inputs": list(self.circuit.inputs), "output": self.circuit.output,
            "colors": self.colors,
            "wires": {w: ids for w, ids in self.wire_edges.items()},
            "gadgets": [g.to_dict() for g in self.gadgets],
        }


class _Builder:
    def __init__(self):
        self.colors: list[str] = []
        self.edges: list[tuple[int, int, EdgeClass]] = []

    def vertex(self, color: str) -> int:
        self.colors.append(color)
        return len(self.colors) - 1

    def edge(self, u: int, v: int, cls: EdgeClass) -> int:
        self.edges.append((u, v, cls))
        return len(self.edges) - 1

    def red_black(self, e: int) -> tuple[int, int]:
        u, v, _ = self.edges[e]
        return (u, v) if self.colors[u] == RED else (v, u)

    def place(self, t: Template, bound: Mapping[str, int], wire=None) -> GadgetRecord:
        """Instantiate ``t``; ports named in ``bound`` reuse existing edges."""
        vid: dict[str, int] = {}
        for role, e in bound.items():
            a, b, _ = t.edges[t.port(role)]
            red, black = self.red_black(e)
            vid[a], vid[b] = red, black
        for label, color in zip(t.labels, t.colors):
            if label not in vid:
                vid[label] = self.vertex(color)
        reused = {t.port(role): e for role, e in bound.items()}
        eids = []
        for k, (a, b, cls) in enumerate(t.edges):
            eids.append(reused[k] if k in reused else self.edge(vid[a], vid[b], cls))
        ports = tuple((role, eids[k]) for role, k in t.ports)
        return GadgetRecord(t.kind, tuple(vid[x] for x in t.labels), tuple(eids), ports, wire)


def build_instance(circuit: Circuit, q: int = 2, alpha=None, beta=None) -> tuple[Instance, ReductionMap]:
    """Reduce a circuit to an instance of multiplicity ``q`` with ``alpha > q * beta``.

    Wires read ``k >= 2`` times are copied along a chain of ``k - 1``
    duplication gadgets; the i-th reader takes the i-th edge of the chain.
    """
    if q < 2:
        raise ValueError("the reduction needs q >= 2")
    if alpha is None or beta is None:
        alpha, beta = default_weights(q)
    alpha, beta = Fraction(alpha), Fraction(beta)
    if not alpha > q * beta:
        raise ValueError(f"need alpha > q*beta, got alpha={alpha}, beta={beta}, q={q}")
    circuit = normalize_circuit(circuit)
    uses = circuit.uses()
    b = _Builder()
    gadgets: list[GadgetRecord] = []
    wire_edges: dict[str, list[int]] = {}
    available: dict[str, deque] = {}

    def provide(wire: str, source: int) -> None:
        chain = [source]
        for _ in range(uses[wire] - 1):
            g = b.place(dup_template(), {"in": chain[-1]}, wire)
            gadgets.append(g)
            chain.append(dict(g.ports)["out"])
        wire_edges[wire] = chain
        available[wire] = deque(chain)

    for x in circuit.inputs:
        provide(x, b.edge(b.vertex(RED), b.vertex(BLACK), HEAVY))
    for gate in circuit.gates:
        if gate.op == "NOT":
            g = b.place(not_template(q), {"in": available[gate.args[0]].popleft()}, gate.out)
        else:
            x = available[gate.args[0]].popleft()
            y = available[gate.args[1]].popleft()
            g = b.place(or_template(), {"x": x, "y": y}, gate.out)
        gadgets.append(g)
        provide(gate.out, dict(g.ports)["out"])
    gadgets.append(b.place(true_template(), {"in": available[circuit.output].popleft()},
                           circuit.output))

    inst = new_instance(len(b.colors), alpha, beta, b.edges)
    rmap = ReductionMap(circuit, q, alpha, beta, list(b.colors), wire_edges, gadgets)
    return inst, rmap


def extract_assignment(rmap: ReductionMap, pi) -> dict[str, bool]:
    owners = pi.owners if isinstance(pi, Orientation) else pi
    out = {}
    for x in rmap.circuit.inputs:
        e = rmap.wire_edges[x][0]
        o = owners[e]
        if o is None:
            raise ValueError(f"variable edge of {x!r} is not oriented")
        out[x] = rmap.colors[o] == RED
    return out


# ---------------------------------------------------------------------------
# forward construction: satisfying assignment -> EFX orientation


@lru_cache(maxsize=None)
def _local_completions(kind: str, q: int, alpha: Fraction, beta: Fraction,
                       port_values: tuple[tuple[str, bool], ...]) -> tuple[tuple[int, ...], ...]:
    """EFX-compatible completions of one gadget with fixed port edges.

    A completion is kept when no two non-port vertices strongly envy each
    other (their bundles lie wholly inside the gadget, so this is exact).
    Completions that look the same from outside are merged: same orientation
    on edges at port vertices and same (utility, goods held) at the internal
    vertices next to them. Owners are returned as local vertex indices.
    """
    t = get_template(kind, q)
    inst = template_instance(t, alpha, beta)
    fixed = {}
    port_vertices = set()
    for role, value in port_values:
        k = t.port(role)
        a, b, _ = t.edges[k]  # a is red
        fixed[k] = t.index(a) if value else t.index(b)
        port_vertices.update((t.index(a), t.index(b)))
    internal = [v for v in range(inst.n) if v not in port_vertices]
    at_port = [e.id for e in inst.edges if {e.u, e.v} & port_vertices]
    frontier = sorted({e.other(p) for e in inst.edges for p in (e.u, e.v)
                       if p in port_vertices and e.other(p) not in port_vertices})
    env = _EnvyCheck(inst)
    inside = set(internal)
    inner_pairs = [(i, j) for i in internal for j in env.neighbours[i] if j in inside and i < j]

    seen = {}
    for pi in enumerate_orientations(inst, fixed):
        owners = pi.owners
        if not all(env.pair_ok(owners, i, j) for i, j in inner_pairs):
            continue
        util = [0] * inst.n
        held = [0] * inst.n
        for e in inst.edges:
            util[owners[e.id]] += env.w[e.id]
            held[owners[e.id]] += 1
        key = (tuple(owners[e] for e in at_port),
               tuple((util[v], held[v]) for v in frontier))
        seen.setdefault(key, owners)
    return tuple(seen.values())


class _EnvyCheck:
    """Strong-envy test on partial orientations, integer-scaled weights."""

    def __init__(self, inst: Instance):
        scale = math.lcm(inst.alpha.denominator, inst.beta.denominator)
        a, b = int(inst.alpha * scale), int(inst.beta * scale)
        self.w = [a if e.is_heavy else b for e in inst.edges]
        self.ends = [(e.u, e.v) for e in inst.edges]
        self.incident: list[list[int]] = [[] for _ in range(inst.n)]
        self.neighbours: list[set] = [set() for _ in range(inst.n)]
        for e in inst.edges:
            self.incident[e.u].append(e.id)
            if not e.is_loop:
                self.incident[e.v].append(e.id)
                self.neighbours[e.u].add(e.v)
                self.neighbours[e.v].add(e.u)

    def strong(self, owners, i: int, j: int) -> bool:
        mine = sum(self.w[e] for e in self.incident[i] if owners[e] == i)
        theirs = 0
        cheapest = None
        for e in self.incident[j]:
            if owners[e] != j:
                continue
            worth = self.w[e] if i in self.ends[e] else 0
            theirs += worth
            cheapest = worth if cheapest is None or worth < cheapest else cheapest
        return cheapest is not None and mine < theirs - cheapest

    def pair_ok(self, owners, i: int, j: int) -> bool:
        return not self.strong(owners, i, j) and not self.strong(owners, j, i)


def construct_orientation_from_assignment(inst: Instance, rmap: ReductionMap,
                                          assignment: Mapping[str, bool]) -> Optional[Orientation]:
    """EFX orientation whose variable edges encode ``assignment``.

    Returns None when the assignment does not satisfy the circuit. Each gadget
    is completed from its cached local completions; a backtracking pass picks
    one per gadget so that pairs across shared vertices are also EFX.
    """
    values = evaluate(rmap.circuit, assignment)
    if not values[rmap.circuit.output]:
        return None
    owners: list = [None] * inst.m
    for wire, ids in rmap.wire_edges.items():
        for e in ids:
            edge = inst.edges[e]
            red = edge.u if rmap.colors[edge.u] == RED else edge.v
            owners[e] = red if values[wire] else edge.other(red)

    env = _EnvyCheck(inst)
    neighbours = env.neighbours

    gadget_of: list[set] = [set() for _ in range(inst.n)]
    plans = []
    for gi, g in enumerate(rmap.gadgets):
        for v in g.vertices:
            gadget_of[v].add(gi)
        port_ids = set(dict(g.ports).values())
        port_values = []
        for role, e in g.ports:
            red = inst.edges[e].u if rmap.colors[inst.edges[e].u] == RED else inst.edges[e].v
            port_values.append((role, owners[e] == red))
        cands = _local_completions(g.kind, rmap.q, inst.alpha, inst.beta, tuple(port_values))
        free = [k for k, e in enumerate(g.edges) if e not in port_ids]
        plans.append((g, free, cands))

    # one constraint per adjacent pair; its scope is every gadget touching either end
    constraints = []
    for i in range(inst.n):
        for j in neighbours[i]:
            if i < j and (gadget_of[i] or gadget_of[j]):
                constraints.append((i, j, frozenset(gadget_of[i] | gadget_of[j])))
    touching: list[list[int]] = [[] for _ in plans]
    for c, (_, _, scope) in enumerate(constraints):
        for gi in scope:
            touching[gi].append(c)

    chosen: list = [None] * len(plans)

    def put(gi: int, ci) -> None:
        g, free, cands = plans[gi]
        for k in free:
            owners[g.edges[k]] = None if ci is None else g.vertices[cands[ci][k]]
        chosen[gi] = ci

    def open_in(c: int) -> list[int]:
        return [h for h in constraints[c][2] if chosen[h] is None]

    def holds(c: int) -> bool:
        i, j, _ = constraints[c]
        return env.pair_ok(owners, i, j)

    def prune(gi: int, domains: dict) -> Optional[dict]:
        """Forward checking after assigning ``gi``; returns the saved domains."""
        saved = {}
        for c in touching[gi]:
            rest = open_in(c)
            if not rest:
                if not holds(c):
                    domains.update(saved)
                    return None
            elif len(rest) == 1:
                h = rest[0]
                keep = []
                for ci in domains[h]:
                    put(h, ci)
                    if holds(c):
                        keep.append(ci)
                put(h, None)
                saved.setdefault(h, domains[h])
                domains[h] = keep
                if not keep:
                    domains.update(saved)
                    return None
        return saved

    domains = {gi: list(range(len(p[2]))) for gi, p in enumerate(plans)}
    for c, (_, _, scope) in enumerate(constraints):
        if len(scope) == 1:
            (h,) = scope
            keep = []
            for ci in domains[h]:
                put(h, ci)
                if holds(c):
                    keep.append(ci)
            put(h, None)
            domains[h] = keep

    def search() -> bool:
        todo = [gi for gi in range(len(plans)) if chosen[gi] is None]
        if not todo:
            return True
        gi = min(todo, key=lambda h: (len(domains[h]), h))
        for ci in domains[gi]:
            put(gi, ci)
            saved = prune(gi, domains)
            if saved is not None:
                if search():
                    return True
                domains.update(saved)
            put(gi, None)
        return False

    if not search():
        raise ReductionError("no EFX completion found for a satisfying assignment")
    pi = Orientation(tuple(owners))
    if not is_efx(inst, pi):
        raise ReductionError("assembled orientation is not EFX")
    return pi


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionReport:
    bipartite: bool
    alpha_exceeds_q_beta: bool
    multiplicity_is_q: bool
    odd_multitrees: bool

    @property
    def passed(self) -> bool:
        return self.bipartite and self.alpha_exceeds_q_beta and \
            self.multiplicity_is_q and self.odd_multitrees

    def to_dict(self) -> dict:
        return {"bipartite": self.bipartite, "alpha_exceeds_q_beta": self.alpha_exceeds_q_beta,
                "multiplicity_is_q": self.multiplicity_is_q, "odd_multitrees": self.odd_multitrees,
                "passed": self.passed}


def verify_reduction_properties(inst: Instance, rmap: ReductionMap) -> ReductionReport:
    coloring = is_bipartite(inst)
    colors_ok = len(rmap.colors) == inst.n and all(
        rmap.colors[e.u] != rmap.colors[e.v] for e in inst.edges)
    comps = analyze(inst)
    return ReductionReport(
        bipartite=coloring is not None and colors_ok,
        alpha_exceeds_q_beta=inst.alpha > rmap.q * inst.beta,
        multiplicity_is_q=multiplicity(inst) == rmap.q,
        odd_multitrees=bool(comps) and all(c.kind is ComponentKind.FORBIDDEN for c in comps),
    )
