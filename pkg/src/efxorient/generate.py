"""Seeded random instances."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .core import HEAVY, LIGHT, Instance, new_instance
from .structure import ComponentKind, analyze


class GenerationError(RuntimeError):
    pass


def _random_weights(rng: random.Random, q: int) -> tuple[Fraction, Fraction]:
    beta = Fraction(rng.choice([0, 1, 1, 1, 2, 3]), rng.choice([1, 1, 2]))
    if beta == 0:
        return Fraction(rng.randint(1, 4)), beta
    # cover both sides of alpha = q * beta
    alpha = beta * Fraction(rng.randint(2, 2 * q + 3), 2)
    if alpha <= beta:
        alpha = beta + Fraction(1, 2)
    return alpha, beta


def _draw(rng: random.Random, n: int, q: int, heavy_density: float, m: int,
          loop_prob: float, connected: bool) -> list:
    size: dict[tuple[int, int], int] = {}
    edges = []

    def add(u: int, v: int) -> bool:
        key = (min(u, v), max(u, v))
        if size.get(key, 0) >= q:
            return False
        size[key] = size.get(key, 0) + 1
        edges.append((u, v, HEAVY if rng.random() < heavy_density else LIGHT))
        return True

    if connected:
        for v in range(1, n):
            add(rng.randrange(v), v)
    tries = 0
    while len(edges) < m and tries < 50 * (m + 1):
        tries += 1
        u = rng.randrange(n)
        v = u if rng.random() < loop_prob else rng.randrange(n)
        if u == v and loop_prob == 0:
            continue
        add(u, v)
    rng.shuffle(edges)
    return edges


def gen_random_instance(n: int, q: int, heavy_density: float, seed: int,
                        m: Optional[int] = None, alpha=None, beta=None,
                        loop_prob: float = 0.1, connected: bool = True,
                        avoid_forbidden: bool = False, max_tries: int = 10_000) -> Instance:
    """Random bi-valued multigraph with multiplicity at most ``q``.

    With ``avoid_forbidden`` the draw is repeated (same RNG stream) until no
    heavy component is a non-trivial odd multitree; exhausting ``max_tries``
    raises :class:`GenerationError`. ``m`` defaults to a random count between
    ``n - 1`` and ``3 n``.
    """
    if n < 1 or q < 1 or not 0 <= heavy_density <= 1:
        raise ValueError("need n >= 1, q >= 1 and 0 <= heavy_density <= 1")
    rng = random.Random(seed)
    for _ in range(max_tries):
        if alpha is None or beta is None:
            a, b = _random_weights(rng, q)
        else:
            a, b = Fraction(alpha), Fraction(beta)
        count = m if m is not None else rng.randint(max(n - 1, 1), 3 * n)
        inst = new_instance(n, a, b, _draw(rng, n, q, heavy_density, count, loop_prob, connected))
        if not avoid_forbidden or not any(c.kind is ComponentKind.FORBIDDEN for c in analyze(inst)):
            return inst
    raise GenerationError(f"no instance without forbidden components after {max_tries} draws")


def repair_forbidden(inst: Instance, seed: int = 0) -> Instance:
    """Add heavy edges until no heavy component is a non-trivial odd multitree.

    Each forbidden component gets either a second heavy edge parallel to one of
    its tree edges (making it type 1) or, when every class is full, a heavy
    self-loop (making it type 2). Multiplicity never increases.
    """
    rng = random.Random(seed)
    q = max(1, max((c for c in _class_sizes(inst).values()), default=1))
    sizes = _class_sizes(inst)
    extra = []
    for comp in analyze(inst):
        if comp.kind is not ComponentKind.FORBIDDEN:
            continue
        options = [inst.edges[t].pair for t in comp.spanning_tree]
        rng.shuffle(options)
        options += [(v, v) for v in comp.vertices]
        for u, v in options:
            if sizes.get((u, v), 0) < q:
                sizes[(u, v)] = sizes.get((u, v), 0) + 1
                extra.append((u, v, HEAVY))
                break
        else:
            raise GenerationError(f"cannot repair component {comp.vertices} within multiplicity {q}")
    edges = [(e.u, e.v, e.cls) for e in inst.edges] + extra
    return new_instance(inst.n, inst.alpha, inst.beta, edges)


def _class_sizes(inst: Instance) -> dict[tuple[int, int], int]:
    sizes: dict[tuple[int, int], int] = {}
    for e in inst.edges:
        sizes[e.pair] = sizes.get(e.pair, 0) + 1
    return sizes


def heavy_edge_with_light_loops(q: int, alpha=None, beta=1) -> Instance:
    """Two vertices joined by one heavy edge, each carrying ``q`` light loops.

    With ``alpha > q * beta`` it has no EFX orientation: whoever misses the
    heavy edge holds only ``q * beta`` and the heavy edge alone outweighs it.
    """
    if q < 1:
        raise ValueError("need q >= 1")
    beta = Fraction(beta)
    alpha = q * beta + 1 if alpha is None else Fraction(alpha)
    edges = [(0, 1, HEAVY)] + [(0, 0, LIGHT)] * q + [(1, 1, LIGHT)] * q
    return new_instance(2, alpha, beta, edges)
