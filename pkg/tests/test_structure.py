from collections import Counter

import pytest
from hypothesis import given

from efxorient.core import HEAVY, LIGHT, new_instance
from efxorient.generate import heavy_edge_with_light_loops
from efxorient.reduction import gadget_instance
from efxorient.structure import (ComponentKind, analysis_report, analyze, classify_heavy_component,
                                 connected_components, has_forbidden_structure, heavy_components,
                                 is_bipartite, is_multitree, is_odd_multitree)

from support import instances


def _bfs_components(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, out = set(), []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], set()
        while stack:
            x = stack.pop()
            if x not in comp:
                comp.add(x)
                stack.extend(adj[x] - comp)
        seen |= comp
        out.append(tuple(sorted(comp)))
    return sorted(out)


def _naive_kind(inst, K):
    heavy = [e for e in inst.edges if e.is_heavy and e.u in K]
    loops = [e for e in heavy if e.is_loop]
    pairs = Counter(e.pair for e in heavy if not e.is_loop)
    if len(K) == 1 and not loops:
        return ComponentKind.TRIVIAL
    if loops or len(pairs) != len(K) - 1:
        return ComponentKind.TYPE2
    if any(c % 2 == 0 for c in pairs.values()):
        return ComponentKind.TYPE1
    return ComponentKind.FORBIDDEN


def test_two_disjoint_heavy_edges():
    inst = new_instance(4, 2, 1, [(0, 1, HEAVY), (2, 3, HEAVY)])
    assert connected_components(inst) == [(0, 1), (2, 3)]


def test_loop_obstruction_components():
    inst = heavy_edge_with_light_loops(2)
    assert connected_components(inst) == [(0, 1)]
    assert heavy_components(inst) == [(0, 1)]
    assert has_forbidden_structure(inst)


def test_all_light_components_are_singletons():
    inst = new_instance(3, 2, 1, [(0, 1, LIGHT), (1, 2, LIGHT)])
    assert heavy_components(inst) == [(0,), (1,), (2,)]
    assert not has_forbidden_structure(inst)


def test_not_gadget_heavy_components():
    inst, t = gadget_instance("not", 2)
    got = {frozenset(t.labels[v] for v in K) for K in heavy_components(inst)}
    assert got == {frozenset(s) for s in (
        {"u1", "v5"}, {"u5", "v1"}, {"u2", "u3", "u4"}, {"v2", "v3", "v4"})}


def test_multitree_predicates():
    three = new_instance(2, 2, 1, [(0, 1, HEAVY)] * 3)
    assert is_multitree(three, [0, 1]) and is_odd_multitree(three, [0, 1])
    tri = new_instance(3, 2, 1, [(0, 1, HEAVY), (1, 2, HEAVY), (0, 2, HEAVY)])
    assert not is_multitree(tri, [0, 1, 2])
    loop = new_instance(1, 2, 1, [(0, 0, HEAVY)])
    assert not is_multitree(loop, [0])
    two = new_instance(2, 2, 1, [(0, 1, HEAVY)] * 2)
    assert not is_odd_multitree(two, [0, 1])
    assert is_odd_multitree(heavy_edge_with_light_loops(1), [0, 1])
    path = new_instance(3, 2, 1, [(0, 1, HEAVY)] * 3 + [(1, 2, HEAVY)])
    assert is_odd_multitree(path, [0, 1, 2])


def test_non_component_rejected():
    inst = new_instance(3, 2, 1, [(0, 1, HEAVY), (1, 2, HEAVY)])
    with pytest.raises(ValueError):
        is_multitree(inst, [0, 1])


def test_classification_examples():
    t1 = new_instance(2, 3, 1, [(0, 1, HEAVY)] * 2 + [(0, 1, LIGHT)] * 3)
    info = classify_heavy_component(t1, [0, 1])
    assert info.kind is ComponentKind.TYPE1 and info.special_pair == (0, 1)

    tri = new_instance(3, 2, 1, [(0, 1, HEAVY), (1, 2, HEAVY), (0, 2, HEAVY)])
    info = classify_heavy_component(tri, [0, 1, 2])
    assert info.kind is ComponentKind.TYPE2
    assert info.witness_edge not in info.spanning_tree and len(info.spanning_tree) == 2

    info = classify_heavy_component(heavy_edge_with_light_loops(3), [0, 1])
    assert info.kind is ComponentKind.FORBIDDEN

    loop = new_instance(1, 2, 1, [(0, 0, HEAVY)])
    info = classify_heavy_component(loop, [0])
    assert info.kind is ComponentKind.TYPE2 and info.witness_edge == 0


def test_bipartite():
    tri = new_instance(3, 2, 1, [(0, 1, HEAVY), (1, 2, HEAVY), (0, 2, HEAVY)])
    assert is_bipartite(tri) is None
    square = new_instance(4, 2, 1, [(0, 1, LIGHT), (1, 2, LIGHT), (2, 3, LIGHT), (3, 0, LIGHT), (0, 0, HEAVY)])
    col = is_bipartite(square)
    assert col is not None and all(col[e.u] != col[e.v] for e in square.edges if not e.is_loop)


def test_report_shape():
    rep = analysis_report(heavy_edge_with_light_loops(2))
    assert rep["forbidden"] is True and rep["multiplicity"] == 2
    assert rep["heavy_components"][0]["kind"] == "forbidden_odd_multitree"


@given(instances(max_n=7, max_m=12))
def test_components_match_bfs(inst):
    assert connected_components(inst) == _bfs_components(inst.n, [(e.u, e.v) for e in inst.edges])
    heavy = [(e.u, e.v) for e in inst.edges if e.is_heavy]
    assert heavy_components(inst) == _bfs_components(inst.n, heavy)


@given(instances(max_n=7, max_m=12))
def test_classification_matches_definition(inst):
    comps = analyze(inst)
    assert sorted(v for c in comps for v in c.vertices) == list(range(inst.n))
    for c in comps:
        assert c.kind is _naive_kind(inst, set(c.vertices))
        if c.kind is ComponentKind.TRIVIAL:
            continue
        tree = [inst.edges[t] for t in c.spanning_tree]
        assert len(tree) == len(c.vertices) - 1
        assert all(e.is_heavy and not e.is_loop for e in tree)
        assert _bfs_components(len(c.vertices), [(c.vertices.index(e.u), c.vertices.index(e.v))
                                                  for e in tree]) == [tuple(range(len(c.vertices)))]
        if c.kind is ComponentKind.TYPE1:
            v, w = c.special_pair
            k = sum(1 for e in inst.edges if e.is_heavy and e.pair == (v, w))
            assert k > 0 and k % 2 == 0
        if c.kind is ComponentKind.TYPE2:
            assert c.witness_edge is not None and c.witness_edge not in c.spanning_tree
