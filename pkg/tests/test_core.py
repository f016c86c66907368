from fractions import Fraction

import pytest
from hypothesis import given

from efxorient.core import (HEAVY, LIGHT, Orientation, all_utilities, multiplicity, new_instance,
                            parallel_classes, utility, utility_of_bundle_to, validate_orientation)
from efxorient.generate import heavy_edge_with_light_loops
from efxorient.reduction import gadget_instance

from support import oriented


def test_loop_obstruction_builds():
    inst = new_instance(2, 2, 1, [(0, 1, HEAVY), (0, 0, LIGHT), (1, 1, LIGHT)])
    assert inst.m == 3 and inst.edges[1].is_loop
    assert inst.alpha == 2 and isinstance(inst.alpha, Fraction)


def test_empty_instance():
    inst = new_instance(1, 1, 0, [])
    assert inst.m == 0 and multiplicity(inst) == 0


@pytest.mark.parametrize("alpha,beta", [(1, 1), (1, 2), (2, -1)])
def test_bad_weights(alpha, beta):
    with pytest.raises(ValueError):
        new_instance(2, alpha, beta, [])


def test_float_weights_rejected():
    with pytest.raises(TypeError):
        new_instance(2, 2.5, 1, [])


def test_endpoint_out_of_range():
    with pytest.raises(ValueError):
        new_instance(2, 2, 1, [(0, 2, HEAVY)])


def test_rational_weights_stay_exact():
    inst = new_instance(2, "7/2", "1/3", [(0, 1, "heavy"), (0, 1, "light")])
    pi = Orientation((0, 0))
    assert utility(inst, pi, 0) == Fraction(7, 2) + Fraction(1, 3)


def test_utilities_on_loop_obstruction():
    inst = heavy_edge_with_light_loops(1, 2, 1)
    pi = Orientation((0, 0, 1))
    assert utility(inst, pi, 0) == 3
    assert utility(inst, pi, 1) == 1
    # the loop at 0 is worth nothing to 1
    assert utility_of_bundle_to(inst, pi, 1, 0) == 2


def test_empty_orientation_has_zero_utility():
    inst = heavy_edge_with_light_loops(2)
    assert all(u == 0 for u in all_utilities(inst, Orientation.empty(inst)))


def test_loop_only_bundle_is_worthless_to_others():
    inst = new_instance(2, 3, 1, [(1, 1, HEAVY)])
    assert utility_of_bundle_to(inst, (1,), 0, 1) == 0


def test_bundle_value_errors():
    inst = new_instance(2, 3, 1, [(0, 1, HEAVY)])
    with pytest.raises(ValueError):
        utility_of_bundle_to(inst, (0,), 1, 1)
    with pytest.raises(IndexError):
        utility(inst, (0,), 5)


def test_parallel_classes_of_loop_obstruction():
    inst = heavy_edge_with_light_loops(2)
    classes = parallel_classes(inst)
    assert [(c.endpoints, c.heavy_count, c.light_count) for c in classes] == [
        ((0, 0), 0, 2), ((0, 1), 1, 0), ((1, 1), 0, 2)]
    assert multiplicity(inst) == 2


def test_triangle_classes_are_singletons():
    inst = new_instance(3, 2, 1, [(0, 1, LIGHT), (1, 2, LIGHT), (0, 2, HEAVY)])
    assert [len(c) for c in parallel_classes(inst)] == [1, 1, 1]
    assert multiplicity(inst) == 1


def test_hq_multiplicity():
    inst, _ = gadget_instance("hq", 3)
    assert multiplicity(inst) == 3


def test_orientation_validation():
    inst = new_instance(3, 2, 1, [(0, 1, LIGHT), (2, 2, HEAVY)])
    assert validate_orientation(inst, (1, None)).owners == (1, None)
    with pytest.raises(ValueError):
        validate_orientation(inst, (2, 2))
    with pytest.raises(ValueError):
        validate_orientation(inst, (0,))


def test_subinstance_maps_back():
    inst = new_instance(4, 3, 1, [(0, 1, HEAVY), (1, 2, LIGHT), (2, 3, LIGHT), (3, 3, HEAVY)])
    sub, vmap, emap = inst.subinstance([2, 3])
    assert vmap == [2, 3] and emap == [2, 3]
    assert [(e.u, e.v) for e in sub.edges] == [(0, 1), (1, 1)]


@given(oriented(partial=True))
def test_utility_matches_naive_sum(case):
    inst, owners = case
    for i in range(inst.n):
        naive = sum((inst.alpha if e.is_heavy else inst.beta)
                    for e in inst.edges if owners[e.id] == i)
        assert utility(inst, owners, i) == naive
        for j in range(inst.n):
            if i != j:
                naive = sum((inst.alpha if e.is_heavy else inst.beta) for e in inst.edges
                            if owners[e.id] == j and i in (e.u, e.v))
                assert utility_of_bundle_to(inst, owners, i, j) == naive


@given(oriented())
def test_utilities_sum_to_total_weight(case):
    inst, owners = case
    utils = all_utilities(inst, owners)
    assert all(u >= 0 for u in utils)
    assert sum(utils) == sum(inst.weight(e) for e in inst.edges)


@given(oriented())
def test_classes_partition_edges(case):
    inst, _ = case
    classes = parallel_classes(inst)
    ids = sorted(e for c in classes for e in c.members)
    assert ids == list(range(inst.m))
    for c in classes:
        assert c.heavy_count + c.light_count == len(c) >= 1
        assert {inst.edges[e].pair for e in c.members} == {c.endpoints}
