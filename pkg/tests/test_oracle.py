import pytest
from hypothesis import given, settings

from efxorient.core import HEAVY, LIGHT, new_instance
from efxorient.fairness import is_efx
from efxorient.generate import heavy_edge_with_light_loops
from efxorient.oracle import (OracleBudgetExceeded, all_efx_orientations, count_efx_orientations,
                              enumerate_orientations, exists_efx_orientation, representative_count)
from efxorient.reduction import gadget_instance

from support import instances, naive_efx_count, naive_efx_exists, naive_is_efx


def test_representative_counts():
    assert representative_count(heavy_edge_with_light_loops(2)) == 2
    assert representative_count(new_instance(2, 2, 1, [(0, 1, LIGHT)])) == 2
    inst, _ = gadget_instance("hq", 2)
    assert representative_count(inst) == 64
    # three interchangeable lights: 0..3 go to the lower end
    assert representative_count(new_instance(2, 2, 1, [(0, 1, LIGHT)] * 3)) == 4


def test_representatives_are_canonical():
    inst = new_instance(2, 3, 1, [(0, 1, LIGHT)] * 2 + [(0, 1, HEAVY)] + [(1, 1, LIGHT)])
    got = {pi.owners for pi in enumerate_orientations(inst)}
    assert got == {(a, b, h, 1) for (a, b) in [(1, 1), (0, 1), (0, 0)] for h in (0, 1)}


@pytest.mark.parametrize("q", [1, 2, 3])
def test_loop_obstruction_has_no_efx(q):
    assert exists_efx_orientation(heavy_edge_with_light_loops(q, q + 1, 1)) is None


def test_loop_obstruction_with_heavier_lights_has_efx():
    inst = heavy_edge_with_light_loops(2, 3, 2)
    pi = exists_efx_orientation(inst)
    assert pi is not None and is_efx(inst, pi)


def test_empty_instance():
    assert exists_efx_orientation(new_instance(1, 1, 0, [])).owners == ()


def test_constraints_respected_and_validated():
    inst = new_instance(2, 3, 1, [(0, 1, HEAVY), (0, 1, LIGHT)])
    for pi in all_efx_orientations(inst, {0: 1}):
        assert pi.owners[0] == 1
    with pytest.raises(ValueError):
        exists_efx_orientation(inst, {0: 5})
    with pytest.raises(ValueError):
        exists_efx_orientation(inst, {7: 0})


def test_budget():
    inst, _ = gadget_instance("hq", 2)
    with pytest.raises(OracleBudgetExceeded) as err:
        exists_efx_orientation(inst, budget=10)
    assert err.value.count == 64


# EFX counts frozen from raw enumeration with the definition-level checker;
# every class in these gadgets is a singleton, so raw and reduced counts agree.
@pytest.mark.parametrize("kind,expected", [("hq", 3), ("dup", 2), ("true", 5), ("or", 8), ("not", 2)])
def test_gadget_efx_counts(kind, expected):
    inst, _ = gadget_instance(kind, 2)
    assert count_efx_orientations(inst) == expected


def test_hq_forcing():
    for q in (2, 3):
        inst, t = gadget_instance("hq", q, q + 1, 1)
        e, e2 = t.port("e"), t.port("e'")
        inward = {e: t.index("u2"), e2: t.index("u4")}
        assert all_efx_orientations(inst, inward) == []
        for pi in all_efx_orientations(inst):
            assert pi.owners[e] == t.index("u1") or pi.owners[e2] == t.index("u5")


@settings(max_examples=150, deadline=None)
@given(instances(max_n=4, max_m=9))
def test_reduced_search_matches_raw_enumeration(inst):
    witness = exists_efx_orientation(inst)
    assert (witness is not None) == naive_efx_exists(inst)
    if witness is not None:
        assert naive_is_efx(inst, witness.owners)


@settings(max_examples=60, deadline=None)
@given(instances(max_n=4, max_m=7))
def test_every_reported_orientation_is_efx(inst):
    sols = all_efx_orientations(inst)
    assert len(sols) == count_efx_orientations(inst)
    assert all(naive_is_efx(inst, pi.owners) for pi in sols)
    # each representative stands for at least one raw orientation
    assert len(sols) <= naive_efx_count(inst)
